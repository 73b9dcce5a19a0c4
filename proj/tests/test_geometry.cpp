#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mvol/geometry.hpp"
#include "oracles.hpp"

using namespace mvol;
using oracle::ints;

namespace {

PointConfiguration config(std::initializer_list<std::initializer_list<long>> pts) {
    std::vector<Point> v;
    for (auto p : pts) v.push_back(ints(p));
    return PointConfiguration(std::move(v));
}

PointConfiguration unit_square() {
    return config({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

Rational triangulation_sum(const ConvexPolytope& p) {
    Rational s = 0;
    for (const auto& simplex : *p.triangulation()) s += simplex_normalized_volume(simplex);
    return s;
}

}  // namespace

TEST(AffineDim, Examples) {
    EXPECT_EQ(affine_dim(config({{0, 0}, {1, 1}, {2, 2}})), 1u);
    EXPECT_EQ(affine_dim(config({{0, 0}, {1, 0}, {0, 1}})), 2u);
    EXPECT_EQ(affine_dim(config({{3, 7}})), 0u);
}

TEST(PointConfiguration, RejectsBadShapes) {
    EXPECT_THROW(PointConfiguration(2, {}), PreconditionError);
    EXPECT_THROW(PointConfiguration(2, {ints({1, 2}), ints({1})}), DimensionError);
    EXPECT_TRUE(config({{1, 1}, {0, 0}, {1, 1}}).has_duplicates());
}

TEST(ConvexHull, DropsInteriorPoint) {
    std::vector<Point> pts = unit_square().points();
    pts.push_back({Rational(1, 2), Rational(1, 2)});
    auto hull = convex_hull(PointConfiguration(pts));
    EXPECT_EQ(hull.vertices().size(), 4u);
    EXPECT_EQ(std::count(hull.vertices().begin(), hull.vertices().end(), Point{Rational(1, 2), Rational(1, 2)}), 0);
    EXPECT_EQ(hull.normalized_volume(), 2);
}

TEST(ConvexHull, TriangleIsOneSimplex) {
    auto hull = convex_hull(config({{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(hull.vertices().size(), 3u);
    ASSERT_TRUE(hull.triangulation());
    EXPECT_EQ(hull.triangulation()->size(), 1u);
}

TEST(ConvexHull, DegenerateHasNoTriangulation) {
    auto hull = convex_hull(config({{0, 0}, {1, 0}, {2, 0}}));
    EXPECT_EQ(hull.vertices(), (std::vector<Point>{ints({0, 0}), ints({2, 0})}));
    EXPECT_FALSE(hull.triangulation());
    EXPECT_EQ(hull.dim(), 1u);
    EXPECT_EQ(hull.normalized_volume(), 0);
}

TEST(ConvexHull, LowerDimensionalFaceInSpace) {
    // A square lying in the plane z = x + y inside R^3, with its centre and an edge midpoint.
    auto hull = convex_hull(config({{0, 0, 0}, {2, 0, 2}, {0, 2, 2}, {2, 2, 4}, {1, 1, 2}, {1, 0, 1}}));
    EXPECT_EQ(hull.dim(), 2u);
    EXPECT_EQ(hull.vertices().size(), 4u);
    EXPECT_EQ(hull.normalized_volume(), 0);
}

TEST(ConvexHull, DuplicatesAreRemoved) {
    auto hull = convex_hull(config({{0, 0}, {1, 0}, {0, 1}, {1, 0}, {0, 0}}));
    EXPECT_EQ(hull.vertices().size(), 3u);
    EXPECT_EQ(hull.normalized_volume(), 1);
}

TEST(SimplexVolume, Examples) {
    EXPECT_EQ(simplex_normalized_volume({2, {ints({0, 0}), ints({1, 0}), ints({0, 1})}}), 1);
    // det [[1,1,1],[0,2,0],[0,0,3]] = 6
    EXPECT_EQ(simplex_normalized_volume({2, {ints({0, 0}), ints({2, 0}), ints({0, 3})}}), 6);
    EXPECT_EQ(simplex_normalized_volume({2, {ints({0, 0}), ints({1, 1}), ints({2, 2})}}), 0);
    EXPECT_THROW(simplex_normalized_volume({2, {ints({0, 0}), ints({1, 1})}}), DimensionError);
}

TEST(NormalizedVolume, Examples) {
    EXPECT_EQ(normalized_volume(unit_square()), 2);
    EXPECT_EQ(normalized_volume(config({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                        {1, 1, 1}})),
              6);
    EXPECT_EQ(normalized_volume(config({{0, 0}, {1, 1}, {2, 2}})), 0);
    EXPECT_EQ(normalized_volume(config({{4, -1}})), 0);
    EXPECT_EQ(normalized_volume(config({{-1}, {3}, {1}})), 4);
}

TEST(NormalizedVolume, RationalCoordinates) {
    std::vector<Point> pts = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 3)}};
    EXPECT_EQ(normalized_volume(PointConfiguration(pts)), Rational(1, 6));
}

TEST(NormalizedVolume, RejectsTooManyDimensions) {
    std::vector<Point> pts;
    pts.push_back(Point(11, Rational(0)));
    for (std::size_t i = 0; i < 11; ++i) {
        Point e(11, Rational(0));
        e[i] = 1;
        pts.push_back(e);
    }
    EXPECT_THROW(normalized_volume(PointConfiguration(pts)), DimensionError);
}

TEST(NormalizedVolume, MatchesBruteForceOracle) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const std::size_t count = dim + 1 + static_cast<std::size_t>(trial % 6);
        auto pts = oracle::random_points(rng, count, dim, -3, 3);
        PointConfiguration cfg(dim, pts);
        auto hull = convex_hull(cfg);
        const Rational expected = oracle::brute_force_nvol(pts);
        EXPECT_EQ(hull.normalized_volume(), expected) << "trial " << trial;
        EXPECT_EQ(hull.vertices(), oracle::brute_force_vertices(pts)) << "trial " << trial;
        if (hull.triangulation()) {
            EXPECT_EQ(triangulation_sum(hull), expected) << "trial " << trial;
        }
    }
}

TEST(NormalizedVolume, PermutationInvariance) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = oracle::random_points(rng, 7, 3, -3, 3);
        const Rational v = normalized_volume(PointConfiguration(3, pts));
        std::shuffle(pts.begin(), pts.end(), rng);
        EXPECT_EQ(normalized_volume(PointConfiguration(3, pts)), v);
    }
}

TEST(NormalizedVolume, UnimodularInvariance) {
    std::mt19937_64 rng(11);
    // det = 1 and det = -1 integer matrices.
    const Matrix u1 = {{Rational(2), Rational(1), Rational(0)}, {Rational(1), Rational(1), Rational(0)},
                       {Rational(3), Rational(-2), Rational(1)}};
    const Matrix u2 = {{Rational(0), Rational(1), Rational(0)}, {Rational(1), Rational(0), Rational(0)},
                       {Rational(-1), Rational(4), Rational(1)}};
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = oracle::random_points(rng, 6, 3, -3, 3);
        const Rational v = normalized_volume(PointConfiguration(3, pts));
        for (const auto* u : {&u1, &u2}) {
            std::vector<Point> moved;
            const Vector shift = ints({5, -2, 1});
            for (const auto& p : pts) {
                Point q(3);
                for (std::size_t i = 0; i < 3; ++i) q[i] = dot((*u)[i], p) + shift[i];
                moved.push_back(q);
            }
            auto hull = convex_hull(PointConfiguration(3, moved));
            EXPECT_EQ(hull.normalized_volume(), v);
            if (hull.triangulation()) {
                EXPECT_EQ(triangulation_sum(hull), v);
            }
        }
    }
}

TEST(NormalizedVolume, ScalingHomogeneity) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        auto pts = oracle::random_points(rng, 6, 3, -3, 3);
        const Rational v = normalized_volume(PointConfiguration(3, pts));
        for (const Rational& lambda : {Rational(0), Rational(1, 2), Rational(2), Rational(3)}) {
            std::vector<Point> scaled;
            for (const auto& p : pts) scaled.push_back(lambda * p);
            EXPECT_EQ(normalized_volume(PointConfiguration(3, scaled)), power(lambda, 3) * v);
        }
    }
}

TEST(NormalizedVolume, Monotonicity) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto pts = oracle::random_points(rng, 8, 2 + trial % 2, -3, 3);
        const std::size_t dim = pts[0].size();
        const Rational full = normalized_volume(PointConfiguration(dim, pts));
        pts.resize(4 + trial % 4);
        EXPECT_LE(normalized_volume(PointConfiguration(dim, pts)), full);
    }
}

TEST(NormalizedVolume, ManyPointsOnSphereLikeSet) {
    // All lattice points of the 3-cube [-2,2]^3: only the 8 corners are vertices.
    std::vector<Point> pts;
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y)
            for (int z = -2; z <= 2; ++z) pts.push_back(ints({x, y, z}));
    auto hull = convex_hull(PointConfiguration(3, pts));
    EXPECT_EQ(hull.vertices().size(), 8u);
    EXPECT_EQ(hull.normalized_volume(), 6 * 64);
    EXPECT_EQ(triangulation_sum(hull), 6 * 64);
}

TEST(MinkowskiSum, Examples) {
    auto seg1 = convex_hull(config({{0, 0}, {1, 0}}));
    auto seg2 = convex_hull(config({{0, 0}, {0, 1}}));
    EXPECT_EQ(minkowski_sum(seg1, seg2), convex_hull(unit_square()));

    auto tri = convex_hull(config({{0, 0}, {2, 0}, {0, 1}}));
    auto shifted = minkowski_sum(tri, convex_hull(config({{3, -1}})));
    EXPECT_EQ(shifted, convex_hull(config({{3, -1}, {5, -1}, {3, 0}})));

    auto sq = convex_hull(unit_square());
    auto twice = minkowski_sum(sq, sq);
    EXPECT_EQ(twice.vertices().size(), 4u);
    EXPECT_EQ(twice, convex_hull(config({{0, 0}, {2, 0}, {0, 2}, {2, 2}})));
    EXPECT_EQ(twice.normalized_volume(), 8);

    auto line3 = convex_hull(config({{0, 0, 0}, {1, 1, 1}}));
    EXPECT_THROW(minkowski_sum(sq, line3), DimensionError);
}

TEST(Scale, Examples) {
    auto sq = convex_hull(unit_square());
    EXPECT_EQ(scale(sq, 2), convex_hull(config({{0, 0}, {2, 0}, {0, 2}, {2, 2}})));
    EXPECT_EQ(scale(sq, 2).normalized_volume(), 8);
    EXPECT_EQ(scale(sq, 1), sq);
    auto origin = scale(sq, 0);
    EXPECT_EQ(origin.vertices(), (std::vector<Point>{ints({0, 0})}));
    EXPECT_EQ(origin.normalized_volume(), 0);
    EXPECT_THROW(scale(sq, Rational(-1, 2)), PreconditionError);
}
