#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvol/detail/beneath_beyond.hpp"
#include "mvol/error.hpp"
#include "mvol/linalg.hpp"
#include "mvol/rational.hpp"

namespace mvol {

/// Largest affine dimension the hull code will triangulate.
inline constexpr std::size_t kMaxHullDimension = 10;

/// A point of Q^n, stored as its coordinate vector.
using Point = Vector;

/**
 * Ordered list of m >= 1 points sharing one ambient dimension. Duplicates are
 * allowed here; operations that need distinct points say so.
 */
class PointConfiguration {
public:
    PointConfiguration(std::size_t ambient_dim, std::vector<Point> points)
        : ambient_dim_(ambient_dim), points_(std::move(points)) {
        validate();
    }

    /// Infers the ambient dimension from the first point.
    explicit PointConfiguration(std::vector<Point> points) : points_(std::move(points)) {
        ambient_dim_ = points_.empty() ? 1 : points_.front().size();
        validate();
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    bool has_duplicates() const {
        auto sorted = points_;
        std::sort(sorted.begin(), sorted.end(), lex_less);
        return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    }

private:
    void validate() const {
        if (ambient_dim_ == 0) throw DimensionError("ambient dimension must be positive");
        if (points_.empty()) throw PreconditionError("a point configuration needs at least one point");
        for (const auto& p : points_)
            if (p.size() != ambient_dim_)
                throw DimensionError("point of length " + std::to_string(p.size()) +
                                     " in a configuration of ambient dimension " + std::to_string(ambient_dim_));
    }

    std::size_t ambient_dim_ = 0;
    std::vector<Point> points_;
};

/// A simplex given by its vertex list. Triangulations and reductions only produce affinely independent vertices.
struct Simplex {
    std::size_t ambient_dim = 0;
    std::vector<Point> vertices;

    std::size_t intrinsic_dim() const;
};

/**
 * Convex polytope in V-representation. Vertices are the extreme points in
 * lexicographic order. When the polytope is full-dimensional it also carries
 * a triangulation whose simplex volumes sum to normalized_volume().
 */
class ConvexPolytope {
public:
    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::optional<std::vector<Simplex>>& triangulation() const noexcept { return triangulation_; }

    /// n! Vol_n, zero when the polytope is not full-dimensional.
    const Rational& normalized_volume() const noexcept { return normalized_volume_; }

    bool operator==(const ConvexPolytope& other) const {
        return ambient_dim_ == other.ambient_dim_ && vertices_ == other.vertices_;
    }

private:
    friend ConvexPolytope convex_hull(const PointConfiguration&);
    friend ConvexPolytope hull_of(std::size_t, std::vector<Point>, bool);
    friend ConvexPolytope scale(const ConvexPolytope&, const Rational&);

    ConvexPolytope() = default;

    std::size_t ambient_dim_ = 0;
    std::size_t dim_ = 0;
    std::vector<Point> vertices_;
    std::optional<std::vector<Simplex>> triangulation_;
    Rational normalized_volume_ = 0;
};

/// Rank of the differences p_i - p_1.
inline std::size_t affine_dim(const std::vector<Point>& points) {
    if (points.size() <= 1) return 0;
    Matrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
    return rank(std::move(diffs));
}

inline std::size_t affine_dim(const PointConfiguration& config) {
    return affine_dim(config.points());
}

inline std::size_t Simplex::intrinsic_dim() const {
    return affine_dim(vertices);
}

namespace detail {

inline std::vector<Point> sorted_distinct(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Coordinates onto which the affine hull projects injectively.
inline std::vector<std::size_t> spanning_coordinates(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return {};
    Matrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    auto pivots = reduce_to_rref(diffs);
    return pivots;
}

/// Projects onto the chosen coordinates and clears denominators. Returns the common scale.
inline Integer to_integer_points(const std::vector<Point>& pts, const std::vector<std::size_t>& coords,
                                 std::vector<IntPoint>& out) {
    Integer scale = 1;
    for (const auto& p : pts)
        for (auto c : coords) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p[c].get_den_mpz_t());
    out.assign(pts.size(), IntPoint(coords.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < coords.size(); ++j) {
            const Rational& x = pts[i][coords[j]];
            Integer v = scale / x.get_den();
            out[i][j] = v * x.get_num();
        }
    return scale;
}

struct HullSummary {
    std::vector<Point> vertices;
    std::size_t dim = 0;
    Rational normalized_volume = 0;
    /// Index lists into `points` when full-dimensional and requested.
    std::vector<std::vector<std::size_t>> simplices;
    std::vector<Point> points;
};

/**
 * Shared hull routine. Deduplicates, finds the affine hull, and runs the
 * beneath-beyond engine in the projected coordinates.
 */
inline HullSummary hull_summary(std::size_t ambient, std::vector<Point> input, bool want_triangulation) {
    HullSummary h;
    h.points = sorted_distinct(std::move(input));
    const auto& pts = h.points;
    const auto coords = spanning_coordinates(pts);
    h.dim = coords.size();
    if (h.dim > kMaxHullDimension)
        throw DimensionError("affine dimension " + std::to_string(h.dim) + " exceeds the supported maximum of " +
                             std::to_string(kMaxHullDimension));
    if (h.dim == 0) {
        h.vertices = pts;
        return h;
    }
    std::vector<IntPoint> ipts;
    const Integer denom = to_integer_points(pts, coords, ipts);
    const bool full = h.dim == ambient;

    if (h.dim == 1) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (ipts[i][0] < ipts[lo][0]) lo = i;
            if (ipts[i][0] > ipts[hi][0]) hi = i;
        }
        h.vertices = {pts[lo], pts[hi]};
        std::sort(h.vertices.begin(), h.vertices.end(), lex_less);
        if (full) {
            h.normalized_volume = Rational(Integer(ipts[hi][0] - ipts[lo][0]), denom);
            h.normalized_volume.canonicalize();
            if (want_triangulation) h.simplices.push_back({lo, hi});
        }
        return h;
    }

    auto out = beneath_beyond(ipts, h.dim);
    for (auto v : out.vertices) h.vertices.push_back(pts[v]);
    if (full) {
        Integer scale = 1;
        for (std::size_t i = 0; i < ambient; ++i) scale *= denom;
        h.normalized_volume = Rational(out.normalized_volume, scale);
        h.normalized_volume.canonicalize();
        if (want_triangulation) h.simplices = std::move(out.simplices);
    }
    return h;
}

}  // namespace detail

/// Builds a polytope from any point list (duplicates and interior points are dropped).
inline ConvexPolytope hull_of(std::size_t ambient, std::vector<Point> points, bool want_triangulation) {
    auto h = detail::hull_summary(ambient, std::move(points), want_triangulation);
    ConvexPolytope poly;
    poly.ambient_dim_ = ambient;
    poly.dim_ = h.dim;
    poly.vertices_ = std::move(h.vertices);
    poly.normalized_volume_ = h.normalized_volume;
    if (h.dim == ambient && want_triangulation) {
        std::vector<Simplex> tri;
        tri.reserve(h.simplices.size());
        for (const auto& s : h.simplices) {
            Simplex simplex{ambient, {}};
            for (auto i : s) simplex.vertices.push_back(h.points[i]);
            tri.push_back(std::move(simplex));
        }
        poly.triangulation_ = std::move(tri);
    }
    return poly;
}

/**
 * Convex hull with exact predicates. Extreme points only; a full-dimensional
 * result also gets the placing triangulation of its insertion order.
 */
inline ConvexPolytope convex_hull(const PointConfiguration& config) {
    return hull_of(config.ambient_dim(), config.points(), true);
}

/// |det [1 ... 1; p_1 ... p_{n+1}]|, the normalized volume of an n-simplex in R^n.
inline Rational simplex_normalized_volume(const Simplex& s) {
    const std::size_t n = s.ambient_dim;
    if (s.vertices.size() != n + 1)
        throw DimensionError("a simplex in R^" + std::to_string(n) + " needs " + std::to_string(n + 1) +
                             " vertices, got " + std::to_string(s.vertices.size()));
    Matrix bordered = zero_matrix(n + 1, n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        if (s.vertices[j].size() != n) throw DimensionError("simplex vertex has the wrong length");
        bordered[0][j] = 1;
        for (std::size_t i = 0; i < n; ++i) bordered[i + 1][j] = s.vertices[j][i];
    }
    return abs(determinant(std::move(bordered)));
}

/// n! Vol_n(conv(config)); zero for lower-dimensional configurations.
inline Rational normalized_volume(const PointConfiguration& config) {
    return detail::hull_summary(config.ambient_dim(), config.points(), false).normalized_volume;
}

inline ConvexPolytope minkowski_sum(const ConvexPolytope& a, const ConvexPolytope& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("Minkowski sum of polytopes in R^" + std::to_string(a.ambient_dim()) + " and R^" +
                             std::to_string(b.ambient_dim()));
    std::vector<Point> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) sums.push_back(u + v);
    return convex_hull(PointConfiguration(a.ambient_dim(), std::move(sums)));
}

/// Dilation by a non-negative factor; factor zero collapses to the origin.
inline ConvexPolytope scale(const ConvexPolytope& p, const Rational& factor) {
    if (factor < 0) throw PreconditionError("scale factor must be non-negative, got " + to_string(factor));
    if (factor == 0) return convex_hull(PointConfiguration(p.ambient_dim(), {Point(p.ambient_dim(), Rational(0))}));
    ConvexPolytope r = p;
    for (auto& v : r.vertices_) v = factor * v;
    if (r.triangulation_)
        for (auto& s : *r.triangulation_)
            for (auto& v : s.vertices) v = factor * v;
    r.normalized_volume_ *= power(factor, static_cast<unsigned>(p.ambient_dim()));
    return r;
}

}  // namespace mvol
