#pragma once

#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include "mvol/error.hpp"
#include "mvol/geometry.hpp"
#include "mvol/mixed_volume.hpp"
#include "mvol/rational.hpp"

namespace mvol {

enum class Engine { ie, cells };

inline const char* engine_name(Engine e) {
    return e == Engine::ie ? "ie" : "cells";
}

inline Rational mixed_volume(const PolytopeTuple& t, Engine engine, std::uint64_t seed) {
    return engine == Engine::ie ? mixed_volume_ie(t) : mixed_volume_cells(t, seed);
}

/**
 * The m simplices attached to m distinct points of R^n (m > n > 0):
 * simplices[i] = conv{ hat(p_i), e_{n+1}, ..., e_m } in R^m, vertices in that order.
 */
struct ReductionResult {
    PointConfiguration source;
    std::vector<Point> hat_points;
    std::vector<Simplex> simplices;

    PolytopeTuple as_tuple() const {
        std::vector<ConvexPolytope> ps;
        ps.reserve(simplices.size());
        for (const auto& s : simplices) ps.push_back(convex_hull(PointConfiguration(s.ambient_dim, s.vertices)));
        return PolytopeTuple(simplices.size(), std::move(ps));
    }
};

/// p padded with m - n zeros.
inline Point embed_hat(const Point& p, std::size_t m) {
    if (m <= p.size())
        throw PreconditionError("embedding dimension " + std::to_string(m) + " must exceed the point dimension " +
                                std::to_string(p.size()));
    Point hat = p;
    hat.resize(m, Rational(0));
    return hat;
}

inline ReductionResult build_simplices(const PointConfiguration& config) {
    const std::size_t n = config.ambient_dim();
    const std::size_t m = config.size();
    if (m <= n)
        throw PreconditionError("the reduction needs more points than dimensions (m = " + std::to_string(m) +
                                ", n = " + std::to_string(n) + ")");
    if (config.has_duplicates()) throw PreconditionError("the reduction needs distinct points");

    ReductionResult r{config, {}, {}};
    for (const auto& p : config.points()) {
        Point hat = embed_hat(p, m);
        Simplex s{m, {hat}};
        for (std::size_t j = n; j < m; ++j) {
            Point e(m, Rational(0));
            e[j] = 1;
            s.vertices.push_back(std::move(e));
        }
        r.hat_points.push_back(std::move(hat));
        r.simplices.push_back(std::move(s));
    }
    return r;
}

struct TheoremCheck {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

/// Compares nvol(conv(config)) with the mixed volume of its reduction simplices, exactly.
inline TheoremCheck verify_main_theorem(const PointConfiguration& config, Engine engine, std::uint64_t seed) {
    const auto reduction = build_simplices(config);
    auto rhs = std::async(std::launch::async, [&] { return mixed_volume(reduction.as_tuple(), engine, seed); });
    TheoremCheck c;
    c.lhs = normalized_volume(config);
    c.rhs = rhs.get();
    c.equal = c.lhs == c.rhs;
    return c;
}

}  // namespace mvol
