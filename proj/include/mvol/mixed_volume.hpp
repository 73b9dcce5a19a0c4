#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mvol/error.hpp"
#include "mvol/geometry.hpp"
#include "mvol/linalg.hpp"
#include "mvol/lp.hpp"
#include "mvol/rational.hpp"

namespace mvol {

/// Ordered n-tuple of polytopes in R^n, the argument of the mixed volume.
class PolytopeTuple {
public:
    PolytopeTuple(std::size_t ambient_dim, std::vector<ConvexPolytope> polytopes)
        : ambient_dim_(ambient_dim), polytopes_(std::move(polytopes)) {
        validate();
    }

    /// The ambient dimension is the tuple length.
    explicit PolytopeTuple(std::vector<ConvexPolytope> polytopes) : polytopes_(std::move(polytopes)) {
        ambient_dim_ = polytopes_.size();
        validate();
    }

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return polytopes_.size(); }
    const std::vector<ConvexPolytope>& polytopes() const noexcept { return polytopes_; }
    const ConvexPolytope& operator[](std::size_t i) const { return polytopes_[i]; }

private:
    void validate() const {
        if (polytopes_.size() != ambient_dim_)
            throw DimensionError("mixed volume in R^" + std::to_string(ambient_dim_) + " needs " +
                                 std::to_string(ambient_dim_) + " polytopes, got " +
                                 std::to_string(polytopes_.size()));
        for (const auto& p : polytopes_)
            if (p.ambient_dim() != ambient_dim_)
                throw DimensionError("polytope in R^" + std::to_string(p.ambient_dim()) + " inside a tuple in R^" +
                                     std::to_string(ambient_dim_));
    }

    std::size_t ambient_dim_ = 0;
    std::vector<ConvexPolytope> polytopes_;
};

/// A subset S of the tuple slots; the 0/1 point lambda = 1_S of the volume polynomial.
struct SubsetSelector {
    std::uint32_t mask = 0;

    bool contains(std::size_t i) const { return (mask >> i) & 1u; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask)); }
};

namespace detail {

/// Runs body(i) for i in [0, count) on a few worker threads.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/**
 * Mixed volume by polarization of the Minkowski volume polynomial:
 *
 *   MV(P_1..P_n) = sum over nonempty S of (-1)^(n-|S|) Vol_n(sum_{i in S} P_i).
 *
 * Every subset sum is hulled exactly; lower-dimensional sums contribute 0.
 * Subset sums are built from the sum of S minus its lowest slot, so vertex
 * counts stay small. Cost is 2^n hulls.
 */
inline Rational mixed_volume_ie(const PolytopeTuple& t) {
    const std::size_t n = t.ambient_dim();
    if (n > 20) throw DimensionError("inclusion-exclusion is limited to 20 polytopes");
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::vector<Point>> vertices(full + 1);
    std::vector<Rational> volumes(full + 1);

    for (std::size_t level = 1; level <= n; ++level) {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t mask = 1; mask <= full; ++mask)
            if (static_cast<std::size_t>(std::popcount(mask)) == level) masks.push_back(mask);
        detail::parallel_for(masks.size(), [&](std::size_t k) {
            const std::uint32_t mask = masks[k];
            const std::uint32_t low = mask & (~mask + 1);
            const std::size_t slot = static_cast<std::size_t>(std::countr_zero(low));
            const std::uint32_t rest = mask ^ low;
            if (rest == 0) {
                vertices[mask] = t[slot].vertices();
                volumes[mask] = t[slot].normalized_volume();
                return;
            }
            std::vector<Point> sums;
            sums.reserve(vertices[rest].size() * t[slot].vertices().size());
            for (const auto& u : vertices[rest])
                for (const auto& v : t[slot].vertices()) sums.push_back(u + v);
            auto h = detail::hull_summary(n, std::move(sums), false);
            vertices[mask] = std::move(h.vertices);
            volumes[mask] = std::move(h.normalized_volume);
        });
    }

    Rational total = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const SubsetSelector s{mask};
        if ((n - s.size()) % 2 == 0) total += volumes[mask];
        else total -= volumes[mask];
    }
    // volumes hold n! Vol_n; the polarization formula uses Euclidean volume.
    total /= Rational(factorial(static_cast<unsigned>(n)));
    return total;
}

/// A segment [first, second] in R^n.
using Segment = std::pair<Point, Point>;

/// Mixed volume of n segments: |det[d_1 .. d_n]| with d_i the segment directions.
inline Rational segment_mixed_volume(const std::vector<Segment>& segments, std::size_t ambient_dim) {
    if (segments.size() != ambient_dim)
        throw DimensionError("segment mixed volume in R^" + std::to_string(ambient_dim) + " needs " +
                             std::to_string(ambient_dim) + " segments, got " + std::to_string(segments.size()));
    Matrix directions;
    for (const auto& [a, b] : segments) {
        if (a.size() != ambient_dim || b.size() != ambient_dim)
            throw DimensionError("segment endpoint has the wrong length");
        directions.push_back(b - a);
    }
    return abs(determinant(std::move(directions)));
}

inline Rational segment_mixed_volume(const std::vector<Segment>& segments) {
    return segment_mixed_volume(segments, segments.size());
}

/// Lifting range is [-kLiftingBound, kLiftingBound].
inline constexpr std::int64_t kLiftingBound = std::int64_t{1} << 20;

/// Lifting attempts before the cells engine gives up.
inline constexpr int kLiftingRetryCap = 8;

/// Integer heights for every vertex of every polytope of a tuple.
struct Lifting {
    std::vector<std::vector<std::int64_t>> heights;
    std::uint64_t seed = 0;
};

inline Lifting draw_lifting(const PolytopeTuple& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(-kLiftingBound, kLiftingBound);
    Lifting l;
    l.seed = seed;
    for (const auto& p : t.polytopes()) {
        std::vector<std::int64_t> h(p.vertices().size());
        for (auto& x : h) x = dist(rng);
        l.heights.push_back(std::move(h));
    }
    return l;
}

/// Seed of the k-th retry. Attempt 0 uses the caller's seed unchanged.
inline std::uint64_t derived_seed(std::uint64_t seed, int attempt) {
    if (attempt == 0) return seed;
    std::uint64_t z = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// One edge (a_i, b_i) per polytope; lower with respect to the lifting.
struct MixedCell {
    std::vector<Segment> edges;
    Rational cell_volume;
    /// Inner normal (alpha, 1) of the lifted cell.
    Vector normal;
};

struct CellEnumeration {
    /// False when some test met an equality where strictness was required.
    bool generic = true;
    std::vector<MixedCell> cells;
};

namespace detail {

/// Indices (a, b) into a polytope's vertex list.
using EdgeIndex = std::pair<std::size_t, std::size_t>;

struct LiftedPolytope {
    const std::vector<Point>* vertices;
    const std::vector<std::int64_t>* heights;
};

enum class LowerTest { lower, not_lower, tie };

/**
 * Exact LP: is there alpha with every chosen edge (a_i, b_i) the whole
 * minimizing face of (alpha, 1) over the lifted polytope i? Maximizes the
 * common slack t; t > 0 means strictly lower, t = 0 a tie.
 */
inline LowerTest lower_face_lp(const std::vector<LiftedPolytope>& lifted, const std::vector<std::size_t>& slots,
                               const std::vector<EdgeIndex>& edges, std::size_t n) {
    LinearProgram<Rational> lp(n + 1);
    lp.objective[n] = 1;
    {
        Vector row(n + 1, Rational(0));
        row[n] = 1;
        lp.add_row(std::move(row), Relation::less_equal, 1);
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& verts = *lifted[slots[k]].vertices;
        const auto& h = *lifted[slots[k]].heights;
        const auto [a, b] = edges[k];
        Vector eq(n + 1, Rational(0));
        for (std::size_t j = 0; j < n; ++j) eq[j] = verts[b][j] - verts[a][j];
        lp.add_row(std::move(eq), Relation::equal, Rational(h[a] - h[b]));
        for (std::size_t v = 0; v < verts.size(); ++v) {
            if (v == a || v == b) continue;
            Vector row(n + 1, Rational(0));
            for (std::size_t j = 0; j < n; ++j) row[j] = verts[v][j] - verts[a][j];
            row[n] = -1;
            lp.add_row(std::move(row), Relation::greater_equal, Rational(h[a] - h[v]));
        }
    }
    const auto sol = maximize(lp);
    if (sol.status != LpStatus::optimal || sol.value < 0) return LowerTest::not_lower;
    return sol.value == 0 ? LowerTest::tie : LowerTest::lower;
}

class CellSearch {
public:
    CellSearch(const PolytopeTuple& t, const Lifting& lifting) : n_(t.ambient_dim()) {
        for (std::size_t i = 0; i < n_; ++i) lifted_.push_back({&t[i].vertices(), &lifting.heights[i]});
    }

    CellEnumeration run() {
        CellEnumeration result;
        // Candidate edges: pairs whose lift is a lower edge of their own polytope.
        candidates_.assign(n_, {});
        for (std::size_t i = 0; i < n_; ++i) {
            const std::size_t count = lifted_[i].vertices->size();
            for (std::size_t a = 0; a < count; ++a)
                for (std::size_t b = a + 1; b < count; ++b) {
                    const auto r = lower_face_lp(lifted_, {i}, {{a, b}}, n_);
                    if (r == LowerTest::tie) result.generic = false;
                    if (r == LowerTest::lower) candidates_[i].push_back({a, b});
                }
            if (candidates_[i].empty() || !result.generic) return result;
        }
        // Most constrained slot first; the mixed volume does not depend on slot order.
        order_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t x, std::size_t y) { return candidates_[x].size() < candidates_[y].size(); });

        const auto& roots = candidates_[order_[0]];
        std::vector<CellEnumeration> partial(roots.size());
        parallel_for(roots.size(), [&](std::size_t r) {
            std::vector<EdgeIndex> chosen{roots[r]};
            Matrix echelon;
            if (!extend_basis(echelon, order_[0], roots[r])) return;
            descend(1, chosen, echelon, partial[r]);
        });
        for (auto& p : partial) {
            if (!p.generic) result.generic = false;
            for (auto& c : p.cells) result.cells.push_back(std::move(c));
        }
        return result;
    }

private:
    Vector direction(std::size_t slot, const EdgeIndex& e) const {
        const auto& v = *lifted_[slot].vertices;
        return v[e.second] - v[e.first];
    }

    /// Adds the edge direction to a row basis; false when it is dependent.
    bool extend_basis(Matrix& echelon, std::size_t slot, const EdgeIndex& e) const {
        Matrix trial = echelon;
        trial.push_back(direction(slot, e));
        if (rank(trial) != trial.size()) return false;
        echelon = std::move(trial);
        return true;
    }

    void descend(std::size_t depth, std::vector<EdgeIndex>& chosen, const Matrix& echelon, CellEnumeration& out) {
        if (!out.generic) return;
        if (depth == n_) {
            leaf(chosen, echelon, out);
            return;
        }
        const std::size_t slot = order_[depth];
        std::vector<std::size_t> slots(order_.begin(), order_.begin() + static_cast<long>(depth) + 1);
        for (const auto& e : candidates_[slot]) {
            Matrix next = echelon;
            if (!extend_basis(next, slot, e)) continue;
            chosen.push_back(e);
            if (depth + 1 == n_) {
                leaf(chosen, next, out);
            } else {
                const auto r = lower_face_lp(lifted_, slots, chosen, n_);
                if (r == LowerTest::tie) out.generic = false;
                if (r == LowerTest::lower) descend(depth + 1, chosen, next, out);
            }
            chosen.pop_back();
            if (!out.generic) return;
        }
    }

    /// All n directions are independent, so alpha is unique; check it directly.
    void leaf(const std::vector<EdgeIndex>& chosen, const Matrix& directions, CellEnumeration& out) const {
        Vector rhs(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto& h = *lifted_[order_[k]].heights;
            rhs[k] = Rational(h[chosen[k].first] - h[chosen[k].second]);
        }
        const auto alpha = solve_square(directions, rhs);
        if (!alpha) return;
        for (std::size_t k = 0; k < n_; ++k) {
            const auto& verts = *lifted_[order_[k]].vertices;
            const auto& h = *lifted_[order_[k]].heights;
            const auto [a, b] = chosen[k];
            const Rational base = dot(*alpha, verts[a]) + h[a];
            for (std::size_t v = 0; v < verts.size(); ++v) {
                if (v == a || v == b) continue;
                const Rational value = dot(*alpha, verts[v]) + h[v];
                if (value < base) return;
                if (value == base) {
                    out.generic = false;
                    return;
                }
            }
        }
        MixedCell cell;
        cell.edges.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto& verts = *lifted_[order_[k]].vertices;
            cell.edges[order_[k]] = {verts[chosen[k].first], verts[chosen[k].second]};
        }
        cell.cell_volume = abs(determinant(directions));
        cell.normal = *alpha;
        out.cells.push_back(std::move(cell));
    }

    std::size_t n_;
    std::vector<LiftedPolytope> lifted_;
    std::vector<std::vector<EdgeIndex>> candidates_;
    std::vector<std::size_t> order_;
};

}  // namespace detail

/// Fine mixed cells of the subdivision induced by one lifting.
inline CellEnumeration enumerate_mixed_cells(const PolytopeTuple& t, const Lifting& lifting) {
    if (lifting.heights.size() != t.size()) throw DimensionError("lifting does not match the tuple");
    for (std::size_t i = 0; i < t.size(); ++i)
        if (lifting.heights[i].size() != t[i].vertices().size())
            throw DimensionError("lifting does not match the vertex count of polytope " + std::to_string(i));
    return detail::CellSearch(t, lifting).run();
}

/**
 * Mixed volume as the total volume of the mixed cells of a random regular
 * mixed subdivision. Redraws the lifting when a tie is detected; `draw` maps
 * an attempt seed to a lifting.
 */
template <typename LiftingSource>
Rational mixed_volume_cells_with(const PolytopeTuple& t, std::uint64_t seed, LiftingSource&& draw) {
    std::uint64_t attempt_seed = seed;
    for (int attempt = 0; attempt < kLiftingRetryCap; ++attempt) {
        attempt_seed = derived_seed(seed, attempt);
        const auto cells = enumerate_mixed_cells(t, draw(t, attempt_seed));
        if (!cells.generic) continue;
        Rational total = 0;
        for (const auto& c : cells.cells) total += c.cell_volume;
        return total;
    }
    throw NonGenericLiftingError("no generic lifting found after " + std::to_string(kLiftingRetryCap) +
                                     " attempts (last seed " + std::to_string(attempt_seed) + ")",
                                 attempt_seed);
}

inline Rational mixed_volume_cells(const PolytopeTuple& t, std::uint64_t seed) {
    return mixed_volume_cells_with(t, seed, draw_lifting);
}

}  // namespace mvol
