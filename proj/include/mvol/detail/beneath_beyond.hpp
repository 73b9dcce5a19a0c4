#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "mvol/linalg.hpp"
#include "mvol/rational.hpp"

namespace mvol::detail {

using IntPoint = std::vector<Integer>;

struct HullOutput {
    /// Indices of the extreme points, ascending.
    std::vector<std::size_t> vertices;
    /// Placing triangulation: each entry holds d+1 point indices.
    std::vector<std::vector<std::size_t>> simplices;
    /// Sum of |det| over the simplices, i.e. d! times the Euclidean volume.
    Integer normalized_volume = 0;
};

/**
 * Incremental beneath-beyond convex hull for a full-dimensional set of
 * integer points in Z^d, d >= 2.
 *
 * The boundary is kept as a simplicial complex (coplanar pieces are allowed).
 * Each point is placed over the boundary simplices it sees strictly; the cones
 * from the new apex to those simplices form the placing triangulation. Points
 * wait in the outside set of one facet they see, and the furthest point of a
 * facet is placed next. All predicates are exact.
 */
class BeneathBeyond {
public:
    BeneathBeyond(const std::vector<IntPoint>& points, std::size_t dim) : pts_(points), dim_(dim) {}

    HullOutput run() {
        HullOutput out;
        const auto seed = initial_simplex();
        interior_sum_.assign(dim_, Integer(0));
        for (auto s : seed)
            for (std::size_t j = 0; j < dim_; ++j) interior_sum_[j] += pts_[s][j];

        out.simplices.push_back(seed);
        out.normalized_volume += simplex_volume(seed);

        for (std::size_t j = 0; j <= dim_; ++j) {
            Facet f;
            for (std::size_t k = 0; k <= dim_; ++k)
                if (k != j) f.verts.push_back(seed[k]);
            facets_.push_back(std::move(f));
        }
        // Facet j omits seed[j]; its neighbour across seed[k] is facet k.
        for (std::size_t j = 0; j <= dim_; ++j) {
            for (std::size_t k = 0; k <= dim_; ++k)
                if (k != j) facets_[j].neighbors.push_back(k);
            set_plane(facets_[j]);
        }

        std::vector<bool> in_seed(pts_.size(), false);
        for (auto s : seed) in_seed[s] = true;
        for (std::size_t p = 0; p < pts_.size(); ++p) {
            if (in_seed[p]) continue;
            for (std::size_t f = 0; f <= dim_; ++f)
                if (height(p, facets_[f]) > 0) {
                    facets_[f].outside.push_back(p);
                    break;
                }
        }

        std::vector<std::size_t> pending;
        for (std::size_t f = 0; f <= dim_; ++f) pending.push_back(f);
        while (!pending.empty()) {
            const std::size_t fid = pending.back();
            pending.pop_back();
            if (!facets_[fid].alive || facets_[fid].outside.empty()) continue;
            const std::size_t apex = furthest(facets_[fid]);
            place(apex, fid, out, pending);
        }

        out.vertices = extreme_points();
        return out;
    }

private:
    struct Facet {
        std::vector<std::size_t> verts;
        /// neighbors[k] is the facet sharing every vertex except verts[k].
        std::vector<std::size_t> neighbors;
        IntPoint normal;
        Integer offset;
        std::vector<std::size_t> outside;
        bool alive = true;
        std::size_t visit_epoch = 0;
        bool visible = false;
    };

    std::vector<std::size_t> initial_simplex() const {
        std::size_t first = 0;
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (std::lexicographical_compare(pts_[i].begin(), pts_[i].end(), pts_[first].begin(), pts_[first].end()))
                first = i;
        std::vector<std::size_t> chosen{first};
        Matrix basis;
        for (std::size_t i = 0; i < pts_.size() && chosen.size() <= dim_; ++i) {
            Vector diff(dim_);
            for (std::size_t j = 0; j < dim_; ++j) diff[j] = Rational(pts_[i][j] - pts_[first][j]);
            Matrix trial = basis;
            trial.push_back(diff);
            if (rank(trial) == trial.size()) {
                basis = std::move(trial);
                chosen.push_back(i);
            }
        }
        if (chosen.size() != dim_ + 1) throw PreconditionError("point set is not full-dimensional");
        return chosen;
    }

    Integer simplex_volume(const std::vector<std::size_t>& s) const {
        DenseMatrix<Integer> m(dim_, IntPoint(dim_));
        for (std::size_t i = 1; i <= dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m[i - 1][j] = pts_[s[i]][j] - pts_[s[0]][j];
        return abs(determinant_bareiss(std::move(m)));
    }

    void set_plane(Facet& f) const {
        DenseMatrix<Integer> edges(dim_ - 1, IntPoint(dim_));
        for (std::size_t i = 1; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) edges[i - 1][j] = pts_[f.verts[i]][j] - pts_[f.verts[0]][j];
        f.normal.assign(dim_, Integer(0));
        Integer g = 0;
        for (std::size_t c = 0; c < dim_; ++c) {
            DenseMatrix<Integer> minor(dim_ - 1, IntPoint());
            for (std::size_t i = 0; i + 1 < dim_; ++i) {
                minor[i].reserve(dim_ - 1);
                for (std::size_t j = 0; j < dim_; ++j)
                    if (j != c) minor[i].push_back(edges[i][j]);
            }
            f.normal[c] = determinant_bareiss(std::move(minor));
            if (c % 2 == 1) f.normal[c] = -f.normal[c];
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), f.normal[c].get_mpz_t());
        }
        if (g > 1)
            for (auto& x : f.normal) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        f.offset = 0;
        for (std::size_t j = 0; j < dim_; ++j) f.offset += f.normal[j] * pts_[f.verts[0]][j];
        // interior_sum_ is (d+1) times an interior point; it must lie beneath.
        Integer side = 0;
        for (std::size_t j = 0; j < dim_; ++j) side += f.normal[j] * interior_sum_[j];
        if (side > f.offset * static_cast<unsigned long>(dim_ + 1)) {
            for (auto& x : f.normal) x = -x;
            f.offset = -f.offset;
        }
    }

    /// Positive iff the point lies strictly beyond the facet's hyperplane.
    Integer height(std::size_t p, const Facet& f) const {
        Integer acc = 0;
        for (std::size_t j = 0; j < dim_; ++j) mpz_addmul(acc.get_mpz_t(), f.normal[j].get_mpz_t(), pts_[p][j].get_mpz_t());
        acc -= f.offset;
        return acc;
    }

    std::size_t furthest(const Facet& f) const {
        std::size_t best = f.outside.front();
        Integer best_h = height(best, f);
        for (std::size_t i = 1; i < f.outside.size(); ++i) {
            Integer h = height(f.outside[i], f);
            if (h > best_h) {
                best_h = std::move(h);
                best = f.outside[i];
            }
        }
        return best;
    }

    void place(std::size_t apex, std::size_t start, HullOutput& out, std::vector<std::size_t>& pending) {
        ++epoch_;
        std::vector<std::size_t> visible{start};
        facets_[start].visit_epoch = epoch_;
        facets_[start].visible = true;
        for (std::size_t i = 0; i < visible.size(); ++i) {
            for (auto nb : facets_[visible[i]].neighbors) {
                Facet& g = facets_[nb];
                if (g.visit_epoch == epoch_) continue;
                g.visit_epoch = epoch_;
                g.visible = height(apex, g) > 0;
                if (g.visible) visible.push_back(nb);
            }
        }

        std::vector<std::size_t> created;
        std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> open_ridges;
        for (auto fid : visible) {
            std::vector<std::size_t> cell = facets_[fid].verts;
            cell.insert(cell.begin(), apex);
            out.normalized_volume += simplex_volume(cell);
            out.simplices.push_back(std::move(cell));

            for (std::size_t k = 0; k < dim_; ++k) {
                const std::size_t other = facets_[fid].neighbors[k];
                if (facets_[other].visible && facets_[other].visit_epoch == epoch_) continue;
                Facet h;
                h.verts = facets_[fid].verts;
                h.verts[k] = apex;
                h.neighbors.assign(dim_, 0);
                h.neighbors[k] = other;
                set_plane(h);
                const std::size_t hid = facets_.size();
                for (auto& slot : facets_[other].neighbors)
                    if (slot == fid) slot = hid;
                facets_.push_back(std::move(h));
                created.push_back(hid);
                for (std::size_t i = 0; i < dim_; ++i) {
                    if (i == k) continue;
                    std::vector<std::size_t> key;
                    for (std::size_t t = 0; t < dim_; ++t)
                        if (t != i) key.push_back(facets_[hid].verts[t]);
                    std::sort(key.begin(), key.end());
                    auto it = open_ridges.find(key);
                    if (it == open_ridges.end()) {
                        open_ridges.emplace(std::move(key), std::make_pair(hid, i));
                    } else {
                        facets_[hid].neighbors[i] = it->second.first;
                        facets_[it->second.first].neighbors[it->second.second] = hid;
                        open_ridges.erase(it);
                    }
                }
            }
        }

        std::vector<std::size_t> orphans;
        for (auto fid : visible) {
            Facet& f = facets_[fid];
            f.alive = false;
            for (auto p : f.outside)
                if (p != apex) orphans.push_back(p);
            f.outside.clear();
            f.outside.shrink_to_fit();
        }
        for (auto p : orphans) {
            bool assigned = false;
            for (auto hid : created)
                if (height(p, facets_[hid]) > 0) {
                    facets_[hid].outside.push_back(p);
                    assigned = true;
                    break;
                }
            if (assigned) continue;
            // Not beyond any new facet: confirm against the whole boundary.
            for (std::size_t fid = 0; fid < facets_.size(); ++fid)
                if (facets_[fid].alive && height(p, facets_[fid]) > 0) {
                    facets_[fid].outside.push_back(p);
                    pending.push_back(fid);
                    break;
                }
        }
        for (auto hid : created)
            if (!facets_[hid].outside.empty()) pending.push_back(hid);
    }

    /// A boundary vertex is extreme iff the normals of its incident facets span R^d.
    std::vector<std::size_t> extreme_points() const {
        std::map<std::size_t, Matrix> incident;
        for (const auto& f : facets_) {
            if (!f.alive) continue;
            for (auto v : f.verts) {
                Vector n(dim_);
                for (std::size_t j = 0; j < dim_; ++j) n[j] = Rational(f.normal[j]);
                incident[v].push_back(std::move(n));
            }
        }
        std::vector<std::size_t> result;
        for (auto& [v, normals] : incident) {
            std::sort(normals.begin(), normals.end(), lex_less);
            normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
            if (normals.size() >= dim_ && rank(normals) == dim_) result.push_back(v);
        }
        return result;
    }

    const std::vector<IntPoint>& pts_;
    std::size_t dim_;
    IntPoint interior_sum_;
    std::vector<Facet> facets_;
    std::size_t epoch_ = 0;
};

inline HullOutput beneath_beyond(const std::vector<IntPoint>& points, std::size_t dim) {
    return BeneathBeyond(points, dim).run();
}

}  // namespace mvol::detail
