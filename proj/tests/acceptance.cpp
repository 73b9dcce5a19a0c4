// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mvol/cli.hpp"
#include "mvol/laurent.hpp"
#include "mvol/mixed_volume.hpp"
#include "mvol/reduction.hpp"
#include "oracles.hpp"

using namespace mvol;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Accumulates checks; the first failing instance is kept for the report.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        ++checked_;
        if (!ok && first_failure_.empty()) first_failure_ = what;
        failed_ += ok ? 0 : 1;
    }

    Outcome outcome(const std::string& summary) const {
        Outcome o;
        o.pass = failed_ == 0 && checked_ > 0;
        o.detail = summary + ", " + std::to_string(checked_ - failed_) + "/" + std::to_string(checked_) + " checks";
        if (!first_failure_.empty()) o.detail += ", first failure: " + first_failure_;
        return o;
    }

private:
    int checked_ = 0;
    int failed_ = 0;
    std::string first_failure_;
};

PointConfiguration random_config(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    return PointConfiguration(n, oracle::random_distinct_points(rng, m, n, -3, 3));
}

ConvexPolytope random_polytope(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_int_distribution<std::size_t> count(1, 6);
    return convex_hull(PointConfiguration(dim, oracle::random_points(rng, count(rng), dim, -2, 2)));
}

PolytopeTuple random_tuple(std::mt19937_64& rng, std::size_t dim) {
    std::vector<ConvexPolytope> ps;
    for (std::size_t i = 0; i < dim; ++i) ps.push_back(random_polytope(rng, dim));
    return PolytopeTuple(dim, std::move(ps));
}

std::string describe(const PointConfiguration& c) {
    std::string s = "{";
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += i ? " (" : "(";
        for (std::size_t j = 0; j < c.ambient_dim(); ++j) s += (j ? "," : "") + to_string(c[i][j]);
        s += ")";
    }
    return s + "}";
}

// 1. Equality under the inclusion-exclusion engine, lhs also checked against a brute-force oracle.
Outcome theorem_ie() {
    std::mt19937_64 rng(1001);
    Tally t;
    int instances = 0;
    for (std::size_t n : {2u, 3u})
        for (std::size_t m = n + 1; m <= 5; ++m)
            for (int k = 0; k < 12; ++k, ++instances) {
                const auto c = random_config(rng, n, m);
                const auto r = verify_main_theorem(c, Engine::ie, 0);
                t.check(r.equal && r.lhs == oracle::brute_force_nvol(c.points()), describe(c));
            }
    return t.outcome(std::to_string(instances) + " configurations, n in {2,3}, m <= 5, engine ie");
}

// 2. Mixed-cell engine on the reduction simplices.
Outcome theorem_cells() {
    std::mt19937_64 rng(1002);
    Tally t;
    int instances = 0;
    for (std::size_t n : {2u, 3u})
        for (std::size_t m = n + 1; m <= 6; ++m)
            for (int k = 0; k < 4; ++k, ++instances) {
                const auto c = random_config(rng, n, m);
                const auto mv = mixed_volume_cells(build_simplices(c).as_tuple(), 500 + instances);
                t.check(mv == normalized_volume(c), describe(c));
            }
    return t.outcome(std::to_string(instances) + " configurations, m <= 6, engine cells");
}

// 3. Affinely dependent configurations give zero on both sides.
Outcome degenerate() {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<long> coord(-3, 3);
    Tally t;
    int instances = 0;
    for (; instances < 12; ++instances) {
        const std::size_t n = 2 + instances % 2;
        const long a = 1 + instances % 3, b = -1 + instances % 2;
        std::vector<Point> pts;
        while (pts.size() < n + 1 + static_cast<std::size_t>(instances % 2)) {
            const long s = coord(rng), u = coord(rng);
            // A line in R^2, a plane in R^3.
            Point p = n == 2 ? oracle::ints({s, a * s + 1}) : oracle::ints({s, u, a * s + b * u});
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        const PointConfiguration c(n, pts);
        for (Engine e : {Engine::ie, Engine::cells}) {
            const auto r = verify_main_theorem(c, e, instances);
            t.check(affine_dim(c) < n && r.lhs == 0 && r.rhs == 0, describe(c));
        }
    }
    return t.outcome(std::to_string(instances) + " affinely dependent configurations, both engines");
}

// 4. m = n + 1: simplex volume, segment mixed volume and the bordered determinant agree.
Outcome simplex_determinant() {
    std::mt19937_64 rng(1004);
    Tally t;
    int instances = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (int k = 0; k < 6; ++k, ++instances) {
            const auto c = random_config(rng, n, n + 1);
            std::vector<Segment> segs;
            for (const auto& s : build_simplices(c).simplices) segs.push_back({s.vertices[0], s.vertices[1]});
            Matrix bordered = zero_matrix(n + 1, n + 1);
            for (std::size_t j = 0; j <= n; ++j) {
                bordered[0][j] = 1;
                for (std::size_t i = 0; i < n; ++i) bordered[i + 1][j] = c[j][i];
            }
            const Rational det = abs(oracle::cofactor_det(bordered));
            t.check(simplex_normalized_volume(Simplex{n, c.points()}) == det && segment_mixed_volume(segs) == det,
                    describe(c));
        }
    return t.outcome(std::to_string(instances) + " simplices, n <= 4");
}

// 5. Both engines agree on random lattice tuples.
Outcome engine_agreement() {
    std::mt19937_64 rng(1005);
    Tally t;
    int instances = 0;
    for (; instances < 36; ++instances) {
        const auto tuple = random_tuple(rng, 2 + instances % 2);
        t.check(mixed_volume_ie(tuple) == mixed_volume_cells(tuple, instances), "tuple " + std::to_string(instances));
    }
    return t.outcome(std::to_string(instances) + " tuples in R^2 and R^3, <= 6 vertices each");
}

// 6. Symmetry, multilinearity in the first slot, translation invariance, diagonal identity.
Outcome axioms() {
    std::mt19937_64 rng(1006);
    std::uniform_int_distribution<long> shift(-4, 4);
    Tally t;
    const int per_axiom = 20;
    for (int k = 0; k < per_axiom; ++k) {
        const std::size_t dim = 2 + k % 2;
        const auto tuple = random_tuple(rng, dim);
        const Rational mv = mixed_volume_ie(tuple);
        const std::string tag = " #" + std::to_string(k);

        auto perm = tuple.polytopes();
        std::shuffle(perm.begin(), perm.end(), rng);
        t.check(mixed_volume_ie(PolytopeTuple(dim, perm)) == mv, "symmetry" + tag);

        const auto q = random_polytope(rng, dim);
        auto with_q = tuple.polytopes();
        with_q[0] = q;
        auto with_sum = tuple.polytopes();
        with_sum[0] = minkowski_sum(tuple.polytopes()[0], q);
        t.check(mixed_volume_ie(PolytopeTuple(dim, with_sum)) == mv + mixed_volume_ie(PolytopeTuple(dim, with_q)),
                "multilinearity" + tag);

        std::vector<ConvexPolytope> moved;
        for (const auto& p : tuple.polytopes()) {
            Point v(dim);
            for (auto& x : v) {
                x = Rational(shift(rng), 2);
                x.canonicalize();
            }
            moved.push_back(minkowski_sum(p, convex_hull(PointConfiguration(dim, {v}))));
        }
        t.check(mixed_volume_ie(PolytopeTuple(dim, moved)) == mv, "translation" + tag);

        const auto p = random_polytope(rng, dim);
        t.check(mixed_volume_ie(PolytopeTuple(dim, std::vector<ConvexPolytope>(dim, p))) ==
                    oracle::brute_force_nvol(p.vertices()),
                "diagonal" + tag);
    }
    return t.outcome(std::to_string(per_axiom) + " instances per axiom");
}

// 7. Newton polytopes of G are the reduction simplices, and the BKK bound of G is nvol(conv P).
Outcome bkk_structure() {
    std::mt19937_64 rng(1007);
    Tally t;
    int instances = 0, redraws = 0;
    for (; instances < 24; ++instances) {
        const std::size_t n = 2 + instances % 2;
        const std::size_t m = n + 1 + static_cast<std::size_t>(instances / 2) % (5 - n);
        std::vector<Exponent> cols;
        for (const auto& p : oracle::random_distinct_points(rng, m, n, -3, 3)) {
            Exponent a;
            for (const auto& x : p) a.push_back(x.get_num().get_si());
            cols.push_back(a);
        }
        const ExponentMatrix exps(cols);
        std::uint64_t seed = 7000 + instances;
        auto data = build_F(exps, seed).data;
        while (detail::has_zero(data.K)) {
            ++redraws;
            data = build_F(exps, ++seed).data;
        }
        const auto g = build_G(exps, data);
        const auto r = build_simplices(exps.as_points());
        bool same = g.size() == r.simplices.size();
        for (std::size_t i = 0; same && i < g.size(); ++i) {
            auto expected = r.simplices[i].vertices;
            std::sort(expected.begin(), expected.end(), lex_less);
            same = newton_polytope(g[i]).vertices() == expected;
        }
        const auto c = exps.as_points();
        t.check(same && bkk_bound(g, Engine::ie, 0) == oracle::brute_force_nvol(c.points()), describe(c));
    }
    return t.outcome(std::to_string(instances) + " exponent matrices, " + std::to_string(redraws) +
                     " kernel redraws");
}

// 8. Both sides scale by lambda^n.
Outcome scaling() {
    std::mt19937_64 rng(1008);
    Tally t;
    int instances = 0;
    for (; instances < 12; ++instances) {
        const std::size_t n = 2 + instances % 2;
        const auto c = random_config(rng, n, n + 1 + instances % 2);
        const auto base = verify_main_theorem(c, Engine::ie, 0);
        for (const Rational& lambda : {Rational(1, 2), Rational(2), Rational(3)}) {
            std::vector<Point> scaled;
            for (const auto& p : c.points()) scaled.push_back(lambda * p);
            const auto r = verify_main_theorem(PointConfiguration(n, scaled), Engine::ie, 0);
            const Rational f = power(lambda, static_cast<unsigned>(n));
            t.check(r.lhs == f * base.lhs && r.rhs == f * base.rhs, describe(c) + " lambda " + to_string(lambda));
        }
    }
    return t.outcome(std::to_string(instances) + " configurations, lambda in {1/2, 2, 3}");
}

// 9. Benchmark smoke test.
Outcome bench_smoke() {
    cli::JobSpec spec;
    spec.command = cli::Command::bench;
    spec.bench_max_size = 5;
    const auto r = cli::run(spec);
    Tally t;
    t.check(r.status == cli::kExitOk, "bench exit status " + std::to_string(r.status));
    std::istringstream csv(r.output);
    std::string line;
    std::getline(csv, line);
    t.check(line == "family,size,engine,wall_time_ms,mixed_volume", "header: " + line);
    double boxes5 = -1, segments5 = -1, det5 = -1;
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        bool ok = f.size() == 5;
        double ms = -1;
        if (ok) {
            try {
                ms = std::stod(f[3]);
                parse_rational(f[4]);
            } catch (const std::exception&) {
                ok = false;
            }
        }
        t.check(ok && ms >= 0, "row: " + line);
        if (ok && f[1] == "5") {
            if (f[0] == "boxes") boxes5 = ms;
            if (f[0] == "segments" && f[2] == "ie") segments5 = ms;
            if (f[0] == "segments" && f[2] == "det") det5 = ms;
        }
    }
    t.check(rows == 16, "row count " + std::to_string(rows));
    t.check(segments5 >= 0 && boxes5 > segments5, "segments not faster than boxes at n = 5 (same engine)");
    t.check(det5 >= 0 && boxes5 > det5, "determinant not faster than boxes at n = 5");
    std::ostringstream summary;
    summary << "sizes 2..5, n = 5: boxes " << boxes5 << " ms, segments " << segments5 << " ms (ie), " << det5
            << " ms (det)";
    return t.outcome(summary.str());
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"reduction equality, inclusion-exclusion engine", theorem_ie},
        {"reduction equality, mixed-cell engine", theorem_cells},
        {"affinely dependent configurations give zero", degenerate},
        {"simplex case equals the bordered determinant", simplex_determinant},
        {"engine agreement", engine_agreement},
        {"mixed-volume axioms", axioms},
        {"Newton polytopes of G and the BKK bound", bkk_structure},
        {"scaling homogeneity", scaling},
        {"benchmark smoke test", bench_smoke},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %zu: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs.count());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
