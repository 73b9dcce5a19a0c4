#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mvol/error.hpp"
#include "mvol/geometry.hpp"
#include "mvol/linalg.hpp"
#include "mvol/mixed_volume.hpp"
#include "mvol/rational.hpp"
#include "mvol/reduction.hpp"

namespace mvol {

using Exponent = std::vector<std::int64_t>;

/// Sparse Laurent polynomial with rational coefficients; zero coefficients are never stored.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(std::size_t num_vars) : num_vars_(num_vars) {
        if (num_vars_ == 0) throw DimensionError("a Laurent polynomial needs at least one variable");
    }

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::map<Exponent, Rational>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Adds c * x^a, merging with an existing term of the same exponent.
    LaurentPolynomial& add_term(const Exponent& a, const Rational& c) {
        if (a.size() != num_vars_)
            throw DimensionError("exponent of length " + std::to_string(a.size()) + " in a polynomial in " +
                                 std::to_string(num_vars_) + " variables");
        if (c == 0) return *this;
        auto [it, inserted] = terms_.try_emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (const auto& [a, c] : terms_) s.push_back(a);
        return s;
    }

    LaurentPolynomial operator*(const LaurentPolynomial& other) const {
        if (other.num_vars_ != num_vars_) throw DimensionError("product of polynomials in different variable counts");
        LaurentPolynomial r(num_vars_);
        for (const auto& [a, c] : terms_)
            for (const auto& [b, d] : other.terms_) {
                Exponent e(num_vars_);
                for (std::size_t j = 0; j < num_vars_; ++j) e[j] = a[j] + b[j];
                r.add_term(e, c * d);
            }
        return r;
    }

    bool operator==(const LaurentPolynomial& other) const {
        return num_vars_ == other.num_vars_ && terms_ == other.terms_;
    }

private:
    std::size_t num_vars_;
    std::map<Exponent, Rational> terms_;
};

/// Nonempty list of Laurent polynomials over one set of variables.
class LaurentSystem {
public:
    explicit LaurentSystem(std::vector<LaurentPolynomial> polys) : polys_(std::move(polys)) {
        if (polys_.empty()) throw PreconditionError("a Laurent system needs at least one polynomial");
        for (const auto& f : polys_)
            if (f.num_vars() != polys_.front().num_vars())
                throw DimensionError("polynomials of a system must share their variables");
    }

    std::size_t size() const noexcept { return polys_.size(); }
    std::size_t num_vars() const noexcept { return polys_.front().num_vars(); }
    bool is_square() const noexcept { return size() == num_vars(); }
    const std::vector<LaurentPolynomial>& polynomials() const noexcept { return polys_; }
    const LaurentPolynomial& operator[](std::size_t i) const { return polys_[i]; }

    bool operator==(const LaurentSystem& other) const { return polys_ == other.polys_; }

private:
    std::vector<LaurentPolynomial> polys_;
};

/// Integer n x m matrix whose columns are the exponents of a row of monomials.
class ExponentMatrix {
public:
    explicit ExponentMatrix(std::vector<Exponent> columns) : columns_(std::move(columns)) {
        if (columns_.empty()) throw PreconditionError("an exponent matrix needs at least one column");
        for (const auto& c : columns_)
            if (c.size() != columns_.front().size() || c.empty())
                throw DimensionError("exponent matrix columns must share a positive length");
    }

    std::size_t rows() const noexcept { return columns_.front().size(); }
    std::size_t cols() const noexcept { return columns_.size(); }
    const std::vector<Exponent>& columns() const noexcept { return columns_; }

    PointConfiguration as_points() const {
        std::vector<Point> pts;
        for (const auto& c : columns_) {
            Point p;
            for (auto x : c) p.emplace_back(static_cast<long>(x));
            pts.push_back(std::move(p));
        }
        return PointConfiguration(rows(), std::move(pts));
    }

private:
    std::vector<Exponent> columns_;
};

/// Weight vector alpha selecting the minimizing face of a support.
struct DirectionVector {
    Vector alpha;
};

/// Coefficient data shared by the F and G systems: A K = 0, rank A = n, rank K = m - n.
struct SystemBuildData {
    Matrix A;
    Matrix K;
    std::uint64_t seed = 0;
};

struct FSystem {
    LaurentSystem system;
    SystemBuildData data;
};

inline Point exponent_point(const Exponent& a) {
    Point p;
    p.reserve(a.size());
    for (auto x : a) p.emplace_back(static_cast<long>(x));
    return p;
}

inline ConvexPolytope newton_polytope(const LaurentPolynomial& f) {
    if (f.empty()) throw PreconditionError("the zero polynomial has no Newton polytope");
    std::vector<Point> pts;
    for (const auto& [a, c] : f.terms()) pts.push_back(exponent_point(a));
    return convex_hull(PointConfiguration(f.num_vars(), std::move(pts)));
}

/// nvol of the common Newton polytope of a square system with identical supports.
inline Rational kushnirenko_bound(const LaurentSystem& system) {
    if (!system.is_square())
        throw DimensionError("Kushnirenko bound needs a square system (" + std::to_string(system.size()) +
                             " polynomials in " + std::to_string(system.num_vars()) + " variables)");
    const auto support = system[0].support();
    if (support.empty()) throw PreconditionError("the zero polynomial has no Newton polytope");
    for (const auto& f : system.polynomials())
        if (f.support() != support)
            throw PreconditionError("supports differ between polynomials; use the BKK bound instead");
    return newton_polytope(system[0]).normalized_volume();
}

/// Mixed volume of the Newton polytopes of a square system.
inline Rational bkk_bound(const LaurentSystem& system, Engine engine, std::uint64_t seed) {
    if (!system.is_square())
        throw DimensionError("BKK bound needs a square system (" + std::to_string(system.size()) +
                             " polynomials in " + std::to_string(system.num_vars()) + " variables)");
    std::vector<ConvexPolytope> ps;
    for (const auto& f : system.polynomials()) ps.push_back(newton_polytope(f));
    return mixed_volume(PolytopeTuple(system.num_vars(), std::move(ps)), engine, seed);
}

inline Rational weight(const Vector& alpha, const Exponent& a) {
    Rational s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += alpha[j] * Rational(static_cast<long>(a[j]));
    return s;
}

/// Terms of f whose exponents minimize <alpha, .>; coefficients are kept.
inline LaurentPolynomial initial_form(const LaurentPolynomial& f, const DirectionVector& dir) {
    if (dir.alpha.size() != f.num_vars())
        throw DimensionError("direction of length " + std::to_string(dir.alpha.size()) + " for a polynomial in " +
                             std::to_string(f.num_vars()) + " variables");
    LaurentPolynomial r(f.num_vars());
    std::optional<Rational> best;
    for (const auto& [a, c] : f.terms()) {
        const Rational w = weight(dir.alpha, a);
        if (!best || w < *best) best = w;
    }
    for (const auto& [a, c] : f.terms())
        if (weight(dir.alpha, a) == *best) r.add_term(a, c);
    return r;
}

inline LaurentSystem initial_system(const LaurentSystem& system, const DirectionVector& dir) {
    std::vector<LaurentPolynomial> polys;
    for (const auto& f : system.polynomials()) polys.push_back(initial_form(f, dir));
    return LaurentSystem(std::move(polys));
}

/// Basis of the null space of a full-row-rank n x m matrix, as an m x (m - n) matrix.
inline Matrix rational_kernel(const Matrix& a) {
    if (a.empty() || a[0].empty()) throw DimensionError("kernel of an empty matrix");
    const std::size_t n = a.size(), m = a[0].size();
    for (const auto& row : a)
        if (row.size() != m) throw DimensionError("ragged matrix");
    if (n > m || rank(a) != n)
        throw PreconditionError("kernel basis needs a full-row-rank matrix (rank " + std::to_string(rank(a)) +
                                ", rows " + std::to_string(n) + ")");
    return null_space(a, m);
}

namespace detail {

inline Rational random_coefficient(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-10, 9);
    std::uniform_int_distribution<long> den(1, 10);
    long p = num(rng);
    if (p >= 0) ++p;  // numerator in [-10, 10] \ {0}
    Rational r(p, den(rng));
    r.canonicalize();
    return r;
}

inline bool has_zero(const Matrix& k) {
    for (const auto& row : k)
        for (const auto& x : row)
            if (x == 0) return true;
    return false;
}

}  // namespace detail

/**
 * F(x) = A (x^P)^T for a random rational n x m matrix A with nonzero entries.
 * The kernel basis K is mixed by a random invertible matrix so that, for
 * almost every seed, all of its entries are nonzero.
 */
inline FSystem build_F(const ExponentMatrix& exponents, std::uint64_t seed) {
    const std::size_t n = exponents.rows(), m = exponents.cols();
    if (m <= n)
        throw PreconditionError("build_F needs more monomials than variables (m = " + std::to_string(m) +
                                ", n = " + std::to_string(n) + ")");
    if (exponents.as_points().has_duplicates()) throw PreconditionError("exponent matrix columns must be distinct");

    std::mt19937_64 rng(seed);
    Matrix a;
    bool full_rank = false;
    for (int attempt = 0; attempt < kLiftingRetryCap && !full_rank; ++attempt) {
        a = zero_matrix(n, m);
        for (auto& row : a)
            for (auto& x : row) x = detail::random_coefficient(rng);
        full_rank = rank(a) == n;
    }
    if (!full_rank) throw PreconditionError("could not draw a full-rank coefficient matrix");

    const Matrix basis = rational_kernel(a);
    const std::size_t d = m - n;
    Matrix k = basis;
    for (int attempt = 0; attempt < kLiftingRetryCap; ++attempt) {
        Matrix mix = zero_matrix(d, d);
        for (auto& row : mix)
            for (auto& x : row) x = detail::random_coefficient(rng);
        if (determinant(mix) == 0) continue;
        k = multiply(basis, mix);
        if (!detail::has_zero(k)) break;
    }

    std::vector<LaurentPolynomial> polys;
    for (std::size_t i = 0; i < n; ++i) {
        LaurentPolynomial f(n);
        for (std::size_t j = 0; j < m; ++j) f.add_term(exponents.columns()[j], a[i][j]);
        polys.push_back(std::move(f));
    }
    return {LaurentSystem(std::move(polys)), {std::move(a), std::move(k), seed}};
}

/// G(x, y) = (x^P)^T - K y^T: m polynomials in the n + d variables (x, y).
inline LaurentSystem build_G(const ExponentMatrix& exponents, const SystemBuildData& data) {
    const std::size_t n = exponents.rows(), m = exponents.cols();
    if (m <= n) throw PreconditionError("build_G needs more monomials than variables");
    const std::size_t d = m - n;
    if (data.K.size() != m)
        throw DimensionError("kernel matrix has " + std::to_string(data.K.size()) + " rows, expected " +
                             std::to_string(m));
    for (const auto& row : data.K)
        if (row.size() != d)
            throw DimensionError("kernel matrix has " + std::to_string(row.size()) + " columns, expected " +
                                 std::to_string(d));
    std::vector<LaurentPolynomial> polys;
    for (std::size_t i = 0; i < m; ++i) {
        LaurentPolynomial g(m);
        Exponent hat = exponents.columns()[i];
        hat.resize(m, 0);
        g.add_term(hat, 1);
        for (std::size_t j = 0; j < d; ++j) {
            Exponent y(m, 0);
            y[n + j] = 1;
            g.add_term(y, -data.K[i][j]);
        }
        polys.push_back(std::move(g));
    }
    return LaurentSystem(std::move(polys));
}

}  // namespace mvol
