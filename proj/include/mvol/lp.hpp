#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mvol/error.hpp"

namespace mvol {

enum class Relation { less_equal, greater_equal, equal };

enum class LpStatus { optimal, infeasible, unbounded };

/**
 * Linear program "maximize c.x subject to rows", over an exact ordered field.
 * Variables are free unless marked non-negative.
 */
template <typename Field>
struct LinearProgram {
    struct Row {
        std::vector<Field> coeffs;
        Relation relation;
        Field rhs;
    };

    explicit LinearProgram(std::size_t num_vars)
        : objective(num_vars, Field(0)), nonnegative(num_vars, false) {}

    std::size_t num_vars() const { return objective.size(); }

    void add_row(std::vector<Field> coeffs, Relation rel, Field rhs) {
        if (coeffs.size() != num_vars()) throw DimensionError("LP row length does not match the variable count");
        rows.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    std::vector<Field> objective;
    std::vector<bool> nonnegative;
    std::vector<Row> rows;
};

template <typename Field>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Field value = 0;
    std::vector<Field> x;
};

namespace detail {

/**
 * Dense two-phase primal simplex with Bland's rule, so it terminates on
 * degenerate problems. Pivots are exact.
 */
template <typename Field>
class SimplexTableau {
public:
    SimplexTableau(std::vector<std::vector<Field>> rows, std::vector<std::size_t> basis, std::size_t cols)
        : t_(std::move(rows)), basis_(std::move(basis)), cols_(cols), allowed_(cols, true) {}

    /// Runs to optimality for the given costs. Returns false when unbounded.
    bool optimize(const std::vector<Field>& cost) {
        reduced_.assign(cols_, Field(0));
        for (std::size_t j = 0; j < cols_; ++j) {
            reduced_[j] = cost[j];
            for (std::size_t i = 0; i < t_.size(); ++i)
                if (t_[i][j] != 0 && cost[basis_[i]] != 0) reduced_[j] -= cost[basis_[i]] * t_[i][j];
        }
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (allowed_[j] && reduced_[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter == cols_) return true;
            std::size_t leave = t_.size();
            Field best_ratio;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][enter] <= 0) continue;
                Field ratio = t_[i][cols_] / t_[i][enter];
                if (leave == t_.size() || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == t_.size()) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const Field inv = Field(1) / t_[r][c];
        for (auto& x : t_[r])
            if (x != 0) x *= inv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == r || t_[i][c] == 0) continue;
            const Field f = t_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
        }
        if (!reduced_.empty() && reduced_[c] != 0) {
            const Field f = reduced_[c];
            for (std::size_t j = 0; j < cols_; ++j)
                if (t_[r][j] != 0) reduced_[j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    Field objective_value(const std::vector<Field>& cost) const {
        Field v = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) v += cost[basis_[i]] * t_[i][cols_];
        return v;
    }

    /// Pivots basic columns in [first, cols) out of the basis; drops redundant rows.
    void expel(std::size_t first) {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < first) {
                ++i;
                continue;
            }
            std::size_t c = 0;
            while (c < first && t_[i][c] == 0) ++c;
            if (c < first) {
                pivot(i, c);
                ++i;
            } else {
                t_.erase(t_.begin() + static_cast<long>(i));
                basis_.erase(basis_.begin() + static_cast<long>(i));
            }
        }
        for (std::size_t j = first; j < cols_; ++j) allowed_[j] = false;
    }

    std::vector<Field> values() const {
        std::vector<Field> x(cols_, Field(0));
        for (std::size_t i = 0; i < t_.size(); ++i) x[basis_[i]] = t_[i][cols_];
        return x;
    }

private:
    std::vector<std::vector<Field>> t_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    std::vector<bool> allowed_;
    std::vector<Field> reduced_;
};

}  // namespace detail

template <typename Field>
LpSolution<Field> maximize(const LinearProgram<Field>& lp) {
    const std::size_t n = lp.num_vars();
    // Column layout: structural (free variables split in two), then slacks, then artificials.
    std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos[j] = cols++;
        if (!lp.nonnegative[j]) neg[j] = cols++;
    }
    std::vector<std::size_t> slack(lp.rows.size(), SIZE_MAX);
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
        if (lp.rows[i].relation != Relation::equal) slack[i] = cols++;
    const std::size_t real_cols = cols;

    const std::size_t m = lp.rows.size();
    std::vector<std::vector<Field>> rows(m);
    std::vector<std::size_t> basis(m, SIZE_MAX);
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& src = lp.rows[i];
        auto& row = rows[i];
        row.assign(real_cols, Field(0));
        for (std::size_t j = 0; j < n; ++j) {
            row[pos[j]] = src.coeffs[j];
            if (neg[j] != SIZE_MAX) row[neg[j]] = -src.coeffs[j];
        }
        if (slack[i] != SIZE_MAX) row[slack[i]] = src.relation == Relation::less_equal ? Field(1) : Field(-1);
        Field rhs = src.rhs;
        if (rhs < 0) {
            for (auto& x : row) x = -x;
            rhs = -rhs;
        }
        row.push_back(rhs);
        if (slack[i] != SIZE_MAX && row[slack[i]] == 1) basis[i] = slack[i];
        else needs_artificial.push_back(i);
    }
    const std::size_t total = real_cols + needs_artificial.size();
    for (auto& row : rows) {
        Field rhs = row.back();
        row.pop_back();
        row.resize(total, Field(0));
        row.push_back(std::move(rhs));
    }
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
        rows[needs_artificial[k]][real_cols + k] = 1;
        basis[needs_artificial[k]] = real_cols + k;
    }

    detail::SimplexTableau<Field> tableau(std::move(rows), std::move(basis), total);
    LpSolution<Field> result;
    if (!needs_artificial.empty()) {
        std::vector<Field> phase1(total, Field(0));
        for (std::size_t j = real_cols; j < total; ++j) phase1[j] = -1;
        tableau.optimize(phase1);
        if (tableau.objective_value(phase1) < 0) {
            result.status = LpStatus::infeasible;
            return result;
        }
        tableau.expel(real_cols);
    }
    std::vector<Field> cost(total, Field(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[pos[j]] = lp.objective[j];
        if (neg[j] != SIZE_MAX) cost[neg[j]] = -lp.objective[j];
    }
    if (!tableau.optimize(cost)) {
        result.status = LpStatus::unbounded;
        return result;
    }
    const auto raw = tableau.values();
    result.status = LpStatus::optimal;
    result.x.assign(n, Field(0));
    for (std::size_t j = 0; j < n; ++j) {
        result.x[j] = raw[pos[j]];
        if (neg[j] != SIZE_MAX) result.x[j] -= raw[neg[j]];
    }
    result.value = 0;
    for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
    return result;
}

}  // namespace mvol
