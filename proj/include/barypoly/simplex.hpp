#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "numerics.hpp"

/**
 * Dense two-phase tableau simplex over exact rationals, standard form
 *
 *     maximize  c^T x   subject to   A x = b,  x >= 0.
 *
 * Both phases use Bland's rule, so the method terminates and the result is a
 * deterministic function of the input and the column priority order. When the
 * system is infeasible the phase-one dual is returned as a Farkas certificate.
 */
namespace barypoly {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    RationalVector x;         ///< optimal basic solution (Optimal only)
    Rational objective = 0;
    RationalVector farkas;    ///< Infeasible only: y with y^T A <= 0 and y^T b > 0
};

namespace detail {

class Tableau
{
    public:
        Tableau(const RationalMatrix& a, const RationalVector& b, std::span<const std::size_t> priority)
            : m_(a.rows()), k_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1),
              basis_(a.rows()), priority_(a.cols() + a.rows()), sign_(a.rows(), 1)
        {
            for (std::size_t i = 0; i < m_; ++i) {
                if (b[i] < 0)
                    sign_[i] = -1;
                for (std::size_t j = 0; j < k_; ++j)
                    t_(i, j) = sign_[i] * a(i, j);
                t_(i, k_ + i) = 1;
                t_(i, rhs()) = sign_[i] * b[i];
                basis_[i] = k_ + i;
            }
            if (priority.empty()) {
                std::iota(priority_.begin(), priority_.end(), std::size_t{0});
            } else {
                for (std::size_t r = 0; r < k_; ++r)
                    priority_[priority[r]] = r;
                for (std::size_t i = 0; i < m_; ++i)
                    priority_[k_ + i] = k_ + i;
            }
        }

        std::size_t rhs() const { return k_ + m_; }
        bool is_artificial(std::size_t j) const { return j >= k_; }

        /// Bland's rule minimisation of cost over the columns allowed to enter.
        /// Returns false on unboundedness.
        bool minimize(const RationalVector& cost, bool artificials_may_enter)
        {
            const std::size_t ncols = k_ + m_;
            std::vector<bool> basic(ncols, false);
            for (;;) {
                std::fill(basic.begin(), basic.end(), false);
                for (auto j : basis_)
                    basic[j] = true;

                std::size_t entering = ncols;
                for (std::size_t j = 0; j < ncols; ++j) {
                    if (basic[j] || (!artificials_may_enter && is_artificial(j)))
                        continue;
                    if (entering != ncols && priority_[j] >= priority_[entering])
                        continue;
                    Rational reduced = cost[j];
                    for (std::size_t i = 0; i < m_; ++i)
                        if (!t_(i, j).is_zero())
                            reduced -= cost[basis_[i]] * t_(i, j);
                    if (reduced < 0)
                        entering = j;
                }
                if (entering == ncols)
                    return true;

                std::size_t leaving = m_;
                Rational best_ratio;
                for (std::size_t i = 0; i < m_; ++i) {
                    if (t_(i, entering) <= 0)
                        continue;
                    Rational ratio = t_(i, rhs()) / t_(i, entering);
                    if (leaving == m_ || ratio < best_ratio
                        || (ratio == best_ratio && priority_[basis_[i]] < priority_[basis_[leaving]])) {
                        leaving = i;
                        best_ratio = ratio;
                    }
                }
                if (leaving == m_)
                    return false;
                pivot(leaving, entering);
            }
        }

        void pivot(std::size_t row, std::size_t col)
        {
            Rational inv = 1 / t_(row, col);
            for (std::size_t j = 0; j <= rhs(); ++j)
                t_(row, j) *= inv;
            for (std::size_t i = 0; i < m_; ++i) {
                if (i == row || t_(i, col).is_zero())
                    continue;
                Rational f = t_(i, col);
                for (std::size_t j = 0; j <= rhs(); ++j)
                    if (!t_(row, j).is_zero())
                        t_(i, j) -= f * t_(row, j);
            }
            basis_[row] = col;
        }

        Rational artificial_sum() const
        {
            Rational s = 0;
            for (std::size_t i = 0; i < m_; ++i)
                if (is_artificial(basis_[i]))
                    s += t_(i, rhs());
            return s;
        }

        /// Pivots zero-level artificial variables out of the basis where an
        /// original column can replace them; rows that cannot are redundant.
        void drive_out_artificials()
        {
            for (std::size_t i = 0; i < m_; ++i) {
                if (!is_artificial(basis_[i]))
                    continue;
                std::size_t best = k_;
                for (std::size_t j = 0; j < k_; ++j)
                    if (!t_(i, j).is_zero() && (best == k_ || priority_[j] < priority_[best]))
                        best = j;
                if (best != k_)
                    pivot(i, best);
            }
        }

        /// Phase-one dual y for the sign-corrected rows, mapped back to the
        /// caller's rows: y^T A <= 0, y^T b = artificial_sum() > 0.
        RationalVector farkas(const RationalMatrix& a) const
        {
            RationalMatrix basis_cols(m_, m_);
            RationalVector cost_b(m_);
            for (std::size_t c = 0; c < m_; ++c) {
                std::size_t j = basis_[c];
                for (std::size_t i = 0; i < m_; ++i) {
                    if (is_artificial(j))
                        basis_cols(i, c) = (i == j - k_) ? 1 : 0;
                    else
                        basis_cols(i, c) = sign_[i] * a(i, j);
                }
                cost_b[c] = is_artificial(j) ? 1 : 0;
            }
            RationalVector y = solve_linear(basis_cols.transpose(), cost_b);
            for (std::size_t i = 0; i < m_; ++i)
                y[i] *= sign_[i];
            return y;
        }

        RationalVector primal() const
        {
            RationalVector x(k_);
            for (std::size_t i = 0; i < m_; ++i)
                if (!is_artificial(basis_[i]))
                    x[basis_[i]] = t_(i, rhs());
            return x;
        }

    private:
        std::size_t m_;
        std::size_t k_;
        RationalMatrix t_;
        std::vector<std::size_t> basis_;
        std::vector<std::size_t> priority_;
        std::vector<int> sign_;
};

}   // namespace detail

/**
 * Solves max c^T x s.t. Ax = b, x >= 0 exactly. An empty objective makes it a
 * pure feasibility problem (phase one only). `column_priority`, when given,
 * is a permutation of 0..A.cols()-1 listing columns from most to least
 * preferred for Bland's rule; it changes which basic solution is returned.
 */
inline LpResult solve_lp(const RationalMatrix& a, const RationalVector& b,
                         const RationalVector& objective = {},
                         std::span<const std::size_t> column_priority = {})
{
    if (b.size() != a.rows())
        throw Error(ErrorCode::DimensionMismatch, "solve_lp: right-hand side length");
    if (!objective.empty() && objective.size() != a.cols())
        throw Error(ErrorCode::DimensionMismatch, "solve_lp: objective length");
    if (!column_priority.empty() && column_priority.size() != a.cols())
        throw Error(ErrorCode::DimensionMismatch, "solve_lp: priority length");

    const std::size_t k = a.cols();
    const std::size_t m = a.rows();
    detail::Tableau tab(a, b, column_priority);

    RationalVector phase_one(k + m);
    for (std::size_t i = 0; i < m; ++i)
        phase_one[k + i] = 1;
    tab.minimize(phase_one, true);

    LpResult result;
    if (tab.artificial_sum() > 0) {
        result.status = LpStatus::Infeasible;
        result.farkas = tab.farkas(a);
        return result;
    }
    tab.drive_out_artificials();

    if (!objective.empty()) {
        RationalVector cost(k + m);
        for (std::size_t j = 0; j < k; ++j)
            cost[j] = -objective[j];
        if (!tab.minimize(cost, false)) {
            result.status = LpStatus::Unbounded;
            return result;
        }
    }
    result.status = LpStatus::Optimal;
    result.x = tab.primal();
    if (!objective.empty())
        result.objective = dot(objective, result.x);
    return result;
}

}   // namespace barypoly
