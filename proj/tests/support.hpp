#pragma once

// Test-only reference computations. Nothing here calls the library's
// elimination or simplex code: determinants are expanded by cofactors and
// systems are solved by Cramer's rule.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "barypoly/barypoly.hpp"

namespace testsupport {

using barypoly::IndexSet;
using barypoly::Polytope;
using barypoly::Rational;
using barypoly::RationalMatrix;
using barypoly::RationalVector;
using barypoly::operator+;
using barypoly::operator-;
using barypoly::operator*;

inline Rational det_cofactor(const RationalMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return a(0, 0);
    Rational total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c).is_zero())
            continue;
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0, k = 0; cc < n; ++cc)
                if (cc != c)
                    minor(r - 1, k++) = a(r, cc);
        Rational term = a(0, c) * det_cofactor(minor);
        if (c % 2)
            total -= term;
        else
            total += term;
    }
    return total;
}

/// Cramer's rule; empty result when the matrix is singular.
inline RationalVector cramer(const RationalMatrix& a, const RationalVector& b)
{
    Rational det = det_cofactor(a);
    if (det.is_zero())
        return {};
    RationalVector x(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        RationalMatrix m = a;
        for (std::size_t r = 0; r < a.rows(); ++r)
            m(r, c) = b[r];
        x[c] = det_cofactor(m) / det;
    }
    return x;
}

/**
 * Vertices of {lambda >= 0 : [V;1] lambda = [p;1]} as the distinct basic
 * feasible solutions: every nonsingular choice of d+1 columns, solved by
 * Cramer's rule, kept when nonnegative.
 */
inline std::vector<RationalVector> brute_force_vertices(const Polytope& poly, const RationalVector& p)
{
    const std::size_t n = poly.size();
    const std::size_t d = poly.dim();
    RationalVector rhs = p;
    rhs.push_back(1);
    std::set<RationalVector> found;
    barypoly::for_each_combination(n, d + 1, [&](const IndexSet& cols) {
        RationalMatrix sub(d + 1, d + 1);
        for (std::size_t k = 0; k <= d; ++k) {
            for (std::size_t i = 0; i < d; ++i)
                sub(i, k) = poly.vertices()(i, cols[k]);
            sub(d, k) = 1;
        }
        RationalVector x = cramer(sub, rhs);
        if (x.empty())
            return;
        if (std::any_of(x.begin(), x.end(), [](const Rational& v) { return v < 0; }))
            return;
        RationalVector full(n, Rational(0));
        for (std::size_t k = 0; k <= d; ++k)
            full[cols[k]] = x[k];
        found.insert(full);
    });
    return {found.begin(), found.end()};
}

inline std::set<RationalVector> as_set(const std::vector<RationalVector>& v) { return {v.begin(), v.end()}; }

inline RationalVector rv(std::initializer_list<const char*> xs)
{
    RationalVector out;
    for (auto x : xs)
        out.push_back(barypoly::parse_rational(x));
    return out;
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = Rational(num(rng), den(rng));
    return m;
}

/// Point of the pentagon fixture inside the triangle (v1, v2, X), X = v1v3 x v2v5;
/// every generic point there lies in exactly the simplices 123, 124 and 125.
inline RationalVector pentagon_core_point(const Polytope& pent, std::mt19937_64& rng)
{
    auto v = [&](std::size_t j) { return pent.vertex(j); };
    // X solves v1 + s (v3 - v1) = v2 + u (v5 - v2).
    RationalMatrix a(2, 2);
    RationalVector rhs(2);
    for (std::size_t i = 0; i < 2; ++i) {
        a(i, 0) = v(2)[i] - v(0)[i];
        a(i, 1) = v(1)[i] - v(4)[i];
        rhs[i] = v(1)[i] - v(0)[i];
    }
    RationalVector su = cramer(a, rhs);
    RationalVector x = v(0) + su[0] * (v(2) - v(0));
    std::uniform_int_distribution<int> w(1, 997);
    Rational a1 = w(rng), a2 = w(rng), a3 = w(rng);
    Rational s = a1 + a2 + a3;
    return Rational(a1 / s) * v(0) + Rational(a2 / s) * v(1) + Rational(a3 / s) * x;
}

}   // namespace testsupport
