#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gbc.hpp"
#include "numerics.hpp"
#include "polytope.hpp"

/**
 * Independent ground truth for Lambda(p). Works on the reduced polytope
 * Gamma(p) = { c in R^k : tau + N c >= 0 }, k = n - d - 1, converting its
 * H-representation to vertices by the double description method; the
 * zero-pattern enumeration in gbc.hpp never enters this path.
 *
 * Also hosts the seeded generators used by tests (random validated
 * polytopes, generic interior points, feasible samples).
 */
namespace barypoly {

enum class OracleMethod { DoubleDescription, PatternScan };

struct OracleResult
{
    std::vector<RationalVector> vertices;   ///< sorted, in R^n
    OracleMethod method = OracleMethod::DoubleDescription;
    bool agreement = true;

    /// Exact set comparison; stores and returns the verdict.
    bool compare_with(const std::vector<RationalVector>& other)
    {
        std::vector<RationalVector> sorted = other;
        std::sort(sorted.begin(), sorted.end(), lex_less);
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        agreement = sorted == vertices;
        return agreement;
    }
};

namespace detail {

inline void normalize_ray(RationalVector& x)
{
    for (const auto& v : x)
        if (!v.is_zero()) {
            Rational scale = abs(v);
            for (auto& y : x)
                y /= scale;
            return;
        }
}

inline std::vector<RationalVector> sorted_unique(std::vector<RationalVector> v)
{
    std::sort(v.begin(), v.end(), lex_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::vector<RationalVector> lift_to_lambda(const RationalVector& tau, const RationalMatrix& null_basis,
                                                  const std::vector<RationalVector>& cs)
{
    std::vector<RationalVector> out;
    for (const auto& c : cs)
        out.push_back(c.empty() ? tau : tau + null_basis * c);
    return sorted_unique(std::move(out));
}

}   // namespace detail

/**
 * Extreme rays of the pointed cone { x in R^m : A x >= 0 } by incremental
 * double description. Adjacency of a (+,-) ray pair uses the combinatorial
 * test: no third ray is tight on every constraint both are tight on.
 */
inline std::vector<RationalVector> cone_extreme_rays(const RationalMatrix& a)
{
    const std::size_t rows = a.rows();
    const std::size_t m = a.cols();

    // Initial simplicial cone from m linearly independent rows.
    std::vector<std::size_t> basis_rows;
    RationalMatrix picked(0, m);
    for (std::size_t r = 0; r < rows && basis_rows.size() < m; ++r) {
        RationalMatrix row(1, m);
        for (std::size_t c = 0; c < m; ++c)
            row(0, c) = a(r, c);
        RationalMatrix trial = picked.stack(row);
        if (rank(trial) == basis_rows.size() + 1) {
            picked = std::move(trial);
            basis_rows.push_back(r);
        }
    }
    if (basis_rows.size() < m)
        throw Error(ErrorCode::InvalidArgument, "cone is not pointed");

    std::vector<bool> inserted(rows, false);
    for (auto r : basis_rows)
        inserted[r] = true;

    struct Ray
    {
        RationalVector x;
        std::vector<bool> tight;
    };
    auto make_ray = [&](RationalVector x) {
        detail::normalize_ray(x);
        Ray ray{std::move(x), std::vector<bool>(rows, false)};
        for (std::size_t r = 0; r < rows; ++r) {
            Rational v = 0;
            for (std::size_t c = 0; c < m; ++c)
                v += a(r, c) * ray.x[c];
            ray.tight[r] = v.is_zero();
        }
        return ray;
    };

    std::vector<Ray> rays;
    RationalMatrix inv = inverse(picked);
    for (std::size_t c = 0; c < m; ++c)
        rays.push_back(make_ray(inv.col(c)));

    for (std::size_t r = 0; r < rows; ++r) {
        if (inserted[r])
            continue;
        std::vector<Rational> value(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i)
            for (std::size_t c = 0; c < m; ++c)
                value[i] += a(r, c) * rays[i].x[c];

        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (value[i] >= 0)
                next.push_back(rays[i]);

        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (value[i] <= 0)
                continue;
            for (std::size_t j = 0; j < rays.size(); ++j) {
                if (value[j] >= 0)
                    continue;
                std::vector<bool> common(rows, false);
                std::size_t common_count = 0;
                for (std::size_t q = 0; q < rows; ++q)
                    if (inserted[q] && rays[i].tight[q] && rays[j].tight[q]) {
                        common[q] = true;
                        ++common_count;
                    }
                if (common_count + 2 < m)
                    continue;
                bool adjacent = true;
                for (std::size_t l = 0; l < rays.size() && adjacent; ++l) {
                    if (l == i || l == j)
                        continue;
                    bool covers = true;
                    for (std::size_t q = 0; q < rows && covers; ++q)
                        if (common[q] && !rays[l].tight[q])
                            covers = false;
                    if (covers)
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                RationalVector x(m);
                for (std::size_t c = 0; c < m; ++c)
                    x[c] = value[i] * rays[j].x[c] - value[j] * rays[i].x[c];
                next.push_back(make_ray(std::move(x)));
            }
        }
        inserted[r] = true;
        rays = std::move(next);
    }

    std::vector<RationalVector> out;
    for (auto& ray : rays)
        out.push_back(std::move(ray.x));
    return detail::sorted_unique(std::move(out));
}

/**
 * Vertices of Gamma(p) = { c : tau + N c >= 0 } via the homogenised cone
 * { (s, c) : s tau + N c >= 0, s >= 0 }: every extreme ray has s > 0
 * because Gamma(p) is bounded, and c / s is the vertex.
 */
inline std::vector<RationalVector> gamma_vertices_dd(const RationalVector& tau, const RationalMatrix& null_basis)
{
    const std::size_t n = tau.size();
    const std::size_t k = null_basis.cols();
    if (k == 0)
        return {RationalVector{}};
    RationalMatrix a(n + 1, k + 1);
    a(0, 0) = 1;
    for (std::size_t j = 0; j < n; ++j) {
        a(j + 1, 0) = tau[j];
        for (std::size_t c = 0; c < k; ++c)
            a(j + 1, c + 1) = null_basis(j, c);
    }
    std::vector<RationalVector> cs;
    for (const auto& ray : cone_extreme_rays(a)) {
        if (ray[0] <= 0)
            throw Error(ErrorCode::OracleDisagreement, "Gamma(p) has a recession direction");
        RationalVector c(ray.begin() + 1, ray.end());
        for (auto& v : c)
            v /= ray[0];
        cs.push_back(std::move(c));
    }
    return cs;
}

/// Vertices of Gamma(p) by scanning every k-subset of rows for a tight,
/// nonsingular, feasible solution.
inline std::vector<RationalVector> gamma_vertices_scan(const RationalVector& tau, const RationalMatrix& null_basis)
{
    const std::size_t n = tau.size();
    const std::size_t k = null_basis.cols();
    if (k == 0)
        return {RationalVector{}};
    std::vector<RationalVector> cs;
    for_each_combination(n, k, [&](const IndexSet& rows) {
        RationalMatrix sub(k, k);
        RationalVector rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t c = 0; c < k; ++c)
                sub(i, c) = null_basis(rows[i], c);
            rhs[i] = -tau[rows[i]];
        }
        RationalVector c;
        try {
            c = solve_linear(sub, rhs);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularMatrix)
                throw;
            return;
        }
        if (is_nonnegative(tau + null_basis * c))
            cs.push_back(std::move(c));
    });
    return detail::sorted_unique(std::move(cs));
}

/**
 * Lambda(p) vertices by double description in the reduced space. For
 * n - d - 1 <= 2 the tight-row scan runs as a second path and must agree.
 */
inline OracleResult dd_vertices(const Polytope& poly, const RationalVector& p)
{
    BarycentricVector tau = feasible_tau(poly, p);
    RationalMatrix null_basis = nullbasis(poly);
    OracleResult result;
    result.method = OracleMethod::DoubleDescription;
    result.vertices = detail::lift_to_lambda(tau.lambda, null_basis, gamma_vertices_dd(tau.lambda, null_basis));
    if (poly.kernel_dim() <= 2) {
        auto scanned = detail::lift_to_lambda(tau.lambda, null_basis, gamma_vertices_scan(tau.lambda, null_basis));
        if (scanned != result.vertices)
            throw Error(ErrorCode::OracleDisagreement, "double description and tight-row scan disagree");
    }
    return result;
}

inline OracleResult scan_vertices(const Polytope& poly, const RationalVector& p)
{
    BarycentricVector tau = feasible_tau(poly, p);
    RationalMatrix null_basis = nullbasis(poly);
    OracleResult result;
    result.method = OracleMethod::PatternScan;
    result.vertices = detail::lift_to_lambda(tau.lambda, null_basis, gamma_vertices_scan(tau.lambda, null_basis));
    return result;
}

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]; modulo reduction keeps it platform-stable.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi)
{
    return lo + rng() % (hi - lo + 1);
}

/// Convex combination of `points` with random positive integer weights.
inline RationalVector random_convex_combination(const std::vector<RationalVector>& points, Rng& rng)
{
    RationalVector out(points.front().size());
    Rational total = 0;
    for (const auto& pt : points) {
        Rational w = static_cast<long>(uniform_int(rng, 1, 1000));
        total += w;
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += w * pt[i];
    }
    for (auto& x : out)
        x /= total;
    return out;
}

/**
 * `count` exactly feasible coordinate vectors at p: seeded random convex
 * combinations of the oracle's Lambda-vertices.
 */
inline std::vector<BarycentricVector> random_feasible_sample(const Polytope& poly, const RationalVector& p,
                                                             std::size_t count, std::uint64_t seed)
{
    OracleResult oracle = dd_vertices(poly, p);
    Rng rng(seed);
    std::vector<BarycentricVector> out;
    for (std::size_t s = 0; s < count; ++s)
        out.push_back({random_convex_combination(oracle.vertices, rng), p});
    return out;
}

/// Generic interior point: strictly positive random weights on all vertices.
inline RationalVector random_interior_point(const Polytope& poly, Rng& rng)
{
    std::vector<RationalVector> verts;
    for (std::size_t i = 0; i < poly.size(); ++i)
        verts.push_back(poly.vertex(i));
    return random_convex_combination(verts, rng);
}

/**
 * n points near the unit sphere in R^d with coordinates on a 1/1024 grid,
 * resampled until `validate` accepts them.
 */
inline Polytope random_polytope(std::size_t d, std::size_t n, Rng& rng)
{
    for (;;) {
        RationalMatrix v(d, n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> x(d);
            double norm = 0;
            do {
                norm = 0;
                for (auto& xi : x) {
                    xi = static_cast<double>(uniform_int(rng, 0, 2000000)) / 1000000.0 - 1.0;
                    norm += xi * xi;
                }
            } while (norm > 1.0 || norm < 0.01);
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < d; ++i)
                v(i, j) = Rational(static_cast<long>(std::lround(x[i] / norm * 1024.0)), 1024);
        }
        try {
            return validate(std::move(v), d);
        } catch (const Error&) {
        }
    }
}

}   // namespace barypoly
