#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "numerics.hpp"
#include "polytope.hpp"
#include "simplex.hpp"

/**
 * Generalized barycentric coordinates of a point p in a convex polytope P:
 * the feasible set
 *
 *     Lambda(p) = { lambda in R^n : [V; 1^T] lambda = [p; 1], lambda >= 0 },
 *
 * its vertices (feasible simplicial coordinates), and the reduced form
 * Gamma(p) = { c : tau + N c >= 0 } in null-space coordinates.
 *
 * Index sets are 0-based throughout the library.
 */
namespace barypoly {

using IndexSet = std::vector<std::size_t>;

/// One feasible coordinate vector: V lambda = point, 1^T lambda = 1, lambda >= 0.
struct BarycentricVector
{
    RationalVector lambda;
    RationalVector point;

    bool satisfies(const Polytope& poly) const
    {
        return lambda.size() == poly.size() && is_nonnegative(lambda)
               && poly.system() * lambda == poly.lift(point);
    }
};

/// Exact basis of ker [V; 1^T], n x (n - d - 1).
inline RationalMatrix nullbasis(const Polytope& poly) { return nullspace_basis(poly.system()); }

enum class PivotOrder { Natural, Reversed };

/**
 * A feasible basepoint tau(p) from phase-one simplex (Bland's rule). The
 * pivot order only selects which vertex of Lambda(p) comes back.
 */
inline BarycentricVector feasible_tau(const Polytope& poly, const RationalVector& p,
                                      PivotOrder order = PivotOrder::Natural)
{
    std::vector<std::size_t> priority(poly.size());
    for (std::size_t j = 0; j < priority.size(); ++j)
        priority[j] = order == PivotOrder::Natural ? j : priority.size() - 1 - j;
    LpResult res = solve_lp(poly.system(), poly.lift(p), {}, priority);
    if (res.status != LpStatus::Optimal)
        throw Error(ErrorCode::Infeasible, "point lies outside the polytope");
    return {std::move(res.x), p};
}

/**
 * The n circular index windows {i, i+1, ..., i+n-d-2} (mod n), each of size
 * n - d - 1. Empty when n = d + 1.
 */
inline std::vector<IndexSet> circular_windows(std::size_t n, std::size_t d)
{
    if (n <= d)
        throw Error(ErrorCode::InvalidArgument, "circular_windows needs n > d");
    const std::size_t width = n - d - 1;
    std::vector<IndexSet> windows;
    if (width == 0)
        return windows;
    for (std::size_t i = 0; i < n; ++i) {
        IndexSet w;
        for (std::size_t k = 0; k < width; ++k)
            w.push_back((i + k) % n);
        windows.push_back(std::move(w));
    }
    return windows;
}

/// Calls f(Z) for every size-k subset of {0..n-1}, lexicographic order.
inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& f)
{
    if (k > n)
        return;
    IndexSet z(k);
    for (std::size_t i = 0; i < k; ++i)
        z[i] = i;
    for (;;) {
        f(z);
        std::size_t i = k;
        while (i > 0 && z[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++z[i - 1];
        for (std::size_t j = i; j < k; ++j)
            z[j] = z[j - 1] + 1;
    }
}

inline IndexSet complement(const IndexSet& zero_set, std::size_t n)
{
    std::vector<bool> in_zero(n, false);
    for (auto j : zero_set)
        in_zero[j] = true;
    IndexSet rest;
    for (std::size_t j = 0; j < n; ++j)
        if (!in_zero[j])
            rest.push_back(j);
    return rest;
}

inline IndexSet zero_entries(const RationalVector& v)
{
    IndexSet z;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j].is_zero())
            z.push_back(j);
    return z;
}

inline IndexSet support(const RationalVector& v)
{
    IndexSet s;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero())
            s.push_back(j);
    return s;
}

/// sigma with sigma_j = 0 on the zero set and [V; 1^T] sigma = [p; 1].
struct SimplicialCoordinate
{
    IndexSet zero_set;
    RationalVector sigma;
    bool feasible = false;
};

/**
 * Solves the (d+1) x (d+1) system on the columns outside `zero_set`, i.e. the
 * classical barycentric coordinates of p in that d-simplex, scattered to R^n.
 */
inline SimplicialCoordinate simplicial_coords(const Polytope& poly, const RationalVector& p, const IndexSet& zero_set)
{
    const std::size_t n = poly.size();
    if (zero_set.size() != poly.kernel_dim())
        throw Error(ErrorCode::InvalidArgument,
                    "zero set must have n - d - 1 = " + std::to_string(poly.kernel_dim()) + " indices");
    std::vector<bool> seen(n, false);
    for (auto j : zero_set) {
        if (j >= n || seen[j])
            throw Error(ErrorCode::InvalidArgument, "zero set index out of range or repeated");
        seen[j] = true;
    }
    IndexSet cols = complement(zero_set, n);
    RationalVector local;
    try {
        local = solve_linear(poly.system().select_columns(cols), poly.lift(p));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix)
            throw;
        throw Error(ErrorCode::SingularPattern, "complement columns are affinely dependent");
    }
    SimplicialCoordinate sc;
    sc.zero_set = zero_set;
    std::sort(sc.zero_set.begin(), sc.zero_set.end());
    sc.sigma.assign(n, Rational(0));
    for (std::size_t k = 0; k < cols.size(); ++k)
        sc.sigma[cols[k]] = local[k];
    sc.feasible = is_nonnegative(sc.sigma);
    return sc;
}

inline bool lex_less(const RationalVector& a, const RationalVector& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/**
 * Vertex description of Lambda(p). Vertices are sorted lexicographically;
 * `patterns[k]` lists every zero pattern whose simplicial coordinates equal
 * vertex k. `degenerate` flags a feasible sigma with more than n - d - 1
 * zeros, the situation where several patterns collapse onto one vertex.
 */
struct LambdaPolytope
{
    RationalVector point;
    std::vector<RationalVector> vertices;
    std::vector<IndexSet> supports;
    std::vector<std::vector<IndexSet>> patterns;
    std::size_t dim = 0;
    bool theorem_count_match = false;
    bool degenerate = false;
};

/**
 * Enumerates all C(n, n-d-1) zero patterns, keeps the feasible simplicial
 * coordinates whose support columns are affinely independent, and
 * deduplicates. `workers` > 1 splits the pattern list across threads; the
 * merge is order-independent so the result is identical to a serial run.
 */
inline LambdaPolytope lambda_vertices(const Polytope& poly, const RationalVector& p, unsigned workers = 1)
{
    const std::size_t n = poly.size();
    const std::size_t k = poly.kernel_dim();
    poly.lift(p);

    std::vector<IndexSet> all_patterns;
    for_each_combination(n, k, [&](const IndexSet& z) { all_patterns.push_back(z); });

    std::vector<std::optional<RationalVector>> solved(all_patterns.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                SimplicialCoordinate sc = simplicial_coords(poly, p, all_patterns[i]);
                if (sc.feasible)
                    solved[i] = std::move(sc.sigma);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularPattern)
                    throw;
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(all_patterns.size())));
    if (workers == 1) {
        work(0, all_patterns.size());
    } else {
        std::vector<std::thread> threads;
        std::vector<std::exception_ptr> failures(workers);
        const std::size_t chunk = (all_patterns.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t begin = std::min(all_patterns.size(), w * chunk);
            std::size_t end = std::min(all_patterns.size(), begin + chunk);
            threads.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& t : threads)
            t.join();
        for (auto& f : failures)
            if (f)
                std::rethrow_exception(f);
    }

    struct Hit
    {
        RationalVector sigma;
        IndexSet pattern;
    };
    std::vector<Hit> hits;
    LambdaPolytope lam;
    lam.point = p;
    for (std::size_t i = 0; i < all_patterns.size(); ++i) {
        if (!solved[i])
            continue;
        if (zero_entries(*solved[i]).size() > k)
            lam.degenerate = true;
        hits.push_back({std::move(*solved[i]), all_patterns[i]});
    }
    if (hits.empty())
        throw Error(ErrorCode::Infeasible, "point lies outside the polytope");

    std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return lex_less(a.sigma, b.sigma); });
    for (auto& hit : hits) {
        if (!lam.vertices.empty() && lam.vertices.back() == hit.sigma) {
            lam.patterns.back().push_back(std::move(hit.pattern));
            continue;
        }
        IndexSet supp = support(hit.sigma);
        if (rank(poly.system().select_columns(supp)) != supp.size())
            continue;
        lam.vertices.push_back(std::move(hit.sigma));
        lam.supports.push_back(std::move(supp));
        lam.patterns.push_back({std::move(hit.pattern)});
    }
    lam.dim = affine_dim(lam.vertices);
    lam.theorem_count_match = lam.vertices.size() == n - poly.dim();
    return lam;
}

/// tau_j + normal . c >= 0
struct HalfspaceRow
{
    Rational offset;
    RationalVector normal;
};

/**
 * Gamma(p) = { c : tau + N c >= 0 }: basepoint, null basis, the n inequality
 * rows and the vertex list, one per Lambda-vertex in the same order.
 */
struct GammaPolytope
{
    RationalVector tau;
    RationalMatrix null_basis;
    std::vector<HalfspaceRow> rows;
    std::vector<RationalVector> vertices;
};

/**
 * Maps each Lambda-vertex back to null-space coordinates by solving
 * N c = lambda_v - tau exactly (normal equations, N has full column rank)
 * and checks that c -> tau + N c is a bijection onto the Lambda-vertices.
 */
inline GammaPolytope gamma_polytope(const Polytope& poly, const RationalVector& p, const BarycentricVector& tau,
                                    const RationalMatrix& null_basis, const LambdaPolytope& lam)
{
    const std::size_t n = poly.size();
    const std::size_t k = poly.kernel_dim();
    if (tau.lambda.size() != n || null_basis.rows() != n || null_basis.cols() != k)
        throw Error(ErrorCode::InconsistentInputs, "tau or N has the wrong shape for this polytope");
    if (!is_nonnegative(tau.lambda) || poly.system() * tau.lambda != poly.lift(p))
        throw Error(ErrorCode::InconsistentInputs, "tau is not a feasible coordinate vector at p");
    if (rank(null_basis) != k || poly.system() * null_basis != RationalMatrix(poly.dim() + 1, k))
        throw Error(ErrorCode::InconsistentInputs, "N is not a basis of ker [V; 1^T]");
    if (lam.point != p)
        throw Error(ErrorCode::InconsistentInputs, "Lambda polytope was computed at a different point");

    GammaPolytope gamma;
    gamma.tau = tau.lambda;
    gamma.null_basis = null_basis;
    for (std::size_t j = 0; j < n; ++j)
        gamma.rows.push_back({tau.lambda[j], null_basis.row(j)});

    const RationalMatrix nt = null_basis.transpose();
    const RationalMatrix gram = nt * null_basis;
    for (const auto& v : lam.vertices) {
        RationalVector diff = v - tau.lambda;
        RationalVector c;
        if (k > 0)
            c = solve_linear(gram, nt * diff);
        if (null_basis * c != diff)
            throw Error(ErrorCode::InconsistentInputs, "Lambda-vertex minus tau is not in the span of N");
        gamma.vertices.push_back(std::move(c));
    }
    for (std::size_t a = 0; a < gamma.vertices.size(); ++a) {
        if (tau.lambda + null_basis * gamma.vertices[a] != lam.vertices[a])
            throw Error(ErrorCode::InconsistentInputs, "Gamma -> Lambda map does not reproduce the vertex");
        for (std::size_t b = a + 1; b < gamma.vertices.size(); ++b)
            if (gamma.vertices[a] == gamma.vertices[b])
                throw Error(ErrorCode::InconsistentInputs, "two Lambda-vertices share a Gamma-vertex");
    }
    return gamma;
}

/// The parameter range [lower, upper] of Lambda(p) = { tau + c N : c in range }.
struct Interval
{
    Rational lower;
    Rational upper;
};

/**
 * Closed-form range when ker [V; 1^T] is one-dimensional:
 * lower = max{ -tau_i / N_i : N_i > 0 }, upper = min{ -tau_i / N_i : N_i < 0 }.
 */
inline Interval segment_interval(const BarycentricVector& tau, const RationalMatrix& null_basis)
{
    if (null_basis.cols() != 1)
        throw Error(ErrorCode::NotAnInterval,
                    "kernel has dimension " + std::to_string(null_basis.cols()) + ", expected 1");
    if (null_basis.rows() != tau.lambda.size())
        throw Error(ErrorCode::DimensionMismatch, "N and tau lengths differ");
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    for (std::size_t i = 0; i < tau.lambda.size(); ++i) {
        const Rational& ni = null_basis(i, 0);
        if (ni.is_zero())
            continue;
        Rational bound = -tau.lambda[i] / ni;
        if (ni > 0 && (!lower || bound > *lower))
            lower = bound;
        if (ni < 0 && (!upper || bound < *upper))
            upper = bound;
    }
    if (!lower || !upper)
        throw Error(ErrorCode::UnboundedDirection, "null vector has entries of one sign only");
    return {*lower, *upper};
}

struct WeightedVertex
{
    std::size_t vertex;
    Rational weight;

    friend bool operator==(const WeightedVertex&, const WeightedVertex&) = default;
};

/**
 * Writes x as a convex combination of affinely independent Lambda-vertices
 * (so at most dim + 1 <= n - d terms). Starts from any exact convex
 * representation and repeatedly removes an affine dependency among the
 * active vertices until none is left.
 */
inline std::vector<WeightedVertex> caratheodory_decompose(const LambdaPolytope& lam, const BarycentricVector& x)
{
    if (lam.vertices.empty())
        throw Error(ErrorCode::EmptyInput, "Lambda polytope has no vertices");
    const std::size_t n = lam.vertices.front().size();
    if (x.lambda.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "coordinate vector length differs from vertex length");

    const std::size_t m = lam.vertices.size();
    RationalMatrix a(n + 1, m);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            a(i, k) = lam.vertices[k][i];
        a(n, k) = 1;
    }
    RationalVector rhs = x.lambda;
    rhs.push_back(1);
    LpResult res = solve_lp(a, rhs);
    if (res.status != LpStatus::Optimal)
        throw Error(ErrorCode::NotMember, "point is not in the convex hull of the Lambda-vertices");

    RationalVector w = std::move(res.x);
    for (;;) {
        IndexSet active = support(w);
        RationalMatrix dep = nullspace_basis(a.select_columns(active));
        if (dep.cols() == 0)
            break;
        RationalVector alpha = dep.col(0);
        if (std::none_of(alpha.begin(), alpha.end(), [](const Rational& v) { return v > 0; }))
            alpha = Rational(-1) * alpha;
        std::optional<Rational> theta;
        for (std::size_t s = 0; s < active.size(); ++s)
            if (alpha[s] > 0) {
                Rational ratio = w[active[s]] / alpha[s];
                if (!theta || ratio < *theta)
                    theta = ratio;
            }
        for (std::size_t s = 0; s < active.size(); ++s)
            w[active[s]] -= *theta * alpha[s];
    }

    std::vector<WeightedVertex> out;
    for (std::size_t k = 0; k < m; ++k)
        if (w[k] > 0)
            out.push_back({k, w[k]});
    return out;
}

}   // namespace barypoly
