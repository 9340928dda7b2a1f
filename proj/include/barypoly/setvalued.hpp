#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "gbc.hpp"
#include "numerics.hpp"
#include "polytope.hpp"

/**
 * Floating-point probes of the set-valued map p -> Lambda(p). The
 * combinatorics (which vertices Lambda(q) has) is always computed exactly at
 * every sample point q; only distances are evaluated in double precision.
 */
namespace barypoly {

using FloatVector = std::vector<double>;

struct FloatPolytope
{
    std::vector<FloatVector> vertices;
    std::size_t ambient_dim = 0;

    static FloatPolytope from_exact(const std::vector<RationalVector>& exact)
    {
        if (exact.empty())
            throw Error(ErrorCode::EmptyInput, "polytope without vertices");
        FloatPolytope fp;
        fp.ambient_dim = exact.front().size();
        for (const auto& v : exact) {
            if (v.size() != fp.ambient_dim)
                throw Error(ErrorCode::DimensionMismatch, "vertices of unequal length");
            FloatVector f(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                f[i] = to_double(v[i]);
            fp.vertices.push_back(std::move(f));
        }
        return fp;
    }

    double diameter() const
    {
        double best = 0;
        for (std::size_t a = 0; a < vertices.size(); ++a)
            for (std::size_t b = a + 1; b < vertices.size(); ++b) {
                double s = 0;
                for (std::size_t i = 0; i < ambient_dim; ++i)
                    s += (vertices[a][i] - vertices[b][i]) * (vertices[a][i] - vertices[b][i]);
                best = std::max(best, std::sqrt(s));
            }
        return best;
    }
};

namespace detail {

inline double fdot(const FloatVector& a, const FloatVector& b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

}   // namespace detail

struct Projection
{
    double distance = 0;
    FloatVector nearest;
    std::size_t iterations = 0;
    bool converged = false;
};

/**
 * Nearest point of conv(B) to x by Frank-Wolfe with away steps over the
 * simplex weights, exact line search. Stops once the duality gap g certifies
 * |x - y| - dist(x, B) <= tol, using dist^2 >= |x - y|^2 - 2g.
 */
inline Projection project_onto_hull(const FloatVector& x, const FloatPolytope& hull, double tol = 1e-9,
                                    std::size_t max_iterations = 10000)
{
    if (hull.vertices.empty())
        throw Error(ErrorCode::EmptyInput, "polytope without vertices");
    if (x.size() != hull.ambient_dim)
        throw Error(ErrorCode::DimensionMismatch, "point and polytope dimensions differ");
    if (!(tol > 0))
        throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

    const auto& b = hull.vertices;
    const std::size_t m = b.size();
    const std::size_t dim = x.size();

    std::size_t start = 0;
    double start_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        if (b[k] == x)
            return {0.0, x, 0, true};
        double d2 = 0;
        for (std::size_t i = 0; i < dim; ++i)
            d2 += (b[k][i] - x[i]) * (b[k][i] - x[i]);
        if (d2 < start_d2) {
            start_d2 = d2;
            start = k;
        }
    }

    std::vector<double> w(m, 0.0);
    w[start] = 1.0;
    FloatVector y = b[start];
    FloatVector g(dim);
    FloatVector dir(dim);
    Projection out;
    for (std::size_t it = 0; it < max_iterations; ++it) {
        out.iterations = it + 1;
        for (std::size_t i = 0; i < dim; ++i)
            g[i] = y[i] - x[i];
        const double dist = std::sqrt(detail::fdot(g, g));
        const double gy = detail::fdot(g, y);

        std::size_t fw = 0;
        std::size_t away = m;
        double fw_score = std::numeric_limits<double>::infinity();
        double away_score = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k) {
            double s = detail::fdot(g, b[k]);
            if (s < fw_score) {
                fw_score = s;
                fw = k;
            }
            if (w[k] > 0 && s > away_score) {
                away_score = s;
                away = k;
            }
        }
        const double fw_gap = std::max(0.0, gy - fw_score);
        const double bound = dist - std::sqrt(std::max(0.0, dist * dist - 2.0 * fw_gap));
        if (bound <= tol) {
            out.converged = true;
            break;
        }

        const double away_gap = away_score - gy;
        bool toward = fw_gap >= away_gap;
        double gamma_max = 1.0;
        if (toward) {
            for (std::size_t i = 0; i < dim; ++i)
                dir[i] = b[fw][i] - y[i];
        } else {
            for (std::size_t i = 0; i < dim; ++i)
                dir[i] = y[i] - b[away][i];
            gamma_max = w[away] / (1.0 - w[away]);
        }
        const double dd = detail::fdot(dir, dir);
        if (dd == 0.0)
            break;
        double gamma = std::clamp(-detail::fdot(g, dir) / dd, 0.0, gamma_max);
        if (gamma == 0.0)
            break;

        if (toward) {
            for (auto& wk : w)
                wk *= (1.0 - gamma);
            w[fw] += gamma;
        } else {
            for (auto& wk : w)
                wk *= (1.0 + gamma);
            w[away] -= gamma;
            if (gamma == gamma_max)
                w[away] = 0.0;
        }
        if ((it + 1) % 64 == 0) {
            std::fill(y.begin(), y.end(), 0.0);
            for (std::size_t k = 0; k < m; ++k)
                if (w[k] > 0)
                    for (std::size_t i = 0; i < dim; ++i)
                        y[i] += w[k] * b[k][i];
        } else {
            for (std::size_t i = 0; i < dim; ++i)
                y[i] += gamma * dir[i];
        }
    }
    double d2 = 0;
    for (std::size_t i = 0; i < dim; ++i)
        d2 += (y[i] - x[i]) * (y[i] - x[i]);
    out.distance = std::sqrt(d2);
    out.nearest = std::move(y);
    return out;
}

inline double point_polytope_distance(const FloatVector& x, const FloatPolytope& hull, double tol = 1e-9)
{
    return project_onto_hull(x, hull, tol).distance;
}

struct HausdorffResult
{
    double distance = 0;
    bool converged = true;
};

/**
 * Hausdorff distance of two convex polytopes. x -> dist(x, B) is convex, so
 * its maximum over conv(A) is attained at a vertex of A (and symmetrically).
 */
inline HausdorffResult hausdorff_distance(const FloatPolytope& a, const FloatPolytope& b, double tol = 1e-9)
{
    if (a.ambient_dim != b.ambient_dim)
        throw Error(ErrorCode::DimensionMismatch, "polytopes live in different dimensions");
    HausdorffResult out;
    auto sweep = [&](const FloatPolytope& from, const FloatPolytope& to) {
        for (const auto& v : from.vertices) {
            Projection pr = project_onto_hull(v, to, tol);
            out.distance = std::max(out.distance, pr.distance);
            out.converged = out.converged && pr.converged;
        }
    };
    sweep(a, b);
    sweep(b, a);
    return out;
}

inline double hausdorff(const FloatPolytope& a, const FloatPolytope& b, double tol = 1e-9)
{
    return hausdorff_distance(a, b, tol).distance;
}

enum class Verdict { Converges, Inconclusive, Diverges };

constexpr std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Converges: return "Converges";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Diverges: return "Diverges";
    }
    return "Unknown";
}

struct ProbeStep
{
    double t = 0;
    double distance = 0;   ///< continuity: H(Lambda(p + t h), Lambda(p)); semidiff: d(v, S_k)
    double ratio = 0;      ///< distance / t
    double set_gap = std::numeric_limits<double>::quiet_NaN();   ///< semidiff: H(S_k, S_{k+1})
    double diameter = 0;   ///< diameter of the sampled set
};

struct ProbeReport
{
    std::vector<ProbeStep> steps;   ///< decreasing t
    Verdict verdict = Verdict::Inconclusive;
    double tolerance = 0;
    bool distances_converged = true;   ///< every Frank-Wolfe solve met its gap tolerance
    RationalVector basepoint;
    RationalVector direction;
    std::optional<IndexSet> zero_set;
};

struct ProbeOptions
{
    double distance_tol = 1e-9;   ///< additive accuracy of each point-to-polytope distance
    double tolerance = 1e-7;      ///< final distance required for a Converges verdict
};

namespace detail {

inline bool nonincreasing_tail(const std::vector<double>& values, std::size_t tail)
{
    if (values.size() < 2)
        return true;
    std::size_t from = values.size() > tail ? values.size() - tail : 0;
    for (std::size_t i = from + 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] * (1 + 1e-12) + 1e-300)
            return false;
    return true;
}

inline std::vector<Rational> halving_steps(double t0, std::size_t steps)
{
    if (!(t0 > 0) || !std::isfinite(t0))
        throw Error(ErrorCode::InvalidArgument, "t0 must be a positive finite number");
    if (steps < 1)
        throw Error(ErrorCode::InvalidArgument, "need at least one step");
    std::vector<Rational> ts;
    Rational t = from_double(t0);
    for (std::size_t k = 0; k < steps; ++k) {
        ts.push_back(t);
        t /= 2;
    }
    return ts;
}

inline RationalVector along(const RationalVector& p, const Rational& t, const RationalVector& h)
{
    return p + t * h;
}

inline void require_inside_path(const Polytope& poly, const RationalVector& p, const RationalVector& h, double t0)
{
    if (h.size() != poly.dim())
        throw Error(ErrorCode::DimensionMismatch, "direction has the wrong dimension");
    if (locate(poly, p).tag == Location::Outside)
        throw Error(ErrorCode::Infeasible, "basepoint lies outside the polytope");
    if (locate(poly, along(p, from_double(t0), h)).tag == Location::Outside)
        throw Error(ErrorCode::LeavesPolytope, "p + t0 h lies outside the polytope");
}

}   // namespace detail

/**
 * d_k = H(Lambda(p + t_k h), Lambda(p)) along t_k = t0 2^-k, with the
 * ratios d_k / t_k. Converges when the last distance is below
 * `opts.tolerance` and the tail is nonincreasing.
 */
inline ProbeReport continuity_probe(const Polytope& poly, const RationalVector& p, const RationalVector& h, double t0,
                                    std::size_t steps, const ProbeOptions& opts = {})
{
    detail::require_inside_path(poly, p, h, t0);
    const FloatPolytope base = FloatPolytope::from_exact(lambda_vertices(poly, p).vertices);

    ProbeReport report;
    report.tolerance = opts.tolerance;
    report.basepoint = p;
    report.direction = h;
    std::vector<double> distances;
    for (const auto& t : detail::halving_steps(t0, steps)) {
        FloatPolytope moved = FloatPolytope::from_exact(lambda_vertices(poly, detail::along(p, t, h)).vertices);
        HausdorffResult hd = hausdorff_distance(moved, base, opts.distance_tol);
        report.distances_converged = report.distances_converged && hd.converged;
        ProbeStep step;
        step.t = to_double(t);
        step.distance = hd.distance;
        step.ratio = hd.distance / step.t;
        step.diameter = moved.diameter();
        report.steps.push_back(step);
        distances.push_back(hd.distance);
    }

    if (!report.distances_converged)
        report.verdict = Verdict::Inconclusive;
    else if (distances.back() < opts.tolerance && detail::nonincreasing_tail(distances, 3))
        report.verdict = Verdict::Converges;
    else if (distances.size() > 1 && distances.back() >= distances.front() && distances.back() >= opts.tolerance)
        report.verdict = Verdict::Diverges;
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

/**
 * Exact Jacobian (n x d) of the affine selection p -> sigma_Z(p): the first
 * d columns of the inverse of the stacked system on the complement columns,
 * scattered to those rows; rows in Z are zero.
 */
inline RationalMatrix selection_jacobian_exact(const Polytope& poly, const IndexSet& zero_set)
{
    const std::size_t n = poly.size();
    const std::size_t d = poly.dim();
    if (zero_set.size() != poly.kernel_dim())
        throw Error(ErrorCode::InvalidArgument, "zero set must have n - d - 1 indices");
    for (auto j : zero_set)
        if (j >= n)
            throw Error(ErrorCode::InvalidArgument, "zero set index out of range");
    IndexSet cols = complement(zero_set, n);
    if (cols.size() != d + 1)
        throw Error(ErrorCode::InvalidArgument, "zero set has repeated indices");
    RationalMatrix inv;
    try {
        inv = inverse(poly.system().select_columns(cols));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix)
            throw;
        throw Error(ErrorCode::SingularPattern, "complement columns are affinely dependent");
    }
    RationalMatrix jac(n, d);
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t c = 0; c < d; ++c)
            jac(cols[k], c) = inv(k, c);
    return jac;
}

/// Row-major float copy of selection_jacobian_exact.
inline std::vector<FloatVector> selection_jacobian(const Polytope& poly, const IndexSet& zero_set)
{
    RationalMatrix jac = selection_jacobian_exact(poly, zero_set);
    std::vector<FloatVector> out(jac.rows(), FloatVector(jac.cols()));
    for (std::size_t r = 0; r < jac.rows(); ++r)
        for (std::size_t c = 0; c < jac.cols(); ++c)
            out[r][c] = to_double(jac(r, c));
    return out;
}

/**
 * Difference-quotient sets S_k = (Lambda(p + t_k h) - sigma_Z(p)) / t_k,
 * represented by the images of Lambda's vertices. Reports d(v, S_k) for the
 * witness v = J h and H(S_k, S_{k+1}).
 *
 * Converges needs the witness distance below tolerance and nonincreasing
 * set gaps; Diverges is reported when the diameters keep growing by more
 * than 1.5x per halving, the signature of quotient sets that scale like 1/t.
 */
inline ProbeReport semidiff_probe(const Polytope& poly, const RationalVector& p, const IndexSet& zero_set,
                                  const RationalVector& h, double t0, std::size_t steps,
                                  const ProbeOptions& opts = {})
{
    SimplicialCoordinate sel = simplicial_coords(poly, p, zero_set);
    if (!sel.feasible)
        throw Error(ErrorCode::InfeasibleSelection, "sigma_Z(p) has a negative entry");
    detail::require_inside_path(poly, p, h, t0);

    RationalVector witness_exact = selection_jacobian_exact(poly, zero_set) * h;
    FloatVector witness(witness_exact.size());
    for (std::size_t i = 0; i < witness.size(); ++i)
        witness[i] = to_double(witness_exact[i]);

    ProbeReport report;
    report.tolerance = opts.tolerance;
    report.basepoint = p;
    report.direction = h;
    report.zero_set = sel.zero_set;

    std::vector<FloatPolytope> quotients;
    for (const auto& t : detail::halving_steps(t0, steps)) {
        LambdaPolytope lam = lambda_vertices(poly, detail::along(p, t, h));
        std::vector<RationalVector> scaled;
        for (const auto& mu : lam.vertices)
            scaled.push_back((1 / t) * (mu - sel.sigma));
        quotients.push_back(FloatPolytope::from_exact(scaled));

        Projection pr = project_onto_hull(witness, quotients.back(), opts.distance_tol);
        report.distances_converged = report.distances_converged && pr.converged;
        ProbeStep step;
        step.t = to_double(t);
        step.distance = pr.distance;
        step.ratio = pr.distance / step.t;
        step.diameter = quotients.back().diameter();
        report.steps.push_back(step);
    }
    std::vector<double> gaps;
    for (std::size_t k = 0; k + 1 < quotients.size(); ++k) {
        HausdorffResult hd = hausdorff_distance(quotients[k], quotients[k + 1], opts.distance_tol);
        report.distances_converged = report.distances_converged && hd.converged;
        report.steps[k].set_gap = hd.distance;
        gaps.push_back(hd.distance);
    }

    bool growing = report.steps.size() >= 3;
    for (std::size_t k = report.steps.size() >= 3 ? report.steps.size() - 3 : 0; k + 1 < report.steps.size(); ++k)
        if (!(report.steps[k + 1].diameter > 1.5 * report.steps[k].diameter))
            growing = false;

    if (!report.distances_converged)
        report.verdict = Verdict::Inconclusive;
    else if (report.steps.back().distance < opts.tolerance && detail::nonincreasing_tail(gaps, gaps.size()))
        report.verdict = Verdict::Converges;
    else if (growing)
        report.verdict = Verdict::Diverges;
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

}   // namespace barypoly
