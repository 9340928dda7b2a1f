#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gbc.hpp"
#include "io.hpp"
#include "polytope.hpp"
#include "setvalued.hpp"

/**
 * Batch driver: one CSV row per sample point. Rows are computed
 * independently (optionally on several threads) and emitted in input order,
 * so the output does not depend on the worker count.
 */
namespace barypoly {

enum class SweepMode { Census, Continuity, Semidiff };

struct SweepOptions
{
    SweepMode mode = SweepMode::Census;
    double t0 = 0.125;
    std::size_t steps = 8;
    std::optional<RationalVector> direction;   ///< defaults to the first coordinate axis
    std::optional<IndexSet> zero_set;          ///< semidiff selection; auto-picked when absent
    unsigned jobs = 1;
    ProbeOptions probe;
};

/**
 * k^d points on the regular grid strictly inside the bounding box of P:
 * coordinate lo + (hi - lo) (i + 1) / (k + 1), last coordinate fastest.
 */
inline std::vector<RationalVector> grid_points(const Polytope& poly, std::size_t k)
{
    const std::size_t d = poly.dim();
    std::vector<RationalVector> out;
    if (k == 0)
        return out;
    RationalVector lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = hi[i] = poly.vertices()(i, 0);
        for (std::size_t j = 1; j < poly.size(); ++j) {
            lo[i] = std::min(lo[i], poly.vertices()(i, j));
            hi[i] = std::max(hi[i], poly.vertices()(i, j));
        }
    }
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        RationalVector p(d);
        for (std::size_t i = 0; i < d; ++i)
            p[i] = lo[i] + (hi[i] - lo[i]) * Rational(static_cast<long>(idx[i] + 1), static_cast<long>(k + 1));
        out.push_back(std::move(p));
        std::size_t i = d;
        while (i > 0 && ++idx[i - 1] == k) {
            idx[i - 1] = 0;
            --i;
        }
        if (i == 0)
            break;
    }
    return out;
}

/// One point per non-empty line; '#' starts a comment line.
inline std::vector<RationalVector> read_points(std::istream& in)
{
    std::vector<RationalVector> out;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        out.push_back(parse_point(line));
    }
    return out;
}

namespace detail {

inline std::string format_float(double x)
{
    if (std::isnan(x))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string join_indices(const IndexSet& s)
{
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k)
            out += ' ';
        out += std::to_string(s[k] + 1);
    }
    return out;
}

/// First zero pattern (lexicographic) whose simplex contains p in its interior.
inline std::optional<IndexSet> interior_selection(const Polytope& poly, const RationalVector& p)
{
    std::optional<IndexSet> found;
    for_each_combination(poly.size(), poly.kernel_dim(), [&](const IndexSet& z) {
        if (found)
            return;
        try {
            SimplicialCoordinate sc = simplicial_coords(poly, p, z);
            if (support(sc.sigma) == complement(z, poly.size()) && sc.feasible)
                found = z;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularPattern)
                throw;
        }
    });
    return found;
}

inline std::size_t probe_columns(const SweepOptions& opts)
{
    switch (opts.mode) {
    case SweepMode::Census: return 0;
    case SweepMode::Continuity: return 1 + 2 * opts.steps;
    case SweepMode::Semidiff: return 2 + opts.steps + (opts.steps - 1);
    }
    return 0;
}

inline std::string sweep_row(const Polytope& poly, const RationalVector& p, std::size_t index,
                             const SweepOptions& opts)
{
    std::string row = std::to_string(index);
    for (const auto& x : p)
        row += "," + to_string(x);

    std::vector<std::string> cells;
    std::string error;
    try {
        if (p.size() != poly.dim())
            throw Error(ErrorCode::DimensionMismatch, "point dimension");
        PointLocation loc = locate(poly, p);
        cells.push_back(std::string(to_string(loc.tag)));
        if (loc.tag == Location::Outside)
            throw Error(ErrorCode::Infeasible, "point outside");
        LambdaPolytope lam = lambda_vertices(poly, p);
        cells.push_back(std::to_string(lam.vertices.size()));
        cells.push_back(std::to_string(lam.dim));
        cells.push_back(lam.theorem_count_match ? "true" : "false");
        cells.push_back(lam.degenerate ? "true" : "false");

        RationalVector h = opts.direction.value_or(RationalVector{});
        if (!opts.direction) {
            h.assign(poly.dim(), Rational(0));
            h[0] = 1;
        }
        if (opts.mode == SweepMode::Continuity) {
            ProbeReport rep = continuity_probe(poly, p, h, opts.t0, opts.steps, opts.probe);
            cells.push_back(std::string(to_string(rep.verdict)));
            for (const auto& s : rep.steps)
                cells.push_back(format_float(s.distance));
            for (const auto& s : rep.steps)
                cells.push_back(format_float(s.ratio));
        } else if (opts.mode == SweepMode::Semidiff) {
            std::optional<IndexSet> z = opts.zero_set ? opts.zero_set : interior_selection(poly, p);
            if (!z)
                throw Error(ErrorCode::InfeasibleSelection, "no simplex contains the point in its interior");
            ProbeReport rep = semidiff_probe(poly, p, *z, h, opts.t0, opts.steps, opts.probe);
            cells.push_back(join_indices(*rep.zero_set));
            cells.push_back(std::string(to_string(rep.verdict)));
            for (const auto& s : rep.steps)
                cells.push_back(format_float(s.distance));
            for (std::size_t k = 0; k + 1 < rep.steps.size(); ++k)
                cells.push_back(format_float(rep.steps[k].set_gap));
        }
    } catch (const Error& e) {
        error = std::string(to_string(e.code()));
    } catch (const std::exception&) {
        error = "InternalError";
    }

    const std::size_t total = 5 + probe_columns(opts);
    cells.resize(total);
    for (const auto& c : cells)
        row += "," + c;
    row += "," + error;
    return row;
}

}   // namespace detail

inline std::string sweep_header(std::size_t d, const SweepOptions& opts)
{
    std::string h = "index";
    for (std::size_t i = 1; i <= d; ++i)
        h += ",x" + std::to_string(i);
    h += ",location,vertex_count,dim,theorem_count_match,degenerate";
    if (opts.mode == SweepMode::Continuity) {
        h += ",verdict";
        for (std::size_t k = 0; k < opts.steps; ++k)
            h += ",d" + std::to_string(k);
        for (std::size_t k = 0; k < opts.steps; ++k)
            h += ",ratio" + std::to_string(k);
    } else if (opts.mode == SweepMode::Semidiff) {
        h += ",zero_set,verdict";
        for (std::size_t k = 0; k < opts.steps; ++k)
            h += ",witness" + std::to_string(k);
        for (std::size_t k = 0; k + 1 < opts.steps; ++k)
            h += ",gap" + std::to_string(k);
    }
    h += ",error";
    return h;
}

/// Full CSV (header + one row per point), LF line endings.
inline std::string run_sweep(const Polytope& poly, const std::vector<RationalVector>& points, const SweepOptions& opts)
{
    if (opts.mode != SweepMode::Census && opts.steps < 1)
        throw Error(ErrorCode::InvalidArgument, "probe modes need at least one step");
    std::vector<std::string> rows(points.size());
    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(1, points.size()))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < points.size(); ++i)
            rows[i] = detail::sweep_row(poly, points[i], i, opts);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < jobs; ++w)
            threads.emplace_back([&, w] {
                for (std::size_t i = w; i < points.size(); i += jobs)
                    rows[i] = detail::sweep_row(poly, points[i], i, opts);
            });
        for (auto& t : threads)
            t.join();
    }
    std::string out = sweep_header(poly.dim(), opts) + "\n";
    for (const auto& r : rows)
        out += r + "\n";
    return out;
}

}   // namespace barypoly
