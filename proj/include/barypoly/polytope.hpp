#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "numerics.hpp"
#include "simplex.hpp"

namespace barypoly {

/**
 * A full-dimensional convex polytope in R^d given by its n > d vertices,
 * stored as the columns of a d x n matrix. Only `validate` constructs one, so
 * every instance satisfies rank [V; 1^T] = d + 1 with pairwise distinct,
 * extreme columns. Column order is the vertex index order used everywhere.
 */
class Polytope
{
    public:
        std::size_t dim() const noexcept { return vertices_.rows(); }
        std::size_t size() const noexcept { return vertices_.cols(); }
        /// n - d - 1: dimension of ker [V; 1^T].
        std::size_t kernel_dim() const noexcept { return size() - dim() - 1; }

        const RationalMatrix& vertices() const noexcept { return vertices_; }
        RationalVector vertex(std::size_t i) const { return vertices_.col(i); }
        const std::vector<std::string>& labels() const noexcept { return labels_; }

        /// The stacked matrix [V; 1^T] of the barycentric system.
        const RationalMatrix& system() const noexcept { return system_; }

        /// [p; 1], the right-hand side of the barycentric system at p.
        RationalVector lift(const RationalVector& p) const
        {
            if (p.size() != dim())
                throw Error(ErrorCode::DimensionMismatch,
                            "point has " + std::to_string(p.size()) + " coordinates, polytope dimension is "
                                + std::to_string(dim()));
            RationalVector r = p;
            r.push_back(1);
            return r;
        }

        RationalVector centroid() const
        {
            RationalVector c(dim());
            for (std::size_t i = 0; i < size(); ++i)
                for (std::size_t r = 0; r < dim(); ++r)
                    c[r] += vertices_(r, i);
            for (auto& x : c)
                x /= static_cast<long>(size());
            return c;
        }

        friend Polytope validate(RationalMatrix vertices, std::size_t d, std::vector<std::string> labels);

    private:
        Polytope(RationalMatrix vertices, std::vector<std::string> labels)
            : vertices_(std::move(vertices)), labels_(std::move(labels))
        {
            RationalMatrix ones(1, vertices_.cols());
            for (std::size_t j = 0; j < vertices_.cols(); ++j)
                ones(0, j) = 1;
            system_ = vertices_.stack(ones);
        }

        RationalMatrix vertices_;
        std::vector<std::string> labels_;
        RationalMatrix system_;
};

/// True when the barycentric system [V; 1^T] lambda = [p; 1], lambda >= 0,
/// restricted to `columns`, has a solution.
inline bool in_hull_of(const RationalMatrix& system, std::span<const std::size_t> columns, const RationalVector& rhs)
{
    return solve_lp(system.select_columns(columns), rhs).status == LpStatus::Optimal;
}

/**
 * Checks the standing assumptions and builds a Polytope: n > d,
 * rank [V; 1^T] = d + 1, no repeated column, and no column that is a convex
 * combination of the others (exact phase-one LP per column).
 */
inline Polytope validate(RationalMatrix vertices, std::size_t d, std::vector<std::string> labels = {})
{
    if (vertices.rows() != d)
        throw Error(ErrorCode::DimensionMismatch,
                    "vertex matrix has " + std::to_string(vertices.rows()) + " rows, expected " + std::to_string(d));
    const std::size_t n = vertices.cols();
    if (n <= d)
        throw Error(ErrorCode::TooFewVertices,
                    "need more than " + std::to_string(d) + " vertices, got " + std::to_string(n));
    if (!labels.empty() && labels.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "label count differs from vertex count");

    Polytope poly(std::move(vertices), std::move(labels));
    if (rank(poly.system()) != d + 1)
        throw Error(ErrorCode::RankDeficient, "rank [V; 1^T] < d + 1: the hull is not full-dimensional");

    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (poly.vertex(i) == poly.vertex(j))
                throw Error(ErrorCode::DuplicateVertex,
                            "vertex " + std::to_string(j + 1) + " repeats vertex " + std::to_string(i + 1), j + 1);

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i) {
        others.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                others.push_back(j);
        if (in_hull_of(poly.system(), others, poly.lift(poly.vertex(i))))
            throw Error(ErrorCode::NonExtremeVertex,
                        "vertex " + std::to_string(i + 1) + " is a convex combination of the others", i + 1);
    }
    return poly;
}

enum class Location { Interior, Boundary, Outside };

constexpr std::string_view to_string(Location loc) noexcept
{
    switch (loc) {
    case Location::Interior: return "Interior";
    case Location::Boundary: return "Boundary";
    case Location::Outside: return "Outside";
    }
    return "Unknown";
}

/**
 * Where a point sits relative to P, with an exact certificate:
 * Interior/Boundary carry a feasible lambda (strictly positive for
 * Interior); Outside carries (normal, offset) with normal.v_i <= offset for
 * every vertex and normal.p > offset.
 */
struct PointLocation
{
    Location tag = Location::Outside;
    RationalVector lambda;
    RationalVector normal;
    Rational offset = 0;
};

inline PointLocation locate(const Polytope& poly, const RationalVector& p)
{
    const RationalVector rhs = poly.lift(p);
    const std::size_t n = poly.size();
    const std::size_t d = poly.dim();

    PointLocation loc;
    LpResult feas = solve_lp(poly.system(), rhs);
    if (feas.status == LpStatus::Infeasible) {
        loc.tag = Location::Outside;
        loc.normal.assign(feas.farkas.begin(), feas.farkas.begin() + static_cast<std::ptrdiff_t>(d));
        loc.offset = -feas.farkas[d];
        return loc;
    }

    // max s  s.t.  [V;1^T](mu + s 1) = [p;1],  mu, s >= 0.  Interior iff s* > 0.
    RationalMatrix a(d + 1, n + 1);
    for (std::size_t r = 0; r <= d; ++r) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            a(r, j) = poly.system()(r, j);
            row_sum += a(r, j);
        }
        a(r, n) = row_sum;
    }
    RationalVector objective(n + 1);
    objective[n] = 1;
    LpResult slack = solve_lp(a, rhs, objective);
    if (slack.status != LpStatus::Optimal)
        throw Error(ErrorCode::Infeasible, "interior LP failed on a feasible point");

    if (slack.objective > 0) {
        loc.tag = Location::Interior;
        loc.lambda.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            loc.lambda[j] = slack.x[j] + slack.x[n];
    } else {
        loc.tag = Location::Boundary;
        loc.lambda = std::move(feas.x);
    }
    return loc;
}

}   // namespace barypoly
