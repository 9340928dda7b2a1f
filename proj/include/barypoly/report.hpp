#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "gbc.hpp"
#include "io.hpp"
#include "polytope.hpp"

namespace barypoly {

struct LambdaVertexEntry
{
    RationalVector coords;
    IndexSet zero_set;               ///< 0-based in memory, 1-based in JSON
    std::vector<IndexSet> patterns;

    friend bool operator==(const LambdaVertexEntry&, const LambdaVertexEntry&) = default;
};

/**
 * Everything `analyze` learns about one (polytope, point) pair. Exact values
 * serialise as "p/q" strings so a round trip through JSON is lossless.
 * Fields after `location` other than the separating functional are empty
 * when the point is outside.
 */
struct AnalysisReport
{
    std::size_t dim = 0;
    std::vector<RationalVector> polytope_vertices;
    RationalVector point;

    Location location = Location::Outside;
    RationalVector location_lambda;
    RationalVector separating_normal;
    Rational separating_offset = 0;

    RationalVector tau;
    std::vector<RationalVector> null_basis_rows;
    std::vector<LambdaVertexEntry> lambda_vertices;
    std::vector<RationalVector> gamma_vertices;
    std::size_t lambda_dim = 0;
    bool theorem_count_match = false;
    bool degenerate = false;

    double timing_ms = 0;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// validate (already done) -> locate -> tau -> N -> Lambda vertices -> Gamma.
inline AnalysisReport analyze(const Polytope& poly, const RationalVector& p)
{
    auto start = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.dim = poly.dim();
    for (std::size_t j = 0; j < poly.size(); ++j)
        rep.polytope_vertices.push_back(poly.vertex(j));
    rep.point = p;

    PointLocation loc = locate(poly, p);
    rep.location = loc.tag;
    if (loc.tag == Location::Outside) {
        rep.separating_normal = loc.normal;
        rep.separating_offset = loc.offset;
    } else {
        rep.location_lambda = loc.lambda;
        BarycentricVector tau = feasible_tau(poly, p);
        RationalMatrix null_basis = nullbasis(poly);
        LambdaPolytope lam = lambda_vertices(poly, p);
        GammaPolytope gamma = gamma_polytope(poly, p, tau, null_basis, lam);

        rep.tau = tau.lambda;
        for (std::size_t r = 0; r < null_basis.rows(); ++r)
            rep.null_basis_rows.push_back(null_basis.row(r));
        for (std::size_t k = 0; k < lam.vertices.size(); ++k)
            rep.lambda_vertices.push_back({lam.vertices[k], zero_entries(lam.vertices[k]), lam.patterns[k]});
        rep.gamma_vertices = gamma.vertices;
        rep.lambda_dim = lam.dim;
        rep.theorem_count_match = lam.theorem_count_match;
        rep.degenerate = lam.degenerate;
    }
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace detail {

inline json index_set_to_json(const IndexSet& s)
{
    json arr = json::array();
    for (auto i : s)
        arr.push_back(i + 1);
    return arr;
}

inline IndexSet index_set_from_json(const json& arr)
{
    if (!arr.is_array())
        throw Error(ErrorCode::ParseError, "expected an index array");
    IndexSet s;
    for (const auto& i : arr) {
        if (!i.is_number_unsigned() || i.get<std::size_t>() == 0)
            throw Error(ErrorCode::ParseError, "indices are positive integers");
        s.push_back(i.get<std::size_t>() - 1);
    }
    return s;
}

inline json matrix_rows_to_json(const std::vector<RationalVector>& rows)
{
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(to_json(r));
    return arr;
}

inline std::vector<RationalVector> matrix_rows_from_json(const json& arr)
{
    if (!arr.is_array())
        throw Error(ErrorCode::ParseError, "expected an array of rows");
    std::vector<RationalVector> rows;
    for (const auto& r : arr)
        rows.push_back(vector_from_json(r));
    return rows;
}

inline Location location_from_string(const std::string& s)
{
    for (Location loc : {Location::Interior, Location::Boundary, Location::Outside})
        if (to_string(loc) == s)
            return loc;
    throw Error(ErrorCode::ParseError, "unknown location '" + s + "'");
}

}   // namespace detail

inline json to_json(const AnalysisReport& rep)
{
    json doc;
    doc["polytope"] = {{"dim", rep.dim}, {"vertices", detail::matrix_rows_to_json(rep.polytope_vertices)}};
    doc["point"] = to_json(rep.point);
    doc["location"] = std::string(to_string(rep.location));
    if (rep.location == Location::Outside) {
        doc["separating_functional"] = {{"normal", to_json(rep.separating_normal)},
                                        {"offset", to_string(rep.separating_offset)}};
    } else {
        doc["location_lambda"] = to_json(rep.location_lambda);
        doc["tau"] = to_json(rep.tau);
        doc["null_basis"] = detail::matrix_rows_to_json(rep.null_basis_rows);
        json verts = json::array();
        for (const auto& v : rep.lambda_vertices) {
            json patterns = json::array();
            for (const auto& z : v.patterns)
                patterns.push_back(detail::index_set_to_json(z));
            verts.push_back({{"coords", to_json(v.coords)},
                             {"zero_set", detail::index_set_to_json(v.zero_set)},
                             {"patterns", patterns}});
        }
        doc["lambda"] = {{"vertices", verts},
                         {"vertex_count", rep.lambda_vertices.size()},
                         {"dim", rep.lambda_dim},
                         {"theorem_count_match", rep.theorem_count_match},
                         {"degenerate", rep.degenerate}};
        doc["gamma"] = {{"vertices", detail::matrix_rows_to_json(rep.gamma_vertices)}};
    }
    doc["timing_ms"] = rep.timing_ms;
    return doc;
}

inline AnalysisReport report_from_json(const json& doc)
{
    try {
        AnalysisReport rep;
        rep.dim = doc.at("polytope").at("dim").get<std::size_t>();
        rep.polytope_vertices = detail::matrix_rows_from_json(doc.at("polytope").at("vertices"));
        rep.point = vector_from_json(doc.at("point"));
        rep.location = detail::location_from_string(doc.at("location").get<std::string>());
        if (rep.location == Location::Outside) {
            rep.separating_normal = vector_from_json(doc.at("separating_functional").at("normal"));
            rep.separating_offset = parse_rational(doc.at("separating_functional").at("offset").get<std::string>());
        } else {
            rep.location_lambda = vector_from_json(doc.at("location_lambda"));
            rep.tau = vector_from_json(doc.at("tau"));
            rep.null_basis_rows = detail::matrix_rows_from_json(doc.at("null_basis"));
            const json& lam = doc.at("lambda");
            for (const auto& v : lam.at("vertices")) {
                LambdaVertexEntry e;
                e.coords = vector_from_json(v.at("coords"));
                e.zero_set = detail::index_set_from_json(v.at("zero_set"));
                for (const auto& z : v.at("patterns"))
                    e.patterns.push_back(detail::index_set_from_json(z));
                rep.lambda_vertices.push_back(std::move(e));
            }
            rep.lambda_dim = lam.at("dim").get<std::size_t>();
            rep.theorem_count_match = lam.at("theorem_count_match").get<bool>();
            rep.degenerate = lam.at("degenerate").get<bool>();
            rep.gamma_vertices = detail::matrix_rows_from_json(doc.at("gamma").at("vertices"));
        }
        rep.timing_ms = doc.at("timing_ms").get<double>();
        return rep;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
    }
}

}   // namespace barypoly
