// barypoly: command-line front end for the generalized barycentric coordinate
// library. Exit codes: 0 ok, 1 input/validation error, 2 point outside,
// 3 internal invariant failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "barypoly/barypoly.hpp"

namespace {

using namespace barypoly;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kOutside = 2;
constexpr int kInternal = 3;

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Infeasible:
    case ErrorCode::LeavesPolytope:
        return kOutside;
    case ErrorCode::OracleDisagreement:
    case ErrorCode::InconsistentInputs:
    case ErrorCode::UnboundedDirection:
        return kInternal;
    default:
        return kInputError;
    }
}

int report_error(const Error& e)
{
    json out = {{"error", std::string(to_string(e.code()))}, {"detail", e.detail()}};
    if (e.index())
        out["index"] = *e.index();
    std::cout << out.dump() << "\n";
    return exit_code_for(e.code());
}

std::uint64_t seed_from_env()
{
    const char* raw = std::getenv("BARYPOLY_SEED");
    if (!raw || !*raw)
        return 0;
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "BARYPOLY_SEED must be a non-negative integer");
    }
}

RationalVector require_point(const Polytope& poly, const std::string& text)
{
    RationalVector p = parse_point(text);
    if (p.size() != poly.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(poly.dim()));
    return p;
}

int print_analysis(const Polytope& poly, const RationalVector& p, bool pretty)
{
    AnalysisReport rep = analyze(poly, p);
    std::cout << to_json(rep).dump(pretty ? 2 : -1) << "\n";
    return rep.location == Location::Outside ? kOutside : kOk;
}

int run_oracle_check(const Polytope& poly, const RationalVector& p)
{
    if (locate(poly, p).tag == Location::Outside)
        throw Error(ErrorCode::Infeasible, "point lies outside the polytope");
    const std::uint64_t seed = seed_from_env();
    LambdaPolytope lam = lambda_vertices(poly, p);
    OracleResult oracle = dd_vertices(poly, p);
    bool agree = oracle.compare_with(lam.vertices);

    std::size_t checked = 0;
    bool samples_ok = true;
    for (const auto& s : random_feasible_sample(poly, p, 20, seed)) {
        ++checked;
        if (!s.satisfies(poly)) {
            samples_ok = false;
            continue;
        }
        try {
            caratheodory_decompose(lam, s);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotMember)
                throw;
            samples_ok = false;
        }
    }
    json out = {{"agreement", agree},
                {"samples_in_hull", samples_ok},
                {"samples_checked", checked},
                {"seed", seed},
                {"lambda_vertex_count", lam.vertices.size()},
                {"oracle_vertex_count", oracle.vertices.size()}};
    std::cout << out.dump() << "\n";
    return agree && samples_ok ? kOk : kInternal;
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized barycentric coordinates: exact Lambda(p) polytopes and set-valued probes"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");

    std::string file;
    std::string point;
    bool pretty = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check a polytope file");
    validate_cmd->add_option("file", file, "Polytope JSON file")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Vertices of Lambda(p) and Gamma(p) at a point");
    analyze_cmd->add_option("file", file, "Polytope JSON file")->required();
    analyze_cmd->add_option("--point", point, "Point, e.g. 1/2,1/2")->required();
    analyze_cmd->add_flag("--pretty", pretty, "Indented JSON");

    std::string mode = "census";
    std::size_t grid = 0;
    std::string points_file;
    double t0 = 0.125;
    std::size_t steps = 8;
    std::string direction;
    std::string zero_set;
    unsigned jobs = 1;
    double tol = 1e-7;
    auto* sweep_cmd = app.add_subcommand("sweep", "Batch census / continuity / semidifferentiability probes as CSV");
    sweep_cmd->add_option("file", file, "Polytope JSON file")->required();
    sweep_cmd->add_option("--mode", mode, "census | continuity | semidiff")
        ->check(CLI::IsMember({"census", "continuity", "semidiff"}));
    auto* grid_opt = sweep_cmd->add_option("--grid", grid, "k: k^d grid inside the bounding box");
    auto* points_opt = sweep_cmd->add_option("--points", points_file, "File with one point per line");
    grid_opt->excludes(points_opt);
    sweep_cmd->add_option("--t0", t0, "Initial step");
    sweep_cmd->add_option("--steps", steps, "Number of halvings sampled");
    sweep_cmd->add_option("--h,--direction", direction, "Probe direction (default: first axis)");
    sweep_cmd->add_option("--zero-set", zero_set, "Semidiff selection, 1-based indices");
    sweep_cmd->add_option("--jobs", jobs, "Worker threads");
    sweep_cmd->add_option("--tol", tol, "Distance below which a probe counts as converged");

    std::string fixture_name;
    auto* examples_cmd = app.add_subcommand("examples", "Print a built-in fixture (or analyse it with --point)");
    examples_cmd->add_option("name", fixture_name, "square | pentagon | pyramid | prism8 | triangle | list")
        ->required();
    examples_cmd->add_option("--point", point, "Analyse the fixture at this point");
    examples_cmd->add_flag("--pretty", pretty, "Indented JSON");

    auto* oracle_cmd = app.add_subcommand("oracle-check", "Cross-check Lambda(p) against the double-description oracle");
    oracle_cmd->add_option("file", file, "Polytope JSON file")->required();
    oracle_cmd->add_option("--point", point, "Point")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*validate_cmd) {
            Polytope poly = load_polytope(file);
            std::cout << json{{"valid", true}, {"dim", poly.dim()}, {"vertices", poly.size()}}.dump() << "\n";
            return kOk;
        }
        if (*analyze_cmd) {
            Polytope poly = load_polytope(file);
            return print_analysis(poly, require_point(poly, point), pretty);
        }
        if (*sweep_cmd) {
            Polytope poly = load_polytope(file);
            if (!*grid_opt && !*points_opt)
                throw Error(ErrorCode::InvalidArgument, "sweep needs --grid or --points");
            SweepOptions opts;
            opts.mode = mode == "continuity" ? SweepMode::Continuity
                        : mode == "semidiff" ? SweepMode::Semidiff
                                             : SweepMode::Census;
            opts.t0 = t0;
            opts.steps = steps;
            opts.jobs = jobs;
            opts.probe.tolerance = tol;
            if (!direction.empty())
                opts.direction = require_point(poly, direction);
            if (!zero_set.empty()) {
                IndexSet z;
                for (const auto& v : parse_point(zero_set)) {
                    if (boost::multiprecision::denominator(v) != 1 || v < 1 || v > static_cast<long>(poly.size()))
                        throw Error(ErrorCode::InvalidArgument, "--zero-set takes 1-based vertex indices");
                    z.push_back(static_cast<std::size_t>(boost::multiprecision::numerator(v).convert_to<long>()) - 1);
                }
                opts.zero_set = z;
            }
            std::vector<RationalVector> pts;
            if (*grid_opt) {
                pts = grid_points(poly, grid);
            } else {
                std::ifstream in(points_file);
                if (!in)
                    throw Error(ErrorCode::ParseError, "cannot open '" + points_file + "'");
                pts = read_points(in);
            }
            std::cout << run_sweep(poly, pts, opts);
            return kOk;
        }
        if (*examples_cmd) {
            if (fixture_name == "list") {
                for (const auto& f : fixtures::all)
                    std::cout << f.name << "\n";
                return kOk;
            }
            auto f = fixtures::find(fixture_name);
            if (!f)
                throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + fixture_name + "'");
            Polytope poly = parse_polytope(f->json);
            if (point.empty()) {
                std::cout << polytope_to_json(poly).dump(pretty ? 2 : -1) << "\n";
                return kOk;
            }
            return print_analysis(poly, require_point(poly, point), pretty);
        }
        if (*oracle_cmd) {
            Polytope poly = load_polytope(file);
            return run_oracle_check(poly, require_point(poly, point));
        }
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cout << json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << "\n";
        return kInternal;
    }
    return kOk;
}
