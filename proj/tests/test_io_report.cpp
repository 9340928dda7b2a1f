#include <gtest/gtest.h>

#include "support.hpp"

using namespace barypoly;
using testsupport::rv;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected barypoly::Error";
    return ErrorCode::InvalidArgument;
}

}   // namespace

TEST(PolytopeFile, NumbersAreReadExactly)
{
    Polytope p = parse_polytope(R"({"dim": 2, "vertices": [[0, 0], [0.1, 0], [0.1, 0.3], ["0", "3/10"]]})");
    EXPECT_EQ(p.vertex(1), rv({"1/10", "0"}));
    EXPECT_EQ(p.vertex(2), rv({"1/10", "3/10"}));
}

TEST(PolytopeFile, LargeAndExponentNumbers)
{
    Polytope p = parse_polytope(
        R"({"dim": 2, "vertices": [[0, 0], [123456789012345678901234567890, 0], [0, 1e-30]]})");
    EXPECT_EQ(p.vertex(1)[0], parse_rational("123456789012345678901234567890"));
    EXPECT_EQ(p.vertex(2)[1], parse_rational("1/1000000000000000000000000000000"));
}

TEST(PolytopeFile, Labels)
{
    Polytope p = parse_polytope(R"({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]], "labels": ["a", "b", "c"]})");
    EXPECT_EQ(p.labels(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(polytope_to_json(p)["labels"].size(), 3u);
}

TEST(PolytopeFile, Errors)
{
    EXPECT_EQ(code_of([] { parse_polytope("{not json"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_polytope(R"({"vertices": []})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_polytope(R"({"dim": 2, "vertices": [[0, 0], [1], [0, 1]]})"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_polytope(R"({"dim": 2, "vertices": [[0, 0], [1, true], [0, 1]]})"); }),
              ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_polytope(R"({"dim": 1.5, "vertices": [[0]]})"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_polytope(R"({"dim": 2, "vertices": [[0, 0], [1, 0]]})"); }),
              ErrorCode::TooFewVertices);
    EXPECT_EQ(code_of([] { load_polytope("/nonexistent/file.json"); }), ErrorCode::ParseError);
}

TEST(PolytopeFile, DataDirectoryMatchesFixtures)
{
    for (const auto& f : fixtures::all) {
        Polytope from_file = load_polytope(std::string(BARYPOLY_DATA_DIR) + "/" + std::string(f.name) + ".json");
        EXPECT_EQ(from_file.vertices(), fixtures::polytope(f.name).vertices()) << f.name;
    }
}

TEST(PolytopeFile, WriteReadRoundTrip)
{
    Polytope pent = fixtures::polytope("pentagon");
    Polytope again = parse_polytope(polytope_to_json(pent).dump());
    EXPECT_EQ(again.vertices(), pent.vertices());
}

TEST(ParsePoint, Separators)
{
    EXPECT_EQ(parse_point("1/2,1/2"), rv({"1/2", "1/2"}));
    EXPECT_EQ(parse_point("1/2 1/2"), rv({"1/2", "1/2"}));
    EXPECT_EQ(parse_point(" 0.5, -2e-1 "), rv({"1/2", "-1/5"}));
    EXPECT_TRUE(parse_point("").empty());
    EXPECT_EQ(code_of([] { parse_point("1/2,x"); }), ErrorCode::ParseError);
}

TEST(Report, SquareCenter)
{
    AnalysisReport rep = analyze(fixtures::polytope("square"), rv({"1/2", "1/2"}));
    EXPECT_EQ(rep.location, Location::Interior);
    ASSERT_EQ(rep.lambda_vertices.size(), 2u);
    EXPECT_EQ(rep.lambda_vertices[0].zero_set, (IndexSet{0, 2}));
    EXPECT_EQ(rep.lambda_dim, 1u);
    EXPECT_TRUE(rep.theorem_count_match);
    json doc = to_json(rep);
    EXPECT_EQ(doc["lambda"]["vertex_count"], 2);
    EXPECT_EQ(doc["lambda"]["vertices"][0]["zero_set"], json::array({1, 3}));
    EXPECT_EQ(doc["lambda"]["vertices"][1]["coords"], json::array({"1/2", "0", "1/2", "0"}));
    EXPECT_EQ(doc["gamma"]["vertices"].size(), 2u);
}

TEST(Report, OutsideCarriesCertificate)
{
    AnalysisReport rep = analyze(fixtures::polytope("square"), rv({"2", "2"}));
    EXPECT_EQ(rep.location, Location::Outside);
    json doc = to_json(rep);
    EXPECT_TRUE(doc.contains("separating_functional"));
    EXPECT_FALSE(doc.contains("lambda"));
}

TEST(Report, JsonRoundTripIsExact)
{
    std::vector<std::pair<std::string, RationalVector>> runs;
    for (const auto& f : fixtures::all)
        runs.emplace_back(std::string(f.name), fixtures::reference_point(f.name));
    runs.emplace_back("square", rv({"2", "-1/3"}));
    runs.emplace_back("pentagon", rv({"1/7", "-2/9"}));
    for (const auto& [name, p] : runs) {
        AnalysisReport rep = analyze(fixtures::polytope(name), p);
        AnalysisReport back = report_from_json(json::parse(to_json(rep).dump()));
        EXPECT_EQ(back, rep) << name;
    }
}

TEST(Report, MalformedReport)
{
    EXPECT_EQ(code_of([] { report_from_json(json::parse(R"({"polytope": {}})")); }), ErrorCode::ParseError);
}
