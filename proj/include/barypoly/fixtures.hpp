#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "io.hpp"
#include "polytope.hpp"

// Built-in regression polytopes. The pentagon lies exactly on the unit circle
// (rational parametrisation of the angles 90 + 72k degrees, tangent of the
// half angle rounded to 1/1000), hence the large denominators.
namespace barypoly::fixtures {

struct Fixture
{
    std::string_view name;
    std::string_view json;
    std::string_view reference_point;
};

inline constexpr std::array<Fixture, 5> all = {{
    {"square", R"({"dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})", "1/2,1/2"},
    {"pentagon",
     R"({"dim": 2, "vertices": [["0", "1"], ["-9716649/10216649", "3157000/10216649"], ["-2853369/4853369", "-3926000/4853369"], ["7399/12601", "-10200/12601"], ["243759/256241", "79000/256241"]]})",
     "0,0"},
    {"pyramid", R"({"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], ["1/3", "1/2", 1]]})",
     "1/2,1/2,1/4"},
    {"prism8",
     R"({"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]})",
     "1/2,1/2,1/2"},
    {"triangle", R"({"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]})", "1/3,1/3"},
}};

inline std::optional<Fixture> find(std::string_view name)
{
    for (const auto& f : all)
        if (f.name == name)
            return f;
    return std::nullopt;
}

inline Polytope polytope(std::string_view name)
{
    auto f = find(name);
    if (!f)
        throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + std::string(name) + "'");
    return parse_polytope(f->json);
}

inline RationalVector reference_point(std::string_view name)
{
    auto f = find(name);
    if (!f)
        throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + std::string(name) + "'");
    return parse_point(f->reference_point);
}

}   // namespace barypoly::fixtures
