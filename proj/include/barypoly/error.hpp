#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace barypoly {

enum class ErrorCode {
    SingularMatrix,
    EmptyInput,
    DimensionMismatch,
    TooFewVertices,
    RankDeficient,
    DuplicateVertex,
    NonExtremeVertex,
    Infeasible,
    SingularPattern,
    InconsistentInputs,
    NotAnInterval,
    UnboundedDirection,
    NotMember,
    LeavesPolytope,
    InfeasibleSelection,
    OracleDisagreement,
    ParseError,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::NonExtremeVertex: return "NonExtremeVertex";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::SingularPattern: return "SingularPattern";
    case ErrorCode::InconsistentInputs: return "InconsistentInputs";
    case ErrorCode::NotAnInterval: return "NotAnInterval";
    case ErrorCode::UnboundedDirection: return "UnboundedDirection";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::LeavesPolytope: return "LeavesPolytope";
    case ErrorCode::InfeasibleSelection: return "InfeasibleSelection";
    case ErrorCode::OracleDisagreement: return "OracleDisagreement";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/**
 * Single exception type for the library. The code is machine-readable (the
 * CLI echoes it verbatim); `index()` carries the offending vertex for
 * NonExtremeVertex / DuplicateVertex, 1-based as in the input file.
 */
class Error : public std::runtime_error
{
    public:
        Error(ErrorCode code, const std::string& detail, std::optional<std::size_t> index = std::nullopt)
            : std::runtime_error(std::string(to_string(code)) + ": " + detail),
              code_(code), detail_(detail), index_(index) {}

        ErrorCode code() const noexcept { return code_; }
        const std::string& detail() const noexcept { return detail_; }
        std::optional<std::size_t> index() const noexcept { return index_; }

    private:
        ErrorCode code_;
        std::string detail_;
        std::optional<std::size_t> index_;
};

}   // namespace barypoly
