#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbertine {

enum class ErrorCode {
    NonCollinear,
    CoincidentEndpoints,
    CoincidentPoints,
    CoincidentLines,
    DegenerateConic,
    DegenerateInput,
    NotInterior,
    NonIntegrable,
    DegenerateTriangle,
    NonConvergent,
    BadPic,
    NotConvexCompatible,
    WrongFamily,
    DomainNotPreserved,
    NoRealLogarithm,
    NotProper,
    NotOnSigma,
    FixedBasePoint,
    StabilizedBasePoint,
    ConfigError,
};

constexpr std::string_view to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::NonCollinear: return "NonCollinear";
    case ErrorCode::CoincidentEndpoints: return "CoincidentEndpoints";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::BadPic: return "BadPic";
    case ErrorCode::NotConvexCompatible: return "NotConvexCompatible";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::DomainNotPreserved: return "DomainNotPreserved";
    case ErrorCode::NoRealLogarithm: return "NoRealLogarithm";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::NotOnSigma: return "NotOnSigma";
    case ErrorCode::FixedBasePoint: return "FixedBasePoint";
    case ErrorCode::StabilizedBasePoint: return "StabilizedBasePoint";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

// Configuration problems are user errors; everything else is a numerical or
// geometric failure. The CLI maps the two groups to different exit codes.
constexpr bool is_config_error(ErrorCode c) { return c == ErrorCode::ConfigError; }

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace hilbertine
