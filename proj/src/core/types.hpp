#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace pdm {

using Vec = std::vector<double>;

// Error taxonomy shared by the whole library. Codes are stable: the C API
// and the CLI exit-code mapping depend on them.
enum class ErrorCode {
    SigmaSingular,
    GammaExcluded,
    HypothesisIViolated,
    HypothesisIIViolated,
    NonPositiveParameter,
    DegenerateDiscount,
    GridMismatch,
    StepIncompatible,
    InadmissibleState,
    SentinelEncountered,
    ConfigParse,
    ValidationFailed,
    CheckFailed,
    IoFailure,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SigmaSingular: return "SigmaSingular";
        case ErrorCode::GammaExcluded: return "GammaExcluded";
        case ErrorCode::HypothesisIViolated: return "HypothesisI_Violated";
        case ErrorCode::HypothesisIIViolated: return "HypothesisII_Violated";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::DegenerateDiscount: return "DegenerateDiscount";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::StepIncompatible: return "StepIncompatible";
        case ErrorCode::InadmissibleState: return "InadmissibleState";
        case ErrorCode::SentinelEncountered: return "SentinelEncountered";
        case ErrorCode::ConfigParse: return "ConfigParse";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::CheckFailed: return "CheckFailed";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace pdm
