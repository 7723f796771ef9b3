#include <geomfit/errors.hpp>

namespace geomfit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInput: return "empty-input";
        case ErrorCode::TooFewPoints: return "too-few-points";
        case ErrorCode::DegenerateCloud: return "degenerate-cloud";
        case ErrorCode::DegenerateSystem: return "degenerate-system";
        case ErrorCode::DegenerateInput: return "degenerate-input";
        case ErrorCode::ParseError: return "parse-error";
        case ErrorCode::InvalidOptions: return "invalid-options";
        case ErrorCode::InvalidSpec: return "invalid-spec";
        case ErrorCode::InternalError: return "internal-error";
    }
    return "internal-error";
}

int error_exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateCloud:
        case ErrorCode::DegenerateSystem:
        case ErrorCode::DegenerateInput:
            return 3;
        case ErrorCode::InternalError:
            return 1;
        default:
            return 2;
    }
}

} // namespace geomfit
