#include "singuline/error.hpp"

namespace singuline {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegreeTooLow: return "DegreeTooLow";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::LeadingContainsZero: return "LeadingContainsZero";
        case ErrorCode::EmptyIntersection: return "EmptyIntersection";
        case ErrorCode::BudgetExhausted: return "BudgetExhausted";
        case ErrorCode::AssumptionNotVerified: return "AssumptionNotVerified";
        case ErrorCode::CornerZeroUnresolved: return "CornerZeroUnresolved";
        case ErrorCode::NonSimpleEdgeRoot: return "NonSimpleEdgeRoot";
        case ErrorCode::DegreeGuardExceeded: return "DegreeGuardExceeded";
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace singuline
