#include "hawkes/error.hpp"

namespace hawkes {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_kernel: return "InvalidKernel";
        case ErrorCode::divergent_integral: return "DivergentIntegral";
        case ErrorCode::domain_error: return "DomainError";
        case ErrorCode::explosion_guard: return "ExplosionGuard";
        case ErrorCode::bad_start: return "BadStart";
        case ErrorCode::non_finite_region: return "NonFiniteRegion";
        case ErrorCode::empty_sequence: return "EmptySequence";
        case ErrorCode::no_test_events: return "NoTestEvents";
        case ErrorCode::no_stable_candidate: return "NoStableCandidate";
        case ErrorCode::invalid_argument: return "InvalidArgument";
        case ErrorCode::parse_error: return "ParseError";
    }
    return "Unknown";
}

} // namespace hawkes
