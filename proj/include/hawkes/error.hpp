#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hawkes {

enum class ErrorCode {
    invalid_kernel,
    divergent_integral,
    domain_error,
    explosion_guard,
    bad_start,
    non_finite_region,
    empty_sequence,
    no_test_events,
    no_stable_candidate,
    invalid_argument,
    parse_error,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class HawkesError : public std::runtime_error {
public:
    HawkesError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace hawkes
