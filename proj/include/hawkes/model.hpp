#pragma once

#include "hawkes/kernel.hpp"

#include <span>
#include <vector>

namespace hawkes {

struct HawkesModel {
    double mu{0.0};  // background rate, events per unit time
    KernelParams kernel{ExpKernel{0.0, 1.0}};
};

/// Throws invalid_kernel for a bad kernel and invalid_argument for mu < 0.
void validate(const HawkesModel& model);

/// Event times on (0, horizon], strictly increasing.
class EventSequence {
public:
    EventSequence() = default;
    /// Throws invalid_argument unless 0 < t_1 < ... < t_N <= horizon.
    EventSequence(std::vector<double> times, double horizon);

    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }

    /// Number of events with t_a < t <= t_b.
    [[nodiscard]] std::size_t count_in(double t_a, double t_b) const noexcept;

    /// Events up to and including `end`, with horizon `end`.
    [[nodiscard]] EventSequence truncated(double end) const;

    /// Same events with the horizon moved to the last event time.
    [[nodiscard]] EventSequence with_last_event_horizon() const;

    friend bool operator==(const EventSequence&, const EventSequence&) = default;

private:
    std::vector<double> times_;
    double horizon_{0.0};
};

} // namespace hawkes
