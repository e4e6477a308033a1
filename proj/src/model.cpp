#include "hawkes/model.hpp"

#include "hawkes/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hawkes {

void validate(const HawkesModel& model) {
    if (!(model.mu >= 0.0) || !std::isfinite(model.mu)) {
        throw HawkesError(ErrorCode::invalid_argument, "mu must be finite and >= 0 (got " + std::to_string(model.mu) + ")");
    }
    validate(model.kernel);
}

EventSequence::EventSequence(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw HawkesError(ErrorCode::invalid_argument, "horizon must be finite and > 0");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        const double t = times_[i];
        if (!(t > 0.0) || t > horizon_) {
            throw HawkesError(ErrorCode::invalid_argument,
                              "event " + std::to_string(i) + " at " + std::to_string(t) + " lies outside (0, T]");
        }
        if (i > 0 && !(t > times_[i - 1])) {
            throw HawkesError(ErrorCode::invalid_argument,
                              "event times must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

std::size_t EventSequence::count_in(double t_a, double t_b) const noexcept {
    const auto lo = std::upper_bound(times_.begin(), times_.end(), t_a);
    const auto hi = std::upper_bound(times_.begin(), times_.end(), t_b);
    return hi > lo ? static_cast<std::size_t>(hi - lo) : 0;
}

EventSequence EventSequence::truncated(double end) const {
    const auto hi = std::upper_bound(times_.begin(), times_.end(), end);
    return EventSequence(std::vector<double>(times_.begin(), hi), end);
}

EventSequence EventSequence::with_last_event_horizon() const {
    if (times_.empty()) {
        throw HawkesError(ErrorCode::empty_sequence, "cannot take the last event of an empty sequence");
    }
    return EventSequence(times_, times_.back());
}

} // namespace hawkes
