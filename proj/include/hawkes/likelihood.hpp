#pragma once

#include "hawkes/model.hpp"

#include <cstddef>
#include <vector>

namespace hawkes {

/// Returned in place of log(0) so optimizers can back away instead of failing.
inline constexpr double kLogZeroSentinel = -1e308;

struct LoglikBreakdown {
    double sum_log_intensity{0.0};
    double compensator{0.0};
    double total{0.0};  // sum_log_intensity - compensator
    std::size_t n_events_in_window{0};
};

/// mu + sum of phi(t - t_i) over events strictly before t.
[[nodiscard]] double intensity_at(const HawkesModel& model, const EventSequence& seq, double t);

/// Closed-form integral of the intensity over [t_a, t_b]; history before t_a
/// contributes through the kernel tails.
[[nodiscard]] double compensator(const HawkesModel& model, const EventSequence& seq, double t_a, double t_b);

/// Log-likelihood of the events in (t_a, t_b] minus the compensator on
/// [t_a, t_b]. Serial O(N^2) reference implementation; exact.
[[nodiscard]] LoglikBreakdown log_likelihood(const HawkesModel& model, const EventSequence& seq, double t_a, double t_b);
[[nodiscard]] LoglikBreakdown log_likelihood(const HawkesModel& model, const EventSequence& seq);

/// Log-likelihood on [train_fraction * T, T] divided by the number of events
/// in that window. Throws no_test_events when the window is empty.
[[nodiscard]] double normalized_test_loglik(const HawkesModel& model, const EventSequence& seq, double train_fraction);

struct LikelihoodOptions {
    /// History terms are dropped once the kernel tail bound sup_tail(lag)
    /// falls below this value. Zero keeps every term.
    double truncation_threshold{0.0};
};

/// Smallest lag beyond which sup_tail stays at or below `threshold`
/// (+inf when threshold <= 0 or the tail never gets that small).
[[nodiscard]] double tail_cutoff(const KernelParams& kernel, double threshold);

/// Repeated evaluation of the windowed log-likelihood for one sequence, as
/// needed by the optimizers. The per-event intensity sums run as an OpenMP
/// loop with a SIMD inner reduction; the log terms are then added in event
/// order so the result does not depend on the thread count.
class WindowLikelihood {
public:
    WindowLikelihood(const EventSequence& seq, double t_a, double t_b, LikelihoodOptions options = {});

    [[nodiscard]] LoglikBreakdown operator()(const HawkesModel& model) const;

    [[nodiscard]] double window_start() const noexcept { return t_a_; }
    [[nodiscard]] double window_end() const noexcept { return t_b_; }
    [[nodiscard]] std::size_t events_in_window() const noexcept { return times_.size() - first_; }

private:
    std::vector<double> times_;  // every event up to t_b
    std::size_t first_{0};       // index of the first event after t_a
    double t_a_;
    double t_b_;
    LikelihoodOptions options_;
};

} // namespace hawkes
