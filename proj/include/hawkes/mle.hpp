#pragma once

#include "hawkes/likelihood.hpp"
#include "hawkes/model.hpp"
#include "hawkes/optimize.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hawkes {

struct FitOptions {
    OptimOptions optim{};
    /// End of the training window [0, train_end]; the sequence horizon when unset.
    std::optional<double> train_end;
    /// Used for the optimizer's objective only; the reported loglik is exact.
    LikelihoodOptions likelihood{};
};

struct FitResult {
    HawkesModel model_last_iterate;
    double loglik_last_iterate{0.0};  // exact, on [0, train_end]
    double loglik_init{0.0};          // exact, same window, at the starting point
    double train_end{0.0};
    std::size_t iterations{0};
    bool converged{false};
    std::vector<std::pair<std::size_t, double>> trace;
};

/// Reproducible starting point: mu = 0.5 N / T, kernel mass 0.5, and every
/// time-scale parameter set to the mean inter-arrival time T / N (PWL starts
/// at p = 2, QEXP at q = 1). N and T refer to the training window.
[[nodiscard]] HawkesModel default_init(Family family, const EventSequence& seq, double train_end);

/// Optimizer coordinates: log(mu) followed by to_unconstrained(kernel).
[[nodiscard]] std::vector<double> pack(const HawkesModel& model);
[[nodiscard]] HawkesModel unpack(Family family, std::span<const double> x);

/// Maximizes the log-likelihood on [0, train_end] in unconstrained
/// coordinates and returns the last iterate whether or not it converged,
/// and whether or not it is stable.
[[nodiscard]] FitResult fit_mle(Family family, const EventSequence& seq, const HawkesModel& init, const FitOptions& options = {});
[[nodiscard]] FitResult fit_mle(Family family, const EventSequence& seq, const FitOptions& options = {});

} // namespace hawkes
