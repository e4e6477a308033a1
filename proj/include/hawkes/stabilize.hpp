#pragma once

#include "hawkes/mle.hpp"
#include "hawkes/model.hpp"

#include <optional>
#include <vector>

namespace hawkes {

/// How the stabilized background rate is derived from the empirical rate
/// Lambda = N / T and the target kernel mass m = 1 / (1 + epsilon).
enum class MuRule {
    as_printed,  // Lambda / (1 + m)
    stationary,  // Lambda * (1 - m), the rate-matching alternative
};

struct StabilizationConfig {
    double epsilon{0.1};
    int resolution{6};  // M
    MuRule mu_rule{MuRule::as_printed};
};

/// epsilon in (0, 1) and resolution >= 2, else invalid_argument.
void validate(const StabilizationConfig& config);

enum class CandidateSource {
    last_iterate,  // theta_I itself
    grid,          // interpolation point i in {0, ..., M} (M - 1 for PWL variant 2 and GSS)
    endpoint,      // amplitude-only renormalization
};

struct Candidate {
    KernelParams kernel;
    CandidateSource source{CandidateSource::grid};
    int index{0};    // i for grid points
    int variant{1};  // PWL: 1 rescales (K, c), 2 rescales (K, p)
    bool clamped{false};  // GSS: an erfinv argument hit the (-1, 1) clamp
};

struct CandidateSet {
    std::vector<Candidate> candidates;
    std::size_t dropped{0};
};

/// Every point of the epsilon-margin set before the stability filter, in
/// selection order (theta_I first). PWL returns both variants with the
/// shared endpoint deduplicated. Points whose closed form is undefined
/// (log c = 0, Lambert-W argument below -1/e) are omitted and counted in
/// `dropped`.
[[nodiscard]] CandidateSet enumerate_omega(const KernelParams& last_iterate, const StabilizationConfig& config);

/// enumerate_omega() followed by the safety filter: candidates that fail
/// validation or have branching ratio >= 1 are removed and counted.
[[nodiscard]] CandidateSet omega_epsilon(const KernelParams& last_iterate, const StabilizationConfig& config);

/// Lambda / (1 + 1/(1+eps)) with Lambda = N / T (or the stationary variant).
[[nodiscard]] double mu_epsilon(const EventSequence& seq, const StabilizationConfig& config);

struct ScoredCandidate {
    Candidate candidate;
    double loglik{0.0};
};

struct StabilizedResult {
    std::vector<ScoredCandidate> candidates;
    double mu_epsilon{0.0};
    HawkesModel selected;
    std::size_t selected_index{0};
    double selected_loglik{0.0};
    double original_loglik{0.0};  // L(mu_I, theta_I) on the training window
    bool strict_improvement{false};
    std::size_t dropped_candidates{0};
};

/// Scores every surviving candidate with mu_epsilon on [0, train_end]
/// (fit.train_end unless overridden) and keeps the argmax; ties go to the
/// earliest candidate. Throws no_stable_candidate if the filter removes all.
[[nodiscard]] StabilizedResult stabilize_fit(const FitResult& fit, const EventSequence& seq, const StabilizationConfig& config,
                                             std::optional<double> train_end = std::nullopt);

} // namespace hawkes
