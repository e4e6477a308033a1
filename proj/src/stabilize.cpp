#include "hawkes/stabilize.hpp"

#include "hawkes/error.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

namespace hawkes {

namespace {

constexpr double kClamp = 1e-12;
constexpr double kDedupTolerance = 1e-10;

// Shared bookkeeping for the closed forms: with X = |phi| (1 + eps),
// grid point i shrinks the amplitude by X^(i/M) and the second parameter
// absorbs the remaining X^((M-i)/M).
struct Grid {
    double mass;      // |phi| of theta_I
    double scale;     // X
    double epsilon;
    int m;

    [[nodiscard]] double amplitude_factor(int i) const { return std::pow(scale, static_cast<double>(i) / m); }
    [[nodiscard]] double remaining_factor(int i) const { return std::pow(scale, static_cast<double>(m - i) / m); }
};

bool nearly_equal(const KernelParams& a, const KernelParams& b) {
    if (a.index() != b.index()) {
        return false;
    }
    const auto pa = parameters(a);
    const auto pb = parameters(b);
    for (std::size_t d = 0; d < pa.size(); ++d) {
        if (std::abs(pa[d] - pb[d]) > kDedupTolerance * std::max(std::abs(pa[d]), std::abs(pb[d]))) {
            return false;
        }
    }
    return true;
}

void add_unique(CandidateSet& set, Candidate c) {
    for (const auto& existing : set.candidates) {
        if (nearly_equal(existing.kernel, c.kernel)) {
            return;
        }
    }
    set.candidates.push_back(std::move(c));
}

double clamp_erfinv_arg(double arg, bool& clamped) {
    const double lo = -1.0 + kClamp;
    const double hi = 1.0 - kClamp;
    if (arg < lo || arg > hi || std::isnan(arg)) {
        clamped = true;
        return std::isnan(arg) ? arg : std::clamp(arg, lo, hi);
    }
    return arg;
}

void enumerate_exp(const ExpKernel& k, const Grid& g, CandidateSet& set) {
    for (int i = 0; i <= g.m; ++i) {
        set.candidates.push_back({ExpKernel{k.amplitude / g.amplitude_factor(i), k.decay * g.remaining_factor(i)}, CandidateSource::grid, i});
    }
}

void enumerate_ray(const RayleighKernel& k, const Grid& g, CandidateSet& set) {
    for (int i = 0; i <= g.m; ++i) {
        set.candidates.push_back({RayleighKernel{k.amplitude / g.amplitude_factor(i), k.rate * g.remaining_factor(i)}, CandidateSource::grid, i});
    }
}

void enumerate_qexp(const QExpKernel& k, const Grid& g, CandidateSet& set) {
    for (int i = 0; i <= g.m; ++i) {
        const double q = 2.0 - (2.0 - k.q) * g.remaining_factor(i);
        set.candidates.push_back({QExpKernel{k.amplitude / g.amplitude_factor(i), q}, CandidateSource::grid, i});
    }
}

void enumerate_pwl(const PowerLawKernel& k, const Grid& g, CandidateSet& set) {
    const double p1 = k.exponent - 1.0;
    // Variant 1: amplitude and offset.
    for (int i = 0; i <= g.m; ++i) {
        const double offset = k.offset * std::pow(g.remaining_factor(i), 1.0 / p1);
        set.candidates.push_back({PowerLawKernel{k.amplitude / g.amplitude_factor(i), offset, k.exponent}, CandidateSource::grid, i, 1});
    }
    // Variant 2: amplitude and exponent. The new exponent solves
    // x c^x = Delta_i with x = p - 1, i.e. x = W(Delta_i log c) / log c.
    add_unique(set, {PowerLawKernel{k.amplitude / g.scale, k.offset, k.exponent}, CandidateSource::endpoint, g.m, 2});
    const double log_c = std::log(k.offset);
    if (log_c == 0.0) {
        set.dropped += static_cast<std::size_t>(g.m);
        return;
    }
    const double head = p1 * std::pow(k.offset, p1);
    for (int i = 0; i < g.m; ++i) {
        const double delta = g.remaining_factor(i) * head;
        const double arg = delta * log_c;
        if (!(arg >= -1.0 / std::numbers::e) || std::isnan(arg)) {
            ++set.dropped;
            continue;
        }
        const double exponent = 1.0 + special::lambert_w0(arg) / log_c;
        add_unique(set, {PowerLawKernel{k.amplitude / g.amplitude_factor(i), k.offset, exponent}, CandidateSource::grid, i, 2});
    }
}

void enumerate_gss(const GaussianKernel& k, const Grid& g, CandidateSet& set) {
    const double scale = k.amplitude * std::sqrt(std::numbers::pi * k.width);
    for (int i = 0; i < g.m; ++i) {
        const double frac = static_cast<double>(g.m - i) / g.m;
        bool clamped = false;
        const double num = clamp_erfinv_arg(2.0 / (scale * std::pow(1.0 + g.epsilon, frac)) - 1.0, clamped);
        const double den = clamp_erfinv_arg(2.0 * std::pow(g.mass, frac) / scale - 1.0, clamped);
        double mode = std::numeric_limits<double>::quiet_NaN();
        if (!std::isnan(num) && !std::isnan(den)) {
            mode = k.mode * special::erfinv(num) / special::erfinv(den);
        }
        Candidate c{GaussianKernel{k.amplitude / g.amplitude_factor(i), mode, k.width}, CandidateSource::grid, i};
        c.clamped = clamped;
        set.candidates.push_back(c);
    }
    set.candidates.push_back({GaussianKernel{k.amplitude / g.scale, k.mode, k.width}, CandidateSource::endpoint, g.m});
}

bool is_stable_candidate(const KernelParams& kernel) {
    if (!is_valid(kernel)) {
        return false;
    }
    try {
        const double br = branching_ratio(kernel);
        return std::isfinite(br) && br < 1.0;
    } catch (const HawkesError&) {
        return false;
    }
}

} // namespace

void validate(const StabilizationConfig& config) {
    if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "epsilon must lie in (0, 1)");
    }
    if (config.resolution < 2) {
        throw HawkesError(ErrorCode::invalid_argument, "resolution M must be >= 2");
    }
}

CandidateSet enumerate_omega(const KernelParams& last_iterate, const StabilizationConfig& config) {
    validate(config);
    validate(last_iterate);
    const double mass = branching_ratio(last_iterate);
    const Grid grid{mass, mass * (1.0 + config.epsilon), config.epsilon, config.resolution};

    CandidateSet set;
    set.candidates.push_back({last_iterate, CandidateSource::last_iterate, 0, 0});
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExpKernel>) {
                enumerate_exp(k, grid, set);
            } else if constexpr (std::is_same_v<K, PowerLawKernel>) {
                enumerate_pwl(k, grid, set);
            } else if constexpr (std::is_same_v<K, RayleighKernel>) {
                enumerate_ray(k, grid, set);
            } else if constexpr (std::is_same_v<K, GaussianKernel>) {
                enumerate_gss(k, grid, set);
            } else {
                enumerate_qexp(k, grid, set);
            }
        },
        last_iterate);
    return set;
}

CandidateSet omega_epsilon(const KernelParams& last_iterate, const StabilizationConfig& config) {
    CandidateSet all = enumerate_omega(last_iterate, config);
    CandidateSet kept;
    kept.dropped = all.dropped;
    for (auto& c : all.candidates) {
        if (is_stable_candidate(c.kernel)) {
            kept.candidates.push_back(std::move(c));
        } else {
            ++kept.dropped;
        }
    }
    return kept;
}

double mu_epsilon(const EventSequence& seq, const StabilizationConfig& config) {
    validate(config);
    if (seq.empty()) {
        throw HawkesError(ErrorCode::empty_sequence, "mu_epsilon needs at least one event");
    }
    const double rate = static_cast<double>(seq.size()) / seq.horizon();
    const double target_mass = 1.0 / (1.0 + config.epsilon);
    return config.mu_rule == MuRule::as_printed ? rate / (1.0 + target_mass) : rate * (1.0 - target_mass);
}

StabilizedResult stabilize_fit(const FitResult& fit, const EventSequence& seq, const StabilizationConfig& config,
                               std::optional<double> train_end) {
    const double end = train_end.value_or(fit.train_end > 0.0 ? fit.train_end : seq.horizon());
    if (!(end > 0.0 && end <= seq.horizon())) {
        throw HawkesError(ErrorCode::invalid_argument, "training window end must lie in (0, T]");
    }

    StabilizedResult result;
    result.mu_epsilon = mu_epsilon(seq.truncated(end), config);
    CandidateSet set = omega_epsilon(fit.model_last_iterate.kernel, config);
    result.dropped_candidates = set.dropped;
    if (set.candidates.empty()) {
        throw HawkesError(ErrorCode::no_stable_candidate, "every candidate was removed by the stability filter");
    }

    const WindowLikelihood window(seq, 0.0, end);
    const auto count = static_cast<std::ptrdiff_t>(set.candidates.size());
    result.candidates.resize(set.candidates.size());
#pragma omp parallel for schedule(dynamic) if (count > 4)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        auto& c = set.candidates[static_cast<std::size_t>(k)];
        const double ll = window(HawkesModel{result.mu_epsilon, c.kernel}).total;
        result.candidates[static_cast<std::size_t>(k)] = {std::move(c), ll};
    }

    // Index-ordered reduction; strict '>' keeps the earliest of tied maxima.
    std::size_t best = 0;
    for (std::size_t k = 1; k < result.candidates.size(); ++k) {
        if (result.candidates[k].loglik > result.candidates[best].loglik) {
            best = k;
        }
    }
    result.selected_index = best;
    result.selected = HawkesModel{result.mu_epsilon, result.candidates[best].candidate.kernel};
    result.selected_loglik = result.candidates[best].loglik;
    result.original_loglik = window(fit.model_last_iterate).total;
    result.strict_improvement = result.selected_loglik > result.original_loglik;
    return result;
}

} // namespace hawkes
