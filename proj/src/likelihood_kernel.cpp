// Parallel evaluation path for the windowed log-likelihood. The serial
// reference in likelihood.cpp is what the tests compare this against.

#include "hawkes/error.hpp"
#include "hawkes/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace hawkes {

namespace {

// Branch-light per-family kernel values for the inner loops.
struct ExpEval {
    double amplitude, decay;
    double operator()(double d) const { return amplitude * std::exp(-decay * d); }
};

struct PowerLawEval {
    double amplitude, offset, exponent;
    double operator()(double d) const { return amplitude * std::exp(-exponent * std::log(d + offset)); }
};

struct RayleighEval {
    double amplitude, rate;
    double operator()(double d) const { return amplitude * d * std::exp(-rate * d * d); }
};

struct GaussianEval {
    double amplitude, mode, inv_width;
    double operator()(double d) const {
        const double x = d - mode;
        return amplitude * std::exp(-x * x * inv_width);
    }
};

struct QExpEval {
    double amplitude, slope, power;  // a * (1 + slope d)^power on its support
    double operator()(double d) const {
        const double base = 1.0 + slope * d;
        return base > 0.0 ? amplitude * std::exp(power * std::log(base)) : 0.0;
    }
};

struct QOneEval {
    double amplitude;
    double operator()(double d) const { return amplitude * std::exp(-d); }
};

template <class Eval>
void fill_intensity(const Eval& eval, double mu, const std::vector<double>& times, std::size_t first,
                    double cutoff, std::vector<double>& intensity) {
    const std::size_t n = times.size();
    const double* t = times.data();
    const auto count = static_cast<std::ptrdiff_t>(n - first);

#pragma omp parallel for schedule(static) if (count > 256)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const std::size_t j = first + static_cast<std::size_t>(k);
        const double tj = t[j];
        std::size_t start = 0;
        if (std::isfinite(cutoff)) {
            start = static_cast<std::size_t>(std::lower_bound(t, t + j, tj - cutoff) - t);
        }
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (std::size_t i = start; i < j; ++i) {
            acc += eval(tj - t[i]);
        }
        intensity[static_cast<std::size_t>(k)] = mu + acc;
    }
}

void dispatch_fill(const HawkesModel& model, const std::vector<double>& times, std::size_t first, double cutoff,
                   std::vector<double>& intensity) {
    std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExpKernel>) {
                fill_intensity(ExpEval{k.amplitude, k.decay}, model.mu, times, first, cutoff, intensity);
            } else if constexpr (std::is_same_v<K, PowerLawKernel>) {
                fill_intensity(PowerLawEval{k.amplitude, k.offset, k.exponent}, model.mu, times, first, cutoff, intensity);
            } else if constexpr (std::is_same_v<K, RayleighKernel>) {
                fill_intensity(RayleighEval{k.amplitude, k.rate}, model.mu, times, first, cutoff, intensity);
            } else if constexpr (std::is_same_v<K, GaussianKernel>) {
                fill_intensity(GaussianEval{k.amplitude, k.mode, 1.0 / k.width}, model.mu, times, first, cutoff, intensity);
            } else {
                // Same q = 1 band as the reference evaluation in kernel.cpp.
                if (std::abs(k.q - 1.0) < 1e-10) {
                    fill_intensity(QOneEval{k.amplitude}, model.mu, times, first, cutoff, intensity);
                } else {
                    fill_intensity(QExpEval{k.amplitude, k.q - 1.0, 1.0 / (1.0 - k.q)}, model.mu, times, first, cutoff, intensity);
                }
            }
        },
        model.kernel);
}

} // namespace

WindowLikelihood::WindowLikelihood(const EventSequence& seq, double t_a, double t_b, LikelihoodOptions options)
    : t_a_(t_a), t_b_(t_b), options_(options) {
    if (!(t_a >= 0.0 && t_a < t_b && t_b <= seq.horizon())) {
        throw HawkesError(ErrorCode::invalid_argument,
                          "window [" + std::to_string(t_a) + ", " + std::to_string(t_b) + "] must satisfy 0 <= a < b <= T");
    }
    const auto all = seq.times();
    const auto end = std::upper_bound(all.begin(), all.end(), t_b);
    times_.assign(all.begin(), end);
    first_ = static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t_a) - times_.begin());
}

LoglikBreakdown WindowLikelihood::operator()(const HawkesModel& model) const {
    LoglikBreakdown out;
    out.n_events_in_window = times_.size() - first_;

    const double cutoff = tail_cutoff(model.kernel, options_.truncation_threshold);
    std::vector<double> intensity(out.n_events_in_window);
    dispatch_fill(model, times_, first_, cutoff, intensity);

    bool zero_intensity = false;
    for (double lambda : intensity) {
        if (lambda > 0.0) {
            out.sum_log_intensity += std::log(lambda);
        } else {
            zero_intensity = true;
        }
    }

    // Events at or after t_b contribute nothing to the compensator.
    double comp = model.mu * (t_b_ - t_a_);
    for (double ti : times_) {
        if (ti >= t_b_) {
            break;
        }
        comp += big_phi(model.kernel, t_b_ - ti) - big_phi(model.kernel, std::max(t_a_ - ti, 0.0));
    }
    out.compensator = comp;
    if (zero_intensity) {
        out.sum_log_intensity = kLogZeroSentinel;
    }
    out.total = out.sum_log_intensity - out.compensator;
    return out;
}

} // namespace hawkes
