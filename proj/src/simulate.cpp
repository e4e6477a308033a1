#include "hawkes/simulate.hpp"

#include "hawkes/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

namespace {

constexpr std::size_t kBlock = 32;

class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    // [0, 1) with 53 random bits; avoids the implementation-defined
    // std::uniform_real_distribution so streams match across toolchains.
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-next()) / rate; }

private:
    std::mt19937_64 engine_;
};

// History split into three tiers, oldest first:
//   [0, dead_blocks * kBlock)             one merged bound
//   [dead_blocks * kBlock, open_start())  blocks of kBlock events
//   [open_start(), n)                     exact per-event terms (32..63 events)
// Every tier is bounded using sup_tail at the newest member, which is valid
// because sup_tail is nonincreasing in the lag.
class History {
public:
    History(const KernelParams& kernel, double mu) : kernel_(kernel), dead_tolerance_(1e-12 * mu) {}

    void push(double t) { times_.push_back(t); }
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }

    /// Upper bound of the intensity over [t, inf) given the current history.
    double dominating_rate(double mu, double t) {
        retire_blocks(t);
        double rate = mu + dead_bound(t);
        const std::size_t open = open_start();
        for (std::size_t b = dead_blocks_; b * kBlock < open; ++b) {
            rate += kBlock * sup_tail(kernel_, t - newest(b));
        }
        for (std::size_t i = open; i < times_.size(); ++i) {
            rate += sup_tail(kernel_, t - times_[i]);
        }
        return rate;
    }

    /// Thinning decision for a candidate at t with threshold u * dominating.
    bool accept(double mu, double t, double threshold) const {
        double exact = mu;
        const std::size_t open = open_start();
        for (std::size_t i = open; i < times_.size(); ++i) {
            exact += phi(kernel_, t - times_[i]);
        }
        double lower = exact;
        double upper = exact + dead_bound(t);
        for (std::size_t b = dead_blocks_; b * kBlock < open; ++b) {
            // Kernels are unimodal, so the block minimum sits at an end point.
            lower += kBlock * std::min(phi(kernel_, t - oldest(b)), phi(kernel_, t - newest(b)));
            upper += kBlock * sup_tail(kernel_, t - newest(b));
        }
        if (threshold <= lower) {
            return true;
        }
        if (threshold > upper) {
            return false;
        }
        return threshold <= intensity(mu, t);
    }

    [[nodiscard]] double intensity(double mu, double t) const {
        double lambda = mu;
        for (double ti : times_) {
            lambda += phi(kernel_, t - ti);
        }
        return lambda;
    }

    [[nodiscard]] std::vector<double> release() && { return std::move(times_); }

private:
    [[nodiscard]] std::size_t open_start() const noexcept {
        const std::size_t n = times_.size();
        return n < 2 * kBlock ? 0 : (n / kBlock - 1) * kBlock;
    }
    [[nodiscard]] double newest(std::size_t block) const { return times_[(block + 1) * kBlock - 1]; }
    [[nodiscard]] double oldest(std::size_t block) const { return times_[block * kBlock]; }

    [[nodiscard]] double dead_bound(double t) const {
        if (dead_blocks_ == 0) {
            return 0.0;
        }
        return static_cast<double>(dead_blocks_ * kBlock) * sup_tail(kernel_, t - newest(dead_blocks_ - 1));
    }

    // Fold blocks into the merged prefix while its bound stays negligible.
    void retire_blocks(double t) {
        const std::size_t open = open_start();
        while ((dead_blocks_ + 1) * kBlock <= open) {
            const double bound = static_cast<double>((dead_blocks_ + 1) * kBlock) * sup_tail(kernel_, t - newest(dead_blocks_));
            if (bound > dead_tolerance_) {
                break;
            }
            ++dead_blocks_;
        }
    }

    const KernelParams& kernel_;
    double dead_tolerance_;
    std::vector<double> times_;
    std::size_t dead_blocks_{0};
};

} // namespace

EventSequence simulate_ogata(const SimulationConfig& config) {
    if (!(config.model.mu >= 0.0) || !std::isfinite(config.model.mu)) {
        throw HawkesError(ErrorCode::invalid_argument, "mu must be finite and >= 0");
    }
    validate_allowing_zero_amplitude(config.model.kernel);
    if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw HawkesError(ErrorCode::invalid_argument, "simulation horizon must be finite and > 0");
    }
    const double mu = config.model.mu;
    UniformSource rng(config.seed);
    History history(config.model.kernel, mu);

    double t = 0.0;
    while (true) {
        const double bound = history.dominating_rate(mu, t);
        if (!(bound > 0.0)) {
            break;
        }
        const double candidate = t + rng.exponential(bound);
        if (candidate > config.horizon) {
            break;
        }
        const double threshold = rng.next() * bound;
        if (config.check_dominating_rate) {
            const double lambda = history.intensity(mu, candidate);
            if (lambda > bound * (1.0 + 1e-12)) {
                throw std::logic_error("thinning bound violated at t=" + std::to_string(candidate));
            }
        }
        assert(history.intensity(mu, candidate) <= bound * (1.0 + 1e-12));
        // Identical times would break strict ordering; they have probability
        // zero but can appear through rounding when t is large.
        if (candidate > t && history.accept(mu, candidate, threshold)) {
            history.push(candidate);
            if (history.size() > config.max_events) {
                throw HawkesError(ErrorCode::explosion_guard,
                                  "simulation exceeded " + std::to_string(config.max_events) + " events");
            }
        }
        t = candidate;
    }
    return EventSequence(std::move(history).release(), config.horizon);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace hawkes
