#include "hawkes/likelihood.hpp"

#include "hawkes/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hawkes {

namespace {

void check_window(const EventSequence& seq, double t_a, double t_b) {
    if (!(t_a >= 0.0 && t_a < t_b && t_b <= seq.horizon())) {
        throw HawkesError(ErrorCode::invalid_argument,
                          "window [" + std::to_string(t_a) + ", " + std::to_string(t_b) + "] must satisfy 0 <= a < b <= T");
    }
}

} // namespace

double intensity_at(const HawkesModel& model, const EventSequence& seq, double t) {
    double lambda = model.mu;
    for (double ti : seq.times()) {
        if (ti >= t) {
            break;
        }
        lambda += phi(model.kernel, t - ti);
    }
    return lambda;
}

double compensator(const HawkesModel& model, const EventSequence& seq, double t_a, double t_b) {
    double total = model.mu * (t_b - t_a);
    for (double ti : seq.times()) {
        if (ti >= t_b) {
            break;
        }
        total += big_phi(model.kernel, t_b - ti) - big_phi(model.kernel, std::max(t_a - ti, 0.0));
    }
    return total;
}

LoglikBreakdown log_likelihood(const HawkesModel& model, const EventSequence& seq, double t_a, double t_b) {
    check_window(seq, t_a, t_b);
    const auto times = seq.times();

    LoglikBreakdown out;
    bool zero_intensity = false;
    for (std::size_t j = 0; j < times.size() && times[j] <= t_b; ++j) {
        if (times[j] <= t_a) {
            continue;
        }
        double lambda = model.mu;
        for (std::size_t i = 0; i < j; ++i) {
            lambda += phi(model.kernel, times[j] - times[i]);
        }
        ++out.n_events_in_window;
        if (lambda > 0.0) {
            out.sum_log_intensity += std::log(lambda);
        } else {
            zero_intensity = true;
        }
    }
    out.compensator = compensator(model, seq, t_a, t_b);
    if (zero_intensity) {
        out.sum_log_intensity = kLogZeroSentinel;
    }
    out.total = out.sum_log_intensity - out.compensator;
    return out;
}

LoglikBreakdown log_likelihood(const HawkesModel& model, const EventSequence& seq) {
    return log_likelihood(model, seq, 0.0, seq.horizon());
}

double normalized_test_loglik(const HawkesModel& model, const EventSequence& seq, double train_fraction) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "train_fraction must lie in (0, 1)");
    }
    if (seq.empty()) {
        throw HawkesError(ErrorCode::empty_sequence, "normalized test loglik needs a nonempty sequence");
    }
    const double start = train_fraction * seq.horizon();
    const std::size_t count = seq.count_in(start, seq.horizon());
    if (count == 0) {
        throw HawkesError(ErrorCode::no_test_events, "no events after " + std::to_string(start));
    }
    const WindowLikelihood window(seq, start, seq.horizon());
    return window(model).total / static_cast<double>(count);
}

double tail_cutoff(const KernelParams& kernel, double threshold) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (!(threshold > 0.0)) {
        return inf;
    }
    double hi = std::max(characteristic_time(kernel), 1e-12);
    if (!std::isfinite(hi)) {
        return inf;
    }
    while (sup_tail(kernel, hi) > threshold) {
        hi *= 2.0;
        if (hi > 1e300) {
            return inf;
        }
    }
    double lo = 0.0;
    if (sup_tail(kernel, lo) <= threshold) {
        return 0.0;
    }
    for (int iter = 0; iter < 80 && hi - lo > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (sup_tail(kernel, mid) > threshold ? lo : hi) = mid;
    }
    return hi;
}

} // namespace hawkes
