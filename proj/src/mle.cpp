#include "hawkes/mle.hpp"

#include "hawkes/error.hpp"
#include "hawkes/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hawkes {

namespace {

double resolve_train_end(const EventSequence& seq, const std::optional<double>& train_end) {
    const double end = train_end.value_or(seq.horizon());
    if (!(end > 0.0 && end <= seq.horizon())) {
        throw HawkesError(ErrorCode::invalid_argument, "train_end must lie in (0, T]");
    }
    return end;
}

std::size_t require_events(const EventSequence& seq, double train_end) {
    const std::size_t n = seq.count_in(0.0, train_end);
    if (n == 0) {
        throw HawkesError(ErrorCode::empty_sequence, "no events in the training window [0, " + std::to_string(train_end) + "]");
    }
    return n;
}

} // namespace

HawkesModel default_init(Family family, const EventSequence& seq, double train_end) {
    const std::size_t n = require_events(seq, train_end);
    const double gap = train_end / static_cast<double>(n);
    constexpr double mass = 0.5;

    HawkesModel model;
    model.mu = 0.5 * static_cast<double>(n) / train_end;
    switch (family) {
        case Family::exp:
            model.kernel = ExpKernel{mass / gap, 1.0 / gap};
            break;
        case Family::pwl:
            // K c^(1-p) / (p-1) = mass with p = 2
            model.kernel = PowerLawKernel{mass * gap, gap, 2.0};
            break;
        case Family::ray: {
            // mode 1/sqrt(2 eta) at the mean gap
            const double rate = 1.0 / (2.0 * gap * gap);
            model.kernel = RayleighKernel{2.0 * mass * rate, rate};
            break;
        }
        case Family::gss: {
            const double width = gap * gap;
            const double amplitude = 2.0 * mass / (std::sqrt(std::numbers::pi * width) * (1.0 + special::erf(1.0)));
            model.kernel = GaussianKernel{amplitude, gap, width};
            break;
        }
        case Family::qexp:
            model.kernel = QExpKernel{mass, 1.0};
            break;
    }
    return model;
}

std::vector<double> pack(const HawkesModel& model) {
    std::vector<double> x{std::log(model.mu)};
    const auto rest = to_unconstrained(model.kernel);
    x.insert(x.end(), rest.begin(), rest.end());
    return x;
}

HawkesModel unpack(Family family, std::span<const double> x) {
    return HawkesModel{std::exp(x[0]), from_unconstrained(family, x.subspan(1))};
}

FitResult fit_mle(Family family, const EventSequence& seq, const HawkesModel& init, const FitOptions& options) {
    const double train_end = resolve_train_end(seq, options.train_end);
    require_events(seq, train_end);
    validate(init);
    if (family_of(init.kernel) != family) {
        throw HawkesError(ErrorCode::invalid_argument, "initial kernel family does not match the requested family");
    }
    if (!(init.mu > 0.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "initial mu must be > 0 for fitting in log coordinates");
    }

    const WindowLikelihood objective_window(seq, 0.0, train_end, options.likelihood);
    const Objective objective = [&](std::span<const double> x) {
        const HawkesModel model = unpack(family, x);
        if (!std::isfinite(model.mu) || !is_valid(model.kernel)) {
            return kLogZeroSentinel;
        }
        const double value = objective_window(model).total;
        return std::isfinite(value) ? value : kLogZeroSentinel;
    };

    OptimResult opt;
    if (options.optim.method == Method::nelder_mead) {
        opt = nelder_mead(objective, pack(init), options.optim);
    } else {
        opt = gradient_ascent(objective, pack(init), options.optim);
    }

    FitResult result;
    result.model_last_iterate = unpack(family, opt.x);
    result.train_end = train_end;
    result.iterations = opt.iterations;
    result.converged = opt.converged;
    result.trace = std::move(opt.trace);
    const WindowLikelihood exact(seq, 0.0, train_end);
    result.loglik_last_iterate = exact(result.model_last_iterate).total;
    result.loglik_init = exact(init).total;
    return result;
}

FitResult fit_mle(Family family, const EventSequence& seq, const FitOptions& options) {
    const double train_end = resolve_train_end(seq, options.train_end);
    return fit_mle(family, seq, default_init(family, seq, train_end), options);
}

} // namespace hawkes
