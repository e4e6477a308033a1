#include "hawkes/optimize.hpp"

#include "hawkes/error.hpp"
#include "hawkes/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hawkes {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

double sanitize(double v) {
    return std::isnan(v) ? kLogZeroSentinel : v;
}

// Minimization view of the objective.
double cost(const Objective& f, std::span<const double> x) {
    return -sanitize(f(x));
}

} // namespace

void validate(const OptimOptions& options) {
    if (options.max_iters < 1) {
        throw HawkesError(ErrorCode::invalid_argument, "max_iters must be >= 1");
    }
    if (!(options.step_tolerance > 0.0) || !(options.value_tolerance > 0.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "tolerances must be > 0");
    }
    if (!(options.learning_rate > 0.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "learning rate must be > 0");
    }
}

OptimResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimOptions& options) {
    validate(options);
    const std::size_t n = x0.size();
    const double f0 = f(x0);
    if (std::isnan(f0)) {
        throw HawkesError(ErrorCode::bad_start, "objective is NaN at the starting point");
    }

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> costs(n + 1);
    costs[0] = -f0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& v = simplex[i + 1];
        v[i] = v[i] != 0.0 ? 1.05 * v[i] : 0.00025;
        costs[i + 1] = cost(f, v);
    }

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> c2(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            s2[k] = std::move(simplex[order[k]]);
            c2[k] = costs[order[k]];
        }
        simplex = std::move(s2);
        costs = std::move(c2);
    };
    sort_simplex();

    OptimResult result;
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto affine = [&](std::vector<double>& out, double a) {
        // out = (1 + a) * centroid - a * worst
        for (std::size_t d = 0; d < n; ++d) {
            out[d] = (1.0 + a) * centroid[d] - a * simplex[n][d];
        }
    };

    if (options.record_trace) {
        result.trace.emplace_back(0, -costs[0]);
    }
    std::size_t iter = 0;
    while (iter < options.max_iters) {
        double diameter = 0.0;
        double spread = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            for (std::size_t d = 0; d < n; ++d) {
                diameter = std::max(diameter, std::abs(simplex[k][d] - simplex[0][d]));
            }
            spread = std::max(spread, std::abs(costs[k] - costs[0]));
        }
        if (diameter <= options.step_tolerance && spread <= options.value_tolerance) {
            result.converged = true;
            break;
        }
        ++iter;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t d = 0; d < n; ++d) {
                centroid[d] += simplex[k][d];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(n);
        }

        affine(xr, kReflect);
        const double fr = cost(f, xr);
        bool shrink = false;
        if (fr < costs[0]) {
            affine(xe, kReflect * kExpand);
            const double fe = cost(f, xe);
            if (fe < fr) {
                simplex[n] = xe;
                costs[n] = fe;
            } else {
                simplex[n] = xr;
                costs[n] = fr;
            }
        } else if (fr < costs[n - 1]) {
            simplex[n] = xr;
            costs[n] = fr;
        } else if (fr < costs[n]) {
            affine(xc, kContract * kReflect);
            const double fc = cost(f, xc);
            if (fc <= fr) {
                simplex[n] = xc;
                costs[n] = fc;
            } else {
                shrink = true;
            }
        } else {
            affine(xc, -kContract);
            const double fc = cost(f, xc);
            if (fc < costs[n]) {
                simplex[n] = xc;
                costs[n] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t k = 1; k <= n; ++k) {
                for (std::size_t d = 0; d < n; ++d) {
                    simplex[k][d] = simplex[0][d] + kShrink * (simplex[k][d] - simplex[0][d]);
                }
                costs[k] = cost(f, simplex[k]);
            }
        }
        sort_simplex();
        if (options.record_trace) {
            result.trace.emplace_back(iter, -costs[0]);
        }
    }

    result.x = simplex[0];
    result.value = -costs[0];
    result.iterations = iter;
    return result;
}

std::vector<double> finite_diff_gradient(const Objective& f, std::span<const double> x, double h) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double up = f(probe);
        probe[i] = x[i] - h;
        const double down = f(probe);
        probe[i] = x[i];
        if (!std::isfinite(up) || !std::isfinite(down) || up <= kLogZeroSentinel || down <= kLogZeroSentinel) {
            throw HawkesError(ErrorCode::non_finite_region, "objective not finite near coordinate " + std::to_string(i));
        }
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

OptimResult gradient_ascent(const Objective& f, std::vector<double> x0, const OptimOptions& options) {
    validate(options);
    OptimResult result;
    result.x = std::move(x0);
    result.value = f(result.x);
    if (std::isnan(result.value)) {
        throw HawkesError(ErrorCode::bad_start, "objective is NaN at the starting point");
    }

    double delta = options.learning_rate;
    std::vector<double> next(result.x.size());
    std::size_t iter = 0;
    while (iter < options.max_iters) {
        std::vector<double> grad;
        try {
            grad = finite_diff_gradient(f, result.x);
        } catch (const HawkesError&) {
            break;
        }
        ++iter;

        double next_value = 0.0;
        bool accepted = false;
        while (delta > 1e-300) {
            for (std::size_t d = 0; d < next.size(); ++d) {
                next[d] = result.x[d] + delta * grad[d];
            }
            next_value = sanitize(f(next));
            if (next_value >= result.value) {
                accepted = true;
                break;
            }
            delta *= 0.5;
        }
        if (!accepted) {
            result.converged = true;
            break;
        }

        double step = 0.0;
        for (std::size_t d = 0; d < next.size(); ++d) {
            step = std::max(step, std::abs(next[d] - result.x[d]));
        }
        const double gain = next_value - result.value;
        result.x = next;
        result.value = next_value;
        if (options.record_trace) {
            result.trace.emplace_back(iter, result.value);
        }
        if (step <= options.step_tolerance || gain <= options.value_tolerance) {
            result.converged = true;
            break;
        }
    }
    result.iterations = iter;
    return result;
}

} // namespace hawkes
