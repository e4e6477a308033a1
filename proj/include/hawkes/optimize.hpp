#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace hawkes {

enum class Method { nelder_mead, gradient_ascent };

struct OptimOptions {
    Method method{Method::nelder_mead};
    std::size_t max_iters{2000};
    double step_tolerance{1e-8};
    double value_tolerance{1e-8};
    double learning_rate{1e-3};  // gradient ascent only
    bool record_trace{false};
};

/// Throws invalid_argument for non-positive tolerances, learning rate or max_iters.
void validate(const OptimOptions& options);

struct OptimResult {
    std::vector<double> x;
    double value{0.0};
    std::size_t iterations{0};
    bool converged{false};
    /// (iteration, best value so far), filled when record_trace is set.
    std::vector<std::pair<std::size_t, double>> trace;
};

/// Function to maximize. NaN results are treated as -1e308.
using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex on -f with reflection 1, expansion 2, contraction 0.5 and
/// shrink 0.5. The initial simplex perturbs each coordinate by 5% (0.00025
/// for zero coordinates). Stops once the simplex diameter is at most
/// step_tolerance and the value spread at most value_tolerance, or after max_iters.
/// Throws bad_start if f(x0) is NaN.
[[nodiscard]] OptimResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimOptions& options = {});

/// Central differences; throws non_finite_region if f is not finite at any probe.
[[nodiscard]] std::vector<double> finite_diff_gradient(const Objective& f, std::span<const double> x, double h = 1e-6);

/// x <- x + delta * grad f(x) with the gradient from finite_diff_gradient.
/// A step that lowers f is retried with delta halved, so f never decreases.
[[nodiscard]] OptimResult gradient_ascent(const Objective& f, std::vector<double> x0, const OptimOptions& options = {});

} // namespace hawkes
