#pragma once

#include <array>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace hawkes {

enum class Family { exp, pwl, ray, gss, qexp };

inline constexpr std::array<Family, 5> kAllFamilies{
    Family::exp, Family::pwl, Family::ray, Family::gss, Family::qexp};

/// alpha * exp(-beta t)
struct ExpKernel {
    double amplitude;  // alpha
    double decay;      // beta
};

/// K * (t + c)^(-p)
struct PowerLawKernel {
    double amplitude;  // K
    double offset;     // c
    double exponent;   // p, must exceed 1
};

/// gamma * t * exp(-eta t^2)
struct RayleighKernel {
    double amplitude;  // gamma
    double rate;       // eta
};

/// kappa * exp(-(t - tau)^2 / sigma)
struct GaussianKernel {
    double amplitude;  // kappa
    double mode;       // tau
    double width;      // sigma (squared width, not a standard deviation)
};

/// a * e_q(-t), the Tsallis q-exponential. For q < 1 the support ends at
/// t = 1 / (1 - q); for q > 1 the tail decays like t^(-1/(q-1)).
struct QExpKernel {
    double amplitude;  // a
    double q;          // in (0, 2)
};

using KernelParams = std::variant<ExpKernel, PowerLawKernel, RayleighKernel, GaussianKernel, QExpKernel>;

[[nodiscard]] Family family_of(const KernelParams& kernel) noexcept;
[[nodiscard]] std::string_view to_string(Family family) noexcept;
/// Accepts "EXP", "PWL", "RAY", "GSS", "QEXP" (case-insensitive).
[[nodiscard]] Family parse_family(std::string_view name);

[[nodiscard]] std::size_t parameter_count(Family family) noexcept;
/// Names used in model files, in the same order as parameters().
[[nodiscard]] std::span<const std::string_view> parameter_names(Family family) noexcept;
[[nodiscard]] std::vector<double> parameters(const KernelParams& kernel);
/// Builds a kernel from raw values in parameter_names() order. Does not validate.
[[nodiscard]] KernelParams make_kernel(Family family, std::span<const double> values);

/// Throws HawkesError(invalid_kernel) naming the offending field.
void validate(const KernelParams& kernel);
[[nodiscard]] bool is_valid(const KernelParams& kernel) noexcept;
/// As validate(), but also accepts an amplitude of exactly 0 (no excitation,
/// the process reduces to a homogeneous Poisson process).
void validate_allowing_zero_amplitude(const KernelParams& kernel);

/// Kernel value at lag t. Zero for t < 0 and outside the QEXP support.
[[nodiscard]] double phi(const KernelParams& kernel, double t);

/// Cumulative integral of phi over [0, s], closed form.
[[nodiscard]] double big_phi(const KernelParams& kernel, double s);

/// Integral of phi over [0, inf). PWL with p <= 1 or QEXP with q >= 2 throws
/// divergent_integral.
[[nodiscard]] double branching_ratio(const KernelParams& kernel);

/// sup of phi(u) over u >= s. Nonincreasing in s for every family.
[[nodiscard]] double sup_tail(const KernelParams& kernel, double s);

/// Time scale over which the kernel carries most of its mass.
[[nodiscard]] double characteristic_time(const KernelParams& kernel);

/// Bijection from the valid parameter set onto R^d: logs of positive
/// parameters, log(p - 1) for the PWL exponent, log(q / (2 - q)) for QEXP q.
[[nodiscard]] std::vector<double> to_unconstrained(const KernelParams& kernel);
[[nodiscard]] KernelParams from_unconstrained(Family family, std::span<const double> x);

} // namespace hawkes
