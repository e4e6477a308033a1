#include "hawkes/kernel.hpp"

#include "hawkes/error.hpp"
#include "hawkes/special_functions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace hawkes {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::array<std::string_view, 2> kExpNames{"alpha", "beta"};
constexpr std::array<std::string_view, 3> kPwlNames{"K", "c", "p"};
constexpr std::array<std::string_view, 2> kRayNames{"gamma", "eta"};
constexpr std::array<std::string_view, 3> kGssNames{"kappa", "tau", "sigma"};
constexpr std::array<std::string_view, 2> kQexpNames{"a", "q"};

// |1 - q| below this is treated as the q = 1 exponential limit.
constexpr double kQOneBand = 1e-10;

[[noreturn]] void reject(std::string_view family, std::string_view field, std::string_view rule, double value) {
    std::ostringstream os;
    os << family << '.' << field << " must be " << rule << " (got " << value << ')';
    throw HawkesError(ErrorCode::invalid_kernel, os.str());
}

void require_positive(std::string_view family, std::string_view field, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        reject(family, field, "finite and > 0", value);
    }
}

// e_q(-t) raised to the power (2 - q): the normalized tail mass of QEXP.
double qexp_tail_mass(double q, double t) {
    if (std::abs(q - 1.0) < kQOneBand) {
        return std::exp(-t);
    }
    const double base = 1.0 + (q - 1.0) * t;
    if (base <= 0.0) {
        return 0.0;
    }
    return std::exp((2.0 - q) / (1.0 - q) * std::log(base));
}

double qexp_value(const QExpKernel& k, double t) {
    if (std::abs(k.q - 1.0) < kQOneBand) {
        return k.amplitude * std::exp(-t);
    }
    const double base = 1.0 + (k.q - 1.0) * t;
    if (base <= 0.0) {
        return 0.0;
    }
    return k.amplitude * std::exp(std::log(base) / (1.0 - k.q));
}

double gaussian_mass_scale(const GaussianKernel& k) {
    return 0.5 * k.amplitude * std::sqrt(std::numbers::pi * k.width);
}

} // namespace

Family family_of(const KernelParams& kernel) noexcept {
    return static_cast<Family>(kernel.index());
}

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::exp: return "EXP";
        case Family::pwl: return "PWL";
        case Family::ray: return "RAY";
        case Family::gss: return "GSS";
        case Family::qexp: return "QEXP";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    for (Family f : kAllFamilies) {
        if (upper == to_string(f)) {
            return f;
        }
    }
    throw HawkesError(ErrorCode::parse_error, "family: unknown kernel family '" + std::string(name) + "' (expected EXP, PWL, RAY, GSS or QEXP)");
}

std::size_t parameter_count(Family family) noexcept {
    return parameter_names(family).size();
}

std::span<const std::string_view> parameter_names(Family family) noexcept {
    switch (family) {
        case Family::exp: return kExpNames;
        case Family::pwl: return kPwlNames;
        case Family::ray: return kRayNames;
        case Family::gss: return kGssNames;
        case Family::qexp: return kQexpNames;
    }
    return {};
}

std::vector<double> parameters(const KernelParams& kernel) {
    return std::visit(overloaded{
                          [](const ExpKernel& k) { return std::vector<double>{k.amplitude, k.decay}; },
                          [](const PowerLawKernel& k) { return std::vector<double>{k.amplitude, k.offset, k.exponent}; },
                          [](const RayleighKernel& k) { return std::vector<double>{k.amplitude, k.rate}; },
                          [](const GaussianKernel& k) { return std::vector<double>{k.amplitude, k.mode, k.width}; },
                          [](const QExpKernel& k) { return std::vector<double>{k.amplitude, k.q}; },
                      },
                      kernel);
}

KernelParams make_kernel(Family family, std::span<const double> v) {
    if (v.size() != parameter_count(family)) {
        throw HawkesError(ErrorCode::invalid_argument,
                          std::string(to_string(family)) + " expects " + std::to_string(parameter_count(family)) + " parameters, got " + std::to_string(v.size()));
    }
    switch (family) {
        case Family::exp: return ExpKernel{v[0], v[1]};
        case Family::pwl: return PowerLawKernel{v[0], v[1], v[2]};
        case Family::ray: return RayleighKernel{v[0], v[1]};
        case Family::gss: return GaussianKernel{v[0], v[1], v[2]};
        case Family::qexp: return QExpKernel{v[0], v[1]};
    }
    throw HawkesError(ErrorCode::invalid_argument, "unknown family");
}

void validate(const KernelParams& kernel) {
    std::visit(overloaded{
                   [](const ExpKernel& k) {
                       require_positive("EXP", "alpha", k.amplitude);
                       require_positive("EXP", "beta", k.decay);
                   },
                   [](const PowerLawKernel& k) {
                       require_positive("PWL", "K", k.amplitude);
                       require_positive("PWL", "c", k.offset);
                       if (!(k.exponent > 1.0) || !std::isfinite(k.exponent)) {
                           reject("PWL", "p", "finite and > 1", k.exponent);
                       }
                   },
                   [](const RayleighKernel& k) {
                       require_positive("RAY", "gamma", k.amplitude);
                       require_positive("RAY", "eta", k.rate);
                   },
                   [](const GaussianKernel& k) {
                       require_positive("GSS", "kappa", k.amplitude);
                       require_positive("GSS", "tau", k.mode);
                       require_positive("GSS", "sigma", k.width);
                   },
                   [](const QExpKernel& k) {
                       require_positive("QEXP", "a", k.amplitude);
                       if (!(k.q > 0.0 && k.q < 2.0)) {
                           reject("QEXP", "q", "in (0, 2)", k.q);
                       }
                   },
               },
               kernel);
}

void validate_allowing_zero_amplitude(const KernelParams& kernel) {
    KernelParams probe = kernel;
    std::visit(
        [](auto& k) {
            if (k.amplitude == 0.0) {
                k.amplitude = 1.0;
            }
        },
        probe);
    validate(probe);
}

bool is_valid(const KernelParams& kernel) noexcept {
    try {
        validate(kernel);
        return true;
    } catch (const HawkesError&) {
        return false;
    }
}

double phi(const KernelParams& kernel, double t) {
    if (t < 0.0) {
        return 0.0;
    }
    return std::visit(overloaded{
                          [t](const ExpKernel& k) { return k.amplitude * std::exp(-k.decay * t); },
                          [t](const PowerLawKernel& k) { return k.amplitude * std::pow(t + k.offset, -k.exponent); },
                          [t](const RayleighKernel& k) { return k.amplitude * t * std::exp(-k.rate * t * t); },
                          [t](const GaussianKernel& k) {
                              const double d = t - k.mode;
                              return k.amplitude * std::exp(-d * d / k.width);
                          },
                          [t](const QExpKernel& k) { return qexp_value(k, t); },
                      },
                      kernel);
}

double big_phi(const KernelParams& kernel, double s) {
    if (s <= 0.0) {
        return 0.0;
    }
    return std::visit(overloaded{
                          [s](const ExpKernel& k) { return -k.amplitude / k.decay * std::expm1(-k.decay * s); },
                          [s](const PowerLawKernel& k) {
                              const double e = 1.0 - k.exponent;
                              // c^(1-p) - (s+c)^(1-p) = c^(1-p) * (1 - (1 + s/c)^(1-p))
                              const double head = std::pow(k.offset, e);
                              const double rel = -std::expm1(e * std::log1p(s / k.offset));
                              return k.amplitude * head * rel / (k.exponent - 1.0);
                          },
                          [s](const RayleighKernel& k) { return -k.amplitude / (2.0 * k.rate) * std::expm1(-k.rate * s * s); },
                          [s](const GaussianKernel& k) {
                              const double root = std::sqrt(k.width);
                              if (s < k.mode) {
                                  // Both erf terms sit near -1 here; the erfc form keeps relative accuracy.
                                  return gaussian_mass_scale(k) * (std::erfc((k.mode - s) / root) - std::erfc(k.mode / root));
                              }
                              return gaussian_mass_scale(k) * (special::erf((s - k.mode) / root) + special::erf(k.mode / root));
                          },
                          [s](const QExpKernel& k) {
                              if (std::abs(k.q - 1.0) < kQOneBand) {
                                  return -k.amplitude * std::expm1(-s);
                              }
                              return k.amplitude * (1.0 - qexp_tail_mass(k.q, s)) / (2.0 - k.q);
                          },
                      },
                      kernel);
}

double branching_ratio(const KernelParams& kernel) {
    if (const auto* pwl = std::get_if<PowerLawKernel>(&kernel); pwl && pwl->exponent <= 1.0) {
        throw HawkesError(ErrorCode::divergent_integral, "PWL integral diverges for p <= 1");
    }
    if (const auto* qe = std::get_if<QExpKernel>(&kernel); qe && qe->q >= 2.0) {
        throw HawkesError(ErrorCode::divergent_integral, "QEXP integral diverges for q >= 2");
    }
    validate(kernel);
    return std::visit(overloaded{
                          [](const ExpKernel& k) { return k.amplitude / k.decay; },
                          [](const PowerLawKernel& k) {
                              return k.amplitude * std::pow(k.offset, 1.0 - k.exponent) / (k.exponent - 1.0);
                          },
                          [](const RayleighKernel& k) { return k.amplitude / (2.0 * k.rate); },
                          [](const GaussianKernel& k) {
                              return gaussian_mass_scale(k) * (1.0 + special::erf(k.mode / std::sqrt(k.width)));
                          },
                          [](const QExpKernel& k) { return k.amplitude / (2.0 - k.q); },
                      },
                      kernel);
}

double sup_tail(const KernelParams& kernel, double s) {
    s = std::max(s, 0.0);
    return std::visit(overloaded{
                          [&](const RayleighKernel& k) {
                              const double peak = 1.0 / std::sqrt(2.0 * k.rate);
                              return phi(kernel, std::max(s, peak));
                          },
                          [&](const GaussianKernel& k) { return s < k.mode ? k.amplitude : phi(kernel, s); },
                          [&](const auto&) { return phi(kernel, s); },
                      },
                      kernel);
}

double characteristic_time(const KernelParams& kernel) {
    return std::visit(overloaded{
                          [](const ExpKernel& k) { return 1.0 / k.decay; },
                          [](const PowerLawKernel& k) { return k.offset; },
                          [](const RayleighKernel& k) { return 1.0 / std::sqrt(k.rate); },
                          [](const GaussianKernel& k) { return k.mode + std::sqrt(k.width); },
                          [](const QExpKernel& k) {
                              const double gap = std::abs(1.0 - k.q);
                              return gap < kQOneBand ? 1.0 : 1.0 / gap;
                          },
                      },
                      kernel);
}

std::vector<double> to_unconstrained(const KernelParams& kernel) {
    return std::visit(overloaded{
                          [](const ExpKernel& k) { return std::vector<double>{std::log(k.amplitude), std::log(k.decay)}; },
                          [](const PowerLawKernel& k) {
                              return std::vector<double>{std::log(k.amplitude), std::log(k.offset), std::log(k.exponent - 1.0)};
                          },
                          [](const RayleighKernel& k) { return std::vector<double>{std::log(k.amplitude), std::log(k.rate)}; },
                          [](const GaussianKernel& k) {
                              return std::vector<double>{std::log(k.amplitude), std::log(k.mode), std::log(k.width)};
                          },
                          [](const QExpKernel& k) { return std::vector<double>{std::log(k.amplitude), std::log(k.q / (2.0 - k.q))}; },
                      },
                      kernel);
}

KernelParams from_unconstrained(Family family, std::span<const double> x) {
    if (x.size() != parameter_count(family)) {
        throw HawkesError(ErrorCode::invalid_argument, "unconstrained vector has wrong dimension for " + std::string(to_string(family)));
    }
    switch (family) {
        case Family::exp: return ExpKernel{std::exp(x[0]), std::exp(x[1])};
        case Family::pwl: return PowerLawKernel{std::exp(x[0]), std::exp(x[1]), 1.0 + std::exp(x[2])};
        case Family::ray: return RayleighKernel{std::exp(x[0]), std::exp(x[1])};
        case Family::gss: return GaussianKernel{std::exp(x[0]), std::exp(x[1]), std::exp(x[2])};
        case Family::qexp: return QExpKernel{std::exp(x[0]), 2.0 / (1.0 + std::exp(-x[1]))};
    }
    throw HawkesError(ErrorCode::invalid_argument, "unknown family");
}

} // namespace hawkes
