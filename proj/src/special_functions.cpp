#include "hawkes/special_functions.hpp"

#include "hawkes/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hawkes::special {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n (2x^2)^n x / (2n+1)!!
// All terms are positive, so no cancellation for moderate x.
double erf_series(double x) {
    const double two_x2 = 2.0 * x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= two_x2 / (2.0 * n + 1.0);
        sum += term;
        if (term <= sum * 1e-17) {
            break;
        }
    }
    return kTwoOverSqrtPi * std::exp(-x * x) * sum;
}

// erfc(x) for x >= 3 by the Laplace continued fraction
//   erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfc_continued_fraction(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int n = 1; n < 500; ++n) {
        const double a = 0.5 * n;
        d = x + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return std::numbers::inv_sqrtpi * std::exp(-x * x) / f;
}

// Single-precision initial guess (M. Giles, "Approximating the erfinv
// function", GPU Computing Gems), refined below with Halley steps.
double erfinv_initial(double y) {
    double w = -std::log((1.0 - y) * (1.0 + y));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    return p * y;
}

// -1/e split into a double and its rounding remainder.
constexpr double kInvE = 0.36787944117144233;
constexpr double kE = 2.718281828459045;
constexpr double kELow = 1.4456468917292502e-16;

// Series of W0 around the branch point in p = sqrt(2(e x + 1)).
double lambert_branch_series(double p) {
    constexpr double c3 = 11.0 / 72.0;
    constexpr double c4 = -43.0 / 540.0;
    constexpr double c5 = 769.0 / 17280.0;
    constexpr double c6 = -221.0 / 8505.0;
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (c3 + p * (c4 + p * (c5 + p * c6)))));
}

} // namespace

double erf(double x) noexcept {
    if (std::isnan(x)) {
        return x;
    }
    const double ax = std::abs(x);
    double r;
    if (ax > 6.0) {
        r = 1.0;
    } else if (ax <= 3.0) {
        r = erf_series(ax);
    } else {
        r = 1.0 - erfc_continued_fraction(ax);
    }
    return x < 0.0 ? -r : r;
}

double erfinv(double y) {
    if (!(std::abs(y) < 1.0)) {
        throw HawkesError(ErrorCode::domain_error, "erfinv argument must lie in (-1, 1), got " + std::to_string(y));
    }
    if (y == 0.0) {
        return 0.0;
    }
    double x = erfinv_initial(y);
    for (int iter = 0; iter < 8; ++iter) {
        const double f = erf(x) - y;
        const double fp = kTwoOverSqrtPi * std::exp(-x * x);
        if (fp == 0.0) {
            break;
        }
        // Halley: erf'' = -2x erf'
        const double step = f / fp;
        const double next = x - step / (1.0 + x * step);
        const bool done = std::abs(next - x) <= 4.0 * kEps * std::abs(next);
        x = next;
        if (done) {
            break;
        }
    }
    return x;
}

double lambert_w0(double x) {
    if (std::isnan(x) || x < -kInvE) {
        throw HawkesError(ErrorCode::domain_error, "lambert_w0 requires x >= -1/e, got " + std::to_string(x));
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return x;
    }

    double w;
    if (x < -0.32) {
        const double ex1 = std::max(std::fma(kE, x, 1.0) + kELow * x, 0.0);
        const double p = std::sqrt(2.0 * ex1);
        w = lambert_branch_series(p);
        if (p < 1e-3) {
            return w;
        }
    } else if (x < 3.0) {
        w = std::log1p(x);
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    if (x < 3.0) {
        // Halley on f(w) = w e^w - x
        for (int iter = 0; iter < 64; ++iter) {
            const double ew = std::exp(w);
            const double f = w * ew - x;
            const double wp1 = w + 1.0;
            if (wp1 == 0.0) {
                break;
            }
            const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
            const double next = w - f / denom;
            const bool done = std::abs(next - w) <= 4.0 * kEps * std::max(std::abs(next), 1e-300);
            w = next;
            if (done) {
                break;
            }
        }
    } else {
        // Halley on g(w) = w + log(w) - log(x); avoids overflow of e^w.
        const double lx = std::log(x);
        for (int iter = 0; iter < 64; ++iter) {
            const double g = w + std::log(w) - lx;
            const double g1 = 1.0 + 1.0 / w;
            const double g2 = -1.0 / (w * w);
            const double next = w - 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
            const bool done = std::abs(next - w) <= 4.0 * kEps * std::abs(next);
            w = next;
            if (done) {
                break;
            }
        }
    }
    return w;
}

} // namespace hawkes::special
