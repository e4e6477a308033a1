#include "support/oracles.hpp"

#include "hawkes/error.hpp"
#include "hawkes/kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hawkes;
using hawkes_test::relative_error;

namespace {

KernelParams draw(Family f, std::mt19937_64& rng) {
    return make_kernel(f, hawkes_test::random_parameters(f, rng));
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const HawkesError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected HawkesError";
    return ErrorCode::invalid_argument;
}

} // namespace

TEST(KernelValues, PointExamples) {
    EXPECT_DOUBLE_EQ(phi(ExpKernel{1.0, 1.1}, 0.0), 1.0);
    EXPECT_NEAR(phi(PowerLawKernel{0.9, 1.0, 2.0}, 1.0), 0.225, 1e-15);
    EXPECT_EQ(phi(QExpKernel{0.8, 0.5}, 3.0), 0.0);
    EXPECT_EQ(phi(ExpKernel{1.0, 1.0}, -1.0), 0.0);
}

TEST(KernelValues, QExpSupportEndsAtReciprocal) {
    const QExpKernel k{1.0, 0.5};
    EXPECT_GT(phi(k, 1.999), 0.0);
    EXPECT_EQ(phi(k, 2.0), 0.0);
    EXPECT_NEAR(phi(QExpKernel{1.0, 1.0}, 2.0), std::exp(-2.0), 1e-15);
}

TEST(KernelIntegrals, BigPhiExamples) {
    for (Family f : kAllFamilies) {
        std::mt19937_64 rng(7);
        EXPECT_EQ(big_phi(draw(f, rng), 0.0), 0.0) << to_string(f);
    }
    const double want = hawkes_test::integrate_phi(Family::exp, {1.0, 2.0}, 0.0, 1.0);
    EXPECT_NEAR(big_phi(ExpKernel{1.0, 2.0}, 1.0), want, 1e-9);
    EXPECT_NEAR(big_phi(ExpKernel{1.0, 2.0}, 1.0), 0.432332, 5e-7);

    const GaussianKernel g{0.5, 0.5, 1.0};
    const double mass = hawkes_test::total_mass_oracle(Family::gss, {0.5, 0.5, 1.0});
    EXPECT_NEAR(big_phi(g, 1e6), mass, 1e-9);
    EXPECT_NEAR(branching_ratio(g), mass, 1e-12);
}

TEST(KernelIntegrals, BranchingRatioExamples) {
    EXPECT_NEAR(branching_ratio(ExpKernel{1.0, 1.1}), 0.909091, 5e-7);
    EXPECT_NEAR(branching_ratio(RayleighKernel{1.2, 1.0}), 0.6, 1e-15);
    EXPECT_NEAR(branching_ratio(QExpKernel{0.8, 1.1}), 0.888889, 5e-7);
    EXPECT_NEAR(branching_ratio(ExpKernel{1.0, 1.1}), hawkes_test::integrate_phi(Family::exp, {1.0, 1.1}, 0.0, 1e3), 1e-9);
    EXPECT_NEAR(branching_ratio(QExpKernel{0.8, 1.1}), hawkes_test::total_mass_oracle(Family::qexp, {0.8, 1.1}), 1e-9);
}

TEST(KernelIntegrals, BranchingRatioMatchesQuadrature) {
    std::mt19937_64 rng(11);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 100; ++i) {
            const auto p = hawkes_test::random_parameters(f, rng);
            const double want = hawkes_test::total_mass_oracle(f, p);
            const double tol = f == Family::pwl ? 1e-3 : 1e-6;
            EXPECT_LT(relative_error(branching_ratio(make_kernel(f, p)), want), tol) << to_string(f) << " draw " << i;
        }
    }
}

TEST(KernelIntegrals, BigPhiMatchesQuadratureAndDerivative) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> s_dist(0.05, 8.0);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 20; ++i) {
            const auto p = hawkes_test::random_parameters(f, rng);
            const KernelParams k = make_kernel(f, p);
            const double s = s_dist(rng);
            EXPECT_NEAR(big_phi(k, s), hawkes_test::integrate_phi(f, p, 0.0, s), 1e-10 * std::max(1.0, big_phi(k, s)))
                << to_string(f);
            const double h = 1e-5;
            const double slope = (big_phi(k, s + h) - big_phi(k, s - h)) / (2 * h);
            const double value = phi(k, s);
            if (value > 1e-8) {
                EXPECT_LT(relative_error(slope, value), 1e-4) << to_string(f) << " s=" << s;
            }
        }
    }
}

TEST(KernelIntegrals, BigPhiMonotoneAndConverges) {
    std::mt19937_64 rng(13);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 20; ++i) {
            const auto p = hawkes_test::random_parameters(f, rng);
            const KernelParams k = make_kernel(f, p);
            double prev = 0.0;
            for (double s = 0.0; s < 50.0; s += 0.37) {
                const double v = big_phi(k, s);
                EXPECT_GE(v, prev - 1e-15);
                prev = v;
            }
            const double s_far = 1e6 * characteristic_time(k);
            const double far = big_phi(k, s_far);
            const bool power_tail = f == Family::pwl || (f == Family::qexp && std::get<QExpKernel>(k).q > 1.0);
            if (power_tail) {
                // The remaining mass beyond s_far decays only polynomially; the gap
                // must equal the quadrature of that tail.
                const double tail = hawkes_test::tail_mass_oracle(f, p, s_far);
                EXPECT_NEAR(branching_ratio(k) - far, tail, 1e-9 * std::max(1.0, branching_ratio(k))) << to_string(f);
                if (f == Family::pwl && p[2] >= 1.5) {
                    EXPECT_NEAR(far, branching_ratio(k), 1e-3 * branching_ratio(k));
                }
            } else {
                EXPECT_NEAR(far, branching_ratio(k), 1e-6) << to_string(f);
            }
        }
    }
}

TEST(KernelTail, SupTailExamples) {
    EXPECT_DOUBLE_EQ(sup_tail(ExpKernel{1.0, 1.0}, 0.0), 1.0);
    EXPECT_NEAR(sup_tail(RayleighKernel{1.2, 1.0}, 0.0), 1.2 / std::sqrt(2.0) * std::exp(-0.5), 1e-12);
    EXPECT_NEAR(sup_tail(RayleighKernel{1.2, 1.0}, 0.0), 0.514658, 5e-7);
    EXPECT_DOUBLE_EQ(sup_tail(GaussianKernel{0.5, 0.5, 1.0}, 0.1), 0.5);

    double grid_max = 0.0;
    for (int j = 0; j <= 100000; ++j) {
        grid_max = std::max(grid_max, phi(RayleighKernel{1.2, 1.0}, j * 1e-4));
    }
    EXPECT_NEAR(sup_tail(RayleighKernel{1.2, 1.0}, 0.0), grid_max, 1e-8);
}

TEST(KernelTail, SupTailDominatesKernel) {
    std::mt19937_64 rng(14);
    std::exponential_distribution<double> gap(0.5);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 10; ++i) {
            const KernelParams k = draw(f, rng);
            const double s = gap(rng);
            const double bound = sup_tail(k, s);
            for (int j = 0; j < 1000; ++j) {
                EXPECT_LE(phi(k, s + gap(rng)), bound * (1 + 1e-14)) << to_string(f);
            }
        }
    }
}

TEST(KernelValidation, AcceptsAndRejects) {
    EXPECT_NO_THROW(validate(ExpKernel{1.0, 1.1}));
    EXPECT_EQ(code_of([] { validate(PowerLawKernel{0.9, 1.0, 0.5}); }), ErrorCode::invalid_kernel);
    EXPECT_EQ(code_of([] { validate(QExpKernel{0.8, 2.5}); }), ErrorCode::invalid_kernel);
    EXPECT_EQ(code_of([] { validate(QExpKernel{0.8, 0.0}); }), ErrorCode::invalid_kernel);
    EXPECT_EQ(code_of([] { validate(GaussianKernel{0.5, -0.5, 1.0}); }), ErrorCode::invalid_kernel);
    EXPECT_EQ(code_of([] { validate(ExpKernel{std::nan(""), 1.0}); }), ErrorCode::invalid_kernel);
    EXPECT_EQ(code_of([] { (void)branching_ratio(PowerLawKernel{0.9, 1.0, 1.0}); }), ErrorCode::divergent_integral);
    try {
        validate(PowerLawKernel{0.9, 1.0, 0.5});
    } catch (const HawkesError& e) {
        EXPECT_NE(std::string(e.what()).find("PWL.p"), std::string::npos);
    }
    EXPECT_NO_THROW(validate_allowing_zero_amplitude(ExpKernel{0.0, 1.0}));
    EXPECT_THROW(validate(ExpKernel{0.0, 1.0}), HawkesError);
}

TEST(KernelTransforms, Examples) {
    EXPECT_EQ(to_unconstrained(ExpKernel{1.0, 1.0}), (std::vector<double>{0.0, 0.0}));
    EXPECT_NEAR(to_unconstrained(PowerLawKernel{0.9, 1.0, 2.0})[2], 0.0, 1e-15);
    const auto back = from_unconstrained(Family::exp, std::vector<double>{0.0, 0.0});
    EXPECT_EQ(parameters(back), (std::vector<double>{1.0, 1.0}));
}

TEST(KernelTransforms, RoundTripIsIdentity) {
    std::mt19937_64 rng(15);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 200; ++i) {
            const KernelParams k = draw(f, rng);
            const auto p = parameters(k);
            const auto q = parameters(from_unconstrained(f, to_unconstrained(k)));
            for (std::size_t d = 0; d < p.size(); ++d) {
                EXPECT_LT(relative_error(q[d], p[d]), 1e-12) << to_string(f) << " field " << d;
            }
        }
    }
    const auto g = parameters(from_unconstrained(Family::gss, to_unconstrained(GaussianKernel{0.5, 0.5, 1.0})));
    EXPECT_NEAR(g[0], 0.5, 1e-15);
    EXPECT_NEAR(g[1], 0.5, 1e-15);
    EXPECT_NEAR(g[2], 1.0, 1e-15);
}

TEST(KernelTransforms, AnyVectorMapsToValidKernel) {
    std::mt19937_64 rng(16);
    std::normal_distribution<double> n(0.0, 5.0);
    for (Family f : kAllFamilies) {
        for (int i = 0; i < 200; ++i) {
            std::vector<double> x(parameter_count(f));
            for (auto& v : x) v = n(rng);
            EXPECT_TRUE(is_valid(from_unconstrained(f, x))) << to_string(f);
        }
    }
}

TEST(KernelNames, ParseAndPrint) {
    for (Family f : kAllFamilies) {
        EXPECT_EQ(parse_family(to_string(f)), f);
    }
    EXPECT_EQ(parse_family("qexp"), Family::qexp);
    EXPECT_EQ(code_of([] { (void)parse_family("WEIBULL"); }), ErrorCode::parse_error);
}

TEST(KernelIntegrals, GaussianLeftTailKeepsRelativeAccuracy) {
    // Far left of the mode the integral is tiny and both erf terms are close to -1.
    const std::vector<double> p{0.315482, 4.06838, 0.386473};
    const KernelParams k = make_kernel(Family::gss, p);
    for (double s : {0.0680081, 0.5, 1.5, 3.0}) {
        EXPECT_LT(relative_error(big_phi(k, s), hawkes_test::integrate_phi(Family::gss, p, 0.0, s)), 1e-9) << s;
    }
}
