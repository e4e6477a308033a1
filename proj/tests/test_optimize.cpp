#include "hawkes/error.hpp"
#include "hawkes/optimize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace hawkes;

namespace {

double neg_quadratic(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += (v - 3.0) * (v - 3.0);
    return -s;
}

double neg_rosenbrock(std::span<const double> x) {
    return -((1 - x[0]) * (1 - x[0]) + 100 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]));
}

} // namespace

TEST(NelderMead, Quadratic) {
    OptimOptions o;
    o.record_trace = true;
    const auto r = nelder_mead(neg_quadratic, {0.0, 0.0}, o);
    EXPECT_NEAR(r.x[0], 3.0, 1e-6);
    EXPECT_NEAR(r.x[1], 3.0, 1e-6);
    EXPECT_TRUE(r.converged);
}

TEST(NelderMead, Rosenbrock) {
    const auto r = nelder_mead(neg_rosenbrock, {-1.2, 1.0});
    EXPECT_NEAR(r.x[0], 1.0, 1e-4);
    EXPECT_NEAR(r.x[1], 1.0, 1e-4);
}

TEST(NelderMead, TraceIsMonotoneAndStartsAtX0) {
    OptimOptions o;
    o.record_trace = true;
    const auto r = nelder_mead(neg_rosenbrock, {-1.2, 1.0}, o);
    ASSERT_FALSE(r.trace.empty());
    EXPECT_EQ(r.trace.front().first, 0u);
    EXPECT_GE(r.trace.front().second, neg_rosenbrock(std::vector<double>{-1.2, 1.0}));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_GE(r.trace[i].second, r.trace[i - 1].second);
    }
    EXPECT_DOUBLE_EQ(r.value, r.trace.back().second);
}

TEST(NelderMead, NeverWorseThanStart) {
    const Objective bumpy = [](std::span<const double> x) { return std::sin(5 * x[0]) * std::cos(3 * x[1]) - 0.01 * x[0] * x[0]; };
    for (double a = -2.0; a <= 2.0; a += 0.5) {
        const std::vector<double> x0{a, -a};
        const auto r = nelder_mead(bumpy, x0);
        EXPECT_GE(r.value, bumpy(x0));
    }
}

TEST(NelderMead, RespectsIterationCap) {
    OptimOptions o;
    o.max_iters = 5;
    const auto r = nelder_mead(neg_rosenbrock, {-1.2, 1.0}, o);
    EXPECT_LE(r.iterations, 5u);
    EXPECT_FALSE(r.converged);
}

TEST(NelderMead, NanStartIsBadStart) {
    const Objective f = [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); };
    try {
        (void)nelder_mead(f, {1.0});
        ADD_FAILURE();
    } catch (const HawkesError& e) {
        EXPECT_EQ(e.code(), ErrorCode::bad_start);
    }
}

TEST(NelderMead, RetreatsFromNanRegion) {
    const Objective f = [](std::span<const double> x) {
        return x[0] > 2.0 ? std::numeric_limits<double>::quiet_NaN() : -(x[0] - 1.9) * (x[0] - 1.9);
    };
    const auto r = nelder_mead(f, {1.0});
    EXPECT_NEAR(r.x[0], 1.9, 1e-4);
}

TEST(OptimOptionsTest, Validation) {
    OptimOptions o;
    o.max_iters = 0;
    EXPECT_THROW(validate(o), HawkesError);
    o = {};
    o.step_tolerance = 0.0;
    EXPECT_THROW(validate(o), HawkesError);
}

TEST(FiniteDiff, LinearAndQuadratic) {
    const Objective lin = [](std::span<const double> x) { return 2.0 * x[0] - 3.5 * x[1] + 0.25 * x[2]; };
    const auto g = finite_diff_gradient(lin, std::vector<double>{0.3, -1.0, 4.0});
    EXPECT_NEAR(g[0], 2.0, 1e-8);
    EXPECT_NEAR(g[1], -3.5, 1e-8);
    EXPECT_NEAR(g[2], 0.25, 1e-8);
    const Objective sq = [](std::span<const double> x) { return x[0] * x[0]; };
    EXPECT_NEAR(finite_diff_gradient(sq, std::vector<double>{2.0})[0], 4.0, 1e-6);
}

TEST(FiniteDiff, NonFiniteRegion) {
    const Objective f = [](std::span<const double> x) { return std::log(x[0]); };
    try {
        (void)finite_diff_gradient(f, std::vector<double>{0.0});
        ADD_FAILURE();
    } catch (const HawkesError& e) {
        EXPECT_EQ(e.code(), ErrorCode::non_finite_region);
    }
}

TEST(GradientAscent, ConcaveParabola) {
    const Objective f = [](std::span<const double> x) { return -(x[0] - 1.0) * (x[0] - 1.0); };
    OptimOptions o;
    o.method = Method::gradient_ascent;
    o.learning_rate = 0.1;
    o.max_iters = 5000;
    const auto r = gradient_ascent(f, {0.0}, o);
    EXPECT_NEAR(r.x[0], 1.0, 1e-3);
}

TEST(GradientAscent, BacktrackingNeverLoses) {
    OptimOptions o;
    o.learning_rate = 10.0;
    o.record_trace = true;
    const auto r = gradient_ascent(neg_rosenbrock, {-1.2, 1.0}, o);
    EXPECT_GE(r.value, neg_rosenbrock(std::vector<double>{-1.2, 1.0}));
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_GE(r.trace[i].second, r.trace[i - 1].second);
    }
}
