#include "hawkes/error.hpp"
#include "hawkes/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace hawkes;

TEST(BenchmarkGenerator, Parameters) {
    for (Family f : kAllFamilies) {
        EXPECT_EQ(benchmark_generator(f).mu, 0.5);
        EXPECT_EQ(family_of(benchmark_generator(f).kernel), f);
    }
    EXPECT_EQ(parameters(benchmark_generator(Family::exp).kernel), (std::vector<double>{1.0, 1.1}));
    EXPECT_EQ(parameters(benchmark_generator(Family::pwl).kernel), (std::vector<double>{0.9, 1.0, 2.0}));
    EXPECT_EQ(parameters(benchmark_generator(Family::qexp).kernel), (std::vector<double>{0.8, 1.1}));
    EXPECT_EQ(parameters(benchmark_generator(Family::ray).kernel), (std::vector<double>{1.2, 1.0}));
    EXPECT_EQ(parameters(benchmark_generator(Family::gss).kernel), (std::vector<double>{0.5, 0.5, 1.0}));
    EXPECT_NEAR(0.5 * 1000 / (1 - branching_ratio(benchmark_generator(Family::exp).kernel)), 5500.0, 1e-9);
    EXPECT_NEAR(0.5 * 1000 / (1 - branching_ratio(benchmark_generator(Family::ray).kernel)), 1250.0, 1e-9);
}

TEST(GenerateBenchmark, DeterministicAndFamilyMajor) {
    const auto a = generate_benchmark(3, 50.0, 4);
    const auto b = generate_benchmark(3, 50.0, 4, kAllFamilies, 1);
    ASSERT_EQ(a.size(), 20u);
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].events, b[k].events);
        EXPECT_EQ(a[k].generator, kAllFamilies[k / 4]);
        EXPECT_EQ(a[k].index, k % 4);
    }
    const std::vector<Family> only_gss{Family::gss};
    const auto c = generate_benchmark(3, 50.0, 4, only_gss);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(c[k].events, a[12 + k].events);
    EXPECT_NE(generate_benchmark(4, 50.0, 4)[0].events, a[0].events);
}

TEST(SequenceSeed, DistinctAcrossKeys) {
    std::set<std::uint64_t> seen;
    for (Family f : kAllFamilies)
        for (std::size_t t = 0; t < 4; ++t)
            for (std::size_t i = 0; i < 500; ++i) seen.insert(sequence_seed(0, f, t, i));
    EXPECT_EQ(seen.size(), 5u * 4u * 500u);
}

TEST(StudyConfigTest, Validation) {
    StudyConfig c;
    EXPECT_NO_THROW(validate(c));
    c.sequences_per_cell = 0;
    EXPECT_THROW(validate(c), HawkesError);
    c = {};
    c.horizons.clear();
    EXPECT_THROW(validate(c), HawkesError);
    c = {};
    c.epsilons = {1.5};
    EXPECT_THROW(validate(c), HawkesError);
    c = {};
    c.resolutions = {1};
    EXPECT_THROW(validate(c), HawkesError);
}

TEST(SuccessRateStudy, ShapeAndDeterminism) {
    StudyConfig c;
    c.generator_families = {Family::exp, Family::gss};
    c.fitter_families = {Family::exp, Family::ray};
    c.horizons = {40.0};
    c.epsilons = {0.1, 0.3};
    c.resolutions = {3, 6};
    c.sequences_per_cell = 3;
    c.base_seed = 17;
    c.fit.optim.max_iters = 400;
    const StudyResult a = run_success_rate_study(c);
    EXPECT_EQ(a.cells.size(), 2u * 2u * 1u * 2u * 2u);
    EXPECT_EQ(a.records.size(), a.cells.size() * 3u);
    for (const auto& cell : a.cells) {
        EXPECT_GE(cell.success_rate, 0.0);
        EXPECT_LE(cell.success_rate, 1.0);
        EXPECT_EQ(cell.n_failed, 0u);
        EXPECT_EQ(cell.n_unstable_stabilized, cell.n_unstable);
    }
    for (const auto& r : a.records) {
        EXPECT_TRUE(r.failure.empty());
        EXPECT_LT(r.stabilized_branching, 1.0);
        EXPECT_EQ(r.strict_improvement, r.stabilized_loglik > r.original_loglik);
    }
    c.jobs = 1;
    const StudyResult b = run_success_rate_study(c);
    EXPECT_EQ(success_rate_csv(a), success_rate_csv(b));
    EXPECT_EQ(records_csv(a), records_csv(b));
}

TEST(SuccessRateStudy, SingleSequenceCellIsZeroOrOne) {
    StudyConfig c;
    c.generator_families = {Family::ray};
    c.fitter_families = {Family::qexp, Family::gss};
    c.horizons = {30.0};
    c.sequences_per_cell = 1;
    const StudyResult r = run_success_rate_study(c);
    for (const auto& cell : r.cells) {
        EXPECT_TRUE(cell.success_rate == 0.0 || cell.success_rate == 1.0);
    }
}

TEST(SuccessRateStudy, CsvHeaderAndFormatting) {
    StudyResult r;
    CellSummary cell;
    cell.horizon = 100;
    cell.epsilon = 0.1;
    cell.resolution = 6;
    cell.success_rate = std::nan("");
    cell.mean_delta_loglik = -0.25;
    cell.n_failed = 2;
    r.cells.push_back(cell);
    EXPECT_EQ(success_rate_csv(r),
              "generator,fitter,T,epsilon,M,success_rate,mean_delta_loglik,n_unstable,n_failed\n"
              "EXP,EXP,100,0.1,6,nan,-0.25,0,2\n");
    EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(TrainTest, FiltersShortSequencesAndScores) {
    std::vector<EventSequence> data;
    std::vector<double> twenty, long_seq;
    for (int i = 1; i <= 20; ++i) twenty.push_back(i);
    for (int i = 1; i <= 60; ++i) long_seq.push_back(0.5 * i + 0.01 * (i % 7));
    data.emplace_back(twenty, 20.0);
    data.emplace_back(long_seq, 31.0);
    std::vector<double> early;
    for (int i = 1; i <= 30; ++i) early.push_back(0.1 * i);
    data.emplace_back(early, 100.0);
    TrainTestConfig cfg;
    cfg.families = {Family::exp, Family::ray};
    cfg.fit.optim.max_iters = 300;
    const TrainTestSummary s = run_train_test_eval(data, cfg);
    EXPECT_EQ(s.n_input, 3u);
    EXPECT_EQ(s.n_too_short, 1u);
    EXPECT_EQ(s.n_no_test_events, 1u);
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_EQ(s.rows[0].sequence, 1u);
    EXPECT_TRUE(std::isfinite(s.rows[0].stabilized_score));
    EXPECT_DOUBLE_EQ(s.mean_stabilized, s.rows[0].stabilized_score);
    EXPECT_NE(train_test_csv(s).find("sequence,n_events,stabilized_family"), std::string::npos);
}
