#pragma once

#include "hawkes/mle.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stabilize.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hawkes {

/// Synthetic generator for each family: mu = 0.5 with EXP(1.0, 1.1),
/// PWL(0.9, 1.0, 2.0), QEXP(0.8, 1.1), RAY(1.2, 1.0), GSS(0.5, 0.5, 1.0).
[[nodiscard]] HawkesModel benchmark_generator(Family family);

struct BenchmarkSequence {
    Family generator{Family::exp};
    std::size_t index{0};
    std::uint64_t seed{0};
    EventSequence events;
};

/// Seed of sequence `index` drawn from `generator` at horizon slot
/// `horizon_slot`; independent of which other families or horizons run.
[[nodiscard]] std::uint64_t sequence_seed(std::uint64_t base_seed, Family generator, std::size_t horizon_slot, std::size_t index) noexcept;

/// n_per_family sequences on [0, horizon] for each family, family-major.
[[nodiscard]] std::vector<BenchmarkSequence> generate_benchmark(std::uint64_t base_seed, double horizon, std::size_t n_per_family,
                                                                std::span<const Family> families = kAllFamilies, int jobs = 0);

struct StudyConfig {
    std::vector<Family> generator_families{kAllFamilies.begin(), kAllFamilies.end()};
    std::vector<Family> fitter_families{kAllFamilies.begin(), kAllFamilies.end()};
    std::vector<double> horizons{100.0};
    std::vector<double> epsilons{0.1};
    std::vector<int> resolutions{6};
    std::size_t sequences_per_cell{50};
    std::uint64_t base_seed{0};
    double train_fraction{0.7};  // train/test evaluation only
    FitOptions fit{};
    MuRule mu_rule{MuRule::as_printed};
    int jobs{0};  // 0: OpenMP default
};

/// Throws invalid_argument for empty lists or a zero sequence count.
void validate(const StudyConfig& config);

/// One (sequence, fitter, epsilon, M) outcome. Failed rows keep their slot.
struct SequenceRecord {
    Family generator{Family::exp};
    Family fitter{Family::exp};
    double horizon{0.0};
    double epsilon{0.0};
    int resolution{0};
    std::size_t sequence{0};
    std::size_t n_events{0};
    double last_iterate_branching{0.0};
    double stabilized_branching{0.0};
    double init_loglik{0.0};
    double original_loglik{0.0};
    double stabilized_loglik{0.0};
    bool unstable_last_iterate{false};
    bool strict_improvement{false};
    std::size_t dropped{0};
    std::string failure;  // empty on success, else the error name
};

struct CellSummary {
    Family generator{Family::exp};
    Family fitter{Family::exp};
    double horizon{0.0};
    double epsilon{0.0};
    int resolution{0};
    double success_rate{0.0};  // strict improvements / sequences_per_cell; NaN if every row failed
    double mean_delta_loglik{0.0};
    std::size_t n_unstable{0};
    std::size_t n_failed{0};
    std::size_t n_dropped{0};
    std::size_t n_unstable_stabilized{0};  // unstable last iterates with a stable output
    std::size_t n_unstable_not_worse{0};   // ... whose stabilized loglik >= original
};

struct StudyResult {
    std::vector<CellSummary> cells;        // generator, fitter, T, epsilon, M order
    std::vector<SequenceRecord> records;   // same order, then sequence index
};

/// Runs the simulate-fit-stabilize pipeline for every cell. All cells of one generator and
/// horizon share their sequences. Work items run in parallel and are merged by
/// index, so the result does not depend on scheduling.
[[nodiscard]] StudyResult run_success_rate_study(const StudyConfig& config);

/// Header: generator,fitter,T,epsilon,M,success_rate,mean_delta_loglik,n_unstable,n_failed
[[nodiscard]] std::string success_rate_csv(const StudyResult& result);
[[nodiscard]] std::string records_csv(const StudyResult& result);

struct TrainTestConfig {
    double train_fraction{0.7};
    std::size_t min_events{21};  // sequences need more than 20 events
    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    StabilizationConfig stabilization{};
    FitOptions fit{};
    int jobs{0};
};

struct TrainTestRow {
    std::size_t sequence{0};
    std::size_t n_events{0};
    Family stabilized_family{Family::exp};
    double stabilized_score{0.0};
    Family last_iterate_family{Family::exp};
    double last_iterate_score{0.0};
    bool any_unstable_last_iterate{false};
};

struct TrainTestSummary {
    std::vector<TrainTestRow> rows;
    std::size_t n_input{0};
    std::size_t n_too_short{0};
    std::size_t n_no_test_events{0};
    std::size_t n_failed{0};
    double mean_stabilized{0.0};
    double mean_last_iterate{0.0};
};

/// Fits every family on [0, f T], stabilizes, and scores the normalized
/// log-likelihood on (f T, T]. Per sequence the best family is kept, both
/// for the stabilized models and for the raw last iterates.
[[nodiscard]] TrainTestSummary run_train_test_eval(std::span<const EventSequence> dataset, const TrainTestConfig& config = {});

[[nodiscard]] std::string train_test_csv(const TrainTestSummary& summary);

/// Shortest round-trip decimal form ("nan", "inf", "-inf" for non-finite).
[[nodiscard]] std::string format_double(double value);

} // namespace hawkes
