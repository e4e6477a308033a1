#include "hawkes/experiments.hpp"

#include "hawkes/error.hpp"
#include "hawkes/likelihood.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hawkes {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int thread_count(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

std::string failure_name(const std::exception& e) {
    if (const auto* he = dynamic_cast<const HawkesError*>(&e)) {
        return std::string(to_string(he->code()));
    }
    return "Exception";
}

struct StudyItem {
    std::size_t gen_slot;
    std::size_t horizon_slot;
    std::size_t sequence;
};

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

HawkesModel benchmark_generator(Family family) {
    switch (family) {
        case Family::exp: return {0.5, ExpKernel{1.0, 1.1}};
        case Family::pwl: return {0.5, PowerLawKernel{0.9, 1.0, 2.0}};
        case Family::qexp: return {0.5, QExpKernel{0.8, 1.1}};
        case Family::ray: return {0.5, RayleighKernel{1.2, 1.0}};
        case Family::gss: return {0.5, GaussianKernel{0.5, 0.5, 1.0}};
    }
    throw HawkesError(ErrorCode::invalid_argument, "unknown family");
}

std::uint64_t sequence_seed(std::uint64_t base_seed, Family generator, std::size_t horizon_slot, std::size_t index) noexcept {
    const std::uint64_t per_family = derive_seed(base_seed, static_cast<std::uint64_t>(generator));
    const std::uint64_t per_horizon = derive_seed(per_family, horizon_slot);
    return derive_seed(per_horizon, index);
}

std::vector<BenchmarkSequence> generate_benchmark(std::uint64_t base_seed, double horizon, std::size_t n_per_family,
                                                  std::span<const Family> families, int jobs) {
    if (!(horizon > 0.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "benchmark horizon must be > 0");
    }
    std::vector<BenchmarkSequence> out(families.size() * n_per_family);
    for (std::size_t f = 0; f < families.size(); ++f) {
        for (std::size_t i = 0; i < n_per_family; ++i) {
            auto& slot = out[f * n_per_family + i];
            slot.generator = families[f];
            slot.index = i;
            slot.seed = sequence_seed(base_seed, families[f], 0, i);
        }
    }
    const auto count = static_cast<std::ptrdiff_t>(out.size());
    std::optional<HawkesError> error;
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        auto& slot = out[static_cast<std::size_t>(k)];
        try {
            slot.events = simulate_ogata({benchmark_generator(slot.generator), horizon, slot.seed});
        } catch (const HawkesError& e) {
#pragma omp critical(benchmark_error)
            if (!error) {
                error = e;
            }
        }
    }
    if (error) {
        throw *error;
    }
    return out;
}

void validate(const StudyConfig& config) {
    if (config.generator_families.empty() || config.fitter_families.empty() || config.horizons.empty() ||
        config.epsilons.empty() || config.resolutions.empty()) {
        throw HawkesError(ErrorCode::invalid_argument, "study lists must be nonempty");
    }
    if (config.sequences_per_cell < 1) {
        throw HawkesError(ErrorCode::invalid_argument, "sequences_per_cell must be >= 1");
    }
    for (double t : config.horizons) {
        if (!(t > 0.0)) {
            throw HawkesError(ErrorCode::invalid_argument, "horizons must be > 0");
        }
    }
    for (double eps : config.epsilons) {
        validate(StabilizationConfig{eps, 2});
    }
    for (int m : config.resolutions) {
        validate(StabilizationConfig{0.1, m});
    }
    if (!(config.train_fraction > 0.0 && config.train_fraction <= 1.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "train_fraction must lie in (0, 1]");
    }
}

StudyResult run_success_rate_study(const StudyConfig& config) {
    validate(config);
    const std::size_t n_gen = config.generator_families.size();
    const std::size_t n_fit = config.fitter_families.size();
    const std::size_t n_t = config.horizons.size();
    const std::size_t n_eps = config.epsilons.size();
    const std::size_t n_m = config.resolutions.size();
    const std::size_t n_seq = config.sequences_per_cell;

    // Record layout: [gen][fit][T][eps][M][seq]
    auto record_slot = [&](std::size_t g, std::size_t f, std::size_t t, std::size_t e, std::size_t m, std::size_t s) {
        return ((((g * n_fit + f) * n_t + t) * n_eps + e) * n_m + m) * n_seq + s;
    };

    StudyResult result;
    result.records.resize(n_gen * n_fit * n_t * n_eps * n_m * n_seq);
    for (std::size_t g = 0; g < n_gen; ++g)
        for (std::size_t f = 0; f < n_fit; ++f)
            for (std::size_t t = 0; t < n_t; ++t)
                for (std::size_t e = 0; e < n_eps; ++e)
                    for (std::size_t m = 0; m < n_m; ++m)
                        for (std::size_t s = 0; s < n_seq; ++s) {
                            auto& r = result.records[record_slot(g, f, t, e, m, s)];
                            r.generator = config.generator_families[g];
                            r.fitter = config.fitter_families[f];
                            r.horizon = config.horizons[t];
                            r.epsilon = config.epsilons[e];
                            r.resolution = config.resolutions[m];
                            r.sequence = s;
                        }

    std::vector<StudyItem> items;
    items.reserve(n_gen * n_t * n_seq);
    for (std::size_t g = 0; g < n_gen; ++g)
        for (std::size_t t = 0; t < n_t; ++t)
            for (std::size_t s = 0; s < n_seq; ++s) items.push_back({g, t, s});

    const auto count = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(config.jobs))
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const StudyItem item = items[static_cast<std::size_t>(k)];
        const Family gen = config.generator_families[item.gen_slot];
        const double horizon = config.horizons[item.horizon_slot];

        auto for_each_stab = [&](std::size_t f, auto&& fn) {
            for (std::size_t e = 0; e < n_eps; ++e)
                for (std::size_t m = 0; m < n_m; ++m) fn(e, m, result.records[record_slot(item.gen_slot, f, item.horizon_slot, e, m, item.sequence)]);
        };

        EventSequence seq;
        try {
            seq = simulate_ogata({benchmark_generator(gen), horizon, sequence_seed(config.base_seed, gen, item.horizon_slot, item.sequence)});
        } catch (const std::exception& ex) {
            const std::string why = failure_name(ex);
            for (std::size_t f = 0; f < n_fit; ++f) for_each_stab(f, [&](std::size_t, std::size_t, SequenceRecord& r) { r.failure = why; });
            continue;
        }

        for (std::size_t f = 0; f < n_fit; ++f) {
            const Family fitter = config.fitter_families[f];
            std::optional<FitResult> fit;
            std::string fit_failure;
            try {
                fit = fit_mle(fitter, seq, config.fit);
            } catch (const std::exception& ex) {
                fit_failure = failure_name(ex);
            }
            for_each_stab(f, [&](std::size_t e, std::size_t m, SequenceRecord& r) {
                r.n_events = seq.size();
                if (!fit) {
                    r.failure = fit_failure;
                    return;
                }
                r.init_loglik = fit->loglik_init;
                r.original_loglik = fit->loglik_last_iterate;
                r.last_iterate_branching = branching_ratio(fit->model_last_iterate.kernel);
                r.unstable_last_iterate = !(r.last_iterate_branching < 1.0);
                try {
                    const StabilizationConfig sc{config.epsilons[e], config.resolutions[m], config.mu_rule};
                    const StabilizedResult stab = stabilize_fit(*fit, seq, sc);
                    r.stabilized_loglik = stab.selected_loglik;
                    r.original_loglik = stab.original_loglik;
                    r.stabilized_branching = branching_ratio(stab.selected.kernel);
                    r.strict_improvement = stab.strict_improvement;
                    r.dropped = stab.dropped_candidates;
                } catch (const std::exception& ex) {
                    r.failure = failure_name(ex);
                }
            });
        }
    }

    // Deterministic, index-ordered aggregation.
    for (std::size_t g = 0; g < n_gen; ++g)
        for (std::size_t f = 0; f < n_fit; ++f)
            for (std::size_t t = 0; t < n_t; ++t)
                for (std::size_t e = 0; e < n_eps; ++e)
                    for (std::size_t m = 0; m < n_m; ++m) {
                        CellSummary cell;
                        cell.generator = config.generator_families[g];
                        cell.fitter = config.fitter_families[f];
                        cell.horizon = config.horizons[t];
                        cell.epsilon = config.epsilons[e];
                        cell.resolution = config.resolutions[m];
                        std::size_t successes = 0;
                        std::size_t ok = 0;
                        double delta_sum = 0.0;
                        for (std::size_t s = 0; s < n_seq; ++s) {
                            const auto& r = result.records[record_slot(g, f, t, e, m, s)];
                            if (!r.failure.empty()) {
                                ++cell.n_failed;
                                continue;
                            }
                            ++ok;
                            delta_sum += r.stabilized_loglik - r.original_loglik;
                            successes += r.strict_improvement ? 1 : 0;
                            cell.n_dropped += r.dropped;
                            if (r.unstable_last_iterate) {
                                ++cell.n_unstable;
                                cell.n_unstable_stabilized += r.stabilized_branching < 1.0 ? 1 : 0;
                                cell.n_unstable_not_worse += r.stabilized_loglik >= r.original_loglik ? 1 : 0;
                            }
                        }
                        cell.success_rate = ok == 0 ? kNaN : static_cast<double>(successes) / static_cast<double>(n_seq);
                        cell.mean_delta_loglik = ok == 0 ? kNaN : delta_sum / static_cast<double>(ok);
                        result.cells.push_back(cell);
                    }
    return result;
}

std::string success_rate_csv(const StudyResult& result) {
    std::ostringstream os;
    os << "generator,fitter,T,epsilon,M,success_rate,mean_delta_loglik,n_unstable,n_failed\n";
    for (const auto& c : result.cells) {
        os << to_string(c.generator) << ',' << to_string(c.fitter) << ',' << format_double(c.horizon) << ','
           << format_double(c.epsilon) << ',' << c.resolution << ',' << format_double(c.success_rate) << ','
           << format_double(c.mean_delta_loglik) << ',' << c.n_unstable << ',' << c.n_failed << '\n';
    }
    return os.str();
}

std::string records_csv(const StudyResult& result) {
    std::ostringstream os;
    os << "generator,fitter,T,epsilon,M,sequence,n_events,last_iterate_branching,stabilized_branching,"
          "init_loglik,original_loglik,stabilized_loglik,unstable_last_iterate,strict_improvement,dropped,failure\n";
    for (const auto& r : result.records) {
        os << to_string(r.generator) << ',' << to_string(r.fitter) << ',' << format_double(r.horizon) << ','
           << format_double(r.epsilon) << ',' << r.resolution << ',' << r.sequence << ',' << r.n_events << ','
           << format_double(r.last_iterate_branching) << ',' << format_double(r.stabilized_branching) << ','
           << format_double(r.init_loglik) << ',' << format_double(r.original_loglik) << ','
           << format_double(r.stabilized_loglik) << ','
           << (r.unstable_last_iterate ? 1 : 0) << ',' << (r.strict_improvement ? 1 : 0) << ',' << r.dropped << ','
           << r.failure << '\n';
    }
    return os.str();
}

TrainTestSummary run_train_test_eval(std::span<const EventSequence> dataset, const TrainTestConfig& config) {
    if (dataset.empty()) {
        throw HawkesError(ErrorCode::invalid_argument, "train/test evaluation needs a nonempty dataset");
    }
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw HawkesError(ErrorCode::invalid_argument, "train_fraction must lie in (0, 1)");
    }
    validate(config.stabilization);

    enum class Outcome { ok, too_short, no_test_events, failed };
    struct Slot {
        Outcome outcome{Outcome::failed};
        TrainTestRow row;
    };
    std::vector<Slot> slots(dataset.size());

    const auto count = static_cast<std::ptrdiff_t>(dataset.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(config.jobs))
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const EventSequence& seq = dataset[idx];
        Slot& slot = slots[idx];
        slot.row.sequence = idx;
        slot.row.n_events = seq.size();
        if (seq.size() < config.min_events) {
            slot.outcome = Outcome::too_short;
            continue;
        }
        const double train_end = config.train_fraction * seq.horizon();
        if (seq.count_in(train_end, seq.horizon()) == 0) {
            slot.outcome = Outcome::no_test_events;
            continue;
        }
        FitOptions fit_options = config.fit;
        fit_options.train_end = train_end;
        bool any = false;
        double best_stab = -std::numeric_limits<double>::infinity();
        double best_raw = -std::numeric_limits<double>::infinity();
        for (Family family : config.families) {
            try {
                const FitResult fit = fit_mle(family, seq, fit_options);
                const StabilizedResult stab = stabilize_fit(fit, seq, config.stabilization);
                const double stab_score = normalized_test_loglik(stab.selected, seq, config.train_fraction);
                const double raw_score = normalized_test_loglik(fit.model_last_iterate, seq, config.train_fraction);
                slot.row.any_unstable_last_iterate |= !(branching_ratio(fit.model_last_iterate.kernel) < 1.0);
                if (!any || stab_score > best_stab) {
                    best_stab = stab_score;
                    slot.row.stabilized_family = family;
                }
                if (!any || raw_score > best_raw) {
                    best_raw = raw_score;
                    slot.row.last_iterate_family = family;
                }
                any = true;
            } catch (const HawkesError&) {
                // This family could not be fitted or stabilized; the others still count.
            }
        }
        if (!any) {
            slot.outcome = Outcome::failed;
            continue;
        }
        slot.row.stabilized_score = best_stab;
        slot.row.last_iterate_score = best_raw;
        slot.outcome = Outcome::ok;
    }

    TrainTestSummary summary;
    summary.n_input = dataset.size();
    double sum_stab = 0.0;
    double sum_raw = 0.0;
    for (const auto& slot : slots) {
        switch (slot.outcome) {
            case Outcome::ok:
                summary.rows.push_back(slot.row);
                sum_stab += slot.row.stabilized_score;
                sum_raw += slot.row.last_iterate_score;
                break;
            case Outcome::too_short: ++summary.n_too_short; break;
            case Outcome::no_test_events: ++summary.n_no_test_events; break;
            case Outcome::failed: ++summary.n_failed; break;
        }
    }
    const auto n = static_cast<double>(summary.rows.size());
    summary.mean_stabilized = summary.rows.empty() ? kNaN : sum_stab / n;
    summary.mean_last_iterate = summary.rows.empty() ? kNaN : sum_raw / n;
    return summary;
}

std::string train_test_csv(const TrainTestSummary& summary) {
    std::ostringstream os;
    os << "sequence,n_events,stabilized_family,stabilized_score,last_iterate_family,last_iterate_score,any_unstable_last_iterate\n";
    for (const auto& r : summary.rows) {
        os << r.sequence << ',' << r.n_events << ',' << to_string(r.stabilized_family) << ',' << format_double(r.stabilized_score)
           << ',' << to_string(r.last_iterate_family) << ',' << format_double(r.last_iterate_score) << ','
           << (r.any_unstable_last_iterate ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace hawkes
