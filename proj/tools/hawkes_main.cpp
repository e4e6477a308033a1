// Command-line front end: simulate, fit, stabilize, eval, study.
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.

#include "hawkes/error.hpp"
#include "hawkes/experiments.hpp"
#include "hawkes/io.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/mle.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stabilize.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <set>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace hawkes;

/// Bad flags or input files that cannot be read or parsed. Maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class Fn>
auto load(const std::string& what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw UsageError(what + ": " + e.what());
    } catch (const HawkesError& e) {
        throw UsageError(what + ": " + e.what());
    }
}

std::vector<EventSequence> load_sequences(const std::string& path) {
    return load(path, [&] { return io::parse_sequences(io::read_text(path)); });
}

json load_json(const std::string& path) {
    return load(path, [&] { return json::parse(io::read_text(path)); });
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        io::write_text_atomic(out, text);
    }
}

int default_jobs() {
    if (const char* env = std::getenv("HAWKES_JOBS")) {
        try {
            return std::max(0, std::stoi(env));
        } catch (const std::exception&) {
            throw UsageError("HAWKES_JOBS must be an integer");
        }
    }
    return 0;
}

Method parse_method(const std::string& name) {
    if (name == "nelder_mead" || name == "nelder-mead") return Method::nelder_mead;
    if (name == "gradient_ascent" || name == "gradient-ascent") return Method::gradient_ascent;
    throw UsageError("method: expected nelder_mead or gradient_ascent, got '" + name + "'");
}

MuRule parse_mu_rule(const std::string& name) {
    if (name == "as_printed") return MuRule::as_printed;
    if (name == "stationary") return MuRule::stationary;
    throw UsageError("mu_rule: expected as_printed or stationary, got '" + name + "'");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string model, out;
    double horizon{0.0};
    std::size_t n{1};
    std::uint64_t seed{0};
};

int run_simulate(const SimulateArgs& a) {
    const HawkesModel model = load(a.model, [&] { return io::model_from_json(load_json(a.model)); });
    if (!(a.horizon > 0.0)) {
        throw UsageError("--T must be > 0");
    }
    std::vector<EventSequence> out(a.n);
    for (std::size_t i = 0; i < a.n; ++i) {
        out[i] = simulate_ogata({model, a.horizon, derive_seed(a.seed, i)});
    }
    emit(a.out, io::dump_sequences(out));
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string family, data, init, out, method{"nelder_mead"};
    double train_fraction{0.7};
    std::size_t max_iters{2000};
};

int run_fit(const FitArgs& a) {
    const Family family = load("--family", [&] { return parse_family(a.family); });
    const auto data = load_sequences(a.data);
    if (!(a.train_fraction > 0.0 && a.train_fraction <= 1.0)) {
        throw UsageError("--train-fraction must lie in (0, 1]");
    }
    std::optional<HawkesModel> init;
    if (!a.init.empty()) {
        init = load(a.init, [&] { return io::model_from_json(load_json(a.init)); });
        if (family_of(init->kernel) != family) {
            throw UsageError("--init family does not match --family");
        }
    }
    FitOptions options;
    options.optim.method = parse_method(a.method);
    options.optim.max_iters = a.max_iters;

    json rows = json::array();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const EventSequence& seq = data[i];
        options.train_end = a.train_fraction * seq.horizon();
        try {
            const FitResult fit = init ? fit_mle(family, seq, *init, options) : fit_mle(family, seq, options);
            rows.push_back({{"sequence", i},
                            {"train_end", fit.train_end},
                            {"model", io::model_to_json(fit.model_last_iterate)},
                            {"loglik", fit.loglik_last_iterate},
                            {"branching_ratio", branching_ratio(fit.model_last_iterate.kernel)},
                            {"iterations", fit.iterations},
                            {"converged", fit.converged}});
        } catch (const HawkesError& e) {
            if (e.code() != ErrorCode::empty_sequence) {
                throw;
            }
            std::cerr << "warning: sequence " << i << " skipped: " << e.what() << '\n';
        }
    }
    emit(a.out, rows.dump(2) + "\n");
    return 0;
}

// --------------------------------------------------------------- stabilize

struct StabilizeArgs {
    std::string fit, data, out, mu_rule{"as_printed"};
    double epsilon{0.1};
    int resolution{6};
};

int run_stabilize(const StabilizeArgs& a) {
    const auto data = load_sequences(a.data);
    const json fits = load_json(a.fit);
    if (!fits.is_array()) {
        throw UsageError(a.fit + ": expected the array written by 'hawkes fit'");
    }
    const StabilizationConfig config{a.epsilon, a.resolution, parse_mu_rule(a.mu_rule)};
    load("stabilization flags", [&] {
        validate(config);
        return 0;
    });

    json rows = json::array();
    for (const auto& entry : fits) {
        FitResult fit;
        std::size_t index = 0;
        load(a.fit, [&] {
            index = entry.at("sequence").get<std::size_t>();
            fit.model_last_iterate = io::model_from_json(entry.at("model"));
            fit.train_end = entry.at("train_end").get<double>();
            return 0;
        });
        if (index >= data.size()) {
            throw UsageError(a.fit + ": sequence index " + std::to_string(index) + " not present in " + a.data);
        }
        const StabilizedResult stab = stabilize_fit(fit, data[index], config);
        rows.push_back({{"sequence", index},
                        {"train_end", fit.train_end},
                        {"model", io::model_to_json(stab.selected)},
                        {"loglik", stab.selected_loglik},
                        {"original_loglik", stab.original_loglik},
                        {"strict_improvement", stab.strict_improvement},
                        {"mu_epsilon", stab.mu_epsilon},
                        {"branching_ratio", branching_ratio(stab.selected.kernel)},
                        {"n_candidates", stab.candidates.size()},
                        {"dropped_candidates", stab.dropped_candidates}});
    }
    emit(a.out, rows.dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
    std::string model, data, window, out;
};

int run_eval(const EvalArgs& a) {
    const auto data = load_sequences(a.data);
    const json doc = load_json(a.model);

    // Either one model for every sequence or the per-sequence output of fit/stabilize.
    std::vector<std::optional<HawkesModel>> models(data.size());
    load(a.model, [&] {
        if (doc.is_object()) {
            const HawkesModel m = io::model_from_json(doc);
            for (auto& slot : models) slot = m;
        } else if (doc.is_array()) {
            for (const auto& entry : doc) {
                const auto index = entry.at("sequence").get<std::size_t>();
                if (index >= data.size()) {
                    throw HawkesError(ErrorCode::parse_error, "sequence index " + std::to_string(index) + " not in data");
                }
                models[index] = io::model_from_json(entry.at("model"));
            }
        } else {
            throw HawkesError(ErrorCode::parse_error, "expected a model object or an array of fit results");
        }
        return 0;
    });

    std::optional<std::pair<double, double>> window;
    if (!a.window.empty()) {
        const auto comma = a.window.find(',');
        if (comma == std::string::npos) {
            throw UsageError("--window expects 'a,b'");
        }
        try {
            window = std::make_pair(std::stod(a.window.substr(0, comma)), std::stod(a.window.substr(comma + 1)));
        } catch (const std::exception&) {
            throw UsageError("--window expects two numbers 'a,b'");
        }
    }

    json rows = json::array();
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!models[i]) {
            continue;
        }
        const double t_a = window ? window->first : 0.0;
        const double t_b = window ? window->second : data[i].horizon();
        if (!(t_a >= 0.0 && t_a < t_b && t_b <= data[i].horizon())) {
            throw UsageError("--window must satisfy 0 <= a < b <= T for sequence " + std::to_string(i));
        }
        const WindowLikelihood evaluator(data[i], t_a, t_b);
        const LoglikBreakdown ll = evaluator(*models[i]);
        rows.push_back({{"sequence", i},
                        {"window", {t_a, t_b}},
                        {"loglik", ll.total},
                        {"sum_log_intensity", ll.sum_log_intensity},
                        {"compensator", ll.compensator},
                        {"n_events", ll.n_events_in_window}});
    }
    emit(a.out, rows.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------- study

struct StudyArgs {
    std::string config, out_dir;
    int jobs{-1};
};

template <class T>
std::vector<T> list_field(const json& doc, const char* key, std::vector<T> fallback) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return fallback;
    }
    if (!it->is_array()) {
        throw UsageError(std::string("config field '") + key + "' must be an array");
    }
    return it->get<std::vector<T>>();
}

std::vector<Family> family_list(const json& doc, const char* key) {
    std::vector<Family> out;
    for (const auto& name : list_field<std::string>(doc, key, {"EXP", "PWL", "RAY", "GSS", "QEXP"})) {
        out.push_back(load(key, [&] { return parse_family(name); }));
    }
    return out;
}

int run_study(const StudyArgs& a) {
    const json doc = load_json(a.config);
    if (!doc.is_object()) {
        throw UsageError(a.config + ": study config must be an object");
    }
    static const std::set<std::string> known{"generator_families", "fitter_families", "horizons", "epsilons",
                                             "resolutions", "sequences_per_cell", "base_seed", "train_fraction",
                                             "mu_rule", "max_iters", "train_test"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.contains(key)) {
            throw UsageError(a.config + ": unknown config field '" + key + "'");
        }
    }

    StudyConfig config;
    bool train_test = false;
    load(a.config, [&] {
        config.generator_families = family_list(doc, "generator_families");
        config.fitter_families = family_list(doc, "fitter_families");
        config.horizons = list_field<double>(doc, "horizons", {100.0});
        config.epsilons = list_field<double>(doc, "epsilons", {0.1});
        config.resolutions = list_field<int>(doc, "resolutions", {6});
        config.sequences_per_cell = doc.value("sequences_per_cell", std::size_t{50});
        config.base_seed = doc.value("base_seed", std::uint64_t{0});
        config.train_fraction = doc.value("train_fraction", 0.7);
        config.mu_rule = parse_mu_rule(doc.value("mu_rule", std::string("as_printed")));
        config.fit.optim.max_iters = doc.value("max_iters", std::size_t{2000});
        train_test = doc.value("train_test", false);
        validate(config);
        return 0;
    });
    config.jobs = a.jobs >= 0 ? a.jobs : default_jobs();

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) {
        throw UsageError("cannot create " + a.out_dir + ": " + ec.message());
    }

    const StudyResult result = run_success_rate_study(config);
    io::write_text_atomic(fs::path(a.out_dir) / "success_rate.csv", success_rate_csv(result));
    io::write_text_atomic(fs::path(a.out_dir) / "records.csv", records_csv(result));

    if (train_test) {
        std::ostringstream all;
        bool header = true;
        for (std::size_t t = 0; t < config.horizons.size(); ++t) {
            const auto bench = generate_benchmark(config.base_seed, config.horizons[t], config.sequences_per_cell,
                                                  config.generator_families, config.jobs);
            for (Family gen : config.generator_families) {
                std::vector<EventSequence> dataset;
                for (const auto& b : bench) {
                    if (b.generator == gen) dataset.push_back(b.events);
                }
                TrainTestConfig tt;
                tt.train_fraction = config.train_fraction < 1.0 ? config.train_fraction : 0.7;
                tt.stabilization = {config.epsilons.front(), config.resolutions.front(), config.mu_rule};
                tt.fit = config.fit;
                tt.jobs = config.jobs;
                const TrainTestSummary s = run_train_test_eval(dataset, tt);
                if (header) {
                    all << "generator,T,n_sequences,n_too_short,n_no_test_events,n_failed,mean_stabilized,mean_last_iterate\n";
                    header = false;
                }
                all << to_string(gen) << ',' << format_double(config.horizons[t]) << ',' << s.rows.size() << ','
                    << s.n_too_short << ',' << s.n_no_test_events << ',' << s.n_failed << ','
                    << format_double(s.mean_stabilized) << ',' << format_double(s.mean_last_iterate) << '\n';
            }
        }
        io::write_text_atomic(fs::path(a.out_dir) / "train_test.csv", all.str());
    }
    std::cout << "wrote " << result.cells.size() << " cells to " << a.out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric Hawkes process fitting with closed-form stabilization"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Simulate sequences by Ogata thinning");
    s->add_option("--model", sim.model, "Model file")->required();
    s->add_option("--T", sim.horizon, "Horizon")->required();
    s->add_option("--n", sim.n, "Number of sequences");
    s->add_option("--seed", sim.seed, "Base seed");
    s->add_option("--out", sim.out, "Output sequence file (stdout if omitted)");

    FitArgs fit;
    auto* f = app.add_subcommand("fit", "Maximum-likelihood fit per sequence");
    f->add_option("--family", fit.family, "EXP, PWL, RAY, GSS or QEXP")->required();
    f->add_option("--data", fit.data, "Sequence file")->required();
    f->add_option("--train-fraction", fit.train_fraction, "Fit on [0, f T]");
    f->add_option("--init", fit.init, "Initial model file");
    f->add_option("--method", fit.method, "nelder_mead or gradient_ascent");
    f->add_option("--max-iters", fit.max_iters, "Optimizer iteration cap");
    f->add_option("--out", fit.out, "Output file (stdout if omitted)");

    StabilizeArgs stab;
    auto* st = app.add_subcommand("stabilize", "Stabilize fitted last iterates");
    st->add_option("--fit", stab.fit, "Output of 'hawkes fit'")->required();
    st->add_option("--data", stab.data, "Sequence file used for the fit")->required();
    st->add_option("--epsilon", stab.epsilon, "Stability margin");
    st->add_option("--M", stab.resolution, "Stabilization resolution");
    st->add_option("--mu-rule", stab.mu_rule, "as_printed or stationary");
    st->add_option("--out", stab.out, "Output file (stdout if omitted)");

    EvalArgs ev;
    auto* e = app.add_subcommand("eval", "Windowed log-likelihood");
    e->add_option("--model", ev.model, "Model file or fit/stabilize output")->required();
    e->add_option("--data", ev.data, "Sequence file")->required();
    e->add_option("--window", ev.window, "a,b (default 0,T)");
    e->add_option("--out", ev.out, "Output file (stdout if omitted)");

    StudyArgs study;
    auto* sd = app.add_subcommand("study", "Success-rate grid and train/test protocol");
    sd->add_option("--config", study.config, "Study config (JSON)")->required();
    sd->add_option("--out-dir", study.out_dir, "Directory for CSV outputs")->required();
    sd->add_option("--jobs", study.jobs, "Worker threads (default: $HAWKES_JOBS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& h) {
        return app.exit(h);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    try {
        if (*s) return run_simulate(sim);
        if (*f) return run_fit(fit);
        if (*st) return run_stabilize(stab);
        if (*e) return run_eval(ev);
        if (*sd) return run_study(study);
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 2;
}
