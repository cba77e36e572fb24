#include "qcs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qcs/metrics.hpp"
#include "svg.hpp"
#include "text_io.hpp"

namespace qcs {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool protocol_uses_sigma(Protocol p) { return p == Protocol::Rodeo || p == Protocol::Qite; }

}  // namespace

Signal sample_signal(const ForestModel& model, Rng& rng) {
    const Signal& proto = rng.uniform01() < model.class_prior ? model.young : model.mature;
    Signal y(proto.size());
    for (std::size_t i = 0; i < proto.size(); ++i)
        y[i] = std::clamp(proto[i] + rng.normal(0.0, model.noise_std), 0.0, 1.0);
    return y;
}

TrainingSet ideal_training_set(const ForestModel& model, double midpoint) {
    return {{model.young, model.mature}, midpoint};
}

std::vector<TrainingSet> build_training_sets(const ForestModel& model, int count, int size,
                                             double midpoint, Rng& rng) {
    require(count >= 1 && size >= 1, "training set count and size must be positive");
    std::vector<TrainingSet> sets;
    sets.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        TrainingSet set;
        set.midpoint = midpoint;
        set.signals.reserve(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) set.signals.push_back(sample_signal(model, rng));
        sets.push_back(std::move(set));
    }
    return sets;
}

std::string to_string(Protocol p) {
    switch (p) {
        case Protocol::Pixel: return "pixel";
        case Protocol::Decomposition: return "decomposition";
        case Protocol::Rodeo: return "rodeo";
        case Protocol::Qite: return "qite";
    }
    throw std::invalid_argument("unknown protocol");
}

Protocol protocol_from_string(const std::string& name) {
    if (name == "pixel") return Protocol::Pixel;
    if (name == "decomposition") return Protocol::Decomposition;
    if (name == "rodeo") return Protocol::Rodeo;
    if (name == "qite") return Protocol::Qite;
    throw std::invalid_argument("unknown protocol: " + name);
}

MidpointPolicy midpoint_policy_from_string(const std::string& text) {
    if (text == "optimal") return {true, 0.5};
    if (text.rfind("fixed:", 0) == 0) {
        std::size_t used = 0;
        double p = std::stod(text.substr(6), &used);
        require(used == text.size() - 6, "bad midpoint value: " + text);
        require(p > 0.0 && p < 1.0, "midpoint outside (0, 1)");
        return {false, p};
    }
    throw std::invalid_argument("midpoint must be 'optimal' or 'fixed:<p>': " + text);
}

std::string to_string(const MidpointPolicy& policy) {
    return policy.optimal ? "optimal" : "fixed:" + detail::fmt_g17(policy.fixed_p);
}

double ExperimentConfig::resolved_sigma() const {
    if (sigma > 0.0) return sigma;
    if (protocol == Protocol::Rodeo) return std::numbers::pi;
    if (protocol == Protocol::Qite) return 0.5;
    return 0.0;
}

void validate(const ExperimentConfig& cfg) {
    const std::size_t n = cfg.model.young.size();
    require(n >= 1 && n <= 24, "prototype length out of range");
    require(cfg.model.mature.size() == n, "class prototypes differ in length");
    for (double v : cfg.model.young) require(v >= 0.0 && v <= 1.0, "prototype pixel outside [0, 1]");
    for (double v : cfg.model.mature) require(v >= 0.0 && v <= 1.0, "prototype pixel outside [0, 1]");
    require(cfg.model.noise_std >= 0.0, "noise level must be non-negative");
    require(cfg.model.class_prior >= 0.0 && cfg.model.class_prior <= 1.0,
            "class prior outside [0, 1]");
    require(cfg.m_min >= 0, "m_min must be non-negative");
    require(cfg.m_max >= cfg.m_min, "m_max below m_min");
    if (cfg.matrix_class == MatrixClass::SinglePixel ||
        cfg.matrix_class == MatrixClass::ColumnSupportedUniform)
        require(cfg.m_max <= static_cast<int>(n), "m_max exceeds the pixel count for this class");
    require(cfg.sigma >= 0.0, "sigma must be non-negative");
    if (!cfg.midpoint.optimal)
        require(cfg.midpoint.fixed_p > 0.0 && cfg.midpoint.fixed_p < 1.0,
                "midpoint outside (0, 1)");
    require(cfg.trials_per_pair >= 1, "trials_per_pair must be positive");
    require(cfg.num_pairs >= 1, "num_pairs must be positive");
    require(cfg.training_set_size >= 1, "training_set_size must be positive");
    require(cfg.num_training_sets >= 1, "num_training_sets must be positive");
    require(cfg.attempts_per_trial >= 1, "attempts_per_trial must be positive");
    if (cfg.training_source != "ideal") {
        require(cfg.training_source.rfind("sampled:", 0) == 0,
                "training_source must be 'ideal' or 'sampled:<k>'");
        std::size_t used = 0;
        int k = std::stoi(cfg.training_source.substr(8), &used);
        require(used == cfg.training_source.size() - 8 && k >= 0 && k < cfg.num_training_sets,
                "training_source index out of range");
    }
}

namespace {
void parse_config_fields(const nlohmann::json& j, ExperimentConfig& cfg) {
    for (const auto& [key, value] : j.items()) {
        if (key == "protocol") cfg.protocol = protocol_from_string(value.get<std::string>());
        else if (key == "matrix_class") cfg.matrix_class = matrix_class_from_string(value.get<std::string>());
        else if (key == "m_min") cfg.m_min = value.get<int>();
        else if (key == "m_max") cfg.m_max = value.get<int>();
        else if (key == "sigma") cfg.sigma = value.get<double>();
        else if (key == "midpoint") cfg.midpoint = midpoint_policy_from_string(value.get<std::string>());
        else if (key == "trials_per_pair") cfg.trials_per_pair = value.get<int>();
        else if (key == "num_pairs") cfg.num_pairs = value.get<int>();
        else if (key == "training_set_size") cfg.training_set_size = value.get<int>();
        else if (key == "num_training_sets") cfg.num_training_sets = value.get<int>();
        else if (key == "training_source") cfg.training_source = value.get<std::string>();
        else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
        else if (key == "attempts_per_trial") cfg.attempts_per_trial = value.get<int>();
        else if (key == "young_prototype") cfg.model.young = value.get<Signal>();
        else if (key == "mature_prototype") cfg.model.mature = value.get<Signal>();
        else if (key == "noise_std") cfg.model.noise_std = value.get<double>();
        else if (key == "class_prior") cfg.model.class_prior = value.get<double>();
        else throw std::invalid_argument("unknown config key: " + key);
    }
}
}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    // malformed JSON and wrongly-typed fields are config errors, so they must
    // surface as std::invalid_argument like every other validation failure
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "config must be a JSON object");
    ExperimentConfig cfg;
    try {
        parse_config_fields(j, cfg);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config field has the wrong type: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["protocol"] = to_string(cfg.protocol);
    j["matrix_class"] = to_string(cfg.matrix_class);
    j["m_min"] = cfg.m_min;
    j["m_max"] = cfg.m_max;
    j["sigma"] = cfg.sigma;
    j["midpoint"] = to_string(cfg.midpoint);
    j["trials_per_pair"] = cfg.trials_per_pair;
    j["num_pairs"] = cfg.num_pairs;
    j["training_set_size"] = cfg.training_set_size;
    j["num_training_sets"] = cfg.num_training_sets;
    j["training_source"] = cfg.training_source;
    j["master_seed"] = cfg.master_seed;
    j["attempts_per_trial"] = cfg.attempts_per_trial;
    j["young_prototype"] = cfg.model.young;
    j["mature_prototype"] = cfg.model.mature;
    j["noise_std"] = cfg.model.noise_std;
    j["class_prior"] = cfg.model.class_prior;
    return j.dump(2);
}

PairData draw_pair(const ExperimentConfig& cfg, int pair_id) {
    PairData pair;
    Rng signal_rng(derive_seed(cfg.master_seed, hash_tag("signal"),
                               static_cast<std::uint64_t>(pair_id)));
    pair.y = sample_signal(cfg.model, signal_rng);
    const int n = static_cast<int>(pair.y.size());
    const int mm = cfg.m_max;

    Rng mrng(derive_seed(cfg.master_seed, hash_tag("matrix"),
                         static_cast<std::uint64_t>(pair_id),
                         static_cast<std::uint64_t>(cfg.matrix_class)));
    switch (cfg.matrix_class) {
        case MatrixClass::BinaryDense:
        case MatrixClass::BinarySparse: {
            const double density = cfg.matrix_class == MatrixClass::BinaryDense ? 0.5 : 0.2;
            pair.master.setZero(mm, n);
            for (int i = 0; i < mm; ++i) {
                // each row drawn until non-zero, so every leading slice is a
                // matrix its class could have produced
                for (int tries = 0;; ++tries) {
                    bool any = false;
                    for (int j = 0; j < n; ++j) {
                        pair.master(i, j) = mrng.bernoulli(density) ? 1.0 : 0.0;
                        any = any || pair.master(i, j) != 0.0;
                    }
                    if (any) break;
                    if (tries >= 100)
                        throw std::invalid_argument("sensing row kept drawing all-zero");
                }
            }
            break;
        }
        case MatrixClass::SinglePixel: {
            pair.master.setZero(mm, n);
            std::vector<int> cols(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
            for (int i = 0; i < mm; ++i) {
                int j = i + static_cast<int>(mrng.below(static_cast<std::uint64_t>(n - i)));
                std::swap(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
                pair.master(i, cols[static_cast<std::size_t>(i)]) = 1.0;
            }
            break;
        }
        case MatrixClass::ColumnSupportedUniform: {
            std::vector<int> order(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
            for (int i = 0; i < mm; ++i) {
                int j = i + static_cast<int>(mrng.below(static_cast<std::uint64_t>(n - i)));
                std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
            }
            order.resize(static_cast<std::size_t>(mm));
            pair.support_order = std::move(order);
            // fixed-width entry table: slicing in either dimension keeps the
            // same draws
            pair.master.setZero(mm, n);
            for (int i = 0; i < mm; ++i)
                for (int k = 0; k < n; ++k) pair.master(i, k) = mrng.uniform01();
            break;
        }
    }
    return pair;
}

SensingMatrix slice_matrix(const PairData& pair, MatrixClass cls, int m, std::uint64_t seed) {
    const int n = static_cast<int>(pair.y.size());
    require(m >= 0 && m <= static_cast<int>(pair.master.rows()), "slice rows out of range");
    SensingMatrix a;
    a.cls = cls;
    a.seed = seed;
    if (cls == MatrixClass::ColumnSupportedUniform) {
        a.entries = Eigen::MatrixXd::Zero(m, n);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                a.entries(i, pair.support_order[static_cast<std::size_t>(k)]) = pair.master(i, k);
    } else {
        a.entries = pair.master.topRows(m);
    }
    return a;
}

namespace {

struct TrialContext {
    const TrainingSet* training = nullptr;
    const SensingMatrix* a = nullptr;
    const Eigen::VectorXd* x = nullptr;
    const Signal* y = nullptr;
    const DecompositionFactors* factors = nullptr;
    const Syndrome* syndrome = nullptr;
    std::string preparation_error;  // non-empty: every trial fails with it
};

TrialRecord run_trial_impl(const TrialContext& ctx, const ExperimentConfig& cfg, Rng& rng) {
    TrialRecord rec;
    rec.protocol = cfg.protocol;
    rec.matrix_class = ctx.a->cls;
    rec.m = ctx.a->m();
    rec.sigma = protocol_uses_sigma(cfg.protocol) ? cfg.resolved_sigma() : 0.0;
    rec.p = ctx.training->midpoint;
    try {
        if (!ctx.preparation_error.empty()) throw std::runtime_error(ctx.preparation_error);
        TrainedMachine machine = quantum_average_direct(*ctx.training);
        ProjectionOutcome out;
        if (rec.m == 0) {
            out.succeeded = true;
            out.state = machine.state;
            rec.attempts = 1;
        } else {
            for (int k = 1; k <= cfg.attempts_per_trial; ++k) {
                switch (cfg.protocol) {
                    case Protocol::Pixel:
                        out = pixel_postselect_attempt(machine, *ctx.a, *ctx.x, rng);
                        break;
                    case Protocol::Decomposition:
                        out = project_decomposition_attempt(machine, *ctx.factors, *ctx.syndrome,
                                                            rng);
                        break;
                    case Protocol::Rodeo:
                        out = project_rodeo_attempt(machine, ctx.a->entries, *ctx.x,
                                                    cfg.resolved_sigma(), rng);
                        break;
                    case Protocol::Qite:
                        out = gaussian_project(machine, ctx.a->entries, *ctx.x,
                                               cfg.resolved_sigma());
                        break;
                }
                rec.attempts = k;
                if (out.succeeded || cfg.protocol == Protocol::Qite) break;  // qite is deterministic
            }
        }
        rec.succeeded = out.succeeded;
        if (out.succeeded) {
            const std::size_t z = out.state->measure_all(rng);
            rec.sampled_bits = bitstring(z, out.state->num_qubits());
            rec.rll = rll(*ctx.y, z, ctx.training->midpoint);
        } else {
            rec.rll = kNan;
        }
    } catch (const std::exception&) {
        rec.succeeded = false;
        rec.sampled_bits.clear();
        rec.rll = kNan;
    }
    return rec;
}

TrialContext make_context(const TrainingSet& training, const SensingMatrix& a,
                          const Eigen::VectorXd& x, const Signal& y, Protocol protocol,
                          std::optional<DecompositionFactors>& factors_slot,
                          std::optional<Syndrome>& syndrome_slot) {
    TrialContext ctx;
    ctx.training = &training;
    ctx.a = &a;
    ctx.x = &x;
    ctx.y = &y;
    if (protocol == Protocol::Decomposition && a.m() > 0) {
        try {
            factors_slot = decompose_sensing_matrix(a.entries);
            syndrome_slot = compute_syndrome(*factors_slot, x);
            ctx.factors = &*factors_slot;
            ctx.syndrome = &*syndrome_slot;
        } catch (const std::exception& e) {
            ctx.preparation_error = e.what();
        }
    }
    return ctx;
}

}  // namespace

TrialRecord run_trial(const TrainingSet& training, const SensingMatrix& a,
                      const Eigen::VectorXd& x, const Signal& y, const ExperimentConfig& cfg,
                      Rng& rng) {
    std::optional<DecompositionFactors> factors;
    std::optional<Syndrome> syndrome;
    TrialContext ctx = make_context(training, a, x, y, cfg.protocol, factors, syndrome);
    return run_trial_impl(ctx, cfg, rng);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
    validate(cfg);
    ExperimentResult res;
    res.config = cfg;

    // Training material and entropy curves (the curves cover every set so a
    // run documents the midpoint landscape it chose from).
    TrainingSet ideal = ideal_training_set(cfg.model, 0.5);
    Rng train_rng(derive_seed(cfg.master_seed, hash_tag("training")));
    std::vector<TrainingSet> sampled = build_training_sets(
        cfg.model, cfg.num_training_sets, cfg.training_set_size, 0.5, train_rng);

    res.entropy_curves.push_back({0, optimize_midpoint(ideal.signals).curve});
    for (int s = 0; s < cfg.num_training_sets; ++s)
        res.entropy_curves.push_back(
            {s + 1, optimize_midpoint(sampled[static_cast<std::size_t>(s)].signals).curve});

    const std::vector<Signal>* source = &ideal.signals;
    if (cfg.training_source != "ideal") {
        const int k = std::stoi(cfg.training_source.substr(8));
        source = &sampled[static_cast<std::size_t>(k)].signals;
    }
    const double p =
        cfg.midpoint.optimal ? optimize_midpoint(*source).best_p : cfg.midpoint.fixed_p;
    res.midpoint = p;
    const TrainingSet training{*source, p};

    std::vector<PairData> pairs;
    pairs.reserve(static_cast<std::size_t>(cfg.num_pairs));
    for (int pair_id = 0; pair_id < cfg.num_pairs; ++pair_id)
        pairs.push_back(draw_pair(cfg, pair_id));

    const int num_m = cfg.m_max - cfg.m_min + 1;
    const std::size_t per_cell = static_cast<std::size_t>(cfg.trials_per_pair);
    res.trials.resize(static_cast<std::size_t>(cfg.num_pairs) * static_cast<std::size_t>(num_m) *
                      per_cell);

    struct Task {
        int pair_id;
        int m;
        std::size_t offset;
    };
    std::vector<Task> tasks;
    tasks.reserve(static_cast<std::size_t>(cfg.num_pairs) * static_cast<std::size_t>(num_m));
    for (int pair_id = 0; pair_id < cfg.num_pairs; ++pair_id)
        for (int mi = 0; mi < num_m; ++mi)
            tasks.push_back({pair_id, cfg.m_min + mi,
                             (static_cast<std::size_t>(pair_id) * static_cast<std::size_t>(num_m) +
                              static_cast<std::size_t>(mi)) *
                                 per_cell});

    std::atomic<std::size_t> next_task{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t ti = next_task.fetch_add(1);
            if (ti >= tasks.size()) return;
            const Task& task = tasks[ti];
            const PairData& pair = pairs[static_cast<std::size_t>(task.pair_id)];
            const std::uint64_t matrix_seed =
                derive_seed(cfg.master_seed, hash_tag("matrix"),
                            static_cast<std::uint64_t>(task.pair_id),
                            static_cast<std::uint64_t>(cfg.matrix_class));
            SensingMatrix a = slice_matrix(pair, cfg.matrix_class, task.m, matrix_seed);
            Eigen::VectorXd x = apply_sensing(a, pair.y);
            std::optional<DecompositionFactors> factors;
            std::optional<Syndrome> syndrome;
            TrialContext ctx =
                make_context(training, a, x, pair.y, cfg.protocol, factors, syndrome);
            for (int t = 0; t < cfg.trials_per_pair; ++t) {
                Rng rng(derive_seed(cfg.master_seed, hash_tag("trial"),
                                    static_cast<std::uint64_t>(task.pair_id),
                                    static_cast<std::uint64_t>(t),
                                    static_cast<std::uint64_t>(cfg.protocol)));
                TrialRecord rec = run_trial_impl(ctx, cfg, rng);
                rec.pair_id = task.pair_id;
                rec.trial_id = t;
                res.trials[task.offset + static_cast<std::size_t>(t)] = rec;
            }
        }
    };

    int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nthreads = std::clamp(nthreads, 1, static_cast<int>(tasks.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> crew;
        crew.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) crew.emplace_back(worker);
        for (auto& th : crew) th.join();
    }
    return res;
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return kNan;
    std::sort(v.begin(), v.end());
    q = std::clamp(q, 0.0, 1.0);
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (static_cast<double>(lo) == pos) return v[lo];
    const double t = pos - static_cast<double>(lo);
    return (1.0 - t) * v[lo] + t * v[lo + 1];
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& trials) {
    struct PairAgg {
        std::vector<double> rlls;
        int failures = 0;
    };
    std::map<std::tuple<int, int, int>, std::map<int, PairAgg>> groups;
    for (const auto& rec : trials) {
        auto& agg = groups[{static_cast<int>(rec.protocol), static_cast<int>(rec.matrix_class),
                            rec.m}][rec.pair_id];
        if (rec.succeeded)
            agg.rlls.push_back(rec.rll);
        else
            ++agg.failures;
    }
    std::vector<SummaryRow> rows;
    for (auto& [key, per_pair] : groups) {
        SummaryRow row;
        row.protocol = static_cast<Protocol>(std::get<0>(key));
        row.matrix_class = static_cast<MatrixClass>(std::get<1>(key));
        row.m = std::get<2>(key);
        row.pairs = static_cast<int>(per_pair.size());
        std::vector<double> medians, failures;
        for (auto& [pair_id, agg] : per_pair) {
            if (!agg.rlls.empty()) medians.push_back(quantile(agg.rlls, 0.5));
            failures.push_back(static_cast<double>(agg.failures));
        }
        row.q1_median_rll = quantile(medians, 0.25);
        row.median_median_rll = quantile(medians, 0.5);
        row.q3_median_rll = quantile(medians, 0.75);
        row.q1_failures = quantile(failures, 0.25);
        row.median_failures = quantile(failures, 0.5);
        row.q3_failures = quantile(failures, 0.75);
        rows.push_back(row);
    }
    return rows;
}

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& trials) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "pair_id,trial_id,protocol,matrix_class,m,sigma,p,succeeded,attempts,sampled_bits,rll\n";
    for (const auto& rec : trials) {
        out << rec.pair_id << ',' << rec.trial_id << ',' << to_string(rec.protocol) << ','
            << to_string(rec.matrix_class) << ',' << rec.m << ',' << detail::fmt_g17(rec.sigma)
            << ',' << detail::fmt_g17(rec.p) << ',' << (rec.succeeded ? 1 : 0) << ','
            << rec.attempts << ',';
        if (rec.succeeded)
            out << rec.sampled_bits << ',' << detail::fmt_g17(rec.rll);
        else
            out << ',';
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<TrialRecord> read_trials_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line != "pair_id,trial_id,protocol,matrix_class,m,sigma,p,succeeded,attempts,sampled_bits,rll")
        throw std::runtime_error("bad trials header in " + path);
    std::vector<TrialRecord> trials;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = detail::split_csv(line);
        if (cells.size() != 11) throw std::runtime_error("bad trials row in " + path);
        TrialRecord rec;
        rec.pair_id = std::stoi(cells[0]);
        rec.trial_id = std::stoi(cells[1]);
        rec.protocol = protocol_from_string(cells[2]);
        rec.matrix_class = matrix_class_from_string(cells[3]);
        rec.m = std::stoi(cells[4]);
        rec.sigma = std::stod(cells[5]);
        rec.p = std::stod(cells[6]);
        rec.succeeded = cells[7] == "1";
        rec.attempts = std::stoi(cells[8]);
        rec.sampled_bits = cells[9];
        rec.rll = cells[10].empty() ? kNan : std::stod(cells[10]);
        trials.push_back(std::move(rec));
    }
    return trials;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "protocol,matrix_class,m,pairs,q1_median_rll,median_median_rll,q3_median_rll,"
           "q1_failures,median_failures,q3_failures\n";
    for (const auto& row : rows) {
        out << to_string(row.protocol) << ',' << to_string(row.matrix_class) << ',' << row.m
            << ',' << row.pairs << ',' << detail::fmt_g17(row.q1_median_rll) << ','
            << detail::fmt_g17(row.median_median_rll) << ',' << detail::fmt_g17(row.q3_median_rll)
            << ',' << detail::fmt_g17(row.q1_failures) << ','
            << detail::fmt_g17(row.median_failures) << ',' << detail::fmt_g17(row.q3_failures)
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_entropy_csv(const std::string& path, const std::vector<EntropyCurve>& curves) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "training_set_id,p,entropy\n";
    for (const auto& curve : curves)
        for (auto [p, h] : curve.points)
            out << curve.set_id << ',' << detail::fmt_g17(p) << ',' << detail::fmt_g17(h) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

void write_trial_plots(const std::string& out_dir, const std::vector<SummaryRow>& rows) {
    std::map<std::pair<int, int>, std::vector<SummaryRow>> by_group;
    for (const auto& row : rows)
        by_group[{static_cast<int>(row.protocol), static_cast<int>(row.matrix_class)}]
            .push_back(row);

    detail::SvgChart rll_chart("Median reconstruction quality", "measurement rows m",
                               "median of per-pair median RLL");
    detail::SvgChart fail_chart("Projection failures", "measurement rows m",
                                "median failures per pair");
    bool first = true;
    for (auto& [key, group] : by_group) {
        std::sort(group.begin(), group.end(),
                  [](const SummaryRow& a, const SummaryRow& b) { return a.m < b.m; });
        const std::string name = to_string(static_cast<Protocol>(key.first)) + " / " +
                                 to_string(static_cast<MatrixClass>(key.second));
        std::vector<std::pair<double, double>> med, q1, q3, fmed, fq1, fq3;
        for (const auto& row : group) {
            med.emplace_back(row.m, row.median_median_rll);
            q1.emplace_back(row.m, row.q1_median_rll);
            q3.emplace_back(row.m, row.q3_median_rll);
            fmed.emplace_back(row.m, row.median_failures);
            fq1.emplace_back(row.m, row.q1_failures);
            fq3.emplace_back(row.m, row.q3_failures);
        }
        if (first) {  // one quartile band keeps the chart readable
            rll_chart.add_band(q1, q3);
            fail_chart.add_band(fq1, fq3);
            first = false;
        }
        rll_chart.add_series(name, med);
        fail_chart.add_series(name, fmed);
    }
    rll_chart.write(out_dir + "/rll_vs_m.svg");
    fail_chart.write(out_dir + "/failures_vs_m.svg");
}

}  // namespace

void write_report(const std::string& out_dir, const ExperimentResult& result) {
    std::filesystem::create_directories(out_dir);
    write_trials_csv(out_dir + "/trials.csv", result.trials);
    const auto rows = summarize(result.trials);
    write_summary_csv(out_dir + "/summary.csv", rows);
    write_entropy_csv(out_dir + "/entropy.csv", result.entropy_curves);
    {
        std::ofstream out(out_dir + "/config.json");
        if (!out) throw std::runtime_error("cannot open for writing: " + out_dir + "/config.json");
        out << config_to_json(result.config) << '\n';
    }
    write_trial_plots(out_dir, rows);

    detail::SvgChart entropy_chart("Machine entropy across midpoints", "midpoint p",
                                   "distribution entropy (nats)");
    for (const auto& curve : result.entropy_curves)
        entropy_chart.add_series(curve.set_id == 0 ? "ideal" : "set " + std::to_string(curve.set_id),
                                 curve.points);
    entropy_chart.write(out_dir + "/entropy_vs_p.svg");
}

void write_report_from_trials(const std::string& out_dir,
                              const std::vector<TrialRecord>& trials) {
    std::filesystem::create_directories(out_dir);
    const auto rows = summarize(trials);
    write_summary_csv(out_dir + "/summary.csv", rows);
    write_trial_plots(out_dir, rows);
}

}  // namespace qcs
