#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qcs/experiment.hpp"
#include "text_io.hpp"

namespace {

using namespace qcs;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Options shared by the subcommands; unset CLI flags leave the config (file or
// default) untouched.
struct CommonOpts {
    std::optional<std::string> config_path;
    std::optional<std::string> protocol;
    std::optional<std::string> matrix_class;
    std::optional<int> m;
    std::optional<double> sigma;
    std::optional<std::string> midpoint;
    std::optional<int> trials;
    std::optional<int> pairs;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "qcs_out";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file (mirrors the config schema)");
    cmd->add_option("--protocol", o.protocol, "pixel | decomposition | rodeo | qite");
    cmd->add_option("--matrix-class", o.matrix_class,
                    "binary_dense | binary_sparse | single_pixel | column_supported_uniform");
    cmd->add_option("--m", o.m, "number of measurement rows");
    cmd->add_option("--sigma", o.sigma, "filter width (0 selects the protocol default)");
    cmd->add_option("--midpoint", o.midpoint, "fixed:<p> | optimal");
    cmd->add_option("--trials", o.trials, "trials per pair");
    cmd->add_option("--pairs", o.pairs, "number of (signal, matrix) pairs");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

ExperimentConfig build_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (o.config_path) cfg = config_from_json(read_file(*o.config_path));
    if (o.protocol) cfg.protocol = protocol_from_string(*o.protocol);
    if (o.matrix_class) cfg.matrix_class = matrix_class_from_string(*o.matrix_class);
    if (o.sigma) cfg.sigma = *o.sigma;
    if (o.midpoint) cfg.midpoint = midpoint_policy_from_string(*o.midpoint);
    if (o.trials) cfg.trials_per_pair = *o.trials;
    if (o.pairs) cfg.num_pairs = *o.pairs;
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.m) {
        cfg.m_max = *o.m;
        if (cfg.m_min > cfg.m_max) cfg.m_min = cfg.m_max;
    }
    validate(cfg);
    return cfg;
}

// Resolves the training set and midpoint the way the harness does.
std::pair<TrainingSet, double> resolve_training(const ExperimentConfig& cfg) {
    double p = cfg.midpoint.optimal ? 0.5 : cfg.midpoint.fixed_p;
    TrainingSet set;
    if (cfg.training_source == "ideal") {
        set = ideal_training_set(cfg.model, p);
    } else {
        const int k = std::stoi(cfg.training_source.substr(std::string("sampled:").size()));
        Rng rng(derive_seed(cfg.master_seed, hash_tag("training")));
        auto sets = build_training_sets(cfg.model, cfg.num_training_sets,
                                        cfg.training_set_size, p, rng);
        set = sets.at(static_cast<std::size_t>(k));
    }
    if (cfg.midpoint.optimal) {
        MidpointScan scan = optimize_midpoint(set.signals);
        p = scan.best_p;
        set.midpoint = p;
    }
    return {set, p};
}

void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

int cmd_train(const CommonOpts& o) {
    ExperimentConfig cfg = build_config(o);
    auto [set, p] = resolve_training(cfg);
    TrainedMachine machine = quantum_average_direct(set);
    std::printf("signals: %zu\nmidpoint: %s\n", set.signals.size(),
                detail::fmt_g17(p).c_str());
    std::printf("herald_probability: %s\n", detail::fmt_g17(success_probability(set)).c_str());
    std::printf("nll: %s\n", detail::fmt_g17(nll(set, machine)).c_str());
    std::printf("distribution_entropy: %s\n",
                detail::fmt_g17(distribution_entropy(machine.state)).c_str());
    ensure_dir(o.out_dir);
    const std::string path = o.out_dir + "/machine.csv";
    std::ofstream out(path);
    out << "z,bits,amplitude\n";
    const auto& amps = machine.state.amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z)
        out << z << ',' << bitstring(z, machine.state.num_qubits()) << ','
            << detail::fmt_g17(amps[z].real()) << '\n';
    std::printf("machine: %s\n", path.c_str());
    return 0;
}

int cmd_sense(const CommonOpts& o) {
    ExperimentConfig cfg = build_config(o);
    const int m = o.m.value_or(cfg.m_max);
    const int n = static_cast<int>(cfg.model.young.size());
    SensingMatrix a = generate_matrix(cfg.matrix_class, m, n, cfg.master_seed);
    ensure_dir(o.out_dir);
    const std::string path = o.out_dir + "/matrix.csv";
    save_matrix_csv(path, a);
    std::printf("matrix: %s (%d x %d, %s)\n", path.c_str(), a.m(), a.n(),
                to_string(a.cls).c_str());
    return 0;
}

// Draws the trial ingredients the same way for `project` and `sample`.
struct TrialSetup {
    ExperimentConfig cfg;
    TrainingSet set;
    double p;
    TrainedMachine machine;
    SensingMatrix a;
    Signal y;
    Eigen::VectorXd x;
};

TrialSetup make_setup(const CommonOpts& o) {
    ExperimentConfig cfg = build_config(o);
    auto [set, p] = resolve_training(cfg);
    TrialSetup s{cfg, set, p, quantum_average_direct(set), {}, {}, {}};
    const int m = o.m.value_or(cfg.m_max);
    const int n = static_cast<int>(cfg.model.young.size());
    Rng srng(derive_seed(cfg.master_seed, hash_tag("signal"), 0));
    s.y = sample_signal(cfg.model, srng);
    s.a = generate_matrix(cfg.matrix_class, m, n, cfg.master_seed);
    s.x = apply_sensing(s.a, s.y);
    return s;
}

int cmd_project(const CommonOpts& o) {
    TrialSetup s = make_setup(o);
    Rng rng(derive_seed(s.cfg.master_seed, hash_tag("project")));
    const double sigma = s.cfg.resolved_sigma();
    auto attempt = [&]() -> ProjectionOutcome {
        switch (s.cfg.protocol) {
            case Protocol::Pixel: return pixel_postselect_attempt(s.machine, s.a, s.x, rng);
            case Protocol::Decomposition:
                return project_decomposition_attempt(s.machine, s.a.entries, s.x, rng);
            case Protocol::Rodeo:
                return project_rodeo_attempt(s.machine, s.a.entries, s.x, sigma, rng);
            case Protocol::Qite: return gaussian_project(s.machine, s.a.entries, s.x, sigma);
        }
        throw std::logic_error("unreachable");
    };
    ProjectionOutcome out = repeat_until_success(attempt, default_attempt_cap(s.a.m()));
    std::printf("succeeded: %d\nattempts: %d\n", out.succeeded ? 1 : 0, out.attempts_used);
    if (!out.succeeded && !out.failure_reason.empty())
        std::printf("reason: %s\n", out.failure_reason.c_str());
    if (s.cfg.protocol == Protocol::Decomposition) {
        ensure_dir(o.out_dir);
        const std::string path = o.out_dir + "/factors.json";
        std::ofstream f(path);
        f << factors_to_json(decompose_sensing_matrix(s.a.entries)) << '\n';
        std::printf("factors: %s\n", path.c_str());
    }
    return 0;
}

int cmd_sample(const CommonOpts& o) {
    TrialSetup s = make_setup(o);
    Rng rng(derive_seed(s.cfg.master_seed, hash_tag("sample")));
    TrialRecord rec = run_trial(s.set, s.a, s.x, s.y, s.cfg, rng);
    std::printf("succeeded: %d\nattempts: %d\n", rec.succeeded ? 1 : 0, rec.attempts);
    if (rec.succeeded) {
        std::printf("bits: %s\n", rec.sampled_bits.c_str());
        std::printf("rll: %s\n", detail::fmt_g17(rec.rll).c_str());
    }
    return 0;
}

int cmd_experiment(const CommonOpts& o) {
    ExperimentConfig cfg = build_config(o);
    if (o.m) cfg.m_max = *o.m;
    ExperimentResult result = run_experiment(cfg, o.threads);
    ensure_dir(o.out_dir);
    write_report(o.out_dir, result);
    std::printf("report: %s (%zu trials)\n", o.out_dir.c_str(), result.trials.size());
    return 0;
}

int cmd_report(const CommonOpts& o) {
    const std::string path = o.out_dir + "/trials.csv";
    auto trials = read_trials_csv(path);
    write_report_from_trials(o.out_dir, trials);
    std::printf("report rebuilt: %s (%zu trials)\n", o.out_dir.c_str(), trials.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Born-machine compressive imaging toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* train = app.add_subcommand("train", "prepare a machine and report its diagnostics");
    auto* sense = app.add_subcommand("sense", "draw a sensing matrix");
    auto* project = app.add_subcommand("project", "run one projection to the measured subspace");
    auto* sample = app.add_subcommand("sample", "project, then sample and score one image");
    auto* experiment = app.add_subcommand("experiment", "run the full Monte-Carlo sweep");
    auto* report = app.add_subcommand("report", "rebuild summary and plots from trials.csv");
    for (auto* cmd : {train, sense, project, sample, experiment, report})
        add_common(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (train->parsed()) return cmd_train(opts);
        if (sense->parsed()) return cmd_sense(opts);
        if (project->parsed()) return cmd_project(opts);
        if (sample->parsed()) return cmd_sample(opts);
        if (experiment->parsed()) return cmd_experiment(opts);
        if (report->parsed()) return cmd_report(opts);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
