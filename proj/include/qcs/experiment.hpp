#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qcs/projection.hpp"
#include "qcs/sensing.hpp"
#include "qcs/training.hpp"

namespace qcs {

// Two-class synthetic scene: six-pixel strips whose classes differ in which
// pixels run bright, observed through clamped Gaussian pixel noise.
struct ForestModel {
    Signal young{0.1, 0.2, 0.6, 0.5, 0.2, 0.1};
    Signal mature{0.4, 0.15, 0.1, 0.2, 0.7, 0.8};
    double noise_std = 0.1;
    double class_prior = 0.5;  // probability of drawing the young class
};

Signal sample_signal(const ForestModel& model, Rng& rng);

// The noiseless two-signal set (one prototype per class).
TrainingSet ideal_training_set(const ForestModel& model, double midpoint);

std::vector<TrainingSet> build_training_sets(const ForestModel& model, int count, int size,
                                             double midpoint, Rng& rng);

enum class Protocol { Pixel, Decomposition, Rodeo, Qite };

std::string to_string(Protocol p);
Protocol protocol_from_string(const std::string& name);

struct MidpointPolicy {
    bool optimal = false;  // grid-search the midpoint on the training signals
    double fixed_p = 0.5;
};

MidpointPolicy midpoint_policy_from_string(const std::string& text);  // "optimal" | "fixed:<p>"
std::string to_string(const MidpointPolicy& policy);

struct ExperimentConfig {
    Protocol protocol = Protocol::Qite;
    MatrixClass matrix_class = MatrixClass::BinaryDense;
    int m_min = 0;
    int m_max = 6;
    double sigma = 0.0;  // 0 selects the protocol default: 0.5 (qite), pi (rodeo)
    MidpointPolicy midpoint;
    int trials_per_pair = 1024;
    int num_pairs = 32;
    int training_set_size = 16;
    int num_training_sets = 3;
    std::string training_source = "ideal";  // "ideal" | "sampled:<k>"
    std::uint64_t master_seed = 1;
    int attempts_per_trial = 1;
    ForestModel model;

    double resolved_sigma() const;
};

void validate(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);  // unknown keys are rejected
std::string config_to_json(const ExperimentConfig& cfg);

struct TrialRecord {
    int pair_id = 0;
    int trial_id = 0;
    Protocol protocol = Protocol::Qite;
    MatrixClass matrix_class = MatrixClass::BinaryDense;
    int m = 0;
    double sigma = 0.0;
    double p = 0.5;
    bool succeeded = false;
    int attempts = 0;
    std::string sampled_bits;  // pixel-1-first, empty on failure
    double rll = 0.0;          // -inf allowed; meaningless on failure
};

// One signal and its nested family of sensing matrices: the m-row matrix is
// the master's leading m rows (column-supported: the first m columns of
// support_order unmasked), so growing m only adds constraints.
struct PairData {
    Signal y;
    Eigen::MatrixXd master;          // m_max x n
    std::vector<int> support_order;  // column_supported_uniform only
};

PairData draw_pair(const ExperimentConfig& cfg, int pair_id);
SensingMatrix slice_matrix(const PairData& pair, MatrixClass cls, int m, std::uint64_t seed);

// Retrains the machine, runs up to cfg.attempts_per_trial projection
// attempts, and on success samples one image and scores it against the true
// signal y. Any error is recorded as a failed trial rather than thrown.
TrialRecord run_trial(const TrainingSet& training, const SensingMatrix& a,
                      const Eigen::VectorXd& x, const Signal& y, const ExperimentConfig& cfg,
                      Rng& rng);

struct EntropyCurve {
    int set_id = 0;  // 0 = ideal set, 1.. = sampled sets
    std::vector<std::pair<double, double>> points;
};

struct ExperimentResult {
    ExperimentConfig config;
    double midpoint = 0.5;  // the resolved midpoint the machine used
    std::vector<TrialRecord> trials;
    std::vector<EntropyCurve> entropy_curves;
};

// The full sweep: num_pairs (signal, matrix) pairs x each m in
// [m_min, m_max] x trials_per_pair trials. Deterministic for a given config
// regardless of thread count (threads = 0 picks the hardware concurrency).
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 0);

struct SummaryRow {
    Protocol protocol;
    MatrixClass matrix_class;
    int m;
    int pairs;
    double q1_median_rll, median_median_rll, q3_median_rll;
    double q1_failures, median_failures, q3_failures;
};

// Per (protocol, class, m): quartiles across pairs of the per-pair median
// RLL (successful trials only; pairs with no success drop out of the RLL
// quartiles) and of the per-pair failure count.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& trials);

// Linear-interpolation quantile on a copy of v; q in [0, 1].
double quantile(std::vector<double> v, double q);

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& trials);
std::vector<TrialRecord> read_trials_csv(const std::string& path);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
void write_entropy_csv(const std::string& path, const std::vector<EntropyCurve>& curves);

// trials.csv + summary.csv + entropy.csv + config.json + SVG plots.
void write_report(const std::string& out_dir, const ExperimentResult& result);

// Re-aggregates summary.csv and the trial plots from an existing trials.csv.
void write_report_from_trials(const std::string& out_dir,
                              const std::vector<TrialRecord>& trials);

}  // namespace qcs
