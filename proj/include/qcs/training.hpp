#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qcs/encoding.hpp"
#include "qcs/rng.hpp"
#include "qcs/statevector.hpp"

namespace qcs {

struct TrainingSet {
    std::vector<Signal> signals;
    double midpoint = 0.5;
};

enum class MachineProvenance { Direct, Circuit };

// A Born machine over one qubit per pixel; sampling it in the computational
// basis draws binary images.
struct TrainedMachine {
    QuantumState state;
    double midpoint;
    std::size_t training_size;
    MachineProvenance provenance;
};

// The training multiset cycled up to the next power of two (minimum two
// branches, so a singleton set occupies both branches of one control qubit).
std::vector<Signal> padded_signals(const TrainingSet& set);

// Equal-weight superposition of the encoded training signals, built by
// direct summation of the product-state amplitudes.
TrainedMachine quantum_average_direct(const TrainingSet& set);

// The physical preparation: k = log2(padded size) control qubits in uniform
// superposition select which signal's encoding is rotated onto the data
// register; un-computing the controls and reading all zeros heralds success.
// This returns the full (n+k)-qubit state just before the control readout
// (data qubits 0..n-1, controls n..n+k-1).
QuantumState training_circuit_state(const TrainingSet& set);

struct CircuitTrainingResult {
    bool succeeded;
    TrainedMachine machine;
    int attempts;
};

// Repeat-until-success run of the preparation circuit. max_attempts <= 0
// selects the default cap of 64 * |set|; exhausting the cap raises
// TrainingFailure carrying the attempt count and empirical success rate.
CircuitTrainingResult quantum_average_circuit(const TrainingSet& set, Rng& rng,
                                              int max_attempts = 0);

// Closed-form probability that the control readout heralds success:
// 1/M + (2/M^2) * sum_{i<j} <enc_i|enc_j> over the padded multiset of size
// M. Never below 1/M because encoded amplitudes are non-negative.
double success_probability(const TrainingSet& set);

// Mean negative log-likelihood of the training signals under the machine.
double nll(const TrainingSet& set, const TrainedMachine& machine);

// Shannon entropy (nats) of the machine's image distribution.
double distribution_entropy(const QuantumState& state);

struct MidpointScan {
    double best_p = 0.5;
    std::vector<std::pair<double, double>> curve;  // (p, entropy)
};

// Grid search of the midpoint maximizing the entropy of the direct-average
// machine over the given signals. Ties resolve to the smallest midpoint.
MidpointScan optimize_midpoint(const std::vector<Signal>& signals, double step = 0.01);

}  // namespace qcs
