#include "qcs/training.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_set(const TrainingSet& set) {
    if (set.signals.empty()) throw std::invalid_argument("training set is empty");
    const std::size_t n = set.signals.front().size();
    if (n == 0) throw std::invalid_argument("training signals must have at least one pixel");
    for (const auto& y : set.signals)
        if (y.size() != n) throw std::invalid_argument("training signals differ in length");
    if (!(set.midpoint > 0.0 && set.midpoint < 1.0))
        throw std::invalid_argument("midpoint outside (0, 1)");
}

int control_count(std::size_t padded) {
    int k = 0;
    while ((std::size_t{1} << k) < padded) ++k;
    return k;
}

}  // namespace

std::vector<Signal> padded_signals(const TrainingSet& set) {
    validate_set(set);
    std::size_t m = 2;  // a singleton still gets one control qubit, both branches alike
    while (m < set.signals.size()) m *= 2;
    std::vector<Signal> padded;
    padded.reserve(m);
    for (std::size_t i = 0; i < m; ++i) padded.push_back(set.signals[i % set.signals.size()]);
    return padded;
}

TrainedMachine quantum_average_direct(const TrainingSet& set) {
    validate_set(set);
    const int n = static_cast<int>(set.signals.front().size());
    std::vector<Amplitude> sum(std::size_t{1} << n, Amplitude{0.0, 0.0});
    for (const auto& y : set.signals) {
        QuantumState enc = encode_signal(y, set.midpoint);
        for (std::size_t z = 0; z < sum.size(); ++z) sum[z] += enc.amplitudes()[z];
    }
    return {QuantumState(n, std::move(sum)), set.midpoint, set.signals.size(),
            MachineProvenance::Direct};
}

QuantumState training_circuit_state(const TrainingSet& set) {
    const auto padded = padded_signals(set);
    const int n = static_cast<int>(padded.front().size());
    const int k = control_count(padded.size());
    QuantumState st(n + k);

    for (int c = 0; c < k; ++c) st.apply(Gate::hadamard(n + c));

    // Branch-selected product-state preparation: for control pattern b, every
    // data qubit i receives RotY(pi * f_p(y^b_i)) gated on that pattern.
    for (std::size_t b = 0; b < padded.size(); ++b) {
        std::vector<ControlSpec> controls;
        controls.reserve(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c)
            controls.push_back({n + c, ((b >> c) & 1u) != 0});
        for (int i = 0; i < n; ++i) {
            double f = remap_midpoint(padded[b][static_cast<std::size_t>(i)], set.midpoint);
            st.apply(Gate::rot_y(i, kPi * f).with_controls(controls));
        }
    }

    for (int c = 0; c < k; ++c) st.apply(Gate::hadamard(n + c));
    return st;
}

CircuitTrainingResult quantum_average_circuit(const TrainingSet& set, Rng& rng,
                                              int max_attempts) {
    const auto padded = padded_signals(set);
    const int n = static_cast<int>(padded.front().size());
    const int k = control_count(padded.size());
    if (max_attempts <= 0) max_attempts = 64 * static_cast<int>(set.signals.size());

    const QuantumState prepared = training_circuit_state(set);
    std::vector<int> controls(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) controls[static_cast<std::size_t>(c)] = n + c;

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        QuantumState st = prepared;
        std::vector<int> bits = st.measure(controls, rng);
        bool zeros = true;
        for (int b : bits) zeros = zeros && (b == 0);
        if (!zeros) continue;
        // Controls collapsed to zero: the data register holds the average.
        std::vector<Amplitude> data(st.amplitudes().begin(),
                                    st.amplitudes().begin() + (std::ptrdiff_t{1} << n));
        TrainedMachine machine{QuantumState(n, std::move(data)), set.midpoint,
                               set.signals.size(), MachineProvenance::Circuit};
        return {true, std::move(machine), attempt};
    }
    throw TrainingFailure("training circuit never heralded success", max_attempts, 0.0);
}

double success_probability(const TrainingSet& set) {
    const auto padded = padded_signals(set);
    const double m = static_cast<double>(padded.size());
    std::vector<QuantumState> enc;
    enc.reserve(padded.size());
    for (const auto& y : padded) enc.push_back(encode_signal(y, set.midpoint));
    double cross = 0.0;
    for (std::size_t i = 0; i < enc.size(); ++i)
        for (std::size_t j = i + 1; j < enc.size(); ++j) {
            double dot = 0.0;
            for (std::size_t z = 0; z < enc[i].dim(); ++z)
                dot += enc[i].amplitudes()[z].real() * enc[j].amplitudes()[z].real();
            cross += dot;
        }
    return 1.0 / m + (2.0 / (m * m)) * cross;
}

double nll(const TrainingSet& set, const TrainedMachine& machine) {
    validate_set(set);
    double total = 0.0;
    for (const auto& y : set.signals) {
        QuantumState enc = encode_signal(y, machine.midpoint);
        if (enc.dim() != machine.state.dim())
            throw std::invalid_argument("machine size does not match the training signals");
        Amplitude ov{0.0, 0.0};
        for (std::size_t z = 0; z < enc.dim(); ++z)
            ov += std::conj(enc.amplitudes()[z]) * machine.state.amplitudes()[z];
        double p = std::norm(ov);
        if (p < 1e-300) throw NumericOverflow("vanishing overlap in log-likelihood");
        total -= std::log(p);
    }
    return total / static_cast<double>(set.signals.size());
}

double distribution_entropy(const QuantumState& state) {
    double s = 0.0;
    for (double p : state.probabilities())
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

MidpointScan optimize_midpoint(const std::vector<Signal>& signals, double step) {
    if (!(step > 0.0 && step < 0.5)) throw std::invalid_argument("midpoint step outside (0, 0.5)");
    const int last = static_cast<int>(std::lround(1.0 / step)) - 1;
    if (last < 1) throw std::invalid_argument("midpoint step leaves an empty grid");
    MidpointScan scan;
    double best = -1.0;
    for (int k = 1; k <= last; ++k) {
        const double p = std::min(k * step, 1.0 - step / 2);  // guard float creep at the top end
        TrainedMachine machine = quantum_average_direct({signals, p});
        const double h = distribution_entropy(machine.state);
        scan.curve.emplace_back(p, h);
        if (h > best) {
            best = h;
            scan.best_p = p;
        }
    }
    return scan;
}

}  // namespace qcs
