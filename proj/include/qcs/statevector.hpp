#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "qcs/rng.hpp"

namespace qcs {

using Amplitude = std::complex<double>;

// Convention used throughout: pixel i (1-based) lives on qubit i-1, and
// qubit q is bit q of the basis index, i.e. bit 0 is the least significant
// bit. Rendered bitstrings put qubit 0 (pixel 1) leftmost.
std::string bitstring(std::size_t z, int num_qubits);
std::size_t index_from_bits(const std::vector<int>& bits);

struct ControlSpec {
    int qubit;
    bool value;  // true: fire when the control reads |1>, false: when |0>
};

enum class GateKind { Hadamard, RotY, RotZ, Phase, PauliX, Givens };

struct Gate {
    GateKind kind = GateKind::Hadamard;
    int target = -1;                    // single-qubit kinds
    int target_a = -1, target_b = -1;   // Givens pair
    double angle = 0.0;
    std::vector<ControlSpec> controls;

    static Gate single(GateKind kind, int q, double theta) {
        Gate g;
        g.kind = kind;
        g.target = q;
        g.angle = theta;
        return g;
    }
    static Gate hadamard(int q) { return single(GateKind::Hadamard, q, 0.0); }
    static Gate rot_y(int q, double theta) { return single(GateKind::RotY, q, theta); }
    static Gate rot_z(int q, double theta) { return single(GateKind::RotZ, q, theta); }
    static Gate phase(int q, double theta) { return single(GateKind::Phase, q, theta); }
    static Gate pauli_x(int q) { return single(GateKind::PauliX, q, 0.0); }
    static Gate givens(int a, int b, double theta) {
        Gate g;
        g.kind = GateKind::Givens;
        g.target_a = a;
        g.target_b = b;
        g.angle = theta;
        return g;
    }

    Gate with_controls(std::vector<ControlSpec> c) const {
        Gate g = *this;
        g.controls = std::move(c);
        return g;
    }

    // Rotations and phases invert by negating the angle; Hadamard and X are
    // involutions. Control structure is preserved.
    Gate inverse() const {
        Gate g = *this;
        g.angle = -g.angle;
        return g;
    }
};

// Real weights per eigenstate of the computational basis:
// eigenvalue(z) = sum_q coeffs[q] * bit_q(z) - offset.
struct DiagonalOperator {
    std::vector<double> coeffs;
    double offset = 0.0;

    double eigenvalue(std::size_t z) const {
        double v = -offset;
        for (std::size_t q = 0; q < coeffs.size(); ++q)
            if ((z >> q) & 1u) v += coeffs[q];
        return v;
    }
};

class QuantumState {
public:
    // |00...0>
    explicit QuantumState(int num_qubits);

    // Takes ownership of an amplitude vector of length 2^num_qubits and
    // normalizes it; a (near-)zero vector is rejected.
    QuantumState(int num_qubits, std::vector<Amplitude> amps);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    double norm() const;

    void apply(const Gate& g);

    // Projective measurement of the listed qubits, in order, with collapse
    // and renormalization after each bit (chain-rule sampling). Returns the
    // observed bits in the same order as `qubits`.
    std::vector<int> measure(const std::vector<int>& qubits, Rng& rng);

    // Collapse every qubit; returns the surviving basis index.
    std::size_t measure_all(Rng& rng);

    // Forces the listed qubits to the given bits; returns the probability of
    // that outcome. Probability below 1e-14 raises IncompatibleOutcome.
    double postselect(const std::vector<int>& qubits, const std::vector<int>& bits);

    // Multiplies amplitude z by weight(z) >= 0, then renormalizes. A
    // post-weight norm below 1e-14 raises IncompatibleOutcome.
    void apply_diagonal_weights(const std::function<double(std::size_t)>& weight);

    std::vector<double> probabilities() const;

private:
    void check_qubit(int q) const;
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

// Basis state |z>: amplitude 1 at index z, 0 elsewhere.
QuantumState new_basis_state(int num_qubits, std::size_t z);

}  // namespace qcs
