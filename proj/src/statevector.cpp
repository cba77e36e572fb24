#include "qcs/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::string bitstring(std::size_t z, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q)
        if ((z >> q) & 1u) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

std::size_t index_from_bits(const std::vector<int>& bits) {
    std::size_t z = 0;
    for (std::size_t q = 0; q < bits.size(); ++q)
        if (bits[q]) z |= (std::size_t{1} << q);
    return z;
}

QuantumState::QuantumState(int num_qubits) : num_qubits_(num_qubits) {
    require(num_qubits >= 1 && num_qubits <= 28, "qubit count out of range");
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

QuantumState::QuantumState(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
    require(num_qubits >= 1 && num_qubits <= 28, "qubit count out of range");
    require(amps_.size() == (std::size_t{1} << num_qubits),
            "amplitude vector length must be 2^num_qubits");
    double n2 = 0.0;
    for (const auto& a : amps_) {
        require(std::isfinite(a.real()) && std::isfinite(a.imag()), "non-finite amplitude");
        n2 += std::norm(a);
    }
    if (std::sqrt(n2) < 1e-14) throw std::invalid_argument("amplitude vector has zero norm");
    double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) a *= inv;
}

double QuantumState::norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

void QuantumState::check_qubit(int q) const {
    require(q >= 0 && q < num_qubits_, "qubit index out of range");
}

void QuantumState::apply(const Gate& g) {
    require(std::isfinite(g.angle), "gate angle must be finite");

    std::size_t cmask = 0, cval = 0;
    auto add_control = [&](const ControlSpec& c) {
        check_qubit(c.qubit);
        std::size_t bit = std::size_t{1} << c.qubit;
        require(!(cmask & bit), "duplicate control qubit");
        cmask |= bit;
        if (c.value) cval |= bit;
    };

    if (g.kind == GateKind::Givens) {
        check_qubit(g.target_a);
        check_qubit(g.target_b);
        require(g.target_a != g.target_b, "Givens targets must differ");
        for (const auto& c : g.controls) {
            require(c.qubit != g.target_a && c.qubit != g.target_b,
                    "control overlaps Givens target");
            add_control(c);
        }
        const std::size_t abit = std::size_t{1} << g.target_a;
        const std::size_t bbit = std::size_t{1} << g.target_b;
        const double c = std::cos(g.angle), s = std::sin(g.angle);
        // Rotation in the single-excitation plane: |a=0,b=1> <-> |a=1,b=0>.
        for (std::size_t z = 0; z < amps_.size(); ++z) {
            if ((z & abit) || !(z & bbit)) continue;  // keep the |01> member
            if ((z & cmask) != cval) continue;
            std::size_t w = (z ^ abit) ^ bbit;  // the paired |10> index
            Amplitude a01 = amps_[z], a10 = amps_[w];
            amps_[z] = c * a01 - s * a10;
            amps_[w] = s * a01 + c * a10;
        }
        return;
    }

    check_qubit(g.target);
    for (const auto& c : g.controls) {
        require(c.qubit != g.target, "control overlaps target");
        add_control(c);
    }

    Amplitude m00, m01, m10, m11;
    switch (g.kind) {
        case GateKind::Hadamard:
            m00 = m01 = m10 = kInvSqrt2;
            m11 = -kInvSqrt2;
            break;
        case GateKind::RotY: {
            double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m00 = c; m01 = -s; m10 = s; m11 = c;
            break;
        }
        case GateKind::RotZ:
            m00 = std::polar(1.0, -g.angle / 2);
            m01 = m10 = 0.0;
            m11 = std::polar(1.0, g.angle / 2);
            break;
        case GateKind::Phase:
            m00 = 1.0;
            m01 = m10 = 0.0;
            m11 = std::polar(1.0, g.angle);
            break;
        case GateKind::PauliX:
            m00 = m11 = 0.0;
            m01 = m10 = 1.0;
            break;
        default:
            throw std::invalid_argument("unknown gate kind");
    }

    const std::size_t tbit = std::size_t{1} << g.target;
    for (std::size_t z = 0; z < amps_.size(); ++z) {
        if (z & tbit) continue;
        if ((z & cmask) != cval) continue;
        Amplitude a0 = amps_[z], a1 = amps_[z | tbit];
        amps_[z] = m00 * a0 + m01 * a1;
        amps_[z | tbit] = m10 * a0 + m11 * a1;
    }
}

std::vector<int> QuantumState::measure(const std::vector<int>& qubits, Rng& rng) {
    std::vector<int> bits;
    bits.reserve(qubits.size());
    for (int q : qubits) {
        check_qubit(q);
        const std::size_t qbit = std::size_t{1} << q;
        double p1 = 0.0;
        for (std::size_t z = 0; z < amps_.size(); ++z)
            if (z & qbit) p1 += std::norm(amps_[z]);
        p1 = std::clamp(p1, 0.0, 1.0);
        const int bit = rng.uniform01() < p1 ? 1 : 0;  // uniform01 < 1, so p1 = 1 always yields 1
        const double pkeep = bit ? p1 : 1.0 - p1;
        const double inv = 1.0 / std::sqrt(pkeep);
        for (std::size_t z = 0; z < amps_.size(); ++z) {
            if (((z & qbit) != 0) == (bit != 0))
                amps_[z] *= inv;
            else
                amps_[z] = 0.0;
        }
        bits.push_back(bit);
    }
    return bits;
}

std::size_t QuantumState::measure_all(Rng& rng) {
    std::vector<int> all(static_cast<std::size_t>(num_qubits_));
    for (int q = 0; q < num_qubits_; ++q) all[static_cast<std::size_t>(q)] = q;
    return index_from_bits(measure(all, rng));
}

double QuantumState::postselect(const std::vector<int>& qubits, const std::vector<int>& bits) {
    require(qubits.size() == bits.size(), "postselect qubit/bit count mismatch");
    std::size_t mask = 0, val = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        check_qubit(qubits[i]);
        require(bits[i] == 0 || bits[i] == 1, "postselect bits must be 0 or 1");
        std::size_t qbit = std::size_t{1} << qubits[i];
        require(!(mask & qbit), "duplicate postselect qubit");
        mask |= qbit;
        if (bits[i]) val |= qbit;
    }
    double prob = 0.0;
    for (std::size_t z = 0; z < amps_.size(); ++z)
        if ((z & mask) == val) prob += std::norm(amps_[z]);
    if (prob < 1e-14)
        throw IncompatibleOutcome("postselected outcome has vanishing probability");
    const double inv = 1.0 / std::sqrt(prob);
    for (std::size_t z = 0; z < amps_.size(); ++z) {
        if ((z & mask) == val)
            amps_[z] *= inv;
        else
            amps_[z] = 0.0;
    }
    return prob;
}

void QuantumState::apply_diagonal_weights(const std::function<double(std::size_t)>& weight) {
    double n2 = 0.0;
    std::vector<Amplitude> next(amps_.size());
    for (std::size_t z = 0; z < amps_.size(); ++z) {
        double w = weight(z);
        require(std::isfinite(w) && w >= 0.0, "diagonal weights must be finite and non-negative");
        next[z] = amps_[z] * w;
        n2 += std::norm(next[z]);
    }
    if (std::sqrt(n2) < 1e-14)
        throw IncompatibleOutcome("diagonal weighting annihilated the state");
    const double inv = 1.0 / std::sqrt(n2);
    for (std::size_t z = 0; z < amps_.size(); ++z) amps_[z] = next[z] * inv;
}

std::vector<double> QuantumState::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t z = 0; z < amps_.size(); ++z) p[z] = std::norm(amps_[z]);
    return p;
}

QuantumState new_basis_state(int num_qubits, std::size_t z) {
    require(num_qubits >= 1 && num_qubits <= 28, "qubit count out of range");
    require(z < (std::size_t{1} << num_qubits), "basis index out of range");
    std::vector<Amplitude> amps(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps[z] = 1.0;
    return QuantumState(num_qubits, std::move(amps));
}

}  // namespace qcs
