#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qcs/errors.hpp"
#include "qcs/statevector.hpp"
#include "test_support.hpp"

using namespace qcs;
using qcs::testing::gate_matrix;
using qcs::testing::matmul;
using qcs::testing::matvec;
using qcs::testing::unitarity_defect;

namespace {
constexpr double kPi = std::numbers::pi;

QuantumState random_state(int n, Rng& rng) {
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (auto& a : amps) a = {rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    return QuantumState(n, std::move(amps));
}
}  // namespace

TEST_CASE("basis states put qubit q at bit q") {
    QuantumState st = new_basis_state(2, 3);
    CHECK(st.amplitudes()[0] == Amplitude{0.0, 0.0});
    CHECK(st.amplitudes()[1] == Amplitude{0.0, 0.0});
    CHECK(st.amplitudes()[2] == Amplitude{0.0, 0.0});
    CHECK(st.amplitudes()[3] == Amplitude{1.0, 0.0});

    CHECK(bitstring(1, 3) == "100");  // pixel 1 renders leftmost
    CHECK(bitstring(4, 3) == "001");
    CHECK(bitstring(48, 6) == "000011");
    CHECK(index_from_bits({1, 0, 0}) == 1);
    CHECK(index_from_bits({0, 0, 1, 1, 0, 0}) == 12);

    CHECK_THROWS_AS(new_basis_state(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(QuantumState(0), std::invalid_argument);
}

TEST_CASE("single-qubit gate actions are pinned") {
    QuantumState st(1);
    st.apply(Gate::hadamard(0));
    CHECK(st.amplitudes()[0].real() == doctest::Approx(1 / std::sqrt(2)).epsilon(1e-14));
    CHECK(st.amplitudes()[1].real() == doctest::Approx(1 / std::sqrt(2)).epsilon(1e-14));

    QuantumState ry(1);
    ry.apply(Gate::rot_y(0, kPi / 3));  // (cos 30, sin 30)
    CHECK(ry.amplitudes()[0].real() == doctest::Approx(0.86602540378443864676).epsilon(1e-14));
    CHECK(ry.amplitudes()[1].real() == doctest::Approx(0.5).epsilon(1e-14));

    QuantumState ph = new_basis_state(1, 1);
    ph.apply(Gate::phase(0, kPi / 2));
    CHECK(ph.amplitudes()[1].real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ph.amplitudes()[1].imag() == doctest::Approx(1.0).epsilon(1e-14));

    QuantumState x(1);
    x.apply(Gate::pauli_x(0));
    CHECK(x.amplitudes()[1] == Amplitude{1.0, 0.0});

    QuantumState rz(1);
    rz.apply(Gate::hadamard(0));
    rz.apply(Gate::rot_z(0, 0.8));
    CHECK(rz.amplitudes()[0].imag() == doctest::Approx(-std::sin(0.4) / std::sqrt(2)).epsilon(1e-14));
    CHECK(rz.amplitudes()[1].imag() == doctest::Approx(std::sin(0.4) / std::sqrt(2)).epsilon(1e-14));
}

TEST_CASE("Givens rotates the single-excitation plane") {
    const double theta = 0.7;
    QuantumState st = new_basis_state(2, 2);  // qubit 0 clear, qubit 1 set
    st.apply(Gate::givens(0, 1, theta));
    CHECK(st.amplitudes()[2].real() == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(st.amplitudes()[1].real() == doctest::Approx(std::sin(theta)).epsilon(1e-14));

    // states outside the plane are untouched
    QuantumState fixed = new_basis_state(2, 3);
    fixed.apply(Gate::givens(0, 1, theta));
    CHECK(fixed.amplitudes()[3] == Amplitude{1.0, 0.0});
}

TEST_CASE("every gate builds a unitary, controls included") {
    const std::vector<Gate> gates = {
        Gate::hadamard(1),
        Gate::rot_y(0, 0.7).with_controls({{2, false}}),
        Gate::rot_z(2, 1.3).with_controls({{0, true}}),
        Gate::phase(1, 2.1).with_controls({{0, true}, {2, false}}),
        Gate::pauli_x(0).with_controls({{1, true}}),
        Gate::givens(0, 2, 0.9),
        Gate::givens(1, 2, -1.2).with_controls({{0, false}}),
    };
    for (const auto& g : gates) CHECK(unitarity_defect(gate_matrix(g, 3)) < 1e-10);
}

TEST_CASE("apply agrees with the dense-matrix route") {
    Rng rng(7);
    QuantumState st = random_state(3, rng);
    std::vector<Amplitude> dense(st.amplitudes());
    const std::vector<Gate> gates = {
        Gate::rot_y(2, 0.37).with_controls({{0, true}}),
        Gate::hadamard(0),
        Gate::givens(0, 2, 1.1).with_controls({{1, false}}),
        Gate::phase(1, -0.6),
        Gate::rot_z(0, 2.2),
    };
    for (const auto& g : gates) {
        st.apply(g);
        dense = matvec(gate_matrix(g, 3), dense);
    }
    for (std::size_t z = 0; z < dense.size(); ++z)
        CHECK(std::abs(st.amplitudes()[z] - dense[z]) < 1e-10);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("inverse gates undo themselves") {
    Rng rng(11);
    QuantumState st = random_state(3, rng);
    const QuantumState before = st;
    const std::vector<Gate> gates = {
        Gate::rot_y(1, 0.9).with_controls({{2, true}}),
        Gate::givens(0, 1, 0.4),
        Gate::phase(2, 1.7),
        Gate::rot_z(0, -0.3),
        Gate::hadamard(2),
        Gate::pauli_x(0),
    };
    for (const auto& g : gates) st.apply(g);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) st.apply(it->inverse());
    for (std::size_t z = 0; z < st.dim(); ++z)
        CHECK(std::abs(st.amplitudes()[z] - before.amplitudes()[z]) < 1e-10);
}

TEST_CASE("gate validation rejects bad wiring") {
    QuantumState st(2);
    CHECK_THROWS_AS(st.apply(Gate::hadamard(2)), std::invalid_argument);
    CHECK_THROWS_AS(st.apply(Gate::rot_y(0, 0.5).with_controls({{0, true}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(st.apply(Gate::givens(1, 1, 0.5)), std::invalid_argument);
    CHECK_THROWS_AS(st.apply(Gate::givens(0, 1, 0.5).with_controls({{1, true}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(st.apply(Gate::rot_y(0, std::nan(""))), std::invalid_argument);
    CHECK_THROWS_AS(st.apply(Gate::phase(1, 0.3).with_controls({{0, true}, {0, false}})),
                    std::invalid_argument);
}

TEST_CASE("measurement collapses and renormalizes") {
    Rng rng(3);
    QuantumState st(2);
    st.apply(Gate::hadamard(0));
    st.apply(Gate::hadamard(1));
    auto bits = st.measure({0}, rng);
    REQUIRE(bits.size() == 1);
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    // re-measuring the collapsed qubit is deterministic
    for (int k = 0; k < 5; ++k) CHECK(st.measure({0}, rng)[0] == bits[0]);

    // impossible branches never fire
    QuantumState basis = new_basis_state(2, 2);
    for (int k = 0; k < 20; ++k) {
        CHECK(basis.measure({0}, rng)[0] == 0);
        CHECK(basis.measure({1}, rng)[0] == 1);
    }
}

TEST_CASE("measurement statistics follow the Born rule") {
    Rng rng(123);
    QuantumState st(1);
    st.apply(Gate::rot_y(0, kPi / 3));  // P(1) = sin^2(pi/6) = 1/4
    int ones = 0;
    const int shots = 4000;
    for (int k = 0; k < shots; ++k) {
        QuantumState copy = st;
        ones += copy.measure({0}, rng)[0];
    }
    CHECK(std::abs(ones / double(shots) - 0.25) < 0.03);  // ~4.4 sigma
}

TEST_CASE("measure_all samples the joint distribution") {
    Rng rng(99);
    QuantumState st(2);
    st.apply(Gate::rot_y(0, 0.9));
    st.apply(Gate::rot_y(1, 2.0).with_controls({{0, true}}));
    auto probs = st.probabilities();
    std::vector<int> counts(4, 0);
    const int shots = 8000;
    for (int k = 0; k < shots; ++k) {
        QuantumState copy = st;
        ++counts[copy.measure_all(rng)];
    }
    for (std::size_t z = 0; z < 4; ++z)
        CHECK(std::abs(counts[z] / double(shots) - probs[z]) < 0.03);
}

TEST_CASE("postselect keeps the branch and reports its probability") {
    QuantumState st(2);
    st.apply(Gate::rot_y(0, kPi / 3));
    st.apply(Gate::hadamard(1));
    auto probs = st.probabilities();
    const double expect = probs[1] + probs[3];  // qubit 0 reads 1
    const double got = st.postselect({0}, {1});
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(st.amplitudes()[0]) == 0.0);
    CHECK(std::abs(st.amplitudes()[2]) == 0.0);

    QuantumState basis = new_basis_state(2, 0);
    CHECK_THROWS_AS(basis.postselect({0}, {1}), IncompatibleOutcome);
    CHECK_THROWS_AS(basis.postselect({0, 0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(basis.postselect({0}, {2}), std::invalid_argument);
}

TEST_CASE("diagonal weights reshape and renormalize") {
    QuantumState st(1);
    st.apply(Gate::hadamard(0));
    st.apply_diagonal_weights([](std::size_t z) { return z == 0 ? 3.0 : 1.0; });
    const double denom = std::sqrt(10.0);
    CHECK(st.amplitudes()[0].real() == doctest::Approx(3.0 / denom).epsilon(1e-12));
    CHECK(st.amplitudes()[1].real() == doctest::Approx(1.0 / denom).epsilon(1e-12));

    QuantumState basis = new_basis_state(1, 0);
    CHECK_THROWS_AS(basis.apply_diagonal_weights([](std::size_t z) { return z == 0 ? 0.0 : 1.0; }),
                    IncompatibleOutcome);
    CHECK_THROWS_AS(basis.apply_diagonal_weights([](std::size_t) { return -1.0; }),
                    std::invalid_argument);
}

TEST_CASE("diagonal operator eigenvalues sum selected coefficients") {
    DiagonalOperator op{{0, 0, 1, 0, 0, 0}, 1.0};
    CHECK(op.eigenvalue(0b000100) == doctest::Approx(0.0));
    CHECK(op.eigenvalue(0) == doctest::Approx(-1.0));
    CHECK(op.eigenvalue(0b111111) == doctest::Approx(0.0));

    DiagonalOperator mixed{{0.5, -0.25, 1.5}, 0.75};
    CHECK(mixed.eigenvalue(0b101) == doctest::Approx(0.5 + 1.5 - 0.75).epsilon(1e-14));
}

TEST_CASE("norm stays within 1e-10 across long gate chains") {
    Rng rng(512);
    QuantumState st = random_state(4, rng);
    for (int k = 0; k < 200; ++k) {
        const int q = static_cast<int>(rng.below(4));
        const double theta = rng.normal(0.0, 2.0);
        switch (rng.below(5)) {
            case 0: st.apply(Gate::hadamard(q)); break;
            case 1: st.apply(Gate::rot_y(q, theta)); break;
            case 2: st.apply(Gate::rot_z(q, theta)); break;
            case 3: st.apply(Gate::phase(q, theta)); break;
            default: st.apply(Gate::givens(q, (q + 1) % 4, theta)); break;
        }
        REQUIRE(std::abs(st.norm() - 1.0) < 1e-10);
    }
}
