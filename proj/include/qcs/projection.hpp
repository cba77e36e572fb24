#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcs/sensing.hpp"
#include "qcs/statevector.hpp"
#include "qcs/training.hpp"

namespace qcs {

// One adjacent-pair rotation of the measurement-basis change, acting on the
// plane (qubit, qubit + 1); realized on the register as a Givens gate.
struct PlaneRotation {
    int qubit;
    double angle;
};

// A = u * diag(delta) * l^T * [I_m | 0] * r, with r realized by `gates`
// applied in order (gates[0] first). r's leading m rows are canonicalized so
// each row's largest-magnitude entry is positive, which keeps syndrome
// values in rounding range of the measured bits.
struct DecompositionFactors {
    Eigen::MatrixXd u;                  // m x m orthogonal
    Eigen::VectorXd delta;              // m singular values, all above tolerance
    Eigen::MatrixXd l;                  // m x m orthogonal
    std::vector<PlaneRotation> gates;   // adjacent-pair rotations building r
    int sweep_gates = 0;                // leading gates from the elimination sweep, <= m(n-m);
                                        // the remainder are paired sign fixes
    Eigen::MatrixXd r;                  // n x n orthogonal
    std::uint64_t source_checksum = 0;  // checksum of the factored matrix

    int m() const { return static_cast<int>(u.rows()); }
    int n() const { return static_cast<int>(r.rows()); }
};

std::uint64_t matrix_checksum(const Eigen::MatrixXd& a);

// Factor an m x n (m <= n) full-rank matrix. The basis change r is built
// from at most m(n-m) adjacent-pair rotations (plus sign-fix rotations), so
// projecting a measurement needs only the register's m lowest qubits. A
// singular value at or below rank_tol raises RankDeficient.
DecompositionFactors decompose_sensing_matrix(const Eigen::MatrixXd& a, double rank_tol = 1e-10);

struct Syndrome {
    Eigen::VectorXd values;             // l * delta^-1 * u^T * x
    std::vector<int> bits;              // clamp(round(values), 0, 1)
    double max_rounding_residual = 0.0; // max_j |values_j - round(values_j)|
};

Syndrome compute_syndrome(const DecompositionFactors& f, const Eigen::VectorXd& x);

std::string factors_to_json(const DecompositionFactors& f);
DecompositionFactors factors_from_json(const std::string& text);

struct ProjectionOutcome {
    bool succeeded = false;
    int attempts_used = 0;
    std::optional<QuantumState> state;  // the projected register on success
    std::string failure_reason;
};

// Measures the machine's qubits named by a single-pixel matrix and keeps the
// run when they reproduce x (which must be binary within 1e-9).
ProjectionOutcome pixel_postselect_attempt(const TrainedMachine& machine, const SensingMatrix& a,
                                           const Eigen::VectorXd& x, Rng& rng);

// Rotates into the factored basis, reads the m syndrome qubits, and on a
// match un-rotates the surviving register.
ProjectionOutcome project_decomposition_attempt(const TrainedMachine& machine,
                                                const DecompositionFactors& f,
                                                const Syndrome& syndrome, Rng& rng);
ProjectionOutcome project_decomposition_attempt(const TrainedMachine& machine,
                                                const Eigen::MatrixXd& a,
                                                const Eigen::VectorXd& x, Rng& rng);

struct RodeoStepResult {
    int control_bit;  // 0 heralds success
    double tau;
};

// One ancilla-interference round for a single measurement row: with evolution
// time tau ~ Normal(0, sigma^2), the ancilla reads 0 with probability
// sum_z |a_z|^2 cos^2(lambda_z tau / 2), filtering eigenstates by |lambda_z|.
RodeoStepResult rodeo_step(QuantumState& state, const DiagonalOperator& op, double sigma,
                           Rng& rng);

// Runs rodeo_step for every row (cycles times); succeeds iff every ancilla
// read 0.
ProjectionOutcome project_rodeo_attempt(const TrainedMachine& machine, const Eigen::MatrixXd& a,
                                        const Eigen::VectorXd& x, double sigma, Rng& rng,
                                        int cycles = 1);

// Deterministic Gaussian filter: reweights amplitude z by
// exp(-(lambda_z)^2 / (2 sigma^2)) per row. Not a unitary process - it is
// the imaginary-time limit the interference protocols approximate. Returns a
// failure outcome if the weights annihilate the state.
ProjectionOutcome gaussian_project(const TrainedMachine& machine, const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& x, double sigma);

// 4 * 2^m: the default retry budget for an m-row projection.
int default_attempt_cap(int m);

// Runs attempt() up to max_attempts times, returning the first success with
// attempts_used set to the number of calls made.
ProjectionOutcome repeat_until_success(const std::function<ProjectionOutcome()>& attempt,
                                       int max_attempts);

}  // namespace qcs
