#include "qcs/projection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qcs/errors.hpp"

namespace qcs {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Left-multiply by a rotation in the (r0, r1) row plane.
void rotate_rows(Eigen::MatrixXd& w, int r0, int r1, double c, double s) {
    Eigen::RowVectorXd top = c * w.row(r0) + s * w.row(r1);
    w.row(r1) = -s * w.row(r0) + c * w.row(r1);
    w.row(r0) = top;
}

// Right-multiply by the transpose of a rotation in the (c0, c1) column plane.
void rotate_cols(Eigen::MatrixXd& w, int c0, int c1, double c, double s) {
    Eigen::VectorXd left = c * w.col(c0) + s * w.col(c1);
    w.col(c1) = -s * w.col(c0) + c * w.col(c1);
    w.col(c0) = left;
}

DiagonalOperator row_operator(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, int i) {
    DiagonalOperator op;
    op.coeffs.resize(static_cast<std::size_t>(a.cols()));
    for (int q = 0; q < a.cols(); ++q) op.coeffs[static_cast<std::size_t>(q)] = a(i, q);
    op.offset = x(i);
    return op;
}

void check_projection_inputs(const TrainedMachine& machine, const Eigen::MatrixXd& a,
                             const Eigen::VectorXd& x) {
    require(a.cols() == machine.state.num_qubits(),
            "matrix columns must match the machine's qubit count");
    require(a.rows() == x.size(), "measurement length must match the matrix rows");
    require(a.rows() <= a.cols(), "more measurements than pixels");
}

}  // namespace

std::uint64_t matrix_checksum(const Eigen::MatrixXd& a) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(a.rows()));
    mix(static_cast<std::uint64_t>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) mix(std::bit_cast<std::uint64_t>(a(i, j)));
    return h;
}

DecompositionFactors decompose_sensing_matrix(const Eigen::MatrixXd& a, double rank_tol) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    require(n >= 1, "matrix needs at least one column");
    require(m <= n, "more measurements than pixels");
    require(a.allFinite(), "matrix entries must be finite");

    DecompositionFactors f;
    f.source_checksum = matrix_checksum(a);
    f.r = Eigen::MatrixXd::Identity(n, n);
    if (m == 0) {
        f.u.resize(0, 0);
        f.delta.resize(0);
        f.l.resize(0, 0);
        return f;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    f.u = svd.matrixU();
    f.delta = svd.singularValues();
    if (f.delta.minCoeff() <= rank_tol)
        throw RankDeficient("sensing matrix is rank-deficient at the working tolerance");

    // w starts as V^T (m x n, orthonormal rows). Two anti-diagonal sweeps
    // drive every entry with row + col >= m to zero. Row rotations (phase 1)
    // are free - they fold into l. Column rotations (phase 2) are the
    // physical basis change: m(n - m) adjacent-pair rotations at most.
    Eigen::MatrixXd w = svd.matrixV().transpose();
    Eigen::MatrixXd qleft = Eigen::MatrixXd::Identity(m, m);
    constexpr double kNegligible = 1e-15;

    // Phase 1: anti-diagonals d = m+n-2 .. n, rows top-down within each, so
    // already-cleared cells sit right of the active column in both rows.
    for (int d = m + n - 2; d >= n; --d) {
        for (int r = std::max(1, d - n + 1); r <= m - 1; ++r) {
            const int c = d - r;
            if (c < 0 || c >= n) continue;
            const double lo = w(r, c);
            if (std::abs(lo) <= kNegligible) continue;
            const double hi = w(r - 1, c);
            const double h = std::hypot(hi, lo);
            rotate_rows(w, r - 1, r, hi / h, lo / h);
            rotate_rows(qleft, r - 1, r, hi / h, lo / h);
            w(r, c) = 0.0;
        }
    }

    // Phase 2: anti-diagonals d = n-1 .. m, rows bottom-up within each; each
    // cleared cell's left neighbour on the same anti-diagonal is already zero
    // by the time its column pair rotates.
    auto push_rotation = [&f](int c0, double theta) {
        f.gates.push_back({c0, theta});
        const double c = std::cos(theta), s = std::sin(theta);
        rotate_rows(f.r, c0, c0 + 1, c, s);
    };
    for (int d = n - 1; d >= m; --d) {
        for (int r = std::min(m - 1, d); r >= std::max(0, d - n + 1); --r) {
            const int c = d - r;
            if (c < 1 || c >= n) continue;
            const double lo = w(r, c);
            if (std::abs(lo) <= kNegligible) {
                w(r, c) = 0.0;
                continue;
            }
            const double theta = std::atan2(lo, w(r, c - 1));
            rotate_cols(w, c - 1, c, std::cos(theta), std::sin(theta));
            w(r, c) = 0.0;
            push_rotation(c - 1, theta);
        }
    }

    f.sweep_gates = static_cast<int>(f.gates.size());
    Eigen::MatrixXd l_dagger = qleft.transpose() * w.leftCols(m);

    // Canonicalize the measured rows of r: a row whose largest-magnitude
    // entry is negative would predict a syndrome near -1 where the register
    // can only read 0 or 1. Flips come in pairs (each realized as a chain of
    // pi-rotations telescoping to a two-row sign flip); odd parity borrows
    // the first unmeasured row, which exists whenever any flip is needed.
    std::vector<int> flips;
    for (int j = 0; j < m; ++j) {
        int arg = 0;
        f.r.row(j).cwiseAbs().maxCoeff(&arg);
        if (f.r(j, arg) < 0.0) flips.push_back(j);
    }
    if (flips.size() % 2 == 1) flips.push_back(m);  // m < n here: m = n forces r = I
    for (std::size_t k = 0; k + 1 < flips.size(); k += 2) {
        for (int q = flips[k]; q < flips[k + 1]; ++q) f.gates.push_back({q, kPi});
        f.r.row(flips[k]) *= -1.0;
        f.r.row(flips[k + 1]) *= -1.0;
    }
    for (int j : flips)
        if (j < m) l_dagger.col(j) *= -1.0;

    f.l = l_dagger.transpose();
    return f;
}

Syndrome compute_syndrome(const DecompositionFactors& f, const Eigen::VectorXd& x) {
    require(x.size() == f.m(), "measurement length must match the factored rows");
    Syndrome s;
    Eigen::VectorXd t = f.u.transpose() * x;
    t.array() /= f.delta.array();
    s.values = f.l * t;
    s.bits.resize(static_cast<std::size_t>(s.values.size()));
    for (int j = 0; j < s.values.size(); ++j) {
        const double rounded = std::round(s.values(j));
        s.max_rounding_residual = std::max(s.max_rounding_residual,
                                           std::abs(s.values(j) - rounded));
        s.bits[static_cast<std::size_t>(j)] =
            static_cast<int>(std::clamp(rounded, 0.0, 1.0));
    }
    return s;
}

std::string factors_to_json(const DecompositionFactors& f) {
    nlohmann::json j;
    j["m"] = f.m();
    j["n"] = f.n();
    auto dump = [](const Eigen::MatrixXd& m) {
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < m.rows(); ++i)
            rows.emplace_back(m.row(i).begin(), m.row(i).end());
        return rows;
    };
    j["u"] = dump(f.u);
    j["delta"] = std::vector<double>(f.delta.begin(), f.delta.end());
    j["l"] = dump(f.l);
    j["r"] = dump(f.r);
    j["gates"] = nlohmann::json::array();
    for (const auto& g : f.gates) j["gates"].push_back({{"qubit", g.qubit}, {"angle", g.angle}});
    j["sweep_gates"] = f.sweep_gates;
    j["source_checksum"] = f.source_checksum;
    return j.dump(2);
}

DecompositionFactors factors_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DecompositionFactors f;
    const int m = j.at("m").get<int>();
    const int n = j.at("n").get<int>();
    require(m >= 0 && n >= 1 && m <= n, "bad factor dimensions");
    auto load = [](const nlohmann::json& rows, int nr, int nc) {
        Eigen::MatrixXd out(nr, nc);
        if (static_cast<int>(rows.size()) != nr)
            throw std::invalid_argument("bad factor matrix shape");
        for (int i = 0; i < nr; ++i) {
            const auto& row = rows.at(static_cast<std::size_t>(i));
            if (static_cast<int>(row.size()) != nc)
                throw std::invalid_argument("bad factor matrix shape");
            for (int c = 0; c < nc; ++c) out(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
        return out;
    };
    f.u = load(j.at("u"), m, m);
    f.l = load(j.at("l"), m, m);
    f.r = load(j.at("r"), n, n);
    const auto& dv = j.at("delta");
    if (static_cast<int>(dv.size()) != m) throw std::invalid_argument("bad singular value count");
    f.delta.resize(m);
    for (int i = 0; i < m; ++i) f.delta(i) = dv.at(static_cast<std::size_t>(i)).get<double>();
    for (const auto& g : j.at("gates")) {
        PlaneRotation pr{g.at("qubit").get<int>(), g.at("angle").get<double>()};
        require(pr.qubit >= 0 && pr.qubit + 1 < n, "gate qubit out of range");
        f.gates.push_back(pr);
    }
    f.sweep_gates = j.at("sweep_gates").get<int>();
    require(f.sweep_gates >= 0 && f.sweep_gates <= static_cast<int>(f.gates.size()),
            "bad sweep gate count");
    f.source_checksum = j.at("source_checksum").get<std::uint64_t>();
    return f;
}

ProjectionOutcome pixel_postselect_attempt(const TrainedMachine& machine, const SensingMatrix& a,
                                           const Eigen::VectorXd& x, Rng& rng) {
    require(a.cls == MatrixClass::SinglePixel, "pixel postselection needs a single-pixel matrix");
    check_projection_inputs(machine, a.entries, x);
    std::vector<int> qubits, want;
    for (int i = 0; i < a.m(); ++i) {
        int col = -1;
        for (int j = 0; j < a.n(); ++j) {
            if (a.entries(i, j) == 0.0) continue;
            require(a.entries(i, j) == 1.0 && col < 0, "row is not a single-pixel selector");
            col = j;
        }
        require(col >= 0, "row is not a single-pixel selector");
        const double rounded = std::round(x(i));
        require(std::abs(x(i) - rounded) <= 1e-9 && (rounded == 0.0 || rounded == 1.0),
                "single-pixel measurements must be binary");
        qubits.push_back(col);
        want.push_back(static_cast<int>(rounded));
    }

    ProjectionOutcome out;
    out.attempts_used = 1;
    QuantumState st = machine.state;
    std::vector<int> bits = st.measure(qubits, rng);
    if (bits == want) {
        out.succeeded = true;
        out.state = std::move(st);
    } else {
        out.failure_reason = "measured pixels disagree with the target";
    }
    return out;
}

ProjectionOutcome project_decomposition_attempt(const TrainedMachine& machine,
                                                const DecompositionFactors& f,
                                                const Syndrome& syndrome, Rng& rng) {
    require(f.n() == machine.state.num_qubits(),
            "factored width must match the machine's qubit count");
    require(static_cast<int>(syndrome.bits.size()) == f.m(), "syndrome size mismatch");

    ProjectionOutcome out;
    out.attempts_used = 1;
    QuantumState st = machine.state;
    for (const auto& g : f.gates) st.apply(Gate::givens(g.qubit, g.qubit + 1, g.angle));

    std::vector<int> qubits(static_cast<std::size_t>(f.m()));
    for (int q = 0; q < f.m(); ++q) qubits[static_cast<std::size_t>(q)] = q;
    std::vector<int> bits = st.measure(qubits, rng);
    if (bits != syndrome.bits) {
        out.failure_reason = "measured syndrome disagrees with the target";
        return out;
    }
    for (auto it = f.gates.rbegin(); it != f.gates.rend(); ++it)
        st.apply(Gate::givens(it->qubit, it->qubit + 1, -it->angle));
    out.succeeded = true;
    out.state = std::move(st);
    return out;
}

ProjectionOutcome project_decomposition_attempt(const TrainedMachine& machine,
                                                const Eigen::MatrixXd& a,
                                                const Eigen::VectorXd& x, Rng& rng) {
    check_projection_inputs(machine, a, x);
    DecompositionFactors f = decompose_sensing_matrix(a);
    Syndrome s = compute_syndrome(f, x);
    return project_decomposition_attempt(machine, f, s, rng);
}

RodeoStepResult rodeo_step(QuantumState& state, const DiagonalOperator& op, double sigma,
                           Rng& rng) {
    require(sigma > 0.0, "sigma must be positive");
    const int n = state.num_qubits();
    require(static_cast<int>(op.coeffs.size()) == n, "operator width mismatch");
    const double tau = rng.normal(0.0, sigma);

    // Ancilla interference: |0> and |1> ancilla branches accumulate phase
    // difference lambda_z * tau, so reading 0 keeps amplitude
    // cos(lambda_z tau / 2) (up to a global-free local phase) on each z.
    std::vector<Amplitude> amps(std::size_t{1} << (n + 1), Amplitude{0.0, 0.0});
    std::copy(state.amplitudes().begin(), state.amplitudes().end(), amps.begin());
    QuantumState st(n + 1, std::move(amps));

    const int anc = n;
    st.apply(Gate::hadamard(anc));
    for (int q = 0; q < n; ++q)
        if (op.coeffs[static_cast<std::size_t>(q)] != 0.0)
            st.apply(Gate::phase(q, -op.coeffs[static_cast<std::size_t>(q)] * tau)
                         .with_controls({{anc, true}}));
    st.apply(Gate::phase(anc, op.offset * tau));
    st.apply(Gate::hadamard(anc));

    const int bit = st.measure({anc}, rng)[0];
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t base = bit ? dim : 0;
    std::vector<Amplitude> half(st.amplitudes().begin() + static_cast<std::ptrdiff_t>(base),
                                st.amplitudes().begin() + static_cast<std::ptrdiff_t>(base + dim));
    state = QuantumState(n, std::move(half));
    return {bit, tau};
}

ProjectionOutcome project_rodeo_attempt(const TrainedMachine& machine, const Eigen::MatrixXd& a,
                                        const Eigen::VectorXd& x, double sigma, Rng& rng,
                                        int cycles) {
    check_projection_inputs(machine, a, x);
    require(sigma > 0.0, "sigma must be positive");
    require(cycles >= 1, "cycles must be at least 1");

    ProjectionOutcome out;
    out.attempts_used = 1;
    QuantumState st = machine.state;
    for (int cycle = 0; cycle < cycles; ++cycle) {
        for (int i = 0; i < a.rows(); ++i) {
            auto step = rodeo_step(st, row_operator(a, x, i), sigma, rng);
            if (step.control_bit != 0) {
                out.failure_reason = "ancilla heralded an incompatible eigenvalue";
                return out;
            }
        }
    }
    out.succeeded = true;
    out.state = std::move(st);
    return out;
}

ProjectionOutcome gaussian_project(const TrainedMachine& machine, const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& x, double sigma) {
    check_projection_inputs(machine, a, x);
    require(sigma > 0.0, "sigma must be positive");

    ProjectionOutcome out;
    out.attempts_used = 1;
    QuantumState st = machine.state;
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < a.rows(); ++i) {
        DiagonalOperator op = row_operator(a, x, i);
        try {
            st.apply_diagonal_weights([&op, inv2s2](std::size_t z) {
                const double d = op.eigenvalue(z);
                return std::exp(-d * d * inv2s2);
            });
        } catch (const IncompatibleOutcome&) {
            out.failure_reason = "gaussian weights annihilated the state";
            return out;
        }
    }
    out.succeeded = true;
    out.state = std::move(st);
    return out;
}

int default_attempt_cap(int m) {
    require(m >= 0 && m < 28, "row count out of range");
    return 4 * (1 << m);
}

ProjectionOutcome repeat_until_success(const std::function<ProjectionOutcome()>& attempt,
                                       int max_attempts) {
    require(max_attempts >= 1, "need at least one attempt");
    ProjectionOutcome last;
    for (int k = 1; k <= max_attempts; ++k) {
        last = attempt();
        last.attempts_used = k;
        if (last.succeeded) return last;
    }
    return last;
}

}  // namespace qcs
