"""End-to-end smoke tests for the python module."""

import csv
import math
import statistics

import pytest

import qcs


def test_encoding_anchors():
    assert qcs.remap_midpoint(0.0, 0.3) == 0.0
    assert qcs.remap_midpoint(1.0, 0.3) == 1.0
    assert qcs.remap_midpoint(0.3, 0.3) == pytest.approx(0.5, abs=1e-12)
    assert qcs.remap_midpoint(0.3, 0.2) == pytest.approx(0.6834299894118887, abs=1e-12)
    assert qcs.best_binary_image([0.1, 0.2, 0.6, 0.5, 0.2, 0.1], 0.5) == 12
    assert qcs.bitstring(12, 6) == "001100"


def test_metric_anchors():
    assert qcs.fidelity([2 / 3, 1 / 3], 1, 0.5) == pytest.approx(9 / 16, abs=1e-12)
    assert qcs.fidelity([1.0, 0.0], 1, 0.5) == 1.0
    assert qcs.rll([1.0, 0.0], 2, 0.5) == -math.inf
    total = sum(qcs.fidelity([0.3, 0.7, 0.5], z, 0.5) for z in range(8))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_state_and_gates():
    st = qcs.new_basis_state(2, 3)
    assert st.amplitudes()[3] == 1.0
    st = qcs.QuantumState(2)
    st.apply(qcs.Gate.hadamard(0))
    st.apply(qcs.Gate.hadamard(1))
    assert st.probabilities() == pytest.approx([0.25] * 4, abs=1e-12)
    prob = st.postselect([0], [1])
    assert prob == pytest.approx(0.5, abs=1e-12)


def test_training_matches_direct():
    ts = qcs.TrainingSet([[0.2, 0.8], [0.7, 0.3]], 0.5)
    machine = qcs.quantum_average_direct(ts)
    assert machine.state.norm() == pytest.approx(1.0, abs=1e-12)
    assert qcs.success_probability(ts) >= 0.5
    res = qcs.quantum_average_circuit(ts, qcs.Rng(5))
    assert res.succeeded
    direct = machine.state.amplitudes()
    circuit = res.machine.state.amplitudes()
    assert all(abs(a - b) < 1e-10 for a, b in zip(direct, circuit))


def test_projection_round_trip():
    a = qcs.generate_matrix(qcs.MatrixClass.SinglePixel, 2, 4, 11)
    factors = qcs.decompose_sensing_matrix(a.entries)
    assert factors.m == 2 and factors.n == 4
    x = qcs.apply_sensing(a, [1.0, 0.0, 1.0, 0.0])
    syn = qcs.compute_syndrome(factors, x)
    assert syn.max_rounding_residual < 1e-9
    assert list(syn.bits) in ([0, 1], [1, 0], [0, 0], [1, 1])

    machine = qcs.quantum_average_direct(qcs.TrainingSet([[1.0, 0.0, 1.0, 0.0]], 0.5))
    out = qcs.project_decomposition_attempt(machine, a.entries, x, qcs.Rng(3))
    assert out.succeeded
    assert out.state.norm() == pytest.approx(1.0, abs=1e-10)


def test_experiment_and_independent_summary(tmp_path):
    cfg = qcs.ExperimentConfig()
    cfg.protocol = qcs.Protocol.Qite
    cfg.m_min = 0
    cfg.m_max = 2
    cfg.trials_per_pair = 16
    cfg.num_pairs = 4
    cfg.num_training_sets = 1
    cfg.training_set_size = 4
    cfg.master_seed = 42
    result = qcs.run_experiment(cfg, 2)
    assert len(result.trials) == 4 * 3 * 16

    out = tmp_path / "report"
    qcs.write_report(str(out), result)
    for name in [
        "trials.csv",
        "summary.csv",
        "entropy.csv",
        "config.json",
        "rll_vs_m.svg",
        "failures_vs_m.svg",
        "entropy_vs_p.svg",
    ]:
        assert (out / name).exists(), name

    # Recompute the summary medians independently from trials.csv.
    by_key = {}
    with open(out / "trials.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["protocol"], row["matrix_class"], int(row["m"]))
            pair = int(row["pair_id"])
            rec = by_key.setdefault(key, {})
            stats = rec.setdefault(pair, {"rll": [], "failures": 0})
            if row["succeeded"] == "1":
                stats["rll"].append(float(row["rll"]))
            else:
                stats["failures"] += 1

    summary = {}
    with open(out / "summary.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["protocol"], row["matrix_class"], int(row["m"]))
            summary[key] = row

    assert set(summary) == set(by_key)
    for key, pairs in by_key.items():
        pair_medians = [
            statistics.median(stats["rll"]) for stats in pairs.values() if stats["rll"]
        ]
        failures = [stats["failures"] for stats in pairs.values()]
        want = summary[key]
        assert float(want["median_median_rll"]) == pytest.approx(
            statistics.median(pair_medians), abs=1e-9
        )
        assert float(want["median_failures"]) == pytest.approx(
            statistics.median(failures), abs=1e-9
        )
        assert int(want["pairs"]) == len(pairs)

    # Determinism across thread counts.
    again = qcs.run_experiment(cfg, 1)
    assert [t.sampled_bits for t in again.trials] == [
        t.sampled_bits for t in result.trials
    ]
