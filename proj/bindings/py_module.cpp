#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcs/experiment.hpp"
#include "qcs/metrics.hpp"

namespace py = pybind11;
using namespace qcs;

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Born-machine compressive imaging toolkit";

    // --- register and gates -------------------------------------------------
    py::class_<ControlSpec>(mod, "ControlSpec")
        .def(py::init<int, bool>(), py::arg("qubit"), py::arg("value"))
        .def_readwrite("qubit", &ControlSpec::qubit)
        .def_readwrite("value", &ControlSpec::value);

    py::class_<Gate>(mod, "Gate")
        .def_static("hadamard", &Gate::hadamard, py::arg("qubit"))
        .def_static("rot_y", &Gate::rot_y, py::arg("qubit"), py::arg("theta"))
        .def_static("rot_z", &Gate::rot_z, py::arg("qubit"), py::arg("theta"))
        .def_static("phase", &Gate::phase, py::arg("qubit"), py::arg("theta"))
        .def_static("pauli_x", &Gate::pauli_x, py::arg("qubit"))
        .def_static("givens", &Gate::givens, py::arg("a"), py::arg("b"), py::arg("theta"))
        .def("with_controls", &Gate::with_controls, py::arg("controls"))
        .def("inverse", &Gate::inverse);

    py::class_<Rng>(mod, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("uniform01", &Rng::uniform01)
        .def("normal", &Rng::normal)
        .def("below", &Rng::below, py::arg("n"))
        .def("bernoulli", &Rng::bernoulli, py::arg("p"));

    py::class_<QuantumState>(mod, "QuantumState")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def(py::init<int, std::vector<Amplitude>>(), py::arg("num_qubits"),
             py::arg("amplitudes"))
        .def_property_readonly("num_qubits", &QuantumState::num_qubits)
        .def_property_readonly("dim", &QuantumState::dim)
        .def("amplitudes", [](const QuantumState& s) { return s.amplitudes(); })
        .def("apply", &QuantumState::apply, py::arg("gate"))
        .def("measure", &QuantumState::measure, py::arg("qubits"), py::arg("rng"))
        .def("measure_all", &QuantumState::measure_all, py::arg("rng"))
        .def("postselect", &QuantumState::postselect, py::arg("qubits"), py::arg("bits"))
        .def("probabilities", &QuantumState::probabilities)
        .def("norm", &QuantumState::norm);

    mod.def("new_basis_state", &new_basis_state, py::arg("num_qubits"), py::arg("z"));
    mod.def("bitstring", &bitstring, py::arg("z"), py::arg("num_qubits"));
    mod.def("index_from_bits", &index_from_bits, py::arg("bits"));

    // --- encoding and scoring ----------------------------------------------
    mod.def("remap_midpoint", &remap_midpoint, py::arg("x"), py::arg("p"));
    mod.def("pixel_amplitudes", &pixel_amplitudes, py::arg("value"), py::arg("p"));
    mod.def("encode_signal", &encode_signal, py::arg("y"), py::arg("p"));
    mod.def("best_binary_image", &best_binary_image, py::arg("y"), py::arg("p"));
    mod.def("fidelity", &fidelity, py::arg("y"), py::arg("z"), py::arg("p"));
    mod.def("signal_entropy", &signal_entropy, py::arg("y"), py::arg("p"));
    mod.def("rll", &rll, py::arg("y"), py::arg("z"), py::arg("p"));

    // --- training ------------------------------------------------------------
    py::enum_<MachineProvenance>(mod, "MachineProvenance")
        .value("Direct", MachineProvenance::Direct)
        .value("Circuit", MachineProvenance::Circuit);

    py::class_<TrainingSet>(mod, "TrainingSet")
        .def(py::init<>())
        .def(py::init([](std::vector<Signal> signals, double midpoint) {
                 return TrainingSet{std::move(signals), midpoint};
             }),
             py::arg("signals"), py::arg("midpoint") = 0.5)
        .def_readwrite("signals", &TrainingSet::signals)
        .def_readwrite("midpoint", &TrainingSet::midpoint);

    py::class_<TrainedMachine>(mod, "TrainedMachine")
        .def_readonly("state", &TrainedMachine::state)
        .def_readonly("midpoint", &TrainedMachine::midpoint)
        .def_readonly("training_size", &TrainedMachine::training_size)
        .def_readonly("provenance", &TrainedMachine::provenance);

    mod.def("padded_signals", &padded_signals, py::arg("set"));
    mod.def("quantum_average_direct", &quantum_average_direct, py::arg("set"));
    mod.def("training_circuit_state", &training_circuit_state, py::arg("set"));
    mod.def("quantum_average_circuit", &quantum_average_circuit, py::arg("set"), py::arg("rng"),
            py::arg("max_attempts") = 0);
    mod.def("success_probability", &success_probability, py::arg("set"));
    mod.def("nll", &nll, py::arg("set"), py::arg("machine"));
    mod.def("distribution_entropy", &distribution_entropy, py::arg("state"));

    py::class_<CircuitTrainingResult>(mod, "CircuitTrainingResult")
        .def_readonly("succeeded", &CircuitTrainingResult::succeeded)
        .def_readonly("machine", &CircuitTrainingResult::machine)
        .def_readonly("attempts", &CircuitTrainingResult::attempts);

    py::class_<MidpointScan>(mod, "MidpointScan")
        .def_readonly("best_p", &MidpointScan::best_p)
        .def_readonly("curve", &MidpointScan::curve);
    mod.def("optimize_midpoint", &optimize_midpoint, py::arg("signals"), py::arg("step") = 0.01);

    // --- sensing --------------------------------------------------------------
    py::enum_<MatrixClass>(mod, "MatrixClass")
        .value("BinaryDense", MatrixClass::BinaryDense)
        .value("BinarySparse", MatrixClass::BinarySparse)
        .value("SinglePixel", MatrixClass::SinglePixel)
        .value("ColumnSupportedUniform", MatrixClass::ColumnSupportedUniform);

    py::class_<SensingMatrix>(mod, "SensingMatrix")
        .def(py::init<>())
        .def_readwrite("entries", &SensingMatrix::entries)
        .def_readwrite("cls", &SensingMatrix::cls)
        .def_readwrite("seed", &SensingMatrix::seed)
        .def_property_readonly("m", &SensingMatrix::m)
        .def_property_readonly("n", &SensingMatrix::n);

    mod.def("generate_matrix", &generate_matrix, py::arg("cls"), py::arg("m"), py::arg("n"),
            py::arg("seed"), py::arg("allow_repeats") = false);
    mod.def("apply_sensing", &apply_sensing, py::arg("a"), py::arg("y"));
    mod.def("save_matrix_csv", &save_matrix_csv, py::arg("path"), py::arg("a"));
    mod.def("load_matrix_csv", &load_matrix_csv, py::arg("path"));

    // --- projection -------------------------------------------------------------
    py::class_<PlaneRotation>(mod, "PlaneRotation")
        .def_readonly("qubit", &PlaneRotation::qubit)
        .def_readonly("angle", &PlaneRotation::angle);

    py::class_<DecompositionFactors>(mod, "DecompositionFactors")
        .def_readonly("u", &DecompositionFactors::u)
        .def_readonly("delta", &DecompositionFactors::delta)
        .def_readonly("l", &DecompositionFactors::l)
        .def_readonly("gates", &DecompositionFactors::gates)
        .def_readonly("sweep_gates", &DecompositionFactors::sweep_gates)
        .def_readonly("r", &DecompositionFactors::r)
        .def_readonly("source_checksum", &DecompositionFactors::source_checksum)
        .def_property_readonly("m", &DecompositionFactors::m)
        .def_property_readonly("n", &DecompositionFactors::n);

    py::class_<Syndrome>(mod, "Syndrome")
        .def_readonly("values", &Syndrome::values)
        .def_readonly("bits", &Syndrome::bits)
        .def_readonly("max_rounding_residual", &Syndrome::max_rounding_residual);

    py::class_<DiagonalOperator>(mod, "DiagonalOperator")
        .def(py::init([](std::vector<double> coeffs, double offset) {
                 DiagonalOperator op;
                 op.coeffs = std::move(coeffs);
                 op.offset = offset;
                 return op;
             }),
             py::arg("coeffs"), py::arg("offset"))
        .def_readwrite("coeffs", &DiagonalOperator::coeffs)
        .def_readwrite("offset", &DiagonalOperator::offset)
        .def("eigenvalue", &DiagonalOperator::eigenvalue, py::arg("z"));

    py::class_<ProjectionOutcome>(mod, "ProjectionOutcome")
        .def_readonly("succeeded", &ProjectionOutcome::succeeded)
        .def_readonly("attempts_used", &ProjectionOutcome::attempts_used)
        .def_readonly("state", &ProjectionOutcome::state)
        .def_readonly("failure_reason", &ProjectionOutcome::failure_reason);

    py::class_<RodeoStepResult>(mod, "RodeoStepResult")
        .def_readonly("control_bit", &RodeoStepResult::control_bit)
        .def_readonly("tau", &RodeoStepResult::tau);

    mod.def("matrix_checksum", &matrix_checksum, py::arg("a"));
    mod.def("decompose_sensing_matrix", &decompose_sensing_matrix, py::arg("a"),
            py::arg("rank_tol") = 1e-10);
    mod.def("compute_syndrome", &compute_syndrome, py::arg("factors"), py::arg("x"));
    mod.def("factors_to_json", &factors_to_json, py::arg("factors"));
    mod.def("factors_from_json", &factors_from_json, py::arg("text"));
    mod.def("pixel_postselect_attempt", &pixel_postselect_attempt, py::arg("machine"),
            py::arg("a"), py::arg("x"), py::arg("rng"));
    mod.def(
        "project_decomposition_attempt",
        [](const TrainedMachine& machine, const Eigen::MatrixXd& a, const Eigen::VectorXd& x,
           Rng& rng) { return project_decomposition_attempt(machine, a, x, rng); },
        py::arg("machine"), py::arg("a"), py::arg("x"), py::arg("rng"));
    mod.def("rodeo_step", &rodeo_step, py::arg("state"), py::arg("op"), py::arg("sigma"),
            py::arg("rng"));
    mod.def("project_rodeo_attempt", &project_rodeo_attempt, py::arg("machine"), py::arg("a"),
            py::arg("x"), py::arg("sigma"), py::arg("rng"), py::arg("cycles") = 1);
    mod.def("gaussian_project", &gaussian_project, py::arg("machine"), py::arg("a"),
            py::arg("x"), py::arg("sigma"));
    mod.def("default_attempt_cap", &default_attempt_cap, py::arg("m"));

    // --- experiment harness -------------------------------------------------
    py::enum_<Protocol>(mod, "Protocol")
        .value("Pixel", Protocol::Pixel)
        .value("Decomposition", Protocol::Decomposition)
        .value("Rodeo", Protocol::Rodeo)
        .value("Qite", Protocol::Qite);

    py::class_<ForestModel>(mod, "ForestModel")
        .def(py::init<>())
        .def_readwrite("young", &ForestModel::young)
        .def_readwrite("mature", &ForestModel::mature)
        .def_readwrite("noise_std", &ForestModel::noise_std)
        .def_readwrite("class_prior", &ForestModel::class_prior);

    py::class_<MidpointPolicy>(mod, "MidpointPolicy")
        .def(py::init<>())
        .def_readwrite("optimal", &MidpointPolicy::optimal)
        .def_readwrite("fixed_p", &MidpointPolicy::fixed_p);

    py::class_<ExperimentConfig>(mod, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("protocol", &ExperimentConfig::protocol)
        .def_readwrite("matrix_class", &ExperimentConfig::matrix_class)
        .def_readwrite("m_min", &ExperimentConfig::m_min)
        .def_readwrite("m_max", &ExperimentConfig::m_max)
        .def_readwrite("sigma", &ExperimentConfig::sigma)
        .def_readwrite("midpoint", &ExperimentConfig::midpoint)
        .def_readwrite("trials_per_pair", &ExperimentConfig::trials_per_pair)
        .def_readwrite("num_pairs", &ExperimentConfig::num_pairs)
        .def_readwrite("training_set_size", &ExperimentConfig::training_set_size)
        .def_readwrite("num_training_sets", &ExperimentConfig::num_training_sets)
        .def_readwrite("training_source", &ExperimentConfig::training_source)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("attempts_per_trial", &ExperimentConfig::attempts_per_trial)
        .def_readwrite("model", &ExperimentConfig::model)
        .def("resolved_sigma", &ExperimentConfig::resolved_sigma);

    py::class_<TrialRecord>(mod, "TrialRecord")
        .def_readonly("pair_id", &TrialRecord::pair_id)
        .def_readonly("trial_id", &TrialRecord::trial_id)
        .def_readonly("protocol", &TrialRecord::protocol)
        .def_readonly("matrix_class", &TrialRecord::matrix_class)
        .def_readonly("m", &TrialRecord::m)
        .def_readonly("sigma", &TrialRecord::sigma)
        .def_readonly("p", &TrialRecord::p)
        .def_readonly("succeeded", &TrialRecord::succeeded)
        .def_readonly("attempts", &TrialRecord::attempts)
        .def_readonly("sampled_bits", &TrialRecord::sampled_bits)
        .def_readonly("rll", &TrialRecord::rll);

    py::class_<EntropyCurve>(mod, "EntropyCurve")
        .def_readonly("set_id", &EntropyCurve::set_id)
        .def_readonly("points", &EntropyCurve::points);

    py::class_<ExperimentResult>(mod, "ExperimentResult")
        .def_readonly("config", &ExperimentResult::config)
        .def_readonly("midpoint", &ExperimentResult::midpoint)
        .def_readonly("trials", &ExperimentResult::trials)
        .def_readonly("entropy_curves", &ExperimentResult::entropy_curves);

    py::class_<SummaryRow>(mod, "SummaryRow")
        .def_readonly("protocol", &SummaryRow::protocol)
        .def_readonly("matrix_class", &SummaryRow::matrix_class)
        .def_readonly("m", &SummaryRow::m)
        .def_readonly("pairs", &SummaryRow::pairs)
        .def_readonly("q1_median_rll", &SummaryRow::q1_median_rll)
        .def_readonly("median_median_rll", &SummaryRow::median_median_rll)
        .def_readonly("q3_median_rll", &SummaryRow::q3_median_rll)
        .def_readonly("q1_failures", &SummaryRow::q1_failures)
        .def_readonly("median_failures", &SummaryRow::median_failures)
        .def_readonly("q3_failures", &SummaryRow::q3_failures);

    mod.def("sample_signal", &sample_signal, py::arg("model"), py::arg("rng"));
    mod.def("ideal_training_set", &ideal_training_set, py::arg("model"), py::arg("midpoint"));
    mod.def("build_training_sets", &build_training_sets, py::arg("model"), py::arg("count"),
            py::arg("size"), py::arg("midpoint"), py::arg("rng"));
    mod.def("config_from_json", &config_from_json, py::arg("text"));
    mod.def("config_to_json", &config_to_json, py::arg("cfg"));
    mod.def("run_experiment", &run_experiment, py::arg("cfg"), py::arg("threads") = 0,
            py::call_guard<py::gil_scoped_release>());
    mod.def("summarize", &summarize, py::arg("trials"));
    mod.def("quantile", &quantile, py::arg("values"), py::arg("q"));
    mod.def("write_trials_csv", &write_trials_csv, py::arg("path"), py::arg("trials"));
    mod.def("read_trials_csv", &read_trials_csv, py::arg("path"));
    mod.def("write_summary_csv", &write_summary_csv, py::arg("path"), py::arg("rows"));
    mod.def("write_report", &write_report, py::arg("out_dir"), py::arg("result"));
    mod.def("write_report_from_trials", &write_report_from_trials, py::arg("out_dir"),
            py::arg("trials"));

    mod.def("to_string",
            [](Protocol p) { return to_string(p); });
    mod.def("to_string",
            [](MatrixClass c) { return to_string(c); });
    mod.def("protocol_from_string", &protocol_from_string, py::arg("name"));
    mod.def("matrix_class_from_string", &matrix_class_from_string, py::arg("name"));
}
