// Python bindings for the main library operations.

#include "ilc/cgpr.hpp"
#include "ilc/errors.hpp"
#include "ilc/harness.hpp"
#include "ilc/ilc_core.hpp"
#include "ilc/kernels.hpp"
#include "ilc/plant_sim.hpp"
#include "ilc/sea_robot.hpp"
#include "ilc/signals.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ilc;

PYBIND11_MODULE(_ilc, m) {
    m.doc() = "Frequency-domain MIMO iterative learning control";

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def_readwrite("sample_rate", &TimeSeries::sample_rate)
        .def_readwrite("t0", &TimeSeries::t0)
        .def_readwrite("data", &TimeSeries::data)
        .def("channels", &TimeSeries::channels)
        .def("samples", &TimeSeries::samples)
        .def("duration", &TimeSeries::duration);

    py::class_<Spectrum>(m, "Spectrum")
        .def(py::init<>())
        .def_readwrite("freq_hz", &Spectrum::freq_hz)
        .def_readwrite("data", &Spectrum::data)
        .def("channels", &Spectrum::channels)
        .def("bins", &Spectrum::bins);

    m.def("dft_grid", &dft_grid, py::arg("n_samples"), py::arg("sample_rate"));
    m.def("to_frequency", &to_frequency);
    m.def("to_time", &to_time, py::arg("spectrum"), py::arg("n_samples"),
          py::arg("sample_rate"), py::arg("t0") = 0.0);

    py::class_<SisoKernel>(m, "SisoKernel")
        .def(py::init<double, double>(), py::arg("sigma_f"), py::arg("length_scale"))
        .def("eval", &SisoKernel::eval);

    py::class_<RationalTf>(m, "RationalTf")
        .def(py::init<>())
        .def_readwrite("num", &RationalTf::num)
        .def_readwrite("den", &RationalTf::den)
        .def("eval", &RationalTf::eval);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_readwrite("std_dev", &NoiseModel::std_dev)
        .def_readwrite("seed", &NoiseModel::seed);

    py::class_<SeaPlantParams>(m, "SeaPlantParams")
        .def(py::init<>())
        .def_readwrite("omega0_hz", &SeaPlantParams::omega0_hz)
        .def_readwrite("zeta", &SeaPlantParams::zeta)
        .def_readwrite("coupling", &SeaPlantParams::coupling)
        .def_readwrite("a_hz", &SeaPlantParams::a_hz);

    py::class_<LtiPlant>(m, "LtiPlant")
        .def(py::init<>())
        .def_readonly("m", &LtiPlant::m)
        .def_readonly("n", &LtiPlant::n);

    m.def("sea_like_plant", &sea_like_plant, py::arg("params") = SeaPlantParams{});
    m.def("perturb_plant", &perturb_plant, py::arg("plant"), py::arg("relative_error"),
          py::arg("seed"));
    m.def("frequency_response", &frequency_response, py::arg("plant"), py::arg("w_hz"));
    m.def("simulate", &simulate, py::arg("plant"), py::arg("input"), py::arg("noise"));

    m.def("weighted_pseudo_inverse", &weighted_pseudo_inverse,
          py::arg("s_hat"), py::arg("w_diag"));
    m.def("contraction_gain", &contraction_gain, py::arg("delta"), py::arg("rho"));
    m.def("spectral_radius", &spectral_radius);

    py::class_<RhoBound>(m, "RhoBound")
        .def_readonly("rho_bar", &RhoBound::rho_bar)
        .def_readonly("feasible", &RhoBound::feasible);
    m.def("rho_upper_bound", &rho_upper_bound);

    py::class_<ArmGeometry>(m, "ArmGeometry")
        .def(py::init<>())
        .def_readwrite("l1", &ArmGeometry::l1)
        .def_readwrite("l2", &ArmGeometry::l2)
        .def_readwrite("l3", &ArmGeometry::l3)
        .def_readwrite("phi0", &ArmGeometry::phi0);

    py::class_<TipPose>(m, "TipPose")
        .def_readonly("x", &TipPose::x)
        .def_readonly("y", &TipPose::y)
        .def_readonly("theta", &TipPose::theta);

    m.def("forward_kinematics", &forward_kinematics, py::arg("geom"), py::arg("theta"));
    m.def("inverse_kinematics", &inverse_kinematics, py::arg("geom"), py::arg("l_s_cm"));

    py::class_<CleaningTask>(m, "CleaningTask")
        .def(py::init<>())
        .def_readwrite("period_s", &CleaningTask::period_s)
        .def_readwrite("stroke_cm", &CleaningTask::stroke_cm)
        .def_readwrite("quiet_s", &CleaningTask::quiet_s)
        .def_readwrite("sample_rate", &CleaningTask::sample_rate)
        .def("cycles", &CleaningTask::cycles)
        .def("total_duration", &CleaningTask::total_duration);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("y_d", &Trajectory::y_d)
        .def_readonly("theta_d", &Trajectory::theta_d);
    m.def("cleaning_trajectory", &cleaning_trajectory, py::arg("task"), py::arg("geom"));

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("k", &IterationRecord::k)
        .def_readonly("max_error", &IterationRecord::max_error)
        .def_readonly("wall_time_s", &IterationRecord::wall_time_s);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("records", &RunResult::records)
        .def_readonly("converged", &RunResult::converged)
        .def_readonly("inputs", &RunResult::inputs)
        .def_readonly("outputs", &RunResult::outputs)
        .def_readonly("errors", &RunResult::errors);

    m.def("load_config", &load_config, py::arg("path"));
    m.def("run_algorithm1", &run_algorithm1, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("speed_sweep", &speed_sweep, py::arg("config"), py::arg("periods"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &ExperimentConfig::epsilon)
        .def_readwrite("k_max", &ExperimentConfig::k_max)
        .def_readwrite("use_exact_model", &ExperimentConfig::use_exact_model)
        .def_readwrite("noise", &ExperimentConfig::noise)
        .def_readwrite("task", &ExperimentConfig::task);

    py::register_exception<IllConditionedError>(m, "IllConditionedError");
    py::register_exception<RankDeficiencyError>(m, "RankDeficiencyError");
    py::register_exception<UnreachableError>(m, "UnreachableError");
    py::register_exception<CertificationError>(m, "CertificationError");
}
