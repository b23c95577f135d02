#pragma once

#include "ilc/cgpr.hpp"
#include "ilc/ilc_core.hpp"
#include "ilc/plant_sim.hpp"
#include "ilc/sea_robot.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace ilc {

enum class ErrorWindow {
    ActivePadded, // error over the cleaning cycles, zero-padded each side
    Full,         // whole record, no windowing
};

struct ExperimentConfig {
    std::optional<std::string> plant_file;
    SeaPlantParams sea_params;
    double perturb_relative_error = 0.0;
    std::uint64_t perturb_seed = 0;

    NoiseModel noise; // seed is mandatory in config files

    CleaningTask task;
    ArmGeometry arm;
    PerturbationSpec perturbation;

    Eigen::MatrixXd kernel_sigma_f;      // m x n
    Eigen::MatrixXd kernel_length_scale; // m x n
    double gamma_delta = 3.0;

    RhoPolicy rho_policy;
    double bandwidth_hz = 5.0;
    double taper_hz = 1.5;

    double epsilon = 0.01; // rad
    int k_max = 10;
    bool use_exact_model = false;
    ErrorWindow error_window = ErrorWindow::ActivePadded;
    Eigen::VectorXd weights; // diagonal of W; identity when empty
    double pad_s = 5.0;
    double obs_rel_threshold = 1e-6; // observed-bin selection vs. peak input

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);

struct IterationRecord {
    int k = 0;
    Eigen::VectorXd max_error; // per joint, rad
    double wall_time_s = 0.0;
};

struct RunResult {
    std::vector<IterationRecord> records;
    bool converged = false;
    Trajectory trajectory;
    FrfEstimate frf; // zero variance when the exact model was injected
    ModelInverse inverse;
    GainSchedule gains;
    ContractionReport contraction;
    std::vector<TimeSeries> inputs;  // per iteration
    std::vector<TimeSeries> outputs; // per iteration
    std::vector<TimeSeries> errors;  // per iteration
};

/// Full ILC pipeline: initial run, perturbation run, model estimation,
/// gain certification, then iterative input correction.
RunResult run_algorithm1(const ExperimentConfig& cfg);

/// Gain feasibility analysis only (steps through model estimation and
/// schedule construction without the correction iterations).
RunResult certify(const ExperimentConfig& cfg);

void export_report(const RunResult& result, const ExperimentConfig& cfg,
                   const std::string& out_dir);

/// Initial-iteration max tracking error per joint for each period,
/// ordered by period descending. Returns one row per period: [T, E_1..E_m].
Eigen::MatrixXd speed_sweep(const ExperimentConfig& cfg,
                            const std::vector<double>& periods);

} // namespace ilc
