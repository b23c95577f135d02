#pragma once

#include "ilc/kernels.hpp"
#include "ilc/signals.hpp"

#include <Eigen/Dense>
#include <vector>

namespace ilc {

/// Posterior over one row of the frequency-response matrix.
struct FrfRow {
    Eigen::VectorXd freq_hz;  // evaluation grid
    Eigen::MatrixXcd mean;    // n x q_eval
    Eigen::MatrixXd variance; // n x q_eval, full complex variance V[S^P]
};

/// Posterior frequency-response matrix over the evaluation grid.
struct FrfEstimate {
    Eigen::VectorXd freq_hz;
    std::vector<Eigen::MatrixXcd> mean;    // per frequency, m x n
    std::vector<Eigen::MatrixXd> variance; // per frequency, m x n (V[S^P])
    Eigen::VectorXd noise_var;             // per output, spectral domain
};

/// GPR with the input-weighted kernel for one output row. `outputs` holds
/// O_{j,O} on the context's observed frequencies; `noise_var` is the
/// complex noise variance of those observations.
FrfRow estimate_row(const WeightedKernelContext& ctx,
                    const Eigen::VectorXcd& outputs,
                    double noise_var,
                    const Eigen::VectorXd& eval_grid_hz);

/// Single-input reference: standard GPR with the raw kernel on the ratio
/// observations O/I, with per-frequency noise covariance on the ratios.
/// Exists as an independent cross-check of estimate_row for n = 1.
FrfRow ratio_gpr_reference(const Eigen::VectorXd& freq_hz,
                           const Eigen::VectorXcd& ratios,
                           const SisoKernel& kernel,
                           const Eigen::VectorXd& ratio_noise_var,
                           const Eigen::VectorXd& eval_grid_hz);

/// delta_bar = gamma * sqrt(V[S^P]/2), per frequency, m x n.
std::vector<Eigen::MatrixXd> delta_bar_from_variance(const FrfEstimate& est,
                                                     double gamma_delta);

/// Delta_bar_{j,l} = sum_k |S_dagger_{k,l}| delta_bar_{j,k}, per frequency, m x m.
std::vector<Eigen::MatrixXd> uncertainty_bounds(
    const std::vector<Eigen::MatrixXcd>& s_dagger,
    const std::vector<Eigen::MatrixXd>& delta_bar);

/// Per-channel sample variance of a detrended quiet hold segment
/// (time-domain units). Requires at least 1 s of data.
Eigen::VectorXd estimate_noise_variance(const TimeSeries& quiet);

/// Variance of one complex DFT bin of length-n white noise with
/// time-domain variance v, under the unnormalized forward transform.
inline double spectral_noise_variance(double time_var, Eigen::Index n_samples) {
    return time_var * static_cast<double>(n_samples);
}

} // namespace ilc
