#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace ilc {

/// Squared-exponential SISO kernel over frequency (Hz).
struct SisoKernel {
    double sigma_f = 1.0;      // output scale
    double length_scale = 1.0; // Hz

    SisoKernel() = default;
    SisoKernel(double sigma_f, double length_scale);

    /// sigma_f^2 * exp(-(w1-w2)^2 / (2 l^2)); real and symmetric.
    double eval(double w1_hz, double w2_hz) const;
};

/// Observed frequencies with their complex input spectra, weighting one
/// SISO kernel per input channel.
struct WeightedKernelContext {
    std::vector<SisoKernel> kernels; // one per input channel
    Eigen::VectorXd freq_hz;         // q observed frequencies
    Eigen::MatrixXcd inputs;         // n x q, I_{l,O}(omega)

    Eigen::Index n_inputs() const { return inputs.rows(); }
    Eigen::Index n_freqs() const { return inputs.cols(); }
    void validate() const; // dimensions, nonzero input at every frequency
};

/// Input-weighted kernel between observed frequencies r and s:
/// sum_l I_l(w_r) k_l(w_r, w_s) conj(I_l(w_s)).
std::complex<double> eval_weighted(const WeightedKernelContext& ctx,
                                   Eigen::Index r, Eigen::Index s);

struct CovarianceSet {
    Eigen::MatrixXcd K;      // q x q self-covariance K'
    Eigen::RowVectorXcd K_T; // 1 x q test row for point [w, e_l]
    double K0;               // prior variance at test point
};

/// Covariances for a test point (test_freq, unit input on channel `test_channel`).
CovarianceSet assemble_covariances(const WeightedKernelContext& ctx,
                                   double test_freq_hz, Eigen::Index test_channel);

bool is_hermitian_psd(const Eigen::MatrixXcd& M, double tol = 1e-10);

} // namespace ilc
