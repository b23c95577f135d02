#include "ilc/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace ilc {

SisoKernel::SisoKernel(double sigma_f, double length_scale)
    : sigma_f(sigma_f), length_scale(length_scale) {
    if (sigma_f <= 0.0 || length_scale <= 0.0)
        throw std::invalid_argument("SisoKernel: sigma_f and length_scale must be positive");
}

double SisoKernel::eval(double w1_hz, double w2_hz) const {
    const double d = w1_hz - w2_hz;
    return sigma_f * sigma_f * std::exp(-d * d / (2.0 * length_scale * length_scale));
}

void WeightedKernelContext::validate() const {
    if (static_cast<Eigen::Index>(kernels.size()) != n_inputs())
        throw std::invalid_argument("WeightedKernelContext: kernel count != input channels");
    if (freq_hz.size() != n_freqs())
        throw std::invalid_argument("WeightedKernelContext: frequency grid size mismatch");
    for (Eigen::Index s = 0; s < n_freqs(); ++s)
        if (inputs.col(s).cwiseAbs().maxCoeff() == 0.0)
            throw std::invalid_argument("WeightedKernelContext: zero input at an observed frequency");
}

std::complex<double> eval_weighted(const WeightedKernelContext& ctx,
                                   Eigen::Index r, Eigen::Index s) {
    if (r < 0 || r >= ctx.n_freqs() || s < 0 || s >= ctx.n_freqs())
        throw std::invalid_argument("eval_weighted: frequency index out of range");
    std::complex<double> acc = 0.0;
    for (Eigen::Index l = 0; l < ctx.n_inputs(); ++l)
        acc += ctx.inputs(l, r) * ctx.kernels[static_cast<size_t>(l)].eval(ctx.freq_hz(r), ctx.freq_hz(s))
               * std::conj(ctx.inputs(l, s));
    return acc;
}

CovarianceSet assemble_covariances(const WeightedKernelContext& ctx,
                                   double test_freq_hz, Eigen::Index test_channel) {
    if (test_channel < 0 || test_channel >= ctx.n_inputs())
        throw std::invalid_argument("assemble_covariances: channel out of range");
    const Eigen::Index q = ctx.n_freqs();
    CovarianceSet cov;
    cov.K.setZero(q, q);
    for (Eigen::Index l = 0; l < ctx.n_inputs(); ++l) {
        const SisoKernel& k = ctx.kernels[static_cast<size_t>(l)];
        for (Eigen::Index r = 0; r < q; ++r)
            for (Eigen::Index s = 0; s < q; ++s)
                cov.K(r, s) += ctx.inputs(l, r) * k.eval(ctx.freq_hz(r), ctx.freq_hz(s))
                               * std::conj(ctx.inputs(l, s));
    }
    // Test point [w, e_l]: only channel l carries weight one.
    const SisoKernel& kl = ctx.kernels[static_cast<size_t>(test_channel)];
    cov.K_T.resize(q);
    for (Eigen::Index s = 0; s < q; ++s)
        cov.K_T(s) = kl.eval(test_freq_hz, ctx.freq_hz(s)) * std::conj(ctx.inputs(test_channel, s));
    cov.K0 = kl.eval(test_freq_hz, test_freq_hz);
    return cov;
}

bool is_hermitian_psd(const Eigen::MatrixXcd& M, double tol) {
    if (M.rows() != M.cols())
        throw std::invalid_argument("is_hermitian_psd: matrix not square");
    if ((M - M.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

} // namespace ilc
