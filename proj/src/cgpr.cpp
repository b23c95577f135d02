#include "ilc/cgpr.hpp"

#include "ilc/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ilc {
namespace {

// Hermitian factorization with jitter escalation: starts at
// 1e-12 * trace/q and grows by 10x up to 1e-6 * trace/q.
Eigen::LDLT<Eigen::MatrixXcd> factor_with_jitter(const Eigen::MatrixXcd& A) {
    const Eigen::Index q = A.rows();
    const double scale = A.trace().real() / static_cast<double>(q);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    double jitter = 1e-12 * scale;
    Eigen::MatrixXcd Aj = A;
    for (int attempt = 0; attempt < 8; ++attempt) {
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            // residual check on a probe solve
            Eigen::VectorXcd b = Eigen::VectorXcd::Ones(q);
            Eigen::VectorXcd x = ldlt.solve(b);
            if ((Aj * x - b).norm() <= 1e-8 * b.norm()) return ldlt;
        }
        if (jitter > 1e-6 * scale) break;
        Aj = A + jitter * Eigen::MatrixXcd::Identity(q, q);
        ldlt.compute(Aj);
        jitter *= 10.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    const double emax = es.eigenvalues().maxCoeff();
    const double cond = emin > 0.0 ? emax / emin : std::numeric_limits<double>::infinity();
    throw IllConditionedError("cgpr: covariance matrix is ill-conditioned", cond);
}

double clamp_variance(double v, double prior_var) {
    const double tol = 1e-12 * std::max(1.0, prior_var);
    if (v < -tol) throw std::runtime_error("cgpr: negative posterior variance beyond tolerance");
    return v < 0.0 ? 0.0 : v;
}

} // namespace

FrfRow estimate_row(const WeightedKernelContext& ctx,
                    const Eigen::VectorXcd& outputs,
                    double noise_var,
                    const Eigen::VectorXd& eval_grid_hz) {
    ctx.validate();
    if (noise_var < 0.0) throw std::invalid_argument("estimate_row: noise_var must be >= 0");
    if (outputs.size() != ctx.n_freqs())
        throw std::invalid_argument("estimate_row: output size != observed frequency count");

    const Eigen::Index q = ctx.n_freqs();
    const Eigen::Index n = ctx.n_inputs();
    const Eigen::Index qe = eval_grid_hz.size();

    // K' is shared across test channels; the test row is not.
    CovarianceSet cov0 = assemble_covariances(ctx, eval_grid_hz.size() ? eval_grid_hz(0) : 0.0, 0);
    Eigen::MatrixXcd A = cov0.K + noise_var * Eigen::MatrixXcd::Identity(q, q);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt = factor_with_jitter(A);
    Eigen::VectorXcd alpha = ldlt.solve(outputs);

    FrfRow row;
    row.freq_hz = eval_grid_hz;
    row.mean.resize(n, qe);
    row.variance.resize(n, qe);
    for (Eigen::Index l = 0; l < n; ++l) {
        const SisoKernel& kl = ctx.kernels[static_cast<size_t>(l)];
        for (Eigen::Index e = 0; e < qe; ++e) {
            Eigen::RowVectorXcd kt(q);
            for (Eigen::Index s = 0; s < q; ++s)
                kt(s) = kl.eval(eval_grid_hz(e), ctx.freq_hz(s)) * std::conj(ctx.inputs(l, s));
            row.mean(l, e) = kt * alpha;
            const double k0 = kl.eval(eval_grid_hz(e), eval_grid_hz(e));
            const std::complex<double> quad = kt * ldlt.solve(kt.adjoint());
            row.variance(l, e) = clamp_variance(k0 - quad.real(), k0);
        }
    }
    return row;
}

FrfRow ratio_gpr_reference(const Eigen::VectorXd& freq_hz,
                           const Eigen::VectorXcd& ratios,
                           const SisoKernel& kernel,
                           const Eigen::VectorXd& ratio_noise_var,
                           const Eigen::VectorXd& eval_grid_hz) {
    const Eigen::Index q = freq_hz.size();
    if (ratios.size() != q || ratio_noise_var.size() != q)
        throw std::invalid_argument("ratio_gpr_reference: size mismatch");

    Eigen::MatrixXcd K(q, q);
    for (Eigen::Index r = 0; r < q; ++r)
        for (Eigen::Index s = 0; s < q; ++s)
            K(r, s) = kernel.eval(freq_hz(r), freq_hz(s));
    Eigen::MatrixXcd A = K;
    A.diagonal() += ratio_noise_var.cast<std::complex<double>>();
    Eigen::LDLT<Eigen::MatrixXcd> ldlt = factor_with_jitter(A);
    Eigen::VectorXcd alpha = ldlt.solve(ratios);

    FrfRow row;
    row.freq_hz = eval_grid_hz;
    row.mean.resize(1, eval_grid_hz.size());
    row.variance.resize(1, eval_grid_hz.size());
    for (Eigen::Index e = 0; e < eval_grid_hz.size(); ++e) {
        Eigen::RowVectorXcd kt(q);
        for (Eigen::Index s = 0; s < q; ++s)
            kt(s) = kernel.eval(eval_grid_hz(e), freq_hz(s));
        row.mean(0, e) = kt * alpha;
        const std::complex<double> quad = kt * ldlt.solve(kt.adjoint());
        const double k0 = kernel.eval(eval_grid_hz(e), eval_grid_hz(e));
        row.variance(0, e) = clamp_variance(k0 - quad.real(), k0);
    }
    return row;
}

std::vector<Eigen::MatrixXd> delta_bar_from_variance(const FrfEstimate& est,
                                                     double gamma_delta) {
    if (gamma_delta <= 0.0) throw std::invalid_argument("delta_bar_from_variance: gamma_delta must be > 0");
    std::vector<Eigen::MatrixXd> out;
    out.reserve(est.variance.size());
    for (const Eigen::MatrixXd& v : est.variance)
        out.push_back(gamma_delta * (v / 2.0).cwiseSqrt());
    return out;
}

std::vector<Eigen::MatrixXd> uncertainty_bounds(
    const std::vector<Eigen::MatrixXcd>& s_dagger,
    const std::vector<Eigen::MatrixXd>& delta_bar) {
    if (s_dagger.size() != delta_bar.size())
        throw std::invalid_argument("uncertainty_bounds: frequency count mismatch");
    std::vector<Eigen::MatrixXd> out;
    out.reserve(s_dagger.size());
    for (size_t f = 0; f < s_dagger.size(); ++f) {
        // delta_bar is m x n, S_dagger is n x m; result is m x m.
        out.push_back(delta_bar[f] * s_dagger[f].cwiseAbs());
    }
    return out;
}

Eigen::VectorXd estimate_noise_variance(const TimeSeries& quiet) {
    const Eigen::Index n = quiet.samples();
    if (static_cast<double>(n) < quiet.sample_rate)
        throw std::invalid_argument("estimate_noise_variance: segment shorter than 1 s");
    Eigen::VectorXd out(quiet.channels());
    // Linear detrend per channel, then sample variance.
    Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    const double tm = t.mean();
    const double stt = (t.array() - tm).square().sum();
    for (Eigen::Index c = 0; c < quiet.channels(); ++c) {
        Eigen::VectorXd y = quiet.data.row(c).transpose();
        const double ym = y.mean();
        const double slope = ((t.array() - tm) * (y.array() - ym)).sum() / stt;
        Eigen::VectorXd resid = y.array() - ym - slope * (t.array() - tm);
        out(c) = resid.squaredNorm() / static_cast<double>(n - 1);
    }
    return out;
}

} // namespace ilc
