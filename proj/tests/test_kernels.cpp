#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilc/kernels.hpp"

#include <complex>
#include <random>

using namespace ilc;
using cplx = std::complex<double>;

namespace {

WeightedKernelContext random_context(Eigen::Index n, Eigen::Index q, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    WeightedKernelContext ctx;
    ctx.freq_hz.resize(q);
    for (Eigen::Index k = 0; k < q; ++k) ctx.freq_hz(k) = 0.1 * double(k + 1);
    ctx.inputs.resize(n, q);
    for (Eigen::Index l = 0; l < n; ++l) {
        ctx.kernels.emplace_back(pos(gen), pos(gen));
        for (Eigen::Index k = 0; k < q; ++k) ctx.inputs(l, k) = cplx(dist(gen), dist(gen));
    }
    return ctx;
}

Eigen::MatrixXcd gram(const WeightedKernelContext& ctx) {
    const Eigen::Index q = ctx.n_freqs();
    Eigen::MatrixXcd K(q, q);
    for (Eigen::Index r = 0; r < q; ++r)
        for (Eigen::Index s = 0; s < q; ++s) K(r, s) = eval_weighted(ctx, r, s);
    return K;
}

} // namespace

TEST_CASE("siso kernel values") {
    SisoKernel k(2.0, 0.5);
    CHECK(k.eval(1.0, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    // exp(-(0.5)^2 / (2 * 0.25)) = exp(-0.5)
    CHECK(k.eval(1.0, 1.5) == doctest::Approx(4.0 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(k.eval(1.0, 1.5) == k.eval(1.5, 1.0));
    CHECK_THROWS(SisoKernel(0.0, 1.0));
    CHECK_THROWS(SisoKernel(1.0, -1.0));
}

TEST_CASE("weighted kernel hand expansion with a complex input") {
    // Single input channel, inputs I = [1 - i, 2] at two frequencies.
    // k'(r,s) = I(r) k(w_r, w_s) conj(I(s)).
    WeightedKernelContext ctx;
    ctx.kernels.emplace_back(1.0, 1.0);
    ctx.freq_hz.resize(2);
    ctx.freq_hz << 0.0, 1.0;
    ctx.inputs.resize(1, 2);
    ctx.inputs << cplx(1.0, -1.0), cplx(2.0, 0.0);

    const double k01 = std::exp(-0.5);
    CHECK(std::abs(eval_weighted(ctx, 0, 0) - cplx(2.0, 0.0)) < 1e-14);          // |1-i|^2
    CHECK(std::abs(eval_weighted(ctx, 1, 1) - cplx(4.0, 0.0)) < 1e-14);          // |2|^2
    CHECK(std::abs(eval_weighted(ctx, 0, 1) - cplx(2.0 * k01, -2.0 * k01)) < 1e-14);
    CHECK(std::abs(eval_weighted(ctx, 1, 0) - std::conj(eval_weighted(ctx, 0, 1))) < 1e-14);
}

TEST_CASE("multi-channel weighting sums per channel") {
    WeightedKernelContext ctx = random_context(3, 5, 21);
    cplx direct = 0.0;
    for (Eigen::Index l = 0; l < 3; ++l) {
        const SisoKernel& kl = ctx.kernels[size_t(l)];
        direct += ctx.inputs(l, 1) * kl.eval(ctx.freq_hz(1), ctx.freq_hz(3)) *
                  std::conj(ctx.inputs(l, 3));
    }
    CHECK(std::abs(eval_weighted(ctx, 1, 3) - direct) < 1e-13);
}

TEST_CASE("gram matrix is hermitian psd") {
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        WeightedKernelContext ctx = random_context(2, 8, seed);
        Eigen::MatrixXcd K = gram(ctx);
        CHECK(is_hermitian_psd(K));
        CHECK((K - K.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        for (Eigen::Index r = 0; r < K.rows(); ++r) CHECK(K(r, r).real() >= -1e-12);
    }
}

TEST_CASE("unit inputs reduce the weighted kernel to the raw kernel") {
    WeightedKernelContext ctx;
    ctx.kernels.emplace_back(1.5, 0.7);
    ctx.freq_hz.resize(4);
    ctx.freq_hz << 0.0, 0.3, 0.9, 2.0;
    ctx.inputs = Eigen::MatrixXcd::Ones(1, 4);
    for (Eigen::Index r = 0; r < 4; ++r)
        for (Eigen::Index s = 0; s < 4; ++s) {
            cplx v = eval_weighted(ctx, r, s);
            CHECK(std::abs(v - cplx(ctx.kernels[0].eval(ctx.freq_hz(r), ctx.freq_hz(s)), 0.0)) <
                  1e-14);
        }
}

TEST_CASE("covariance set matches the direct definition") {
    WeightedKernelContext ctx = random_context(2, 6, 77);
    const double wt = 0.45;
    CovarianceSet cov = assemble_covariances(ctx, wt, 1);
    CHECK((cov.K - gram(ctx)).cwiseAbs().maxCoeff() < 1e-13);
    const SisoKernel& k1 = ctx.kernels[1];
    for (Eigen::Index s = 0; s < 6; ++s) {
        cplx expect = k1.eval(wt, ctx.freq_hz(s)) * std::conj(ctx.inputs(1, s));
        CHECK(std::abs(cov.K_T(s) - expect) < 1e-13);
    }
    CHECK(cov.K0 == doctest::Approx(k1.eval(wt, wt)).epsilon(1e-14));
}

TEST_CASE("context validation") {
    WeightedKernelContext ctx = random_context(2, 4, 9);
    CHECK_NOTHROW(ctx.validate());
    ctx.inputs.col(2).setZero(); // no excitation at one observed frequency
    CHECK_THROWS(ctx.validate());
    ctx = random_context(2, 4, 9);
    ctx.kernels.pop_back();
    CHECK_THROWS(ctx.validate());
}

TEST_CASE("is_hermitian_psd rejects indefinite and non-hermitian input") {
    Eigen::MatrixXcd M(2, 2);
    M << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3 and -1
    CHECK_FALSE(is_hermitian_psd(M));
    M << 1.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 1.0; // not Hermitian
    CHECK_FALSE(is_hermitian_psd(M));
    M << 2.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 2.0; // Hermitian, eigs 1 and 3
    CHECK(is_hermitian_psd(M));
}
