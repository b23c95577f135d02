#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilc/cgpr.hpp"
#include "ilc/errors.hpp"

#include <complex>
#include <random>

using namespace ilc;
using cplx = std::complex<double>;

namespace {

WeightedKernelContext siso_context(const Eigen::VectorXd& freq, const Eigen::VectorXcd& inputs,
                                   const SisoKernel& k) {
    WeightedKernelContext ctx;
    ctx.kernels.push_back(k);
    ctx.freq_hz = freq;
    ctx.inputs = inputs.transpose();
    return ctx;
}

} // namespace

TEST_CASE("noiseless interpolation recovers a constant ratio") {
    // O = 3 I at every observed frequency; the posterior mean at the observed
    // frequencies must interpolate the ratio.
    Eigen::VectorXd freq(5);
    freq << 0.2, 0.5, 1.0, 1.6, 2.3;
    std::mt19937 gen(3);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd inputs(5);
    for (int i = 0; i < 5; ++i) inputs(i) = cplx(dist(gen), dist(gen));
    WeightedKernelContext ctx = siso_context(freq, inputs, SisoKernel(2.0, 1.0));
    Eigen::VectorXcd outputs = 3.0 * inputs;

    FrfRow row = estimate_row(ctx, outputs, 0.0, freq);
    for (int e = 0; e < 5; ++e) {
        CHECK(std::abs(row.mean(0, e) - cplx(3.0, 0.0)) < 1e-6);
        CHECK(row.variance(0, e) < 1e-6);
    }
}

TEST_CASE("posterior variance never exceeds the prior and shrinks near data") {
    Eigen::VectorXd freq(4);
    freq << 0.5, 1.0, 1.5, 2.0;
    Eigen::VectorXcd inputs = Eigen::VectorXcd::Ones(4);
    SisoKernel k(1.3, 0.5);
    WeightedKernelContext ctx = siso_context(freq, inputs, k);
    Eigen::VectorXcd outputs(4);
    outputs << cplx(1, 0), cplx(0.8, 0.2), cplx(0.5, 0.4), cplx(0.2, 0.1);

    Eigen::VectorXd eval(3);
    eval << 1.0, 1.25, 8.0; // on data, between data, far away
    FrfRow row = estimate_row(ctx, outputs, 0.01, eval);
    const double prior = k.eval(0, 0);
    for (int e = 0; e < 3; ++e) {
        CHECK(row.variance(0, e) >= 0.0);
        CHECK(row.variance(0, e) <= prior + 1e-12);
    }
    CHECK(row.variance(0, 0) < row.variance(0, 1));
    CHECK(row.variance(0, 2) == doctest::Approx(prior).epsilon(1e-6)); // no nearby data
}

TEST_CASE("posterior variance grows with the noise level") {
    Eigen::VectorXd freq(6);
    freq << 0.2, 0.6, 1.0, 1.4, 1.8, 2.2;
    std::mt19937 gen(17);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd inputs(6), outputs(6);
    for (int i = 0; i < 6; ++i) {
        inputs(i) = cplx(dist(gen), dist(gen));
        outputs(i) = cplx(dist(gen), dist(gen));
    }
    WeightedKernelContext ctx = siso_context(freq, inputs, SisoKernel(1.0, 0.6));
    Eigen::VectorXd eval(1);
    eval << 1.1;
    double prev = -1.0;
    for (double nv : {1e-6, 1e-3, 1e-1, 10.0}) {
        FrfRow row = estimate_row(ctx, outputs, nv, eval);
        CHECK(row.variance(0, 0) > prev);
        prev = row.variance(0, 0);
    }
}

TEST_CASE("mean reverts to the zero prior far from data") {
    Eigen::VectorXd freq(3);
    freq << 0.5, 0.7, 0.9;
    Eigen::VectorXcd inputs = Eigen::VectorXcd::Ones(3);
    Eigen::VectorXcd outputs = Eigen::VectorXcd::Constant(3, cplx(5.0, -2.0));
    WeightedKernelContext ctx = siso_context(freq, inputs, SisoKernel(1.0, 0.3));
    Eigen::VectorXd eval(1);
    eval << 10.0;
    FrfRow row = estimate_row(ctx, outputs, 1e-4, eval);
    CHECK(std::abs(row.mean(0, 0)) < 1e-8);
}

TEST_CASE("single-input estimate matches ratio-based reference") {
    // For one input the input-weighted posterior must coincide with standard
    // GPR on the ratios O/I, where the ratio noise covariance is
    // sigma^2 diag(|I|^-2).
    Eigen::VectorXd freq(7);
    freq << 0.1, 0.4, 0.8, 1.1, 1.5, 2.0, 2.6;
    std::mt19937 gen(29);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd inputs(7), outputs(7);
    for (int i = 0; i < 7; ++i) {
        inputs(i) = cplx(1.0 + 0.5 * dist(gen), 0.5 * dist(gen));
        outputs(i) = cplx(dist(gen), dist(gen));
    }
    const double noise_var = 0.05;
    SisoKernel k(1.4, 0.7);
    WeightedKernelContext ctx = siso_context(freq, inputs, k);

    Eigen::VectorXd eval(9);
    eval << 0.0, 0.3, 0.6, 0.9, 1.2, 1.6, 2.0, 2.4, 3.0;
    FrfRow direct = estimate_row(ctx, outputs, noise_var, eval);

    Eigen::VectorXcd ratios = outputs.cwiseQuotient(inputs);
    Eigen::VectorXd ratio_noise = noise_var * inputs.cwiseAbs2().cwiseInverse();
    FrfRow ref = ratio_gpr_reference(freq, ratios, k, ratio_noise, eval);

    for (int e = 0; e < eval.size(); ++e) {
        CHECK(std::abs(direct.mean(0, e) - ref.mean(0, e)) < 1e-9);
        CHECK(direct.variance(0, e) == doctest::Approx(ref.variance(0, e)).epsilon(1e-8));
    }
}

TEST_CASE("uncertainty bounds from variance") {
    FrfEstimate est;
    est.freq_hz.resize(1);
    est.freq_hz << 1.0;
    est.mean.push_back(Eigen::MatrixXcd::Identity(2, 2));
    Eigen::MatrixXd var(2, 2);
    var << 0.02, 0.0, 0.0, 0.08;
    est.variance.push_back(var);

    auto db = delta_bar_from_variance(est, 3.0);
    REQUIRE(db.size() == 1);
    CHECK(db[0](0, 0) == doctest::Approx(3.0 * std::sqrt(0.01)).epsilon(1e-12)); // 0.3
    CHECK(db[0](1, 1) == doctest::Approx(3.0 * std::sqrt(0.04)).epsilon(1e-12)); // 0.6
    CHECK(db[0](0, 1) == 0.0);

    // Delta_bar_{j,l} = sum_k |S_dagger_{k,l}| delta_bar_{j,k}
    Eigen::MatrixXcd sd(2, 2);
    sd << cplx(0.0, 1.0), cplx(2.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0);
    std::vector<Eigen::MatrixXcd> sds{sd};
    std::vector<Eigen::MatrixXd> dbs{db[0]};
    auto bounds = uncertainty_bounds(sds, dbs);
    // row 0: delta = [0.3, 0]; Delta(0,0) = 0.3*|sd(0,0)| + 0*|sd(1,0)| = 0.3
    CHECK(bounds[0](0, 0) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(bounds[0](0, 1) == doctest::Approx(0.6).epsilon(1e-12));
    // row 1: delta = [0, 0.6]; Delta(1,0) = 0.6*|sd(1,0)| = 0.6
    CHECK(bounds[0](1, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(bounds[0](1, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("noise variance of a detrended hold segment") {
    // White noise on a linear ramp: detrending removes the ramp, leaving the
    // noise variance within a few percent for 20 s at 100 Hz.
    std::mt19937 gen(101);
    const double sigma = 0.02;
    std::normal_distribution<double> dist(0.0, sigma);
    TimeSeries quiet;
    quiet.sample_rate = 100.0;
    quiet.data.resize(2, 2000);
    for (Eigen::Index t = 0; t < 2000; ++t) {
        quiet.data(0, t) = 5.0 + 1e-3 * double(t) + dist(gen);
        quiet.data(1, t) = -2.0 + dist(gen);
    }
    Eigen::VectorXd v = estimate_noise_variance(quiet);
    CHECK(v(0) == doctest::Approx(sigma * sigma).epsilon(0.1));
    CHECK(v(1) == doctest::Approx(sigma * sigma).epsilon(0.1));

    TimeSeries tooShort;
    tooShort.sample_rate = 100.0;
    tooShort.data.resize(1, 50);
    CHECK_THROWS(estimate_noise_variance(tooShort));
}

TEST_CASE("spectral noise variance matches a Monte-Carlo DFT bin") {
    // Var of one DFT bin of length-n white noise is n * var under the
    // unnormalized forward transform.
    const Eigen::Index n = 256;
    const double var = 0.04;
    std::mt19937 gen(55);
    std::normal_distribution<double> dist(0.0, std::sqrt(var));
    double acc = 0.0;
    const int trials = 400;
    for (int trial = 0; trial < trials; ++trial) {
        cplx bin = 0.0;
        for (Eigen::Index t = 0; t < n; ++t)
            bin += dist(gen) * std::polar(1.0, -2.0 * M_PI * 17.0 * double(t) / double(n));
        acc += std::norm(bin);
    }
    const double mc = acc / trials;
    CHECK(spectral_noise_variance(var, n) == doctest::Approx(mc).epsilon(0.15));
}

TEST_CASE("argument validation") {
    Eigen::VectorXd freq(2);
    freq << 0.5, 1.0;
    Eigen::VectorXcd inputs = Eigen::VectorXcd::Ones(2);
    WeightedKernelContext ctx = siso_context(freq, inputs, SisoKernel(1.0, 1.0));
    Eigen::VectorXd eval(1);
    eval << 1.0;
    Eigen::VectorXcd outputs = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS(estimate_row(ctx, outputs, -0.1, eval));
    CHECK_THROWS(estimate_row(ctx, Eigen::VectorXcd::Ones(3), 0.1, eval));
    CHECK_THROWS(delta_bar_from_variance(FrfEstimate{}, -1.0));
}
