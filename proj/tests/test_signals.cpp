#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ilc/signals.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>

using namespace ilc;

namespace {

// Independent O(N^2) forward DFT, one-sided.
Eigen::MatrixXcd naive_dft(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.cols();
    const Eigen::Index bins = n / 2 + 1;
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(x.rows(), bins);
    for (Eigen::Index c = 0; c < x.rows(); ++c)
        for (Eigen::Index k = 0; k < bins; ++k)
            for (Eigen::Index t = 0; t < n; ++t)
                X(c, k) += x(c, t) * std::polar(1.0, -2.0 * std::numbers::pi *
                                                double(k) * double(t) / double(n));
    return X;
}

TimeSeries random_signal(Eigen::Index channels, Eigen::Index samples, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist;
    TimeSeries x;
    x.sample_rate = 100.0;
    x.data.resize(channels, samples);
    for (Eigen::Index c = 0; c < channels; ++c)
        for (Eigen::Index t = 0; t < samples; ++t) x.data(c, t) = dist(gen);
    return x;
}

} // namespace

TEST_CASE("dft grid spacing and endpoints") {
    Eigen::VectorXd g = dft_grid(6000, 100.0);
    CHECK(g.size() == 3001);
    CHECK(g(0) == 0.0);
    CHECK(g(1) == doctest::Approx(100.0 / 6000.0).epsilon(1e-14));
    CHECK(g(3000) == doctest::Approx(50.0).epsilon(1e-14));

    Eigen::VectorXd godd = dft_grid(101, 100.0);
    CHECK(godd.size() == 51);
    CHECK(godd(50) == doctest::Approx(50.0 * 100.0 / 101.0).epsilon(1e-14));
}

TEST_CASE("forward transform matches the naive DFT") {
    TimeSeries x = random_signal(2, 64, 11);
    Spectrum X = to_frequency(x);
    Eigen::MatrixXcd ref = naive_dft(x.data);
    REQUIRE(X.bins() == ref.cols());
    CHECK((X.data - ref).cwiseAbs().maxCoeff() < 1e-9);

    // odd length
    TimeSeries xo = random_signal(1, 63, 12);
    Spectrum Xo = to_frequency(xo);
    CHECK((Xo.data - naive_dft(xo.data)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("single sinusoid lands in one bin") {
    const Eigen::Index n = 200;
    TimeSeries x;
    x.sample_rate = 100.0;
    x.data.resize(1, n);
    for (Eigen::Index t = 0; t < n; ++t)
        x.data(0, t) = std::cos(2.0 * std::numbers::pi * 5.0 * double(t) / x.sample_rate);
    Spectrum X = to_frequency(x);
    // 5 Hz at df = 0.5 Hz is bin 10; amplitude N/2 for a unit cosine.
    CHECK(std::abs(X.data(0, 10) - std::complex<double>(double(n) / 2.0, 0.0)) < 1e-9);
    for (Eigen::Index k = 0; k < X.bins(); ++k)
        if (k != 10) CHECK(std::abs(X.data(0, k)) < 1e-9);
}

TEST_CASE("round trip is identity") {
    for (Eigen::Index n : {64, 63, 1000}) {
        TimeSeries x = random_signal(3, n, unsigned(n));
        Spectrum X = to_frequency(x);
        TimeSeries y = to_time(X, n, x.sample_rate);
        CHECK((x.data - y.data).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("parseval under the unnormalized convention") {
    TimeSeries x = random_signal(1, 128, 5);
    Spectrum X = to_frequency(x);
    // sum |x|^2 = (1/N) sum over the full two-sided spectrum
    double two_sided = std::norm(X.data(0, 0));
    for (Eigen::Index k = 1; k < X.bins() - 1; ++k) two_sided += 2.0 * std::norm(X.data(0, k));
    two_sided += std::norm(X.data(0, X.bins() - 1)); // Nyquist (even N)
    CHECK(x.data.squaredNorm() == doctest::Approx(two_sided / 128.0).epsilon(1e-10));
}

TEST_CASE("zero padding extends the grid without altering content") {
    TimeSeries x = random_signal(2, 1000, 3); // 10 s at 100 Hz
    TimeSeries p = pad_zeros(x, 5.0, 5.0);
    CHECK(p.samples() == 2000);
    CHECK(p.data.leftCols(500).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.data.rightCols(500).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.data.middleCols(500, 1000) - x.data).cwiseAbs().maxCoeff() == 0.0);

    // 20 s padded to 30 s: grid resolution moves from 1/20 to 1/30 Hz.
    TimeSeries y = random_signal(1, 2000, 4);
    TimeSeries py = pad_zeros(y, 5.0, 5.0);
    Spectrum P = to_frequency(py);
    CHECK(P.freq_hz(1) == doctest::Approx(1.0 / 30.0).epsilon(1e-13));
    CHECK(P.bins() == 1501);
}

TEST_CASE("max abs per channel") {
    TimeSeries x;
    x.data.resize(2, 4);
    x.data << 1.0, -3.0, 2.0, 0.0,
              0.5, 0.25, -0.75, 0.1;
    Eigen::VectorXd m = max_abs_per_channel(x);
    CHECK(m(0) == 3.0);
    CHECK(m(1) == 0.75);
}

TEST_CASE("csv round trip") {
    TimeSeries x = random_signal(3, 50, 99);
    x.t0 = 1.25;
    const std::string path = "signals_roundtrip.csv";
    write_csv(x, path);
    TimeSeries y = read_csv(path);
    CHECK(y.channels() == 3);
    CHECK(y.samples() == 50);
    CHECK(y.sample_rate == doctest::Approx(x.sample_rate).epsilon(1e-6));
    CHECK(y.t0 == doctest::Approx(x.t0).epsilon(1e-9));
    CHECK((x.data - y.data).cwiseAbs().maxCoeff() < 1e-11);
    std::remove(path.c_str());
}

TEST_CASE("to_time rejects a mismatched grid") {
    TimeSeries x = random_signal(1, 100, 1);
    Spectrum X = to_frequency(x);
    CHECK_THROWS(to_time(X, 128, x.sample_rate));
}
