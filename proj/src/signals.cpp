#include "ilc/signals.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ilc {

Eigen::VectorXd dft_grid(Eigen::Index n_samples, double sample_rate) {
    if (n_samples < 1) throw std::invalid_argument("dft_grid: n_samples must be >= 1");
    const Eigen::Index q = n_samples / 2 + 1;
    Eigen::VectorXd f(q);
    for (Eigen::Index k = 0; k < q; ++k)
        f(k) = static_cast<double>(k) * sample_rate / static_cast<double>(n_samples);
    return f;
}

Spectrum to_frequency(const TimeSeries& x) {
    if (x.samples() < 1 || x.channels() < 1)
        throw std::invalid_argument("to_frequency: empty input");
    const Eigen::Index n = x.samples();
    const Eigen::Index q = n / 2 + 1;

    Spectrum out;
    out.freq_hz = dft_grid(n, x.sample_rate);
    out.data.resize(x.channels(), q);

    std::vector<double> in(static_cast<size_t>(n));
    std::vector<fftw_complex> spec(static_cast<size_t>(q));
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), spec.data(),
                                          FFTW_ESTIMATE);
    for (Eigen::Index c = 0; c < x.channels(); ++c) {
        for (Eigen::Index i = 0; i < n; ++i) in[static_cast<size_t>(i)] = x.data(c, i);
        fftw_execute(plan);
        for (Eigen::Index k = 0; k < q; ++k)
            out.data(c, k) = std::complex<double>(spec[static_cast<size_t>(k)][0],
                                                  spec[static_cast<size_t>(k)][1]);
    }
    fftw_destroy_plan(plan);
    return out;
}

TimeSeries to_time(const Spectrum& X, Eigen::Index n_samples,
                   double sample_rate, double t0) {
    if (n_samples < 1) throw std::invalid_argument("to_time: n_samples must be >= 1");
    const Eigen::Index q = n_samples / 2 + 1;
    if (X.bins() != q)
        throw std::invalid_argument("to_time: spectrum not on the canonical grid for n_samples");
    const Eigen::VectorXd grid = dft_grid(n_samples, sample_rate);
    if ((X.freq_hz - grid).cwiseAbs().maxCoeff() > 1e-9 * sample_rate)
        throw std::invalid_argument("to_time: frequency grid mismatch");

    TimeSeries out;
    out.sample_rate = sample_rate;
    out.t0 = t0;
    out.data.resize(X.channels(), n_samples);

    std::vector<fftw_complex> spec(static_cast<size_t>(q));
    std::vector<double> time(static_cast<size_t>(n_samples));
    fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n_samples), spec.data(),
                                          time.data(), FFTW_ESTIMATE);
    for (Eigen::Index c = 0; c < X.channels(); ++c) {
        for (Eigen::Index k = 0; k < q; ++k) {
            std::complex<double> v = X.data(c, k);
            // DC and (even-N) Nyquist bins of a real signal are real.
            if (k == 0 || (n_samples % 2 == 0 && k == q - 1)) v = std::complex<double>(v.real(), 0.0);
            spec[static_cast<size_t>(k)][0] = v.real();
            spec[static_cast<size_t>(k)][1] = v.imag();
        }
        fftw_execute(plan);
        for (Eigen::Index i = 0; i < n_samples; ++i)
            out.data(c, i) = time[static_cast<size_t>(i)] / static_cast<double>(n_samples);
    }
    fftw_destroy_plan(plan);
    return out;
}

TimeSeries pad_zeros(const TimeSeries& x, double pre_s, double post_s) {
    if (pre_s < 0.0 || post_s < 0.0)
        throw std::invalid_argument("pad_zeros: negative padding");
    const Eigen::Index pre = static_cast<Eigen::Index>(std::llround(pre_s * x.sample_rate));
    const Eigen::Index post = static_cast<Eigen::Index>(std::llround(post_s * x.sample_rate));
    TimeSeries out;
    out.sample_rate = x.sample_rate;
    out.t0 = x.t0 - static_cast<double>(pre) / x.sample_rate;
    out.data.setZero(x.channels(), x.samples() + pre + post);
    out.data.middleCols(pre, x.samples()) = x.data;
    return out;
}

Eigen::VectorXd max_abs_per_channel(const TimeSeries& e) {
    if (e.samples() < 1 || e.channels() < 1)
        throw std::invalid_argument("max_abs_per_channel: empty input");
    return e.data.cwiseAbs().rowwise().maxCoeff();
}

void write_csv(const TimeSeries& x, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_csv: cannot open " + path);
    f << "t";
    for (Eigen::Index c = 0; c < x.channels(); ++c) f << ",ch" << (c + 1);
    f << "\n";
    char buf[64];
    for (Eigen::Index i = 0; i < x.samples(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6f", x.t0 + static_cast<double>(i) / x.sample_rate);
        f << buf;
        for (Eigen::Index c = 0; c < x.channels(); ++c) {
            std::snprintf(buf, sizeof(buf), ",%.12e", x.data(c, i));
            f << buf;
        }
        f << "\n";
    }
}

TimeSeries read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("read_csv: empty file");
    Eigen::Index channels = -1; // header columns minus t
    {
        Eigen::Index commas = 0;
        for (char ch : line)
            if (ch == ',') ++commas;
        channels = commas;
    }
    if (channels < 1) throw std::runtime_error("read_csv: no channel columns");

    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        times.push_back(std::stod(cell));
        for (Eigen::Index c = 0; c < channels; ++c) {
            if (!std::getline(ss, cell, ',')) throw std::runtime_error("read_csv: short row");
            values.push_back(std::stod(cell));
        }
    }
    if (times.empty()) throw std::runtime_error("read_csv: no samples");

    TimeSeries out;
    out.t0 = times.front();
    out.sample_rate = times.size() > 1
        ? static_cast<double>(times.size() - 1) / (times.back() - times.front())
        : 100.0;
    out.data.resize(channels, static_cast<Eigen::Index>(times.size()));
    for (size_t i = 0; i < times.size(); ++i)
        for (Eigen::Index c = 0; c < channels; ++c)
            out.data(c, static_cast<Eigen::Index>(i)) = values[i * static_cast<size_t>(channels) + static_cast<size_t>(c)];
    return out;
}

} // namespace ilc
