#pragma once

#include <Eigen/Dense>
#include <string>

namespace ilc {

/// Multi-channel real-valued sampled signal. Rows are channels.
struct TimeSeries {
    double sample_rate = 100.0; // Hz
    double t0 = 0.0;            // s
    Eigen::MatrixXd data;       // channels x samples

    Eigen::Index channels() const { return data.rows(); }
    Eigen::Index samples() const { return data.cols(); }
    double duration() const { return static_cast<double>(samples()) / sample_rate; }
};

/// Multi-channel complex spectrum on a one-sided frequency grid (Hz).
struct Spectrum {
    Eigen::VectorXd freq_hz;  // strictly increasing, nonnegative
    Eigen::MatrixXcd data;    // channels x bins

    Eigen::Index channels() const { return data.rows(); }
    Eigen::Index bins() const { return data.cols(); }
};

/// One-sided DFT grid {k / (N dt) : k = 0..floor(N/2)} for N samples at `sample_rate`.
Eigen::VectorXd dft_grid(Eigen::Index n_samples, double sample_rate);

// DFT convention used throughout: forward transform unnormalized,
// inverse divides by N. Spectra are one-sided; conjugate symmetry of
// the implied two-sided spectrum is enforced on inversion.
Spectrum to_frequency(const TimeSeries& x);
TimeSeries to_time(const Spectrum& X, Eigen::Index n_samples,
                   double sample_rate, double t0 = 0.0);

TimeSeries pad_zeros(const TimeSeries& x, double pre_s, double post_s);

/// max_t |e_j(t)| per channel.
Eigen::VectorXd max_abs_per_channel(const TimeSeries& e);

// CSV: header `t,ch1,...,chn`, one row per sample, time with 6 decimals.
void write_csv(const TimeSeries& x, const std::string& path);
TimeSeries read_csv(const std::string& path);

} // namespace ilc
