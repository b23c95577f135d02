#pragma once

#include "ilc/signals.hpp"

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ilc {

/// Stable rational transfer function in the Laplace variable.
/// Coefficients are ascending in s: num[0] + num[1] s + ...
struct RationalTf {
    Eigen::VectorXd num;
    Eigen::VectorXd den;

    std::complex<double> eval(std::complex<double> s) const;
};

/// Roots of a real polynomial (ascending coefficients), via companion matrix.
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs);

struct NoiseModel {
    Eigen::VectorXd std_dev; // per output, output units
    std::uint64_t seed = 0;
};

/// MIMO LTI plant standing in for the unknown system.
struct LtiPlant {
    Eigen::Index m = 0; // outputs
    Eigen::Index n = 0; // inputs
    std::vector<std::vector<RationalTf>> entries; // m x n
    Eigen::VectorXd input_delay_s;                // per input channel
    std::optional<double> output_saturation;      // static output clip, off by default

    /// Throws unless every denominator has all roots strictly in the left
    /// half-plane and m <= n.
    void validate() const;
};

/// m x n complex response at frequency w (Hz), s = i 2 pi w.
Eigen::MatrixXcd frequency_response(const LtiPlant& plant, double w_hz);

/// Circular (per-DFT-bin) simulation plus white Gaussian measurement noise.
TimeSeries simulate(const LtiPlant& plant, const TimeSeries& input,
                    const NoiseModel& noise);

struct SeaPlantParams {
    double omega0_hz = 3.0; // natural frequency of each joint loop
    double zeta = 0.4;
    double coupling = 0.3;  // off-diagonal gain g
    double a_hz = 5.0;      // coupling rolloff pole
};

/// 3x3 closed-loop joint model: unit-DC second-order diagonals and
/// s-weighted inertial coupling off the diagonal.
LtiPlant sea_like_plant(const SeaPlantParams& params = {});

/// Randomly scales entry gains and natural frequencies by factors in
/// [1 - relative_error, 1 + relative_error]; deterministic per seed.
LtiPlant perturb_plant(const LtiPlant& plant, double relative_error,
                       std::uint64_t seed);

// Plant definition file (JSON): numerator/denominator arrays per entry,
// noise standard deviations, seed.
void write_plant_json(const LtiPlant& plant, const NoiseModel& noise,
                      const std::string& path);
std::pair<LtiPlant, NoiseModel> read_plant_json(const std::string& path);

} // namespace ilc
