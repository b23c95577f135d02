#pragma once

#include "ilc/signals.hpp"

#include <Eigen/Dense>
#include <vector>

namespace ilc {

/// Weighted right-inverse of the estimated model per frequency.
struct ModelInverse {
    Eigen::VectorXd freq_hz;
    std::vector<Eigen::MatrixXcd> s_hat;    // m x n
    std::vector<Eigen::VectorXd> weights;   // diagonal of W, n
    std::vector<Eigen::MatrixXcd> s_dagger; // n x m
};

/// Diagonal iteration gains with their certified upper bounds.
struct GainSchedule {
    Eigen::VectorXd freq_hz;
    Eigen::MatrixXd rho;     // m x q
    Eigen::MatrixXd rho_bar; // m x q
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> feasible; // m x q
};

struct ContractionReport {
    Eigen::VectorXd freq_hz;
    std::vector<Eigen::MatrixXcd> G;
    Eigen::VectorXd spectral_radius;  // per frequency
    Eigen::VectorXd gersgorin_bound;  // per frequency, max_i(|C_i| + R_i)
};

struct RhoPolicy {
    double value = 0.7;
    double margin = 0.95; // applied to rho_bar; strict inequalities need slack
};

/// W^-1 S^H (S W^-1 S^H)^-1 for full-row-rank S and positive diagonal W.
/// Among all right-inverses this minimizes the W-weighted input norm.
Eigen::MatrixXcd weighted_pseudo_inverse(const Eigen::MatrixXcd& s_hat,
                                         const Eigen::VectorXd& w_diag);

/// I_{k+1} = I_k + S_dagger rho E_k per frequency.
Spectrum update_input(const Spectrum& input, const Spectrum& error,
                      const ModelInverse& inv, const GainSchedule& gains);

/// G = (1 - rho) - Delta rho with diagonal rho.
Eigen::MatrixXcd contraction_gain(const Eigen::MatrixXcd& delta,
                                  const Eigen::VectorXd& rho);

double spectral_radius(const Eigen::MatrixXcd& G);

/// Per-channel sufficient convergence conditions on (Delta, rho).
Eigen::Array<bool, Eigen::Dynamic, 1> check_gershgorin_contraction(const Eigen::MatrixXcd& delta,
                                                   const Eigen::VectorXd& rho);

struct RhoBound {
    Eigen::VectorXd rho_bar;
    Eigen::Array<bool, Eigen::Dynamic, 1> feasible;
};

/// Largest certified gain per channel from entrywise uncertainty bounds,
/// capped so that rho_bar_i * Delta_bar_{R,i} <= 1.
RhoBound rho_upper_bound(const Eigen::MatrixXd& delta_bar);

GainSchedule build_gain_schedule(const Eigen::VectorXd& freq_hz,
                                 const std::vector<Eigen::MatrixXd>& delta_bar,
                                 double bandwidth_hz, double taper_hz,
                                 const RhoPolicy& policy);

/// Contraction diagnostics of G built from the given uncertainty samples.
ContractionReport make_contraction_report(const Eigen::VectorXd& freq_hz,
                                          const std::vector<Eigen::MatrixXcd>& delta,
                                          const GainSchedule& gains);

void write_gain_schedule_csv(const GainSchedule& g, const std::string& path);
void write_contraction_csv(const ContractionReport& r, const GainSchedule& g,
                           const std::string& path);

} // namespace ilc
