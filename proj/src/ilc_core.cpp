#include "ilc/ilc_core.hpp"

#include "ilc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ilc {

Eigen::MatrixXcd weighted_pseudo_inverse(const Eigen::MatrixXcd& s_hat,
                                         const Eigen::VectorXd& w_diag) {
    const Eigen::Index m = s_hat.rows();
    const Eigen::Index n = s_hat.cols();
    if (w_diag.size() != n)
        throw std::invalid_argument("weighted_pseudo_inverse: weight size != inputs");
    if ((w_diag.array() <= 0.0).any())
        throw std::invalid_argument("weighted_pseudo_inverse: weights must be positive");

    Eigen::MatrixXcd winv_sh = w_diag.cwiseInverse().asDiagonal() * s_hat.adjoint(); // n x m
    Eigen::MatrixXcd gram = s_hat * winv_sh;                                         // m x m
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0 || smax / smin > 1e12)
        throw RankDeficiencyError("weighted_pseudo_inverse: S W^-1 S^H is rank deficient");
    return winv_sh * gram.inverse();
}

Spectrum update_input(const Spectrum& input, const Spectrum& error,
                      const ModelInverse& inv, const GainSchedule& gains) {
    const Eigen::Index q = input.bins();
    auto grids_match = [&](const Eigen::VectorXd& g) {
        return g.size() == q && (g - input.freq_hz).cwiseAbs().maxCoeff() <= 1e-9;
    };
    if (!grids_match(error.freq_hz) || !grids_match(inv.freq_hz) || !grids_match(gains.freq_hz))
        throw std::invalid_argument("update_input: frequency grid mismatch");
    const Eigen::Index m = error.channels();
    if (gains.rho.rows() != m)
        throw std::invalid_argument("update_input: gain channel count mismatch");

    Spectrum out = input;
    for (Eigen::Index k = 0; k < q; ++k) {
        if (gains.rho.col(k).isZero()) continue;
        Eigen::VectorXcd corr = inv.s_dagger[static_cast<size_t>(k)]
                                * (gains.rho.col(k).asDiagonal() * error.data.col(k));
        out.data.col(k) += corr;
    }
    return out;
}

Eigen::MatrixXcd contraction_gain(const Eigen::MatrixXcd& delta,
                                  const Eigen::VectorXd& rho) {
    const Eigen::Index m = delta.rows();
    if (rho.size() != m)
        throw std::invalid_argument("contraction_gain: gain size mismatch");
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        G(j, j) -= rho(j);
        G.col(j) -= rho(j) * delta.col(j);
    }
    return G;
}

double spectral_radius(const Eigen::MatrixXcd& G) {
    if (G.rows() != G.cols())
        throw std::invalid_argument("spectral_radius: matrix not square");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(G, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::Array<bool, Eigen::Dynamic, 1> check_gershgorin_contraction(const Eigen::MatrixXcd& delta,
                                                   const Eigen::VectorXd& rho) {
    const Eigen::Index m = delta.rows();
    Eigen::Array<bool, Eigen::Dynamic, 1> ok(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double R = 0.0; // column sum of off-diagonal magnitudes
        for (Eigen::Index j = 0; j < m; ++j)
            if (j != i) R += std::abs(delta(j, i));
        const double A = delta(i, i).real();
        const double M = std::abs(delta(i, i));
        const double denom = 1.0 + 2.0 * A + M * M - R * R;
        ok(i) = (R < 1.0 + A)
                && (rho(i) > 0.0)
                && (denom > 0.0)
                && (rho(i) < 2.0 * (1.0 + A - R) / denom)
                && (rho(i) * R < 1.0);
    }
    return ok;
}

RhoBound rho_upper_bound(const Eigen::MatrixXd& delta_bar) {
    if ((delta_bar.array() < 0.0).any())
        throw std::invalid_argument("rho_upper_bound: negative uncertainty bound");
    const Eigen::Index m = delta_bar.rows();
    RhoBound out;
    out.rho_bar.setZero(m);
    out.feasible.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        double dR = 0.0;
        for (Eigen::Index j = 0; j < m; ++j)
            if (j != i) dR += delta_bar(j, i);
        const double dii = delta_bar(i, i);
        out.feasible(i) = dR < 1.0 - dii;
        if (!out.feasible(i)) continue;
        double bound = std::numeric_limits<double>::infinity();
        for (double p : {1.0, -1.0}) {
            const double num = 2.0 * (1.0 + p * dii - dR);
            const double den = 1.0 + 2.0 * p * dii + dii * dii - dR * dR;
            bound = std::min(bound, num / den);
        }
        if (dR > 0.0) bound = std::min(bound, 1.0 / dR);
        out.rho_bar(i) = bound;
    }
    return out;
}

GainSchedule build_gain_schedule(const Eigen::VectorXd& freq_hz,
                                 const std::vector<Eigen::MatrixXd>& delta_bar,
                                 double bandwidth_hz, double taper_hz,
                                 const RhoPolicy& policy) {
    if (bandwidth_hz <= 0.0 || taper_hz <= 0.0)
        throw std::invalid_argument("build_gain_schedule: invalid band parameters");
    if (freq_hz.size() > 0 && bandwidth_hz + taper_hz > freq_hz(freq_hz.size() - 1) + 1e-9)
        throw std::invalid_argument("build_gain_schedule: taper end beyond the frequency grid");
    const Eigen::Index q = freq_hz.size();
    if (static_cast<Eigen::Index>(delta_bar.size()) != q)
        throw std::invalid_argument("build_gain_schedule: delta_bar size mismatch");
    const Eigen::Index m = q > 0 ? delta_bar[0].rows() : 0;

    GainSchedule g;
    g.freq_hz = freq_hz;
    g.rho.setZero(m, q);
    g.rho_bar.setZero(m, q);
    g.feasible.setConstant(m, q, false);

    // Reference gain at the band edge, used as the taper base.
    Eigen::VectorXd rho_at_bw = Eigen::VectorXd::Zero(m);
    for (Eigen::Index k = 0; k < q; ++k) {
        if (freq_hz(k) > bandwidth_hz + 1e-12) break;
        RhoBound rb = rho_upper_bound(delta_bar[static_cast<size_t>(k)]);
        for (Eigen::Index i = 0; i < m; ++i)
            rho_at_bw(i) = rb.feasible(i) ? std::min(policy.value, policy.margin * rb.rho_bar(i)) : 0.0;
    }

    for (Eigen::Index k = 0; k < q; ++k) {
        const double w = freq_hz(k);
        RhoBound rb = rho_upper_bound(delta_bar[static_cast<size_t>(k)]);
        g.rho_bar.col(k) = rb.rho_bar;
        for (Eigen::Index i = 0; i < m; ++i) g.feasible(i, k) = rb.feasible(i);
        if (w <= bandwidth_hz + 1e-12) {
            for (Eigen::Index i = 0; i < m; ++i)
                g.rho(i, k) = rb.feasible(i)
                    ? std::min(policy.value, policy.margin * rb.rho_bar(i)) : 0.0;
        } else if (w <= bandwidth_hz + taper_hz + 1e-12) {
            const double fade = 1.0 - (w - bandwidth_hz) / taper_hz;
            for (Eigen::Index i = 0; i < m; ++i) {
                if (!rb.feasible(i)) continue;
                g.rho(i, k) = std::min(rho_at_bw(i) * fade * fade,
                                       policy.margin * rb.rho_bar(i));
            }
        } // zero above the taper end
    }
    return g;
}

ContractionReport make_contraction_report(const Eigen::VectorXd& freq_hz,
                                          const std::vector<Eigen::MatrixXcd>& delta,
                                          const GainSchedule& gains) {
    const Eigen::Index q = freq_hz.size();
    if (static_cast<Eigen::Index>(delta.size()) != q || gains.rho.cols() != q)
        throw std::invalid_argument("make_contraction_report: size mismatch");
    ContractionReport r;
    r.freq_hz = freq_hz;
    r.spectral_radius.resize(q);
    r.gersgorin_bound.resize(q);
    r.G.reserve(static_cast<size_t>(q));
    for (Eigen::Index k = 0; k < q; ++k) {
        Eigen::MatrixXcd G = contraction_gain(delta[static_cast<size_t>(k)], gains.rho.col(k));
        const Eigen::Index m = G.rows();
        double bound = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            double radius = 0.0;
            for (Eigen::Index j = 0; j < m; ++j)
                if (j != i) radius += std::abs(G(j, i));
            bound = std::max(bound, std::abs(G(i, i)) + radius);
        }
        r.spectral_radius(k) = spectral_radius(G);
        r.gersgorin_bound(k) = bound;
        r.G.push_back(std::move(G));
    }
    return r;
}

void write_gain_schedule_csv(const GainSchedule& g, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_gain_schedule_csv: cannot open " + path);
    const Eigen::Index m = g.rho.rows();
    f << "freq_hz";
    for (Eigen::Index i = 0; i < m; ++i) f << ",rho_" << (i + 1);
    for (Eigen::Index i = 0; i < m; ++i) f << ",rho_bar_" << (i + 1);
    f << "\n";
    char buf[64];
    for (Eigen::Index k = 0; k < g.freq_hz.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.9g", g.freq_hz(k));
        f << buf;
        for (Eigen::Index i = 0; i < m; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.12e", g.rho(i, k));
            f << buf;
        }
        for (Eigen::Index i = 0; i < m; ++i) {
            std::snprintf(buf, sizeof(buf), ",%.12e", g.rho_bar(i, k));
            f << buf;
        }
        f << "\n";
    }
}

void write_contraction_csv(const ContractionReport& r, const GainSchedule& g,
                           const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_contraction_csv: cannot open " + path);
    const Eigen::Index m = g.rho.rows();
    f << "freq_hz,spectral_radius,gersgorin_bound";
    for (Eigen::Index i = 0; i < m; ++i) f << ",feasible_" << (i + 1);
    f << "\n";
    char buf[64];
    for (Eigen::Index k = 0; k < r.freq_hz.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.12e,%.12e", r.freq_hz(k),
                      r.spectral_radius(k), r.gersgorin_bound(k));
        f << buf;
        for (Eigen::Index i = 0; i < m; ++i) f << ',' << (g.feasible(i, k) ? 1 : 0);
        f << "\n";
    }
}

} // namespace ilc
