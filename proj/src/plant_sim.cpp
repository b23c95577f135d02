#include "ilc/plant_sim.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ilc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> polyval(const Eigen::VectorXd& c, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * s + c(k);
    return acc;
}
} // namespace

std::complex<double> RationalTf::eval(std::complex<double> s) const {
    return polyval(num, s) / polyval(den, s);
}

Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs) {
    Eigen::Index deg = coeffs.size() - 1;
    while (deg > 0 && coeffs(deg) == 0.0) --deg;
    if (deg < 1) return Eigen::VectorXcd();
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    companion.diagonal(-1).setOnes();
    companion.col(deg - 1) = -coeffs.head(deg) / coeffs(deg);
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    return es.eigenvalues();
}

void LtiPlant::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("LtiPlant: empty plant");
    if (m > n) throw std::invalid_argument("LtiPlant: more outputs than inputs");
    if (static_cast<Eigen::Index>(entries.size()) != m)
        throw std::invalid_argument("LtiPlant: row count mismatch");
    for (const auto& row : entries) {
        if (static_cast<Eigen::Index>(row.size()) != n)
            throw std::invalid_argument("LtiPlant: column count mismatch");
        for (const RationalTf& tf : row) {
            if (tf.den.size() < 1 || tf.den.cwiseAbs().maxCoeff() == 0.0)
                throw std::invalid_argument("LtiPlant: empty denominator");
            Eigen::VectorXcd roots = polynomial_roots(tf.den);
            for (Eigen::Index k = 0; k < roots.size(); ++k)
                if (roots(k).real() >= 0.0)
                    throw std::invalid_argument("LtiPlant: unstable entry (pole not in open LHP)");
        }
    }
    if (input_delay_s.size() != 0 && input_delay_s.size() != n)
        throw std::invalid_argument("LtiPlant: delay vector size mismatch");
}

Eigen::MatrixXcd frequency_response(const LtiPlant& plant, double w_hz) {
    const std::complex<double> s(0.0, kTwoPi * w_hz);
    Eigen::MatrixXcd R(plant.m, plant.n);
    for (Eigen::Index j = 0; j < plant.m; ++j)
        for (Eigen::Index l = 0; l < plant.n; ++l)
            R(j, l) = plant.entries[static_cast<size_t>(j)][static_cast<size_t>(l)].eval(s);
    if (plant.input_delay_s.size() == plant.n) {
        for (Eigen::Index l = 0; l < plant.n; ++l)
            R.col(l) *= std::exp(std::complex<double>(0.0, -kTwoPi * w_hz * plant.input_delay_s(l)));
    }
    return R;
}

TimeSeries simulate(const LtiPlant& plant, const TimeSeries& input,
                    const NoiseModel& noise) {
    if (input.channels() != plant.n)
        throw std::invalid_argument("simulate: input channel count != plant inputs");
    const Eigen::Index n_samp = input.samples();

    Spectrum in_spec = to_frequency(input);
    Spectrum out_spec;
    out_spec.freq_hz = in_spec.freq_hz;
    out_spec.data.resize(plant.m, in_spec.bins());
    for (Eigen::Index k = 0; k < in_spec.bins(); ++k)
        out_spec.data.col(k) = frequency_response(plant, in_spec.freq_hz(k)) * in_spec.data.col(k);

    TimeSeries out = to_time(out_spec, n_samp, input.sample_rate, input.t0);

    if (plant.output_saturation) {
        const double lim = *plant.output_saturation;
        out.data = out.data.cwiseMax(-lim).cwiseMin(lim);
    }
    if (noise.std_dev.size() != 0) {
        if (noise.std_dev.size() != plant.m)
            throw std::invalid_argument("simulate: noise std vector size != plant outputs");
        std::mt19937_64 rng(noise.seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Eigen::Index i = 0; i < n_samp; ++i)
            for (Eigen::Index j = 0; j < plant.m; ++j)
                out.data(j, i) += noise.std_dev(j) * gauss(rng);
    }
    return out;
}

LtiPlant sea_like_plant(const SeaPlantParams& p) {
    if (p.omega0_hz <= 0.0 || p.zeta <= 0.0 || p.a_hz <= 0.0 || p.coupling < 0.0)
        throw std::invalid_argument("sea_like_plant: parameter out of range");
    const double w0 = kTwoPi * p.omega0_hz;
    const double a = kTwoPi * p.a_hz;

    RationalTf diag;
    diag.num = Eigen::VectorXd::Zero(1);
    diag.num << w0 * w0;
    diag.den = Eigen::Vector3d(w0 * w0, 2.0 * p.zeta * w0, 1.0);

    // g s w0^2 / ((s^2 + 2 zeta w0 s + w0^2)(s + a)): zero at DC.
    RationalTf coupling;
    coupling.num = Eigen::Vector2d(0.0, p.coupling * w0 * w0);
    coupling.den.resize(4);
    coupling.den << w0 * w0 * a, w0 * w0 + 2.0 * p.zeta * w0 * a, 2.0 * p.zeta * w0 + a, 1.0;

    LtiPlant plant;
    plant.m = plant.n = 3;
    plant.entries.assign(3, std::vector<RationalTf>(3));
    for (Eigen::Index j = 0; j < 3; ++j)
        for (Eigen::Index l = 0; l < 3; ++l)
            plant.entries[static_cast<size_t>(j)][static_cast<size_t>(l)] =
                (j == l) ? diag : coupling;
    plant.validate();
    return plant;
}

LtiPlant perturb_plant(const LtiPlant& plant, double relative_error,
                       std::uint64_t seed) {
    if (relative_error < 0.0 || relative_error >= 1.0)
        throw std::invalid_argument("perturb_plant: relative_error must be in [0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> factor(1.0 - relative_error, 1.0 + relative_error);

    LtiPlant out = plant;
    for (auto& row : out.entries) {
        for (RationalTf& tf : row) {
            const double gain = factor(rng);
            const double freq = factor(rng);
            // H(s) -> gain * H(s / freq): poles and zeros scale by freq > 0,
            // so stability is preserved.
            tf.num *= gain;
            double pw = 1.0;
            for (Eigen::Index k = 1; k < tf.num.size(); ++k) {
                pw /= freq;
                tf.num(k) *= pw;
            }
            pw = 1.0;
            for (Eigen::Index k = 1; k < tf.den.size(); ++k) {
                pw /= freq;
                tf.den(k) *= pw;
            }
        }
    }
    return out;
}

void write_plant_json(const LtiPlant& plant, const NoiseModel& noise,
                      const std::string& path) {
    nlohmann::json j;
    j["m"] = plant.m;
    j["n"] = plant.n;
    auto& rows = j["entries"] = nlohmann::json::array();
    for (const auto& row : plant.entries) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const RationalTf& tf : row) {
            jrow.push_back({{"num", std::vector<double>(tf.num.begin(), tf.num.end())},
                            {"den", std::vector<double>(tf.den.begin(), tf.den.end())}});
        }
        rows.push_back(jrow);
    }
    if (plant.input_delay_s.size() > 0)
        j["input_delay_s"] = std::vector<double>(plant.input_delay_s.begin(), plant.input_delay_s.end());
    if (plant.output_saturation) j["output_saturation"] = *plant.output_saturation;
    j["noise_std"] = std::vector<double>(noise.std_dev.begin(), noise.std_dev.end());
    j["seed"] = noise.seed;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_plant_json: cannot open " + path);
    f << j.dump(2) << "\n";
}

std::pair<LtiPlant, NoiseModel> read_plant_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_plant_json: cannot open " + path);
    nlohmann::json j;
    f >> j;

    LtiPlant plant;
    plant.m = j.at("m").get<Eigen::Index>();
    plant.n = j.at("n").get<Eigen::Index>();
    for (const auto& jrow : j.at("entries")) {
        std::vector<RationalTf> row;
        for (const auto& jtf : jrow) {
            RationalTf tf;
            std::vector<double> num = jtf.at("num").get<std::vector<double>>();
            std::vector<double> den = jtf.at("den").get<std::vector<double>>();
            tf.num = Eigen::Map<Eigen::VectorXd>(num.data(), static_cast<Eigen::Index>(num.size()));
            tf.den = Eigen::Map<Eigen::VectorXd>(den.data(), static_cast<Eigen::Index>(den.size()));
            row.push_back(std::move(tf));
        }
        plant.entries.push_back(std::move(row));
    }
    if (j.contains("input_delay_s")) {
        std::vector<double> d = j["input_delay_s"].get<std::vector<double>>();
        plant.input_delay_s = Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    }
    if (j.contains("output_saturation")) plant.output_saturation = j["output_saturation"].get<double>();
    plant.validate();

    NoiseModel noise;
    std::vector<double> stds = j.at("noise_std").get<std::vector<double>>();
    noise.std_dev = Eigen::Map<Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));
    noise.seed = j.at("seed").get<std::uint64_t>();
    return {plant, noise};
}

} // namespace ilc
