// Command-line front end: run the learning loop, sweep cleaning speeds,
// or check gain certification for a given configuration.

#include "ilc/errors.hpp"
#include "ilc/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr int kExitConfig = 2;
constexpr int kExitCertification = 3;
constexpr int kExitNumerical = 4;

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    ilc::ExperimentConfig cfg = ilc::load_config(config_path);
    ilc::RunResult res = ilc::run_algorithm1(cfg);
    ilc::export_report(res, cfg, out_dir);
    for (const ilc::IterationRecord& rec : res.records) {
        std::printf("k=%d  max|e| =", rec.k);
        for (Eigen::Index j = 0; j < rec.max_error.size(); ++j)
            std::printf(" %.6e", rec.max_error(j));
        std::printf("\n");
    }
    std::printf("%s after %d iterations; report in %s\n",
                res.converged ? "converged" : "stopped at k_max",
                res.records.empty() ? 0 : res.records.back().k,
                out_dir.c_str());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& periods) {
    ilc::ExperimentConfig cfg = ilc::load_config(config_path);
    Eigen::MatrixXd table = ilc::speed_sweep(cfg, periods);
    std::printf("T_s");
    for (Eigen::Index j = 1; j < table.cols(); ++j) std::printf(",max_err_%lld", static_cast<long long>(j));
    std::printf("\n");
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        std::printf("%.6g", table(i, 0));
        for (Eigen::Index j = 1; j < table.cols(); ++j) std::printf(",%.6e", table(i, j));
        std::printf("\n");
    }
    return 0;
}

int cmd_certify(const std::string& config_path) {
    ilc::ExperimentConfig cfg = ilc::load_config(config_path);
    ilc::RunResult res = ilc::certify(cfg);
    const auto& g = res.gains;
    Eigen::Index certified = 0;
    for (Eigen::Index k = 0; k < g.freq_hz.size(); ++k)
        if (g.feasible.col(k).all() && g.rho.col(k).maxCoeff() > 0.0) ++certified;
    std::printf("certified %lld of %lld frequency bins\n",
                static_cast<long long>(certified),
                static_cast<long long>(g.freq_hz.size()));
    double worst = 0.0;
    for (Eigen::Index k = 0; k < res.contraction.freq_hz.size(); ++k)
        worst = std::max(worst, res.contraction.spectral_radius(k));
    std::printf("worst contraction spectral radius: %.6f\n", worst);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inversion-based iterative learning control"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::vector<double> periods;

    CLI::App* run = app.add_subcommand("run", "Execute the full learning loop");
    run->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
    run->add_option("--out", out_dir, "Report output directory");

    CLI::App* sweep = app.add_subcommand("sweep", "Initial tracking error over cleaning periods");
    sweep->add_option("--config", config_path, "Experiment configuration (JSON)")->required();
    sweep->add_option("--periods", periods, "Cleaning periods T in seconds")->required();

    CLI::App* certify = app.add_subcommand("certify", "Gain certification check only");
    certify->add_option("--config", config_path, "Experiment configuration (JSON)")->required();

    CLI::App* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (version->parsed()) {
            std::printf("ilc %s\n", kVersion);
            return 0;
        }
        if (run->parsed()) return cmd_run(config_path, out_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, periods);
        if (certify->parsed()) return cmd_certify(config_path);
    } catch (const ilc::CertificationError& e) {
        std::cerr << "certification error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const ilc::IllConditionedError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ilc::RankDeficiencyError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
