#include "ilc/harness.hpp"

#include "ilc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ilc {

namespace {

using json = nlohmann::json;

Eigen::MatrixXd json_matrix(const json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            M(r, c) = j.at(static_cast<size_t>(r)).at(static_cast<size_t>(c)).get<double>();
    return M;
}

struct CorrectionWindow {
    Eigen::Index win_start;     // first sample of the update interval
    Eigen::Index win_len;       // samples in the update interval
    Eigen::Index active_offset; // offset of the error data inside the window
    Eigen::Index active_len;    // samples carrying the error signal
};

CorrectionWindow correction_window(const ExperimentConfig& cfg, Eigen::Index n_total) {
    CorrectionWindow w;
    if (cfg.error_window == ErrorWindow::Full) {
        w.win_start = 0;
        w.win_len = n_total;
        w.active_offset = 0;
        w.active_len = n_total;
        return w;
    }
    const double fs = cfg.task.sample_rate;
    const double span = cfg.task.cycles() * cfg.task.period_s;
    w.active_offset = static_cast<Eigen::Index>(std::lround(cfg.pad_s * fs));
    w.active_len = static_cast<Eigen::Index>(std::lround(span * fs));
    w.win_start = static_cast<Eigen::Index>(std::lround((cfg.task.quiet_s - cfg.pad_s) * fs));
    w.win_len = w.active_len + 2 * w.active_offset;
    if (w.win_start < 0 || w.win_start + w.win_len > n_total)
        throw std::invalid_argument("correction window exceeds the record");
    return w;
}

/// Error spectrum over the (zero-padded) update window.
Spectrum windowed_error_spectrum(const TimeSeries& error, const CorrectionWindow& w) {
    TimeSeries win;
    win.sample_rate = error.sample_rate;
    win.data.setZero(error.channels(), w.win_len);
    win.data.middleCols(w.active_offset, w.active_len) =
        error.data.middleCols(w.win_start + w.active_offset, w.active_len);
    return to_frequency(win);
}

LtiPlant build_true_plant(const ExperimentConfig& cfg) {
    LtiPlant plant;
    if (cfg.plant_file) {
        plant = read_plant_json(*cfg.plant_file).first;
    } else {
        plant = sea_like_plant(cfg.sea_params);
    }
    if (cfg.perturb_relative_error > 0.0)
        plant = perturb_plant(plant, cfg.perturb_relative_error, cfg.perturb_seed);
    return plant;
}

NoiseModel iteration_noise(const ExperimentConfig& cfg, int k) {
    NoiseModel n = cfg.noise;
    n.seed = cfg.noise.seed + static_cast<std::uint64_t>(k);
    return n;
}

struct ModelAndGains {
    FrfEstimate frf;
    ModelInverse inverse;
    GainSchedule gains;
    ContractionReport contraction;
};

/// Steps 4 and 5: model estimation on the observed perturbation data and
/// Gersgorin-certified gain selection on the correction grid.
ModelAndGains estimate_and_certify(const ExperimentConfig& cfg, const LtiPlant& plant,
                                   const TimeSeries& perturb_in, const TimeSeries& o0,
                                   const TimeSeries& o1, const CorrectionWindow& w) {
    const Eigen::Index m = plant.m;
    const Eigen::Index n = plant.n;
    const double fs = cfg.task.sample_rate;
    const double f_cut = cfg.bandwidth_hz + cfg.taper_hz;

    const Eigen::VectorXd grid = dft_grid(w.win_len, fs);
    Eigen::Index q_eval = 0;
    while (q_eval < grid.size() && grid(q_eval) <= f_cut + 1e-9) ++q_eval;

    ModelAndGains out;
    out.frf.freq_hz = grid.head(q_eval);

    if (cfg.use_exact_model) {
        out.frf.noise_var = Eigen::VectorXd::Zero(m);
        for (Eigen::Index k = 0; k < q_eval; ++k) {
            out.frf.mean.push_back(frequency_response(plant, grid(k)));
            out.frf.variance.push_back(Eigen::MatrixXd::Zero(m, n));
        }
    } else {
        // Observed data: perturbation input and output difference O_1 - O_0.
        Spectrum ip_spec = to_frequency(perturb_in);
        TimeSeries op_time = o1;
        op_time.data -= o0.data;
        Spectrum op_spec = to_frequency(op_time);

        // Observed bins: in the learning band, with nonzero input.
        const double peak = ip_spec.data.cwiseAbs().maxCoeff();
        std::vector<Eigen::Index> obs;
        for (Eigen::Index k = 0; k < ip_spec.bins(); ++k) {
            if (ip_spec.freq_hz(k) > f_cut + 1e-9) break;
            if (ip_spec.data.col(k).cwiseAbs().maxCoeff() > cfg.obs_rel_threshold * peak)
                obs.push_back(k);
        }
        if (obs.empty()) throw std::invalid_argument("no observable perturbation bins");

        Eigen::VectorXd obs_freq(static_cast<Eigen::Index>(obs.size()));
        Eigen::MatrixXcd obs_in(n, static_cast<Eigen::Index>(obs.size()));
        Eigen::MatrixXcd obs_out(m, static_cast<Eigen::Index>(obs.size()));
        for (size_t i = 0; i < obs.size(); ++i) {
            obs_freq(static_cast<Eigen::Index>(i)) = ip_spec.freq_hz(obs[i]);
            obs_in.col(static_cast<Eigen::Index>(i)) = ip_spec.data.col(obs[i]);
            obs_out.col(static_cast<Eigen::Index>(i)) = op_spec.data.col(obs[i]);
        }

        // Noise variance from the initial hold segment of O_0, mapped to the
        // spectral domain; factor 2 because O_p is a difference of two
        // noisy measurements.
        Eigen::VectorXd noise_var = Eigen::VectorXd::Zero(m);
        if (cfg.task.quiet_s >= 2.0) {
            const auto i0 = static_cast<Eigen::Index>(std::lround(1.0 * fs));
            const auto len = static_cast<Eigen::Index>(std::lround((cfg.task.quiet_s - 2.0) * fs));
            if (len >= static_cast<Eigen::Index>(fs)) {
                TimeSeries quiet;
                quiet.sample_rate = fs;
                quiet.data = o0.data.middleCols(i0, len);
                Eigen::VectorXd v = estimate_noise_variance(quiet);
                for (Eigen::Index j = 0; j < m; ++j)
                    noise_var(j) = 2.0 * spectral_noise_variance(v(j), perturb_in.samples());
            }
        }
        out.frf.noise_var = noise_var;

        std::vector<FrfRow> rows;
        for (Eigen::Index j = 0; j < m; ++j) {
            WeightedKernelContext ctx;
            ctx.freq_hz = obs_freq;
            ctx.inputs = obs_in;
            for (Eigen::Index l = 0; l < n; ++l)
                ctx.kernels.emplace_back(cfg.kernel_sigma_f(j, l), cfg.kernel_length_scale(j, l));
            rows.push_back(estimate_row(ctx, obs_out.row(j).transpose(), noise_var(j),
                                        grid.head(q_eval)));
        }
        for (Eigen::Index k = 0; k < q_eval; ++k) {
            Eigen::MatrixXcd mean(m, n);
            Eigen::MatrixXd var(m, n);
            for (Eigen::Index j = 0; j < m; ++j) {
                mean.row(j) = rows[static_cast<size_t>(j)].mean.col(k).transpose();
                var.row(j) = rows[static_cast<size_t>(j)].variance.col(k).transpose();
            }
            out.frf.mean.push_back(std::move(mean));
            out.frf.variance.push_back(std::move(var));
        }
    }

    // Weighted pseudo-inverse per estimated bin; rank failures mark the bin
    // infeasible rather than aborting the run.
    Eigen::VectorXd w_diag = cfg.weights.size() == n ? cfg.weights : Eigen::VectorXd::Ones(n);
    out.inverse.freq_hz = grid;
    std::vector<Eigen::MatrixXd> delta_bar_grid;
    std::vector<Eigen::MatrixXd> delta_bar_est = delta_bar_from_variance(out.frf, cfg.gamma_delta);
    const Eigen::MatrixXd infeasible_bound =
        Eigen::MatrixXd::Constant(m, m, 1.0); // violates the feasibility condition
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
        if (k < q_eval) {
            bool ok = true;
            Eigen::MatrixXcd s_dagger = Eigen::MatrixXcd::Zero(n, m);
            try {
                s_dagger = weighted_pseudo_inverse(out.frf.mean[static_cast<size_t>(k)], w_diag);
            } catch (const RankDeficiencyError&) {
                ok = false;
            }
            out.inverse.s_hat.push_back(out.frf.mean[static_cast<size_t>(k)]);
            out.inverse.weights.push_back(w_diag);
            out.inverse.s_dagger.push_back(s_dagger);
            if (ok) {
                std::vector<Eigen::MatrixXcd> sd{s_dagger};
                std::vector<Eigen::MatrixXd> db{delta_bar_est[static_cast<size_t>(k)]};
                delta_bar_grid.push_back(uncertainty_bounds(sd, db)[0]);
            } else {
                delta_bar_grid.push_back(infeasible_bound);
            }
        } else {
            // Beyond the taper end the gain is zero and the model is unused.
            out.inverse.s_hat.push_back(Eigen::MatrixXcd::Zero(m, n));
            out.inverse.weights.push_back(w_diag);
            out.inverse.s_dagger.push_back(Eigen::MatrixXcd::Zero(n, m));
            delta_bar_grid.push_back(Eigen::MatrixXd::Zero(m, m));
        }
    }

    out.gains = build_gain_schedule(grid, delta_bar_grid, cfg.bandwidth_hz, cfg.taper_hz,
                                    cfg.rho_policy);

    bool any_feasible = false;
    for (Eigen::Index k = 0; k < grid.size() && grid(k) <= cfg.bandwidth_hz + 1e-9; ++k)
        if (out.gains.feasible.col(k).all()) any_feasible = true;
    if (!any_feasible)
        throw CertificationError("gain certification failed at every in-band frequency");

    // Contraction diagnostics at the entrywise worst-case uncertainty.
    std::vector<Eigen::MatrixXcd> delta_wc;
    delta_wc.reserve(static_cast<size_t>(grid.size()));
    for (const Eigen::MatrixXd& db : delta_bar_grid)
        delta_wc.push_back(db.cast<std::complex<double>>());
    out.contraction = make_contraction_report(grid, delta_wc, out.gains);
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    task.validate();
    arm.validate();
    if (epsilon <= 0.0) throw std::invalid_argument("config: epsilon must be > 0");
    if (k_max < 2) throw std::invalid_argument("config: k_max must be >= 2");
    if (gamma_delta <= 0.0) throw std::invalid_argument("config: gamma_delta must be > 0");
    if (bandwidth_hz <= 0.0 || taper_hz <= 0.0)
        throw std::invalid_argument("config: invalid rho band parameters");
    if (bandwidth_hz + taper_hz > task.sample_rate / 2.0)
        throw std::invalid_argument("config: taper end beyond Nyquist");
    if (pad_s < 0.0 || pad_s > task.quiet_s)
        throw std::invalid_argument("config: pad_s must lie within the quiet period");
    if (kernel_sigma_f.rows() != kernel_length_scale.rows() ||
        kernel_sigma_f.cols() != kernel_length_scale.cols())
        throw std::invalid_argument("config: kernel sigma_f and length_scale shapes differ");
    if ((kernel_sigma_f.size() != 0 && kernel_sigma_f.minCoeff() <= 0.0) ||
        (kernel_length_scale.size() != 0 && kernel_length_scale.minCoeff() <= 0.0))
        throw std::invalid_argument("config: kernel hyperparameters must be > 0");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (j.contains("plant")) {
            const json& p = j["plant"];
            if (p.contains("file")) cfg.plant_file = p["file"].get<std::string>();
            if (p.contains("sea")) {
                const json& s = p["sea"];
                cfg.sea_params.omega0_hz = s.value("omega0_hz", cfg.sea_params.omega0_hz);
                cfg.sea_params.zeta = s.value("zeta", cfg.sea_params.zeta);
                cfg.sea_params.coupling = s.value("coupling", cfg.sea_params.coupling);
                cfg.sea_params.a_hz = s.value("a_hz", cfg.sea_params.a_hz);
            }
        }
        if (j.contains("perturb_plant")) {
            cfg.perturb_relative_error = j["perturb_plant"].value("relative_error", 0.0);
            cfg.perturb_seed = j["perturb_plant"].at("seed").get<std::uint64_t>();
        }
        const json& noise = j.at("noise");
        std::vector<double> stds = noise.at("std").get<std::vector<double>>();
        cfg.noise.std_dev = Eigen::Map<Eigen::VectorXd>(stds.data(), static_cast<Eigen::Index>(stds.size()));
        cfg.noise.seed = noise.at("seed").get<std::uint64_t>(); // seeds are mandatory

        if (j.contains("task")) {
            const json& t = j["task"];
            cfg.task.period_s = t.value("T", cfg.task.period_s);
            cfg.task.stroke_cm = t.value("d", cfg.task.stroke_cm);
            cfg.task.quiet_s = t.value("t1", cfg.task.quiet_s);
            cfg.task.y_floor_cm = t.value("Y_floor", cfg.task.y_floor_cm);
            cfg.task.sample_rate = t.value("sample_rate", cfg.task.sample_rate);
        }
        if (j.contains("arm")) {
            const json& a = j["arm"];
            cfg.arm.l1 = a.value("l1", cfg.arm.l1);
            cfg.arm.l2 = a.value("l2", cfg.arm.l2);
            cfg.arm.l3 = a.value("l3", cfg.arm.l3);
            if (a.contains("phi0")) {
                auto v = a["phi0"].get<std::vector<double>>();
                if (v.size() != 3) throw std::invalid_argument("config: phi0 needs 3 entries");
                cfg.arm.phi0 = {v[0], v[1], v[2]};
            }
        }
        if (j.contains("kernel")) {
            cfg.kernel_sigma_f = json_matrix(j["kernel"].at("sigma_f"));
            cfg.kernel_length_scale = json_matrix(j["kernel"].at("length_scale"));
        }
        cfg.gamma_delta = j.value("gamma_delta", cfg.gamma_delta);
        if (j.contains("rho")) {
            const json& r = j["rho"];
            cfg.rho_policy.value = r.value("value", cfg.rho_policy.value);
            cfg.rho_policy.margin = r.value("margin", cfg.rho_policy.margin);
            cfg.bandwidth_hz = r.value("bandwidth_hz", cfg.bandwidth_hz);
            cfg.taper_hz = r.value("taper_hz", cfg.taper_hz);
        }
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.k_max = j.value("k_max", cfg.k_max);
        cfg.use_exact_model = j.value("use_exact_model", cfg.use_exact_model);
        if (j.contains("error_window")) {
            const std::string w = j["error_window"].get<std::string>();
            if (w == "active_padded") cfg.error_window = ErrorWindow::ActivePadded;
            else if (w == "full") cfg.error_window = ErrorWindow::Full;
            else throw std::invalid_argument("config: unknown error_window " + w);
        }
        if (j.contains("weights")) {
            auto v = j["weights"].get<std::vector<double>>();
            cfg.weights = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        }
        cfg.pad_s = j.value("pad_s", cfg.pad_s);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }

    if (cfg.kernel_sigma_f.size() == 0) {
        cfg.kernel_sigma_f = Eigen::MatrixXd::Constant(3, 3, 1.0);
        cfg.kernel_length_scale = Eigen::MatrixXd::Constant(3, 3, 1.2);
    }
    cfg.validate();
    return cfg;
}

RunResult run_algorithm1(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto t_start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    LtiPlant plant = build_true_plant(cfg);
    if (cfg.kernel_sigma_f.size() != 0 &&
        (cfg.kernel_sigma_f.rows() != plant.m || cfg.kernel_sigma_f.cols() != plant.n) &&
        !cfg.use_exact_model)
        throw std::invalid_argument("config: kernel hyperparameter shape != plant shape");

    RunResult res;
    res.trajectory = cleaning_trajectory(cfg.task, cfg.arm);
    const TimeSeries& o_d = res.trajectory.theta_d;
    const Eigen::Index n_total = o_d.samples();
    const CorrectionWindow w = correction_window(cfg, n_total);

    auto record_iteration = [&](int k, const TimeSeries& input, const TimeSeries& output) {
        TimeSeries err = output;
        err.data = o_d.data - output.data;
        IterationRecord rec;
        rec.k = k;
        rec.max_error = max_abs_per_channel(err);
        rec.wall_time_s = elapsed();
        res.records.push_back(rec);
        res.inputs.push_back(input);
        res.outputs.push_back(output);
        res.errors.push_back(std::move(err));
    };

    // Step 2: initial input.
    TimeSeries i0 = o_d;
    TimeSeries o0 = simulate(plant, i0, iteration_noise(cfg, 0));
    record_iteration(0, i0, o0);

    // Step 3: perturbed input.
    TimeSeries ip = perturbation_signal(cfg.perturbation, cfg.task.total_duration(),
                                        cfg.task.sample_rate);
    TimeSeries i1 = i0;
    i1.data += ip.data;
    TimeSeries o1 = simulate(plant, i1, iteration_noise(cfg, 1));
    record_iteration(1, i1, o1);

    // Steps 4 and 5: model estimation and certified gains.
    ModelAndGains mg = estimate_and_certify(cfg, plant, ip, o0, o1, w);
    res.frf = std::move(mg.frf);
    res.inverse = std::move(mg.inverse);
    res.gains = std::move(mg.gains);
    res.contraction = std::move(mg.contraction);

    // Step 6: iterative correction. I_2 comes from I_0 and E_0 so the
    // perturbed output never enters the update.
    auto corrected_input = [&](const TimeSeries& base_in, const TimeSeries& base_err) {
        Spectrum err_spec = windowed_error_spectrum(base_err, w);
        Spectrum in_win;
        in_win.freq_hz = err_spec.freq_hz;
        in_win.data.setZero(base_in.channels(), err_spec.bins());
        Spectrum corr = update_input(in_win, err_spec, res.inverse, res.gains);
        TimeSeries corr_t = to_time(corr, w.win_len, cfg.task.sample_rate);
        TimeSeries next = base_in;
        next.data.middleCols(w.win_start, w.win_len) += corr_t.data;
        return next;
    };

    int k = 2;
    TimeSeries input_k = corrected_input(i0, res.errors[0]);
    while (true) {
        TimeSeries output_k = simulate(plant, input_k, iteration_noise(cfg, k));
        record_iteration(k, input_k, output_k);
        const bool above_threshold = (res.records.back().max_error.array() >= cfg.epsilon).any();
        if (!above_threshold) {
            res.converged = true;
            break;
        }
        if (k >= cfg.k_max) break;
        input_k = corrected_input(res.inputs.back(), res.errors.back());
        ++k;
    }
    return res;
}

RunResult certify(const ExperimentConfig& cfg) {
    cfg.validate();
    LtiPlant plant = build_true_plant(cfg);

    RunResult res;
    res.trajectory = cleaning_trajectory(cfg.task, cfg.arm);
    const TimeSeries& o_d = res.trajectory.theta_d;
    const CorrectionWindow w = correction_window(cfg, o_d.samples());

    TimeSeries i0 = o_d;
    TimeSeries o0 = simulate(plant, i0, iteration_noise(cfg, 0));
    TimeSeries ip = perturbation_signal(cfg.perturbation, cfg.task.total_duration(),
                                        cfg.task.sample_rate);
    TimeSeries i1 = i0;
    i1.data += ip.data;
    TimeSeries o1 = simulate(plant, i1, iteration_noise(cfg, 1));

    ModelAndGains mg = estimate_and_certify(cfg, plant, ip, o0, o1, w);
    res.frf = std::move(mg.frf);
    res.inverse = std::move(mg.inverse);
    res.gains = std::move(mg.gains);
    res.contraction = std::move(mg.contraction);
    return res;
}

void export_report(const RunResult& result, const ExperimentConfig& cfg,
                   const std::string& out_dir) {
    if (result.records.empty() && result.gains.freq_hz.size() == 0)
        throw std::invalid_argument("export_report: nothing to export");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw std::runtime_error("export_report: cannot create output directory " + out_dir);
    const fs::path dir(out_dir);

    for (size_t i = 0; i < result.records.size(); ++i) {
        const int k = result.records[i].k;
        write_csv(result.inputs[i], (dir / ("inputs_k" + std::to_string(k) + ".csv")).string());
        write_csv(result.outputs[i], (dir / ("outputs_k" + std::to_string(k) + ".csv")).string());
        write_csv(result.errors[i], (dir / ("errors_k" + std::to_string(k) + ".csv")).string());
    }
    if (result.gains.freq_hz.size() > 0)
        write_gain_schedule_csv(result.gains, (dir / "gain_schedule.csv").string());
    if (result.contraction.freq_hz.size() > 0)
        write_contraction_csv(result.contraction, result.gains,
                              (dir / "contraction.csv").string());

    if (!result.frf.mean.empty()) {
        std::ofstream f(dir / "frf_estimate.csv");
        if (!f) throw std::runtime_error("export_report: cannot write frf_estimate.csv");
        f << "freq_hz,j,l,re_mean,im_mean,variance\n";
        char buf[160];
        for (Eigen::Index k = 0; k < result.frf.freq_hz.size(); ++k) {
            const auto& mean = result.frf.mean[static_cast<size_t>(k)];
            const auto& var = result.frf.variance[static_cast<size_t>(k)];
            for (Eigen::Index j = 0; j < mean.rows(); ++j)
                for (Eigen::Index l = 0; l < mean.cols(); ++l) {
                    std::snprintf(buf, sizeof(buf), "%.9g,%lld,%lld,%.12e,%.12e,%.12e\n",
                                  result.frf.freq_hz(k),
                                  static_cast<long long>(j + 1), static_cast<long long>(l + 1),
                                  mean(j, l).real(), mean(j, l).imag(), var(j, l));
                    f << buf;
                }
        }
    }

    json summary;
    summary["epsilon"] = cfg.epsilon;
    summary["k_max"] = cfg.k_max;
    summary["noise_seed"] = cfg.noise.seed;
    summary["iterations"] = json::array();
    for (const IterationRecord& rec : result.records) {
        json row;
        row["k"] = rec.k;
        row["max_error"] = std::vector<double>(rec.max_error.begin(), rec.max_error.end());
        row["wall_time_s"] = rec.wall_time_s;
        summary["iterations"].push_back(row);
    }
    if (result.records.size() >= 2) {
        const Eigen::VectorXd& e0 = result.records.front().max_error;
        const Eigen::VectorXd& el = result.records.back().max_error;
        std::vector<double> reduction;
        for (Eigen::Index j = 0; j < e0.size(); ++j)
            reduction.push_back(e0(j) > 0.0 ? (e0(j) - el(j)) / e0(j) : 0.0);
        summary["reduction"] = reduction;
    }
    summary["converged"] = !result.records.empty() &&
        (result.records.back().max_error.array() < cfg.epsilon).all();
    std::ofstream f(dir / "summary.json");
    if (!f) throw std::runtime_error("export_report: cannot write summary.json");
    f << summary.dump(2) << "\n";
}

Eigen::MatrixXd speed_sweep(const ExperimentConfig& cfg,
                            const std::vector<double>& periods) {
    if (periods.empty()) throw std::invalid_argument("speed_sweep: no periods");
    std::vector<double> sorted = periods;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    LtiPlant plant = build_true_plant(cfg);
    Eigen::MatrixXd table(static_cast<Eigen::Index>(sorted.size()), plant.m + 1);
    for (size_t i = 0; i < sorted.size(); ++i) {
        ExperimentConfig c = cfg;
        c.task.period_s = sorted[i];
        c.task.validate();
        Trajectory traj = cleaning_trajectory(c.task, c.arm);
        TimeSeries o0 = simulate(plant, traj.theta_d, iteration_noise(c, 0));
        TimeSeries err = o0;
        err.data = traj.theta_d.data - o0.data;
        table(static_cast<Eigen::Index>(i), 0) = sorted[i];
        table.row(static_cast<Eigen::Index>(i)).tail(plant.m) =
            max_abs_per_channel(err).transpose();
    }
    return table;
}

} // namespace ilc
