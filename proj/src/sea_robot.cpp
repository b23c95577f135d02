#include "ilc/sea_robot.hpp"

#include "ilc/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ilc {

namespace {
constexpr double kPi = std::numbers::pi;

double clamped_acos(double x) {
    if (x > 1.0) {
        if (x > 1.0 + 1e-12) throw UnreachableError("inverse_kinematics: target outside workspace");
        x = 1.0;
    } else if (x < -1.0) {
        if (x < -1.0 - 1e-12) throw UnreachableError("inverse_kinematics: target outside workspace");
        x = -1.0;
    }
    return std::acos(x);
}
} // namespace

void ArmGeometry::validate() const {
    if (l1 <= 0.0 || l2 <= 0.0 || l3 <= 0.0)
        throw std::invalid_argument("ArmGeometry: link lengths must be positive");
}

std::array<double, 3> ArmGeometry::theta0() const {
    return {phi0[0], phi0[1] - phi0[0], phi0[2] - phi0[1]};
}

int CleaningTask::cycles() const {
    return static_cast<int>(std::lround(motion_span_s / period_s));
}

double CleaningTask::total_duration() const {
    return 2.0 * quiet_s + cycles() * period_s;
}

void CleaningTask::validate() const {
    if (period_s <= 0.0 || stroke_cm <= 0.0 || sample_rate <= 0.0 || quiet_s < 0.0)
        throw std::invalid_argument("CleaningTask: parameter out of range");
    if (cycles() < 1 || std::abs(cycles() * period_s - motion_span_s) > 1e-9)
        throw std::invalid_argument("CleaningTask: period must divide the motion span");
}

TipPose forward_kinematics(const ArmGeometry& geom, const std::array<double, 3>& theta) {
    const double phi1 = theta[0];
    const double phi2 = theta[0] + theta[1];
    const double phi3 = theta[0] + theta[1] + theta[2];
    TipPose p;
    p.y = geom.l1 * std::cos(phi1) + geom.l2 * std::cos(phi2) + geom.l3 * std::cos(phi3);
    p.x = -geom.l1 * std::sin(phi1) - geom.l2 * std::sin(phi2) - geom.l3 * std::sin(phi3);
    p.theta = phi3 + kPi / 2.0;
    return p;
}

std::array<double, 3> inverse_kinematics(const ArmGeometry& geom, double l_s_cm) {
    geom.validate();
    const double la = geom.la();
    const double lbs = geom.lb() + l_s_cm;
    const double dist2 = la * la + lbs * lbs;
    const double dist = std::sqrt(dist2);
    const double lo = std::abs(geom.l1 - geom.l2);
    const double hi = geom.l1 + geom.l2;
    if (dist < lo - 1e-9 || dist > hi + 1e-9)
        throw UnreachableError("inverse_kinematics: target outside the two-link annulus");

    // Elbow branch with theta_1 negative for this workspace.
    const double theta1 = -std::atan2(-la, lbs)
        - clamped_acos((lbs * lbs + la * la + geom.l1 * geom.l1 - geom.l2 * geom.l2)
                       / (2.0 * geom.l1 * dist));
    const double theta2 = kPi
        - clamped_acos((geom.l1 * geom.l1 + geom.l2 * geom.l2 - dist2)
                       / (2.0 * geom.l1 * geom.l2));
    return {theta1, theta2, -(theta1 + theta2)};
}

namespace {

// Analytic position/velocity of the stroke profile at time t.
// Double integral of A sin(w_T (t - t_kc)) over the first half cycle,
// time-mirrored on the second half, with zero velocity at the boundaries.
void stroke_profile(const CleaningTask& task, double t, double& y, double& ydot) {
    const double T = task.period_s;
    const double d = task.stroke_cm;
    const double A = 8.0 * kPi * d / (T * T);
    const double wT = 4.0 * kPi / T;
    const double t1 = task.quiet_s;
    const double motion_end = t1 + task.cycles() * T;

    y = task.y_floor_cm;
    ydot = 0.0;
    if (t < t1 || t >= motion_end) return;

    const double tau = std::fmod(t - t1, T);
    if (tau < T / 2.0) {
        y += (A / wT) * (tau - std::sin(wT * tau) / wT);
        ydot = (A / wT) * (1.0 - std::cos(wT * tau));
    } else {
        const double tau2 = tau - T / 2.0;
        y += d + (A / wT) * (std::sin(wT * tau2) / wT - tau2);
        ydot = (A / wT) * (std::cos(wT * tau2) - 1.0);
    }
}

} // namespace

Trajectory cleaning_trajectory(const CleaningTask& task, const ArmGeometry& geom) {
    task.validate();
    geom.validate();
    const auto n = static_cast<Eigen::Index>(std::lround(task.total_duration() * task.sample_rate));

    Trajectory traj;
    traj.y_d.sample_rate = task.sample_rate;
    traj.y_d.data.resize(1, n);
    traj.theta_d.sample_rate = task.sample_rate;
    traj.theta_d.data.resize(3, n);

    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / task.sample_rate;
        double y, ydot;
        stroke_profile(task, t, y, ydot);
        traj.y_d.data(0, i) = y;
        const std::array<double, 3> th = inverse_kinematics(geom, y - task.y_floor_cm);
        for (int j = 0; j < 3; ++j) traj.theta_d.data(j, i) = th[static_cast<size_t>(j)];
    }
    return traj;
}

double stroke_velocity(const CleaningTask& task, double t) {
    double y, ydot;
    stroke_profile(task, t, y, ydot);
    return ydot;
}

double stroke_position(const CleaningTask& task, double t) {
    double y, ydot;
    stroke_profile(task, t, y, ydot);
    return y;
}

TimeSeries perturbation_signal(const PerturbationSpec& spec, double duration_s,
                               double sample_rate) {
    const auto n = static_cast<Eigen::Index>(std::lround(duration_s * sample_rate));
    TimeSeries out;
    out.sample_rate = sample_rate;
    out.data.setZero(3, n);

    const double wc = spec.chirp_rate_hz;
    const double phase1 = std::sqrt(100.0 / 3.0);
    const double phase3 = std::sqrt(50.0);

    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate;
        if (t >= spec.window_start_s && t <= spec.window_end_s) {
            double t1c = std::fmod(t - 20.0 + phase1, 20.0);
            if (t1c < 0.0) t1c += 20.0;
            out.data(0, i) += spec.chirp_amplitude[0] * std::sin(2.0 * kPi * wc * t1c * t1c);

            const double rev = 40.0 - t;
            out.data(1, i) += spec.chirp_amplitude[1] * std::sin(2.0 * kPi * wc * rev * rev);

            double t3c = std::fmod(t - 30.0 + phase3, 20.0);
            if (t3c < 0.0) t3c += 20.0;
            if (t3c >= 10.0) {
                out.data(2, i) += -spec.chirp_amplitude[2]
                    * std::sin(2.0 * kPi * wc * (t3c - 10.0) * (t3c - 10.0));
            } else {
                out.data(2, i) += spec.chirp_amplitude[2]
                    * std::sin(2.0 * kPi * wc * (20.0 - t3c) * (20.0 - t3c));
            }
        }
        for (int j = 0; j < 3; ++j) {
            const double th = t - spec.stair_start_s[static_cast<size_t>(j)];
            if (th >= 0.0 && th < 3.0 * spec.stair_step_s) {
                const int step = static_cast<int>(th / spec.stair_step_s);
                out.data(j, i) += spec.stair_steps[static_cast<size_t>(j)][static_cast<size_t>(step)];
            }
        }
    }
    return out;
}

} // namespace ilc
