#pragma once

#include "ilc/signals.hpp"

#include <Eigen/Dense>
#include <array>

namespace ilc {

/// Planar 3R arm geometry (lengths in cm, cumulative start angles in rad).
struct ArmGeometry {
    double l1 = 16.90;
    double l2 = 17.97;
    double l3 = 15.86;
    std::array<double, 3> phi0 = {-0.6756, 1.0007, 0.0};

    void validate() const;
    /// In-plane offsets of the brush base at the initial pose.
    double lb() const { return l1 * std::cos(phi0[0]) + l2 * std::cos(phi0[1]); }
    double la() const { return std::abs(-l1 * std::sin(phi0[0]) - l2 * std::sin(phi0[1])); }
    /// Initial joint angles implied by phi0.
    std::array<double, 3> theta0() const;
};

struct TipPose {
    double x;     // cm
    double y;     // cm
    double theta; // rad
};

/// Periodic forward-and-backward cleaning stroke.
struct CleaningTask {
    double period_s = 0.5;     // T
    double stroke_cm = 5.0;    // d
    double quiet_s = 20.0;     // t1 lead and lag hold
    double y_floor_cm = 39.13; // plate plane
    double sample_rate = 100.0;
    double motion_span_s = 20.0; // total span of the cleaning cycles

    int cycles() const;             // k_N
    double total_duration() const;  // t_f = 2 t1 + k_N T
    void validate() const;
};

/// Per-joint chirp + staircase perturbation.
struct PerturbationSpec {
    double chirp_rate_hz = 0.3;   // omega_c
    std::array<double, 3> chirp_amplitude = {0.012, 0.022, 0.012};
    std::array<double, 3> stair_start_s = {24.0, 23.0, 21.0};
    std::array<std::array<double, 3>, 3> stair_steps = {{
        {+0.002, -0.002, +0.002},
        {-0.003, +0.003, -0.003},
        {+0.002, -0.002, +0.002},
    }};
    double stair_step_s = 5.0;
    double window_start_s = 20.0;
    double window_end_s = 40.0;
};

TipPose forward_kinematics(const ArmGeometry& geom, const std::array<double, 3>& theta);

/// Joint angles for the brush tip at stroke offset l_s above the floor
/// (X fixed at the hole center, tip perpendicular to the plate).
std::array<double, 3> inverse_kinematics(const ArmGeometry& geom, double l_s_cm);

struct Trajectory {
    TimeSeries y_d;     // 1 channel, cm
    TimeSeries theta_d; // 3 channels, rad
};

Trajectory cleaning_trajectory(const CleaningTask& task, const ArmGeometry& geom);

/// Analytic stroke profile at time t (boundary conditions are exact).
double stroke_position(const CleaningTask& task, double t);
double stroke_velocity(const CleaningTask& task, double t);

TimeSeries perturbation_signal(const PerturbationSpec& spec, double duration_s,
                               double sample_rate);

} // namespace ilc
