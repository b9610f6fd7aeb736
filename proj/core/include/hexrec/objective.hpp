#pragma once

#include "hexrec/locomotion_sim.hpp"

namespace hexrec {

/// Scalar locomotion metrics of one simulated run.
struct Metrics {
    double x_final = 0.0;    // lateral drift at the end of the run, m
    double y_final = 0.0;    // forward progress, m
    double yaw_final = 0.0;  // final yaw, rad
    double roll_amp = 0.0;   // half peak-to-peak roll over the run, rad
    double pitch_amp = 0.0;  // half peak-to-peak pitch, rad
};

struct ObjectiveWeights {
    double w_forward = 1.0;    // w1
    double w_lateral = 1.0;    // w2
    double w_yaw = 10.0;       // w3
    double w_roll = 100.0;     // w4
    double w_pitch = 100.0;    // w5
};

Metrics extract_metrics(const BodyTrajectory& traj);

/// Recovery objective, maximized:
///   F = w1*y_f^2 / (1 + w2*x_f^2 + w3*yaw_f^2 + w4*roll_amp^2 + w5*pitch_amp^2)
/// Fallen candidates score 0.
double objective_value(const Metrics& m, const ObjectiveWeights& w, bool fell);

}  // namespace hexrec
