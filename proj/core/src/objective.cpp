#include "hexrec/objective.hpp"

#include <algorithm>
#include <stdexcept>

namespace hexrec {

Metrics extract_metrics(const BodyTrajectory& traj) {
    if (traj.times.empty()) {
        throw std::invalid_argument("cannot extract metrics from an empty trajectory");
    }
    Metrics m;
    m.x_final = traj.poses.back().position.x();
    m.y_final = traj.poses.back().position.y();
    m.yaw_final = traj.eulers.back().yaw;

    double roll_min = traj.eulers.front().roll, roll_max = roll_min;
    double pitch_min = traj.eulers.front().pitch, pitch_max = pitch_min;
    for (const auto& e : traj.eulers) {
        roll_min = std::min(roll_min, e.roll);
        roll_max = std::max(roll_max, e.roll);
        pitch_min = std::min(pitch_min, e.pitch);
        pitch_max = std::max(pitch_max, e.pitch);
    }
    m.roll_amp = 0.5 * (roll_max - roll_min);
    m.pitch_amp = 0.5 * (pitch_max - pitch_min);
    return m;
}

double objective_value(const Metrics& m, const ObjectiveWeights& w, bool fell) {
    if (fell) return 0.0;
    const double denom = 1.0 + w.w_lateral * m.x_final * m.x_final +
                         w.w_yaw * m.yaw_final * m.yaw_final +
                         w.w_roll * m.roll_amp * m.roll_amp +
                         w.w_pitch * m.pitch_amp * m.pitch_amp;
    return w.w_forward * m.y_final * m.y_final / denom;
}

}  // namespace hexrec
