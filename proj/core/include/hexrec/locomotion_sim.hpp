#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "hexrec/gait_sequencer.hpp"
#include "hexrec/morphology.hpp"
#include "hexrec/trajectory.hpp"

namespace hexrec {

struct BodyPose {
    Eigen::Vector3d position{0.0, 0.0, 0.0};
    Eigen::Quaterniond orientation{1.0, 0.0, 0.0, 0.0};
};

/// Intrinsic Z-Y-X decomposition of the body orientation.
///
/// The body frame has y forward and x lateral, so the angle about y (the
/// middle rotation) is the physical roll and the angle about x (the last
/// rotation) is the physical pitch.
struct EulerZyx {
    double roll = 0.0;   // about y, the forward axis
    double pitch = 0.0;  // about x, the lateral axis
    double yaw = 0.0;    // about z
};

EulerZyx euler_zyx(const Eigen::Matrix3d& rot);
EulerZyx euler_zyx(const Eigen::Quaterniond& q);
Eigen::Matrix3d rotation_from_euler_zyx(const EulerZyx& e);

/// Closed-form rigid registration: the pose minimizing
/// sum_i | R * body_targets[i] + t - world_anchors[i] |^2.
/// Needs at least three pairs. If the anchor set is within 1e-6 of collinear
/// the rotation is blended toward `prior` with weight 1e-3 to keep the fit
/// unique.
BodyPose fit_body_pose(std::span<const Eigen::Vector3d> body_targets,
                       std::span<const Eigen::Vector3d> world_anchors, const BodyPose& prior);

/// Signed distance from a ground point to the convex hull of the anchors'
/// ground projections; positive inside. Collinear/degenerate anchor sets are
/// unstable and yield -infinity.
double support_polygon_margin(const Eigen::Vector2d& com_xy,
                              std::span<const Eigen::Vector3d> anchors);

struct SimConfig {
    double sim_time = 10.0;     // seconds
    int steps_per_cycle = 120;  // trajectory samples per gait cycle, multiple of 12
    double margin_tol = 1e-3;   // static-stability band: margin below -margin_tol counts as unstable

    // A quasi-static model declares instability instantaneously, but toppling
    // takes time: the CoM diverges like an inverted pendulum with time scale
    // sqrt(height/g) (~0.1 s here). A four-leg crawl at duty 3/4 sweeps its
    // support diagonal under the CoM once per quarter cycle, so brief
    // unstable crossings are part of normal walking. The run is marked
    // fallen when the margin stays below -margin_tol for longer than
    // fall_dwell_time, or immediately below -hard_margin.
    double fall_dwell_time = 0.3;  // seconds
    double hard_margin = 0.02;     // meters
};

/// Body pose time series from the quasi-static stance simulation.
struct BodyTrajectory {
    std::vector<double> times;
    std::vector<BodyPose> poses;
    std::vector<EulerZyx> eulers;
    std::vector<double> support_margins;
    std::vector<double> fit_residuals;  // RMS pin error per step
    bool fell = false;
    double fall_time = 0.0;  // meaningful only when fell
};

/// Deterministic quasi-static locomotion simulation.
///
/// Support feet are pinned where they touch down (projected to the ground
/// plane z = 0); at every step the body pose is the rigid least-squares fit
/// of the commanded body-frame tip positions onto the pinned contacts. The
/// run stops early, flagged as fallen, when the CoM ground projection leaves
/// the support polygon by more than margin_tol.
///
/// Initial pose: body origin at (0, 0, body_height), identity orientation,
/// anchors taken from the initial tip commands.
BodyTrajectory simulate(const Morphology& m, const GaitSchedule& s, const GaitParams& p,
                        const RobotGeometry& g, const SimConfig& cfg);

/// Columns: t,x,y,z,roll,pitch,yaw,margin,residual (SI units, radians).
void write_trajectory_csv(std::ostream& os, const BodyTrajectory& traj);

}  // namespace hexrec
