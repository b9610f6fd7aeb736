#pragma once

#include <Eigen/Core>

#include "hexrec/morphology.hpp"

namespace hexrec {

/// Joint angles of one 3-DoF leg, radians.
///
/// Frame conventions (locked by the round-trip tests):
///  - The hip frame has x pointing outward along the leg at zero yaw, z up.
///  - hip_yaw (q1) rotates about z; femur_pitch (q2) lifts the femur above
///    the horizontal; tibia_pitch (q3) is the relative elbow angle, always in
///    the flexed branch q3 in [-pi, 0].
/// Forward chain: with r = l1 + l2*cos(q2) + l3*cos(q2+q3),
///   tip = (r*cos(q1), r*sin(q1), l2*sin(q2) + l3*sin(q2+q3)).
struct JointAngles {
    double hip_yaw = 0.0;
    double femur_pitch = 0.0;
    double tibia_pitch = 0.0;
};

struct JointLimits {
    double hip_yaw_max = 1.5707963267948966;  // +/- pi/2
    double femur_pitch_max = 2.36;
    double tibia_pitch_max = 2.36;

    bool contains(const JointAngles& q) const {
        return std::abs(q.hip_yaw) <= hip_yaw_max && std::abs(q.femur_pitch) <= femur_pitch_max &&
               std::abs(q.tibia_pitch) <= tibia_pitch_max;
    }
};

/// Closed-form inverse kinematics of one leg. `tip` is expressed in the leg's
/// hip frame. Targets whose horizontal radius falls behind the hip link or
/// whose arcsine arguments exceed [-1, 1] by more than 1e-9 are rejected with
/// std::domain_error; within that band the argument is clamped.
JointAngles inverse_kinematics(const Eigen::Vector3d& tip, int leg, const RobotGeometry& g);

/// Forward chain of the same leg; exact inverse of inverse_kinematics on its
/// principal branch.
Eigen::Vector3d forward_kinematics(const JointAngles& q, int leg, const RobotGeometry& g);

/// Body-frame point expressed in the hip frame of `leg`. Legs on the negative
/// side are mounted rotated half a turn about z, so their hip frame x also
/// points outward.
Eigen::Vector3d hip_frame_point(const Eigen::Vector3d& body_point, int leg,
                                const RobotGeometry& g);

}  // namespace hexrec
