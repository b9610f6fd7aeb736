#include "hexrec/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hexrec {

namespace {

constexpr double kClampTol = 1e-9;

double checked_asin_arg(double v, const char* what) {
    if (v > 1.0 + kClampTol || v < -1.0 - kClampTol) {
        throw std::domain_error(std::string("unreachable tip: ") + what + " argument " +
                                std::to_string(v) + " outside [-1, 1]");
    }
    return std::clamp(v, -1.0, 1.0);
}

}  // namespace

JointAngles inverse_kinematics(const Eigen::Vector3d& tip, int leg, const RobotGeometry& g) {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6");
    }
    const LegLinks& L = g.links[leg - 1];

    const double q1 = std::atan2(tip.y(), tip.x());
    // Horizontal reach beyond the hip yaw link; equals c1*px + s1*py - l1.
    const double u = std::hypot(tip.x(), tip.y()) - L.l1;
    if (u < -kClampTol) {
        throw std::domain_error("unreachable tip: target lies behind the hip link (radius " +
                                std::to_string(u + L.l1) + " < l1)");
    }
    const double ueff = std::max(u, 0.0);
    const double d2 = ueff * ueff + tip.z() * tip.z();

    const double sin_elbow =
        checked_asin_arg((d2 - L.l2 * L.l2 - L.l3 * L.l3) / (2.0 * L.l2 * L.l3), "elbow");
    const double q3 = std::asin(sin_elbow) - std::numbers::pi / 2.0;

    const double c3 = std::cos(q3);
    const double s3 = std::sin(q3);
    const double gamma = std::atan2(L.l3 * s3, L.l3 * c3 + L.l2);
    const double reach = std::hypot(L.l3 * c3 + L.l2, L.l3 * s3);
    const double q2 = std::asin(checked_asin_arg(tip.z() / reach, "femur")) - gamma;

    return {q1, q2, q3};
}

Eigen::Vector3d forward_kinematics(const JointAngles& q, int leg, const RobotGeometry& g) {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6");
    }
    const LegLinks& L = g.links[leg - 1];
    const double r = L.l1 + L.l2 * std::cos(q.femur_pitch) +
                     L.l3 * std::cos(q.femur_pitch + q.tibia_pitch);
    const double z = L.l2 * std::sin(q.femur_pitch) +
                     L.l3 * std::sin(q.femur_pitch + q.tibia_pitch);
    return {r * std::cos(q.hip_yaw), r * std::sin(q.hip_yaw), z};
}

Eigen::Vector3d hip_frame_point(const Eigen::Vector3d& body_point, int leg,
                                const RobotGeometry& g) {
    const double s = g.side_sign[leg - 1];
    const Eigen::Vector2d& hip = g.hip_xy[leg - 1];
    return {s * (body_point.x() - hip.x()), s * (body_point.y() - hip.y()), body_point.z()};
}

}  // namespace hexrec
