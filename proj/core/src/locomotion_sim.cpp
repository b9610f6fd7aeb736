#include "hexrec/locomotion_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/SVD>

#include "hexrec/csv.hpp"

namespace hexrec {

EulerZyx euler_zyx(const Eigen::Matrix3d& rot) {
    EulerZyx e;
    e.roll = std::asin(std::clamp(-rot(2, 0), -1.0, 1.0));
    // Gimbal detection on the matrix entries directly: asin noise near +-1
    // would otherwise defeat a band on the angle itself.
    if (std::hypot(rot(2, 1), rot(2, 2)) < 1e-8) {
        // The x-rotation is unobservable; fold it into yaw.
        e.pitch = 0.0;
        e.yaw = std::atan2(-rot(0, 1), rot(1, 1));
    } else {
        e.pitch = std::atan2(rot(2, 1), rot(2, 2));
        e.yaw = std::atan2(rot(1, 0), rot(0, 0));
    }
    return e;
}

EulerZyx euler_zyx(const Eigen::Quaterniond& q) { return euler_zyx(q.toRotationMatrix()); }

Eigen::Matrix3d rotation_from_euler_zyx(const EulerZyx& e) {
    return (Eigen::AngleAxisd(e.yaw, Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(e.roll, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(e.pitch, Eigen::Vector3d::UnitX()))
        .toRotationMatrix();
}

BodyPose fit_body_pose(std::span<const Eigen::Vector3d> body_targets,
                       std::span<const Eigen::Vector3d> world_anchors, const BodyPose& prior) {
    const std::size_t n = body_targets.size();
    if (n != world_anchors.size()) {
        throw std::invalid_argument("target/anchor count mismatch");
    }
    if (n < 3) {
        throw std::invalid_argument("rigid pose fit needs at least 3 point pairs");
    }

    Eigen::Vector3d bc = Eigen::Vector3d::Zero();
    Eigen::Vector3d ac = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        bc += body_targets[i];
        ac += world_anchors[i];
    }
    bc /= static_cast<double>(n);
    ac /= static_cast<double>(n);

    // Cross-covariance; the optimal rotation maximizes tr(R * M).
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    Eigen::Matrix<double, 3, Eigen::Dynamic> centered_anchors(3, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d b = body_targets[i] - bc;
        const Eigen::Vector3d a = world_anchors[i] - ac;
        cov += b * a.transpose();
        centered_anchors.col(static_cast<Eigen::Index>(i)) = a;
    }

    {
        Eigen::JacobiSVD<Eigen::Matrix3d> probe(centered_anchors * centered_anchors.transpose());
        if (std::sqrt(probe.singularValues()(1)) < 1e-6) {
            // Nearly collinear contacts leave a rotation ambiguity about the
            // contact line; pull the solution toward the prior orientation.
            cov += 1e-3 * prior.orientation.toRotationMatrix();
        }
    }

    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d& u = svd.matrixU();
    const Eigen::Matrix3d& v = svd.matrixV();
    Eigen::Vector3d d(1.0, 1.0, (v * u.transpose()).determinant());
    const Eigen::Matrix3d rot = v * d.asDiagonal() * u.transpose();

    BodyPose pose;
    pose.orientation = Eigen::Quaterniond(rot).normalized();
    pose.position = ac - rot * bc;
    return pose;
}

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Convex hull, counter-clockwise, collinear points dropped.
std::vector<Eigen::Vector2d> convex_hull(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) {
                              return a.x() == b.x() && a.y() == b.y();
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Eigen::Vector2d> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i > 0; --i) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0.0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

double support_polygon_margin(const Eigen::Vector2d& com_xy,
                              std::span<const Eigen::Vector3d> anchors) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(anchors.size());
    for (const auto& a : anchors) pts.emplace_back(a.x(), a.y());
    const auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) return -std::numeric_limits<double>::infinity();

    double inside = std::numeric_limits<double>::infinity();
    bool is_inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Eigen::Vector2d& a = hull[i];
        const Eigen::Vector2d& b = hull[(i + 1) % hull.size()];
        const double signed_dist = cross2(a, b, com_xy) / (b - a).norm();
        inside = std::min(inside, signed_dist);
        if (signed_dist < 0.0) is_inside = false;
    }
    if (is_inside) return inside;

    double outside = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        outside = std::min(
            outside, point_segment_distance(com_xy, hull[i], hull[(i + 1) % hull.size()]));
    }
    return -outside;
}

BodyTrajectory simulate(const Morphology& m, const GaitSchedule& s, const GaitParams& p,
                        const RobotGeometry& g, const SimConfig& cfg) {
    const int ng = cfg.steps_per_cycle;
    if (ng <= 0 || ng % 12 != 0) {
        throw std::invalid_argument("steps_per_cycle must be a positive multiple of 12");
    }
    if (cfg.sim_time <= 0.0) {
        throw std::invalid_argument("simulation time must be positive");
    }
    const int sigma = s.sigma();
    const int swing_len = ng / sigma;
    const double dt = s.period() / ng;
    const int n_steps = static_cast<int>(std::llround(cfg.sim_time / dt));

    const auto legs = m.functional_legs();
    const int n_legs = static_cast<int>(legs.size());

    // Per-leg local cycle tables and phase offsets: leg local sample index at
    // global step j is ((j - offset) mod ng) + 1, offset = swing_start * ng.
    std::vector<std::vector<Eigen::Vector3d>> table(n_legs);
    std::vector<int> offset(n_legs);
    for (int li = 0; li < n_legs; ++li) {
        const int leg = legs[li];
        table[li].reserve(ng);
        for (int k = 1; k <= ng; ++k) {
            table[li].push_back(body_tip_position(leg, k, p, s, g, ng));
        }
        offset[li] = *s.slot(leg) * swing_len;
    }
    const auto local_k = [&](int li, int j) { return ((j - offset[li]) % ng + ng) % ng + 1; };

    BodyTrajectory out;
    out.times.reserve(n_steps + 1);
    out.poses.reserve(n_steps + 1);

    BodyPose pose;
    pose.position = Eigen::Vector3d(0.0, 0.0, g.body_height);

    std::vector<bool> anchored(n_legs, false);
    std::vector<Eigen::Vector3d> anchor(n_legs, Eigen::Vector3d::Zero());
    std::vector<Eigen::Vector3d> targets, anchors;
    targets.reserve(n_legs);
    anchors.reserve(n_legs);

    double unstable_since = -1.0;  // < 0 when the margin is inside the stability band

    for (int j = 0; j <= n_steps; ++j) {
        // Contact transitions, using the pose of the previous step for
        // touchdown positions.
        const Eigen::Matrix3d rot_prev = pose.orientation.toRotationMatrix();
        for (int li = 0; li < n_legs; ++li) {
            const int k = local_k(li, j);
            const bool in_support = k > swing_len;
            if (in_support && !anchored[li]) {
                Eigen::Vector3d world = rot_prev * table[li][k - 1] + pose.position;
                world.z() = 0.0;
                anchor[li] = world;
                anchored[li] = true;
            } else if (!in_support && anchored[li]) {
                anchored[li] = false;
            }
        }

        targets.clear();
        anchors.clear();
        for (int li = 0; li < n_legs; ++li) {
            if (!anchored[li]) continue;
            targets.push_back(table[li][local_k(li, j) - 1]);
            anchors.push_back(anchor[li]);
        }
        if (anchors.size() < 3) {
            throw std::runtime_error("fewer than 3 supporting legs at t=" +
                                     std::to_string(j * dt) + "; schedule is invalid");
        }

        pose = fit_body_pose(targets, anchors, pose);
        const Eigen::Matrix3d rot = pose.orientation.toRotationMatrix();

        double residual2 = 0.0;
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            residual2 += (rot * targets[i] + pose.position - anchors[i]).squaredNorm();
        }
        const double residual = std::sqrt(residual2 / static_cast<double>(anchors.size()));

        const Eigen::Vector3d com = pose.position + rot * g.com_offset;
        const double margin = support_polygon_margin(com.head<2>(), anchors);

        out.times.push_back(j * dt);
        out.poses.push_back(pose);
        out.eulers.push_back(euler_zyx(rot));
        out.support_margins.push_back(margin);
        out.fit_residuals.push_back(residual);

        bool fell = false;
        if (margin < -cfg.margin_tol) {
            if (unstable_since < 0.0) unstable_since = j * dt;
            fell = margin < -cfg.hard_margin ||
                   j * dt - unstable_since > cfg.fall_dwell_time;
        } else {
            unstable_since = -1.0;
        }
        if (fell) {
            out.fell = true;
            out.fall_time = j * dt;
            break;
        }
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const BodyTrajectory& traj) {
    os << "t,x,y,z,roll,pitch,yaw,margin,residual\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& p = traj.poses[i].position;
        const auto& e = traj.eulers[i];
        os << csv::num(traj.times[i]) << ',' << csv::num(p.x()) << ',' << csv::num(p.y()) << ','
           << csv::num(p.z()) << ',' << csv::num(e.roll) << ',' << csv::num(e.pitch) << ','
           << csv::num(e.yaw) << ',' << csv::num(traj.support_margins[i]) << ','
           << csv::num(traj.fit_residuals[i]) << '\n';
    }
}

}  // namespace hexrec
