#include "hexrec/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "hexrec/csv.hpp"

namespace hexrec {

Eigen::VectorXd GaitParams::to_vector() const {
    Eigen::VectorXd v(kDim);
    for (int i = 0; i < kNumLegs; ++i) v[i] = tip_y0[i];
    for (int i = 0; i < kNumLegs; ++i) v[kNumLegs + i] = tip_x0[i];
    v[12] = step_length;
    v[13] = step_height;
    return v;
}

GaitParams GaitParams::from_vector(const Eigen::VectorXd& v) {
    if (v.size() != kDim) {
        throw std::invalid_argument("gait parameter vector must have 14 entries");
    }
    GaitParams p;
    for (int i = 0; i < kNumLegs; ++i) p.tip_y0[i] = v[i];
    for (int i = 0; i < kNumLegs; ++i) p.tip_x0[i] = v[kNumLegs + i];
    p.step_length = v[12];
    p.step_height = v[13];
    return p;
}

ParamBounds::ParamBounds(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("bound vectors must have equal length");
    }
    if ((lower.array() > upper.array()).any()) {
        throw std::invalid_argument("lower bound exceeds upper bound");
    }
}

ParamBounds ParamBounds::defaults() {
    Eigen::VectorXd hi(GaitParams::kDim), lo(GaitParams::kDim);
    hi << 0.05, 0.05, 0.03, 0.03, 0.01, 0.01, 0.13, 0.13, 0.13, 0.13, 0.13, 0.13, 0.05, 0.05;
    lo << -0.01, -0.01, -0.03, -0.03, -0.05, -0.05, 0.09, 0.09, 0.09, 0.09, 0.09, 0.09, 0.02, 0.02;
    return ParamBounds(lo, hi);
}

bool ParamBounds::contains(const Eigen::VectorXd& v, double tol) const {
    if (v.size() != lower.size()) return false;
    return (v.array() >= lower.array() - tol).all() && (v.array() <= upper.array() + tol).all();
}

ParamBounds build_bounds(const Morphology& m, const ParamBounds& base, const AdjacencyTable& adj) {
    ParamBounds out = base;
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        if (!m.functional(leg)) continue;
        const auto [n1, n2] = neighbors(leg, adj);
        if (m.functional(n1) && m.functional(n2)) continue;
        const int i = leg - 1;
        const double widen = 0.1 * (base.upper[i] - base.lower[i]);
        out.lower[i] = base.lower[i] - widen;
        out.upper[i] = base.upper[i] + widen;
    }
    return out;
}

Eigen::Vector3d tip_position(int leg, int k, const GaitParams& p, const GaitSchedule& s,
                             const RobotGeometry& g, int samples_per_cycle) {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6");
    }
    if (!s.has_window(leg)) {
        throw std::invalid_argument("leg " + std::to_string(leg) + " has no swing window");
    }
    const int n = samples_per_cycle;
    const int sigma = s.sigma();
    if (n <= 0 || n % sigma != 0) {
        throw std::invalid_argument("samples per cycle must be a positive multiple of sigma");
    }
    if (k < 1 || k > n) {
        throw std::out_of_range("cycle sample index out of range");
    }

    const int i = leg - 1;
    const int swing_len = n / sigma;
    const double pi = std::numbers::pi;
    const double x = g.side_sign[i] * p.tip_x0[i];
    double y = 0.0;
    double z = 0.0;
    if (k <= swing_len) {
        const double a = sigma * pi * (k - 1) / n;
        y = p.tip_y0[i] - 0.5 * p.step_length * std::cos(a);
        z = g.tip_z0[i] + 0.5 * p.step_height * (1.0 - std::cos(2.0 * a)) - g.body_height;
    } else {
        const double a = sigma * pi * (k - swing_len - 1) / ((sigma - 1.0) * n);
        y = p.tip_y0[i] + 0.5 * p.step_length * std::cos(a);
        z = g.tip_z0[i] + 0.5 * g.step_depth * (1.0 - std::cos(2.0 * a)) - g.body_height;
    }
    return {x, y, z};
}

Eigen::Vector3d body_tip_position(int leg, int k, const GaitParams& p, const GaitSchedule& s,
                                  const RobotGeometry& g, int samples_per_cycle) {
    Eigen::Vector3d tip = tip_position(leg, k, p, s, g, samples_per_cycle);
    tip.y() += g.hip_xy[leg - 1].y();
    return tip;
}

bool check_collision_constraint(const GaitParams& p, const Morphology& m, const RobotGeometry& g,
                                double clearance) {
    for (double side : {g.side_sign[0], g.side_sign[1]}) {
        // Functional legs of this side, front to rear.
        std::vector<int> legs;
        for (int leg = 1; leg <= kNumLegs; ++leg) {
            if (g.side_sign[leg - 1] == side && m.functional(leg)) legs.push_back(leg);
        }
        std::sort(legs.begin(), legs.end(),
                  [&](int a, int b) { return g.hip_xy[a - 1].y() > g.hip_xy[b - 1].y(); });
        for (std::size_t i = 0; i + 1 < legs.size(); ++i) {
            const int front = legs[i];
            const int rear = legs[i + 1];
            const double front_min =
                g.hip_xy[front - 1].y() + p.tip_y0[front - 1] - 0.5 * p.step_length;
            const double rear_max =
                g.hip_xy[rear - 1].y() + p.tip_y0[rear - 1] + 0.5 * p.step_length;
            if (front_min - rear_max < clearance) return false;
        }
    }
    return true;
}

TipTrajectory build_tip_trajectory(int leg, const GaitParams& p, const GaitSchedule& s,
                                   const RobotGeometry& g, int samples_per_cycle) {
    TipTrajectory t;
    t.leg = leg;
    t.samples.reserve(samples_per_cycle);
    for (int k = 1; k <= samples_per_cycle; ++k) {
        t.samples.push_back(body_tip_position(leg, k, p, s, g, samples_per_cycle));
    }
    return t;
}

void write_tip_csv(std::ostream& os, std::span<const TipTrajectory> trajectories) {
    os << "leg,k,x,y,z\n";
    for (const auto& t : trajectories) {
        for (std::size_t k = 0; k < t.samples.size(); ++k) {
            os << t.leg << ',' << k + 1 << ',' << csv::num(t.samples[k].x()) << ','
               << csv::num(t.samples[k].y()) << ',' << csv::num(t.samples[k].z()) << '\n';
        }
    }
}

}  // namespace hexrec
