#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hexrec/gait_sequencer.hpp"
#include "hexrec/morphology.hpp"

namespace hexrec {

/// The 14 free parameters shaping the leg-tip trajectories: per-leg
/// longitudinal offsets and lateral magnitudes plus the shared step length
/// and step height. Packed order: [y0_1..y0_6, x0_1..x0_6, step_length,
/// step_height].
struct GaitParams {
    static constexpr int kDim = 14;

    std::array<double, kNumLegs> tip_y0{};  // longitudinal offset from the hip station
    std::array<double, kNumLegs> tip_x0{};  // unsigned lateral tip magnitude
    double step_length = 0.03;              // longitudinal sweep per stride
    double step_height = 0.03;              // swing apex lift

    Eigen::VectorXd to_vector() const;
    static GaitParams from_vector(const Eigen::VectorXd& v);
};

/// Componentwise box for the packed parameter vector.
struct ParamBounds {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    ParamBounds() = default;
    ParamBounds(Eigen::VectorXd lo, Eigen::VectorXd hi);

    /// Shipped default box: front legs biased forward, rear legs backward,
    /// lateral magnitudes in [0.09, 0.13] m, step length in [0.02, 0.05] m,
    /// step height in [0.02, 0.05] m.
    static ParamBounds defaults();

    bool contains(const Eigen::VectorXd& v, double tol = 0.0) const;
};

/// Widen the longitudinal-offset interval of every functional leg adjacent to
/// a lost leg by 20% of its span, symmetrically about the midpoint. All other
/// entries pass through unchanged.
ParamBounds build_bounds(const Morphology& m, const ParamBounds& base,
                         const AdjacencyTable& adj = default_adjacency());

/// Body-frame tip reference of one leg at local cycle sample k (1-based,
/// swing first). The longitudinal component is relative to the leg's hip
/// station; the lateral component is the signed body-frame coordinate; the
/// vertical component is relative to the body origin (so a grounded tip sits
/// at tip_z0 - body_height).
///
/// Swing (k <= N/sigma):     y = y0 - L_sl/2 * cos(sigma*pi*(k-1)/N)
///                           z = z0 + L_sh/2 * (1 - cos(2*sigma*pi*(k-1)/N)) - H
/// Support (k > N/sigma):    y = y0 + L_sl/2 * cos(sigma*pi*(k-N/sigma-1)/((sigma-1)*N))
///                           z = z0 + L_sd/2 * (1 - cos(2*sigma*pi*(k-N/sigma-1)/((sigma-1)*N))) - H
Eigen::Vector3d tip_position(int leg, int k, const GaitParams& p, const GaitSchedule& s,
                             const RobotGeometry& g, int samples_per_cycle);

/// tip_position shifted to absolute body-frame coordinates (adds the hip
/// longitudinal station).
Eigen::Vector3d body_tip_position(int leg, int k, const GaitParams& p, const GaitSchedule& s,
                                  const RobotGeometry& g, int samples_per_cycle);

/// Leg-to-leg collision guard: for every pair of longitudinally adjacent
/// functional legs on the same side, the tip sweep intervals
/// [hip_y + y0 -/+ L_sl/2] must be separated by at least `clearance`.
/// Pairs involving a lost leg are exempt.
bool check_collision_constraint(const GaitParams& p, const Morphology& m, const RobotGeometry& g,
                                double clearance = 0.01);

/// One full local cycle of body-frame tip references, k = 1..samples_per_cycle
/// (swing first, then support).
struct TipTrajectory {
    int leg = 0;
    std::vector<Eigen::Vector3d> samples;
};

TipTrajectory build_tip_trajectory(int leg, const GaitParams& p, const GaitSchedule& s,
                                   const RobotGeometry& g, int samples_per_cycle);

/// Debug dump: columns leg,k,x,y,z.
void write_tip_csv(std::ostream& os, std::span<const TipTrajectory> trajectories);

}  // namespace hexrec
