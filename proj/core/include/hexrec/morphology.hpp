#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace hexrec {

inline constexpr int kNumLegs = 6;

/// Binary functional-leg mask of a hexapod.
///
/// Legs are numbered 1..6. Odd legs (1, 3, 5) run front-to-rear on one side
/// of the body, even legs (2, 4, 6) front-to-rear on the other. A zero entry
/// means the leg is lost and contributes neither support nor locomotion.
class Morphology {
public:
    explicit Morphology(const std::array<bool, kNumLegs>& legs) : legs_(legs) {}

    /// Construct from an arbitrary-length flag list; rejects anything that is
    /// not exactly six 0/1 entries.
    static Morphology from_flags(const std::vector<int>& flags);

    /// Construct from a string such as "110111" (leg 1 first).
    static Morphology from_string(std::string_view bits);

    static Morphology healthy() { return Morphology({true, true, true, true, true, true}); }

    bool functional(int leg) const;  // leg in 1..6
    int functional_count() const;
    std::vector<int> functional_legs() const;
    std::string to_string() const;

    bool operator==(const Morphology&) const = default;

private:
    std::array<bool, kNumLegs> legs_;
};

enum class DamageClass { Healthy, OneLegLost, TwoLegsLost, Unrecoverable };

struct DamageAssessment {
    DamageClass cls = DamageClass::Unrecoverable;
    int functional_count = 0;
};

/// Classify the damage state. Recovery needs at least four functional legs
/// with at least two on each side; everything else is Unrecoverable (a value,
/// not an error).
DamageAssessment classify_morphology(const Morphology& m);

/// Human-readable reason a morphology cannot be recovered; empty when it can.
std::string unrecoverable_reason(const Morphology& m);

/// Perimeter adjacency of the legs; entry [leg-1] holds the two neighbours
/// of that leg, ascending.
using AdjacencyTable = std::array<std::pair<int, int>, kNumLegs>;

/// Default table for the perimeter order 1-3-5-6-4-2.
const AdjacencyTable& default_adjacency();

/// The two legs spatially adjacent to `leg` on the body perimeter.
std::pair<int, int> neighbors(int leg, const AdjacencyTable& adj = default_adjacency());

bool adjacent(int a, int b, const AdjacencyTable& adj = default_adjacency());

/// Throws unless the table is a symmetric 2-regular perimeter over legs 1..6.
void validate_adjacency(const AdjacencyTable& adj);

struct LegLinks {
    double l1 = 0.0;  // hip yaw link
    double l2 = 0.0;  // femur
    double l3 = 0.0;  // tibia
};

/// Fixed structural description of the platform. Lengths in meters. The body
/// frame has x lateral (positive toward the odd-leg side), y forward, z up,
/// origin at the body center at standing height.
struct RobotGeometry {
    std::array<LegLinks, kNumLegs> links;
    std::array<Eigen::Vector2d, kNumLegs> hip_xy;  // body-frame mount points
    std::array<double, kNumLegs> side_sign{};      // +1 left (odd), -1 right (even)
    Eigen::Vector3d com_offset{0.0, 0.0, 0.0};     // CoM offset from body origin
    double body_height = 0.11;                     // standing height of the body origin
    std::array<double, kNumLegs> tip_z0{};         // per-leg tip height offsets
    double step_depth = 0.005;                     // support-phase push-down amplitude
    AdjacencyTable adjacency = default_adjacency();

    /// Plausible defaults for a small 3-DoF-per-leg hexapod. Not calibrated
    /// to any specific unit; loaded from config for real runs.
    static RobotGeometry defaults();

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

}  // namespace hexrec
