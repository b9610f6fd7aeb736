#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hexrec/morphology.hpp"

namespace hexrec {

/// One gait cycle split into `sigma` equal swing slots. Every functional leg
/// owns exactly one slot; its swing window is the half-open cycle fraction
/// [slot/sigma, (slot+1)/sigma). Slot indices make phase membership exact at
/// interval endpoints.
class GaitSchedule {
public:
    GaitSchedule(int sigma, double period, const std::array<std::optional<int>, kNumLegs>& slots);

    int sigma() const { return sigma_; }
    double period() const { return period_; }
    double duty_factor() const { return static_cast<double>(sigma_ - 1) / sigma_; }

    std::optional<int> slot(int leg) const;
    bool has_window(int leg) const { return slot(leg).has_value(); }

    /// Swing window as a fraction interval [a, b) of the cycle.
    std::optional<std::pair<double, double>> swing_window(int leg) const;

    /// Whether `leg` swings during the given slot (exact).
    bool swings_in_slot(int leg, int slot_index) const;

    /// Legs swinging during the given slot, ascending.
    std::vector<int> swing_set(int slot_index) const;

    /// JSON object mapping each scheduled leg to [start_fraction, end_fraction].
    std::string to_json() const;

    bool operator==(const GaitSchedule&) const = default;

private:
    int sigma_;
    double period_;
    std::array<std::optional<int>, kNumLegs> slots_;
};

struct SequencerOptions {
    AdjacencyTable adjacency = default_adjacency();
    /// Hip stations and side signs used to rank candidate pentagonal swing
    /// orders by their worst-case static margin. Null selects built-in
    /// defaults.
    const RobotGeometry* geometry = nullptr;
};

/// Plan a statically stable swing/support schedule for the functional legs.
///
/// Healthy morphologies keep the nominal tripod (sigma = 2, groups {1,4,5}
/// and {2,3,6}). One lost leg yields a modified quadrangular sequence
/// (sigma = 3): the surviving legs of the two tripod groups are paired so no
/// two legs that swing together are perimeter neighbours, and the remaining
/// leg of the full group swings alone in the final third. Two lost legs
/// yield a modified pentagonal sequence (sigma = 4) with one swinging leg at
/// a time; the swing order is chosen to maximize the worst-case support
/// margin of a nominal stride, since a four-leg crawl is only marginally
/// stable and the wrong order pins the CoM outside the support triangle for
/// entire quarter-cycles.
///
/// Throws std::invalid_argument for unrecoverable morphologies or Tg <= 0.
GaitSchedule plan_sequence(const Morphology& m, double period,
                           const SequencerOptions& opt = {});

/// True iff no functional leg swings while any functional neighbour swings
/// and at least three functional legs support at every cycle fraction.
/// Evaluated exactly on slot boundaries (the schedule is piecewise constant).
/// Throws if the schedule does not cover exactly the functional legs of m.
bool check_neighborhood_rule(const GaitSchedule& s, const Morphology& m,
                             const AdjacencyTable& adj = default_adjacency());

struct SupportInterval {
    double begin = 0.0;  // cycle fractions, half-open [begin, end)
    double end = 0.0;
    int count = 0;  // functional legs in support
};

/// Partition [0, 1) into maximal constant-support-count intervals.
std::vector<SupportInterval> support_count_profile(const GaitSchedule& s, const Morphology& m);

}  // namespace hexrec
