#include "hexrec/gait_sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hexrec {

GaitSchedule::GaitSchedule(int sigma, double period,
                           const std::array<std::optional<int>, kNumLegs>& slots)
    : sigma_(sigma), period_(period), slots_(slots) {
    if (sigma < 2 || sigma > 4) {
        throw std::invalid_argument("sigma must be 2, 3 or 4, got " + std::to_string(sigma));
    }
    if (period <= 0.0) {
        throw std::invalid_argument("gait period must be positive");
    }
    for (const auto& s : slots_) {
        if (s && (*s < 0 || *s >= sigma)) {
            throw std::invalid_argument("swing slot out of range for sigma=" +
                                        std::to_string(sigma));
        }
    }
}

std::optional<int> GaitSchedule::slot(int leg) const {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6");
    }
    return slots_[leg - 1];
}

std::optional<std::pair<double, double>> GaitSchedule::swing_window(int leg) const {
    const auto s = slot(leg);
    if (!s) return std::nullopt;
    const double w = 1.0 / sigma_;
    return std::make_pair(*s * w, (*s + 1) * w);
}

bool GaitSchedule::swings_in_slot(int leg, int slot_index) const {
    const auto s = slot(leg);
    return s && *s == slot_index;
}

std::vector<int> GaitSchedule::swing_set(int slot_index) const {
    std::vector<int> out;
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        if (swings_in_slot(leg, slot_index)) out.push_back(leg);
    }
    return out;
}

std::string GaitSchedule::to_json() const {
    std::ostringstream os;
    os << "{\"sigma\":" << sigma_ << ",\"period\":" << period_ << ",\"swing_windows\":{";
    bool first = true;
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        const auto w = swing_window(leg);
        if (!w) continue;
        if (!first) os << ",";
        first = false;
        os << "\"" << leg << "\":[" << w->first << "," << w->second << "]";
    }
    os << "}}";
    return os.str();
}

namespace {

std::array<std::optional<int>, kNumLegs> empty_slots() {
    return {std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
}

GaitSchedule tripod(double period) {
    auto slots = empty_slots();
    for (int leg : {1, 4, 5}) slots[leg - 1] = 0;
    for (int leg : {2, 3, 6}) slots[leg - 1] = 1;
    return GaitSchedule(2, period, slots);
}

/// One lost leg: pair up the four survivors of the reduced tripod groups and
/// let the remaining leg of the intact group swing alone. The printed pairing
/// rule (first-of-one-group with second-of-the-other) can put two neighbours
/// in the same slot for some morphologies, so candidate pairings are tried in
/// a fixed order and the first one satisfying the neighbourhood rule wins.
GaitSchedule quadrangular(const Morphology& m, double period, const AdjacencyTable& adj) {
    std::vector<int> g1, g2;
    for (int leg : {1, 4, 5}) {
        if (m.functional(leg)) g1.push_back(leg);
    }
    for (int leg : {2, 3, 6}) {
        if (m.functional(leg)) g2.push_back(leg);
    }
    int lone = 0;
    if (g1.size() == 3) {
        lone = g1[2];
        g1.pop_back();
    } else {
        lone = g2[2];
        g2.pop_back();
    }

    using Pairing = std::array<std::pair<int, int>, 2>;
    const Pairing candidates[] = {
        {{{g1[0], g2[1]}, {g1[1], g2[0]}}},
        {{{g1[0], g2[0]}, {g1[1], g2[1]}}},
        {{{g1[0], g1[1]}, {g2[0], g2[1]}}},
    };
    for (const auto& pairing : candidates) {
        auto slots = empty_slots();
        slots[pairing[0].first - 1] = 0;
        slots[pairing[0].second - 1] = 0;
        slots[pairing[1].first - 1] = 1;
        slots[pairing[1].second - 1] = 1;
        slots[lone - 1] = 2;
        GaitSchedule s(3, period, slots);
        if (check_neighborhood_rule(s, m, adj)) return s;
    }
    throw std::logic_error("no quadrangular pairing satisfies the neighbourhood rule for " +
                           m.to_string());
}

/// Signed margin of `point` inside the triangle (positive inside).
double triangle_margin(const Eigen::Vector2d& point, const std::array<Eigen::Vector2d, 3>& tri) {
    const double area2 = (tri[1].x() - tri[0].x()) * (tri[2].y() - tri[0].y()) -
                         (tri[1].y() - tri[0].y()) * (tri[2].x() - tri[0].x());
    const double orient = area2 >= 0.0 ? 1.0 : -1.0;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector2d& a = tri[i];
        const Eigen::Vector2d& b = tri[(i + 1) % 3];
        const Eigen::Vector2d e = b - a;
        const double d =
            orient * (e.x() * (point.y() - a.y()) - e.y() * (point.x() - a.x())) / e.norm();
        margin = std::min(margin, d);
    }
    return margin;
}

/// Worst-case static margin of a nominal stride under the given swing order.
/// One leg swings per quarter cycle; the three support legs sweep backward
/// through their stance phase, so relative to the body each support tip sits
/// at hip_y + (L/2)*cos(theta) with theta advancing pi/3 per quarter.
double pentagonal_order_margin(const std::array<int, 4>& order, const RobotGeometry& g) {
    constexpr double kNominalStep = 0.035;
    constexpr double kNominalLateral = 0.11;
    constexpr int kSamplesPerSlot = 30;
    const double pi = 3.14159265358979323846;

    double worst = std::numeric_limits<double>::infinity();
    for (int slot = 0; slot < 4; ++slot) {
        for (int s = 0; s < kSamplesPerSlot; ++s) {
            const double frac = (s + 0.5) / kSamplesPerSlot;
            std::array<Eigen::Vector2d, 3> tri;
            int n = 0;
            for (int i = 0; i < 4; ++i) {
                const int age = ((slot - i) % 4 + 4) % 4;
                if (age == 0) continue;  // swinging
                const double theta = (age - 1 + frac) * pi / 3.0;
                const int leg = order[i];
                tri[n++] = Eigen::Vector2d(
                    g.side_sign[leg - 1] * kNominalLateral,
                    g.hip_xy[leg - 1].y() + 0.5 * kNominalStep * std::cos(theta));
            }
            worst = std::min(worst, triangle_margin(g.com_offset.head<2>(), tri));
        }
    }
    return worst;
}

GaitSchedule pentagonal(const Morphology& m, double period, const RobotGeometry& g) {
    const auto legs = m.functional_legs();
    std::array<int, 4> order = {legs[0], legs[1], legs[2], legs[3]};

    // Rank the cyclic swing orders (first swinger fixed to the lowest index)
    // by worst-case margin; ascending index order wins ties.
    std::array<int, 3> rest = {legs[1], legs[2], legs[3]};
    std::sort(rest.begin(), rest.end());
    std::array<int, 4> best_order = order;
    double best_margin = -std::numeric_limits<double>::infinity();
    do {
        const std::array<int, 4> candidate = {legs[0], rest[0], rest[1], rest[2]};
        const double margin = pentagonal_order_margin(candidate, g);
        if (margin > best_margin + 1e-12) {
            best_margin = margin;
            best_order = candidate;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    auto slots = empty_slots();
    for (int i = 0; i < 4; ++i) slots[best_order[i] - 1] = i;
    return GaitSchedule(4, period, slots);
}

}  // namespace

GaitSchedule plan_sequence(const Morphology& m, double period, const SequencerOptions& opt) {
    if (period <= 0.0) {
        throw std::invalid_argument("gait period must be positive");
    }
    static const RobotGeometry default_geometry = RobotGeometry::defaults();
    const RobotGeometry& geometry = opt.geometry ? *opt.geometry : default_geometry;
    switch (classify_morphology(m).cls) {
        case DamageClass::Healthy:
            return tripod(period);
        case DamageClass::OneLegLost:
            return quadrangular(m, period, opt.adjacency);
        case DamageClass::TwoLegsLost:
            return pentagonal(m, period, geometry);
        case DamageClass::Unrecoverable:
            break;
    }
    throw std::invalid_argument("insufficient functional legs for static stability: " +
                                unrecoverable_reason(m));
}

bool check_neighborhood_rule(const GaitSchedule& s, const Morphology& m,
                             const AdjacencyTable& adj) {
    const int n_functional = m.functional_count();
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        if (m.functional(leg) != s.has_window(leg)) {
            throw std::invalid_argument("schedule does not cover exactly the functional legs of " +
                                        m.to_string());
        }
    }
    for (int slot = 0; slot < s.sigma(); ++slot) {
        const auto swinging = s.swing_set(slot);
        if (n_functional - static_cast<int>(swinging.size()) < 3) return false;
        for (std::size_t i = 0; i < swinging.size(); ++i) {
            for (std::size_t j = i + 1; j < swinging.size(); ++j) {
                if (adjacent(swinging[i], swinging[j], adj)) return false;
            }
        }
    }
    return true;
}

std::vector<SupportInterval> support_count_profile(const GaitSchedule& s, const Morphology& m) {
    const int n_functional = m.functional_count();
    std::vector<SupportInterval> out;
    for (int slot = 0; slot < s.sigma(); ++slot) {
        int swinging = 0;
        for (int leg = 1; leg <= kNumLegs; ++leg) {
            if (m.functional(leg) && s.swings_in_slot(leg, slot)) ++swinging;
        }
        const int count = n_functional - swinging;
        const double begin = static_cast<double>(slot) / s.sigma();
        const double end = static_cast<double>(slot + 1) / s.sigma();
        if (!out.empty() && out.back().count == count) {
            out.back().end = end;
        } else {
            out.push_back({begin, end, count});
        }
    }
    return out;
}

}  // namespace hexrec
