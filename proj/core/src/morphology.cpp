#include "hexrec/morphology.hpp"

#include <algorithm>
#include <stdexcept>

namespace hexrec {

Morphology Morphology::from_flags(const std::vector<int>& flags) {
    if (flags.size() != static_cast<std::size_t>(kNumLegs)) {
        throw std::invalid_argument("morphology must have exactly 6 entries, got " +
                                    std::to_string(flags.size()));
    }
    std::array<bool, kNumLegs> legs{};
    for (int i = 0; i < kNumLegs; ++i) {
        if (flags[i] != 0 && flags[i] != 1) {
            throw std::invalid_argument("morphology entries must be 0 or 1");
        }
        legs[i] = flags[i] == 1;
    }
    return Morphology(legs);
}

Morphology Morphology::from_string(std::string_view bits) {
    std::vector<int> flags;
    flags.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("morphology string must contain only 0/1, got \"" +
                                        std::string(bits) + "\"");
        }
        flags.push_back(c - '0');
    }
    return from_flags(flags);
}

bool Morphology::functional(int leg) const {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6, got " + std::to_string(leg));
    }
    return legs_[leg - 1];
}

int Morphology::functional_count() const {
    return static_cast<int>(std::count(legs_.begin(), legs_.end(), true));
}

std::vector<int> Morphology::functional_legs() const {
    std::vector<int> out;
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        if (legs_[leg - 1]) out.push_back(leg);
    }
    return out;
}

std::string Morphology::to_string() const {
    std::string s(kNumLegs, '0');
    for (int i = 0; i < kNumLegs; ++i) {
        if (legs_[i]) s[i] = '1';
    }
    return s;
}

namespace {

int side_count(const Morphology& m, int parity) {
    int n = 0;
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        if (leg % 2 == parity && m.functional(leg)) ++n;
    }
    return n;
}

}  // namespace

DamageAssessment classify_morphology(const Morphology& m) {
    const int n = m.functional_count();
    if (n == 6) return {DamageClass::Healthy, n};
    if (n == 5) return {DamageClass::OneLegLost, n};
    if (n == 4 && side_count(m, 1) >= 2 && side_count(m, 0) >= 2) {
        return {DamageClass::TwoLegsLost, n};
    }
    return {DamageClass::Unrecoverable, n};
}

std::string unrecoverable_reason(const Morphology& m) {
    const auto a = classify_morphology(m);
    if (a.cls != DamageClass::Unrecoverable) return {};
    if (a.functional_count < 4) {
        return "only " + std::to_string(a.functional_count) +
               " functional legs remain (static stability needs at least 4)";
    }
    const int odd = side_count(m, 1);
    const int even = side_count(m, 0);
    if (odd < 2) {
        return "odd-indexed side has only " + std::to_string(odd) +
               " functional leg(s); each side needs at least 2";
    }
    return "even-indexed side has only " + std::to_string(even) +
           " functional leg(s); each side needs at least 2";
}

const AdjacencyTable& default_adjacency() {
    // Perimeter 1-3-5-6-4-2, closed.
    static const AdjacencyTable table = {{
        {2, 3},  // leg 1
        {1, 4},  // leg 2
        {1, 5},  // leg 3
        {2, 6},  // leg 4
        {3, 6},  // leg 5
        {4, 5},  // leg 6
    }};
    return table;
}

std::pair<int, int> neighbors(int leg, const AdjacencyTable& adj) {
    if (leg < 1 || leg > kNumLegs) {
        throw std::out_of_range("leg index must be in 1..6, got " + std::to_string(leg));
    }
    return adj[leg - 1];
}

bool adjacent(int a, int b, const AdjacencyTable& adj) {
    const auto [n1, n2] = neighbors(a, adj);
    return b == n1 || b == n2;
}

void validate_adjacency(const AdjacencyTable& adj) {
    for (int leg = 1; leg <= kNumLegs; ++leg) {
        const auto [n1, n2] = adj[leg - 1];
        if (n1 < 1 || n1 > kNumLegs || n2 < 1 || n2 > kNumLegs || n1 == n2 || n1 == leg ||
            n2 == leg) {
            throw std::invalid_argument("adjacency entry of leg " + std::to_string(leg) +
                                        " is not two distinct other legs");
        }
        if (!adjacent(n1, leg, adj) || !adjacent(n2, leg, adj)) {
            throw std::invalid_argument("adjacency table is not symmetric at leg " +
                                        std::to_string(leg));
        }
    }
}

RobotGeometry RobotGeometry::defaults() {
    RobotGeometry g;
    for (auto& l : g.links) l = {0.045, 0.077, 0.123};
    // Hip stations: front pair at +0.10, middle at 0, rear at -0.10. The hip
    // lateral offset keeps every in-bounds tip command outboard of the hip
    // yaw link, where the closed-form leg kinematics is single-branch.
    const double hx = 0.042;
    g.hip_xy = {Eigen::Vector2d(hx, 0.10),  Eigen::Vector2d(-hx, 0.10),
                Eigen::Vector2d(hx, 0.0),   Eigen::Vector2d(-hx, 0.0),
                Eigen::Vector2d(hx, -0.10), Eigen::Vector2d(-hx, -0.10)};
    g.side_sign = {1.0, -1.0, 1.0, -1.0, 1.0, -1.0};
    g.com_offset = Eigen::Vector3d::Zero();
    g.body_height = 0.11;
    g.tip_z0 = {0, 0, 0, 0, 0, 0};
    g.step_depth = 0.005;
    g.adjacency = default_adjacency();
    return g;
}

void RobotGeometry::validate() const {
    for (int i = 0; i < kNumLegs; ++i) {
        if (links[i].l1 <= 0.0 || links[i].l2 <= 0.0 || links[i].l3 <= 0.0) {
            throw std::invalid_argument("link lengths of leg " + std::to_string(i + 1) +
                                        " must be positive");
        }
        if (side_sign[i] != 1.0 && side_sign[i] != -1.0) {
            throw std::invalid_argument("side_sign must be +1 or -1");
        }
    }
    if (side_sign[0] != side_sign[2] || side_sign[0] != side_sign[4] ||
        side_sign[1] != side_sign[3] || side_sign[1] != side_sign[5] ||
        side_sign[0] == side_sign[1]) {
        throw std::invalid_argument("legs 1,3,5 must share one side_sign and legs 2,4,6 the other");
    }
    if (body_height <= 0.0) throw std::invalid_argument("body height must be positive");
    if (step_depth < 0.0) throw std::invalid_argument("step depth must be non-negative");
    validate_adjacency(adjacency);
}

}  // namespace hexrec
