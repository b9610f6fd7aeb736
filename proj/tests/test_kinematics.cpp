#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hexrec/kinematics.hpp"
#include "hexrec/rng.hpp"

using namespace hexrec;

namespace {

constexpr double kPi = std::numbers::pi;

/// Random joint angles on the principal branch of the closed-form inverse:
/// flexed elbow, femur within the arcsine branch.
JointAngles random_branch_angles(RngStream& rng) {
    JointAngles q;
    q.hip_yaw = rng.uniform(-1.4, 1.4);
    q.tibia_pitch = rng.uniform(-2.6, -0.5);
    const double l2 = 0.077, l3 = 0.123;
    const double gamma = std::atan2(l3 * std::sin(q.tibia_pitch),
                                    l3 * std::cos(q.tibia_pitch) + l2);
    q.femur_pitch = rng.uniform(-1.3, 1.3) - gamma;
    // Keep femur_pitch + gamma strictly inside (-pi/2, pi/2) and the
    // horizontal reach in front of the hip link.
    return q;
}

}  // namespace

TEST_CASE("hip yaw from the horizontal target direction") {
    const auto g = RobotGeometry::defaults();
    const Eigen::Vector3d ahead(0.15, 0.0, -0.08);
    CHECK(inverse_kinematics(ahead, 1, g).hip_yaw == doctest::Approx(0.0));
    const Eigen::Vector3d side(0.0, 0.15, -0.08);
    CHECK(inverse_kinematics(side, 1, g).hip_yaw == doctest::Approx(kPi / 2));
}

TEST_CASE("forward chain landmarks") {
    const auto g = RobotGeometry::defaults();
    const auto& L = g.links[0];

    SUBCASE("fully folded tibia gives the minimal horizontal radius") {
        const Eigen::Vector3d tip = forward_kinematics({0.0, 0.0, -kPi}, 1, g);
        CHECK(std::hypot(tip.x(), tip.y()) == doctest::Approx(std::abs(L.l1 + L.l2 - L.l3)));
        CHECK(tip.z() == doctest::Approx(0.0));
    }

    SUBCASE("yaw sweep traces a horizontal circle") {
        const JointAngles base{0.0, -0.3, -1.2};
        const Eigen::Vector3d ref = forward_kinematics(base, 2, g);
        const double radius = std::hypot(ref.x(), ref.y());
        for (double yaw : {-1.2, -0.4, 0.3, 0.9}) {
            const Eigen::Vector3d tip = forward_kinematics({yaw, -0.3, -1.2}, 2, g);
            CHECK(std::hypot(tip.x(), tip.y()) == doctest::Approx(radius).epsilon(1e-12));
            CHECK(tip.z() == doctest::Approx(ref.z()).epsilon(1e-12));
        }
    }
}

TEST_CASE("round trips lock the frame conventions") {
    const auto g = RobotGeometry::defaults();
    RngStream rng(20240801);

    SUBCASE("tip -> angles -> tip") {
        for (int leg = 1; leg <= 6; ++leg) {
            for (int i = 0; i < 100; ++i) {
                const JointAngles q = random_branch_angles(rng);
                const Eigen::Vector3d tip = forward_kinematics(q, leg, g);
                if (std::hypot(tip.x(), tip.y()) < g.links[leg - 1].l1 + 1e-6) continue;
                const Eigen::Vector3d back =
                    forward_kinematics(inverse_kinematics(tip, leg, g), leg, g);
                CHECK((back - tip).norm() < 1e-9);
            }
        }
    }

    SUBCASE("angles -> tip -> angles on the principal branch") {
        for (int leg = 1; leg <= 6; ++leg) {
            for (int i = 0; i < 100; ++i) {
                const JointAngles q = random_branch_angles(rng);
                const Eigen::Vector3d tip = forward_kinematics(q, leg, g);
                if (std::hypot(tip.x(), tip.y()) < g.links[leg - 1].l1 + 1e-6) continue;
                const JointAngles back = inverse_kinematics(tip, leg, g);
                CHECK(std::abs(back.hip_yaw - q.hip_yaw) < 1e-9);
                CHECK(std::abs(back.femur_pitch - q.femur_pitch) < 1e-9);
                CHECK(std::abs(back.tibia_pitch - q.tibia_pitch) < 1e-9);
            }
        }
    }
}

TEST_CASE("unreachable targets are rejected, boundary grazes are clamped") {
    const auto g = RobotGeometry::defaults();
    const auto& L = g.links[0];

    // Beyond full extension.
    const double reach = L.l1 + L.l2 + L.l3;
    CHECK_THROWS_AS(inverse_kinematics({reach + 0.01, 0.0, 0.0}, 1, g), std::domain_error);

    // Behind the hip link.
    CHECK_THROWS_AS(inverse_kinematics({0.01, 0.0, -0.05}, 1, g), std::domain_error);

    // Exactly on the outer boundary: the arcsine argument is 1 up to
    // floating-point noise and must be clamped, not rejected.
    CHECK_NOTHROW(inverse_kinematics({reach, 0.0, 0.0}, 1, g));
    const Eigen::Vector3d tip = forward_kinematics(inverse_kinematics({reach, 0.0, 0.0}, 1, g), 1, g);
    CHECK((tip - Eigen::Vector3d(reach, 0.0, 0.0)).norm() < 1e-9);
}

TEST_CASE("no branch flips along an interior straight-line path") {
    const auto g = RobotGeometry::defaults();
    const Eigen::Vector3d a = forward_kinematics({-0.5, -0.2, -1.6}, 3, g);
    const Eigen::Vector3d b = forward_kinematics({0.6, 0.3, -1.0}, 3, g);
    JointAngles prev = inverse_kinematics(a, 3, g);
    for (int i = 1; i <= 200; ++i) {
        const Eigen::Vector3d p = a + (b - a) * (i / 200.0);
        const JointAngles q = inverse_kinematics(p, 3, g);
        CHECK(std::abs(q.hip_yaw - prev.hip_yaw) < 0.05);
        CHECK(std::abs(q.femur_pitch - prev.femur_pitch) < 0.05);
        CHECK(std::abs(q.tibia_pitch - prev.tibia_pitch) < 0.05);
        prev = q;
    }
}

TEST_CASE("hip frames point outward on both sides") {
    const auto g = RobotGeometry::defaults();
    // A point outboard of leg 1's hip on the positive side.
    const Eigen::Vector3d left(0.15, 0.12, -0.1);
    const Eigen::Vector3d in1 = hip_frame_point(left, 1, g);
    CHECK(in1.x() == doctest::Approx(0.15 - g.hip_xy[0].x()));
    CHECK(in1.y() == doctest::Approx(0.12 - g.hip_xy[0].y()));
    CHECK(in1.z() == doctest::Approx(-0.1));

    // The mirrored point for leg 2 lands on the same outward coordinates.
    const Eigen::Vector3d right(-0.15, 0.12, -0.1);
    const Eigen::Vector3d in2 = hip_frame_point(right, 2, g);
    CHECK(in2.x() == doctest::Approx(in1.x()));
    CHECK(in2.y() == doctest::Approx(-in1.y()));
    CHECK(in2.z() == doctest::Approx(in1.z()));
}

TEST_CASE("joint limits") {
    const JointLimits lim;
    CHECK(lim.contains({0.3, -0.4, -1.2}));
    CHECK_FALSE(lim.contains({1.8, 0.0, -1.0}));
    CHECK_FALSE(lim.contains({0.0, 2.5, -1.0}));
}
