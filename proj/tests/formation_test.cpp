#include "swarmnav/formation.hpp"

#include <cmath>

#include <gtest/gtest.h>

using namespace swarmnav;

namespace {

constexpr LinkParams kHard{1.0, 7.0, 3.0};   // mass, stiffness, damping
constexpr LinkParams kHuman{5.0, 1.0, 2.0};

ImpedanceLink link_with(Vec2 z, Vec2 zdot, LinkParams p) {
    ImpedanceLink l;
    l.displacement = z;
    l.velocity = zdot;
    l.params = p;
    return l;
}

// Classic fourth-order reference integration of the same oscillator, used as
// an independent oracle for the decay behaviour.
Vec2 rk4_free_decay(Vec2 z0, Vec2 zdot0, LinkParams p, double t_end, double dt) {
    Vec2 z = z0, v = zdot0;
    auto accel = [&p](const Vec2& zz, const Vec2& vv) {
        return (vv * -p.damping - zz * p.stiffness) / p.mass;
    };
    for (double t = 0.0; t < t_end; t += dt) {
        const Vec2 k1v = accel(z, v), k1z = v;
        const Vec2 k2v = accel(z + k1z * (dt / 2), v + k1v * (dt / 2)), k2z = v + k1v * (dt / 2);
        const Vec2 k3v = accel(z + k2z * (dt / 2), v + k2v * (dt / 2)), k3z = v + k2v * (dt / 2);
        const Vec2 k4v = accel(z + k3z * dt, v + k3v * dt), k4z = v + k3v * dt;
        z += (k1z + k2z * 2 + k3z * 2 + k4z) * (dt / 6);
        v += (k1v + k2v * 2 + k3v * 2 + k4v) * (dt / 6);
    }
    return z;
}

}  // namespace

TEST(LeaderVelocity, ZeroWhenStationary) {
    const Vec2 v = leader_velocity({1.0, 2.0}, {1.0, 2.0}, 0.1);
    EXPECT_DOUBLE_EQ(v.x, 0.0);
    EXPECT_DOUBLE_EQ(v.y, 0.0);
}

TEST(LeaderVelocity, FiniteDifference) {
    const Vec2 v = leader_velocity({1.1, 2.0}, {1.0, 2.0}, 0.1);
    EXPECT_NEAR(v.x, 1.0, 1e-12);
    EXPECT_NEAR(v.y, 0.0, 1e-12);
}

TEST(LeaderVelocity, InverseInDt) {
    const Vec2 a = leader_velocity({1.1, 2.0}, {1.0, 2.0}, 0.1);
    const Vec2 b = leader_velocity({1.1, 2.0}, {1.0, 2.0}, 0.05);
    EXPECT_NEAR(b.x, 2.0 * a.x, 1e-12);
}

TEST(ExternalForce, ZeroForStationaryLeader) {
    const Vec2 f = external_force({0.0, 0.0}, kHard);
    EXPECT_DOUBLE_EQ(f.norm(), 0.0);
}

TEST(ExternalForce, ViscousCoupling) {
    const Vec2 f = external_force({1.0, 0.0}, kHard);
    EXPECT_DOUBLE_EQ(f.x, 3.0);
    EXPECT_DOUBLE_EQ(f.y, 0.0);
}

TEST(ExternalForce, DampingRatioAcrossProfiles) {
    const Vec2 v{0.7, -0.2};
    const Vec2 f_human = external_force(v, kHuman);
    const Vec2 f_hard = external_force(v, kHard);
    EXPECT_NEAR(f_human.norm() / f_hard.norm(), 2.0 / 3.0, 1e-12);
}

TEST(StepLink, EquilibriumIsFixedPoint) {
    const ImpedanceLink l = link_with({0.0, 0.0}, {0.0, 0.0}, kHard);
    const ImpedanceLink next = step_link(l, {0.0, 0.0}, 0.01);
    EXPECT_DOUBLE_EQ(next.displacement.norm(), 0.0);
    EXPECT_DOUBLE_EQ(next.velocity.norm(), 0.0);
}

TEST(StepLink, FreeDecayBelowFivePercentWithinFiveSeconds) {
    ImpedanceLink l = link_with({1.0, 0.0}, {0.0, 0.0}, kHard);
    const double dt = 0.01;
    for (int i = 0; i < 500; ++i) l = step_link(l, {0.0, 0.0}, dt);
    EXPECT_LT(l.displacement.norm(), 0.05);
    // Agreement with the reference integrator at the same horizon.
    const Vec2 ref = rk4_free_decay({1.0, 0.0}, {0.0, 0.0}, kHard, 5.0, 1e-4);
    EXPECT_NEAR(l.displacement.x, ref.x, 0.02);
}

TEST(StepLink, StaticGainMatchesStiffness) {
    ImpedanceLink l = link_with({0.0, 0.0}, {0.0, 0.0}, kHard);
    const Vec2 f{7.0, 0.0};
    for (int i = 0; i < 1000; ++i) l = step_link(l, f, 0.01);
    EXPECT_NEAR(l.displacement.x, 1.0, 0.02);
    EXPECT_NEAR(l.displacement.y, 0.0, 1e-9);
}

TEST(StepLink, EnergyNonIncreasingUnderFreeDecay) {
    ImpedanceLink l = link_with({0.8, -0.4}, {0.3, 0.2}, kHard);
    double prev = link_energy(l);
    for (int i = 0; i < 2000; ++i) {
        l = step_link(l, {0.0, 0.0}, 0.02);
        const double e = link_energy(l);
        EXPECT_LE(e, prev + 1e-6 * std::max(prev, 1e-30));
        prev = e;
    }
}

TEST(StepLink, NonFiniteStateDetected) {
    ImpedanceLink l = link_with({1.0, 0.0}, {0.0, 0.0}, kHard);
    const double huge = std::numeric_limits<double>::max();
    EXPECT_THROW(step_link(l, {huge, huge}, huge), NonFiniteState);
}

TEST(FollowerTarget, PureGeometryAtZeroDisplacement) {
    const FormationSpec spec = FormationSpec::even(2, 0.5);
    const Vec2 t0 = follower_target({1.0, 1.0}, {0.0, 0.0}, spec, 0);
    const Vec2 t1 = follower_target({1.0, 1.0}, {0.0, 0.0}, spec, 1);
    EXPECT_NEAR(t0.x, 1.0, 1e-12);
    EXPECT_NEAR(t0.y, 1.5, 1e-12);
    EXPECT_NEAR(t1.x, 1.0, 1e-12);
    EXPECT_NEAR(t1.y, 0.5, 1e-12);
}

TEST(FollowerTarget, DisplacementShiftsUniformly) {
    FormationSpec spec = FormationSpec::even(3, 0.4);
    spec.beta = 1.0;
    for (int j = 0; j < 3; ++j) {
        const Vec2 base = follower_target({2.0, 2.0}, {0.0, 0.0}, spec, j);
        const Vec2 shifted = follower_target({2.0, 2.0}, {0.1, 0.0}, spec, j);
        EXPECT_NEAR(shifted.x - base.x, 0.1, 1e-12);
        EXPECT_NEAR(shifted.y - base.y, 0.0, 1e-12);
    }
}

TEST(FollowerTarget, FormationRadiusExactAtRest) {
    const FormationSpec spec = FormationSpec::even(5, 0.7);
    for (int j = 0; j < 5; ++j) {
        const Vec2 t = follower_target({3.0, 3.0}, {0.0, 0.0}, spec, j);
        EXPECT_NEAR(distance(t, {3.0, 3.0}), 0.7, 1e-12);
    }
}

TEST(Hysteresis, EngagesAtEnterThreshold) {
    EXPECT_TRUE(hysteresis_update(false, 1.0, 1.0, 1.3));
    EXPECT_TRUE(hysteresis_update(false, 0.8, 1.0, 1.3));
}

TEST(Hysteresis, HoldsInsideBand) {
    EXPECT_TRUE(hysteresis_update(true, 1.15, 1.0, 1.3));
    EXPECT_FALSE(hysteresis_update(false, 1.15, 1.0, 1.3));
}

TEST(Hysteresis, ReleasesAtExitThreshold) {
    EXPECT_FALSE(hysteresis_update(true, 1.3, 1.0, 1.3));
    EXPECT_FALSE(hysteresis_update(true, 2.0, 1.0, 1.3));
}

TEST(Hysteresis, InvalidThresholdsRejected) {
    EXPECT_THROW(hysteresis_update(false, 1.0, 1.3, 1.3), InvalidThresholds);
    EXPECT_THROW(hysteresis_update(false, 1.0, 1.4, 1.3), InvalidThresholds);
}

TEST(Hysteresis, NoChatterInsideBand) {
    bool flag = false;
    int transitions = 0;
    // d oscillates strictly inside (d_enter, d_exit) without touching either.
    for (int i = 0; i < 1000; ++i) {
        const double d = 1.15 + 0.14 * std::sin(0.37 * i);
        const bool next = hysteresis_update(flag, d, 1.0, 1.3);
        if (next != flag) ++transitions;
        flag = next;
    }
    EXPECT_EQ(transitions, 0);
}

TEST(Hysteresis, CrossingSequenceTransitionsExactly) {
    const double d_enter = 1.0, d_exit = 1.3;
    const double ds[] = {2.0, 1.2, 0.9, 1.1, 1.25, 1.3, 1.1, 0.95, 1.35};
    const bool expected[] = {false, false, true, true, true, false, false, true, false};
    bool flag = false;
    for (std::size_t i = 0; i < std::size(ds); ++i) {
        flag = hysteresis_update(flag, ds[i], d_enter, d_exit);
        EXPECT_EQ(flag, expected[i]) << "at step " << i;
    }
}

TEST(ParamSwitch, TargetJumpBoundedByDisplacementChange) {
    // Swapping hard -> human params mid-run must not teleport the target:
    // params act on the target only through the link dynamics.
    FormationSpec spec = FormationSpec::even(1, 0.5);
    ImpedanceLink l = link_with({0.0, 0.0}, {0.0, 0.0}, kHard);
    const Vec2 leader{2.0, 2.0};
    const Vec2 v_leader{1.0, 0.0};
    const double dt = 0.02;
    Vec2 prev_target = follower_target(leader, l.displacement, spec, 0);
    for (int i = 0; i < 400; ++i) {
        l.params = i == 200 ? kHuman : l.params;  // switch once mid-run
        const Vec2 prev_disp = l.displacement;
        l = step_link(l, external_force(v_leader, l.params), dt);
        const Vec2 target = follower_target(leader, l.displacement, spec, 0);
        const double jump = distance(target, prev_target);
        const double disp_change = spec.beta * distance(l.displacement, prev_disp);
        EXPECT_LE(jump, disp_change + 1e-12);
        prev_target = target;
    }
}
