#include "doctest.h"

#include "conics/harness.hpp"
#include "conics/parametrization.hpp"
#include "conics/zeros.hpp"
#include "forms.hpp"

using namespace conics;
using conics::testing::q0;
using conics::testing::q1;

namespace {

SpecialConic random_special(Rng& rng, i64 h)
{
    return *generate_corpus({1, h, Shape::special, rng.next()}).front().special;
}

}  // namespace

TEST_CASE("Pi for Q0 and Q1")
{
    auto p0 = build_param_system(q0());
    CHECK(p0.pi() == IMat3{{{0, -1, 0}, {-1, 0, 0}, {0, 0, -1}}});
    CHECK(determinant(p0.pi()) == 1);
    CHECK(p0.discriminant() == 1);
    CHECK(p0.q(2, 3) == I128Vec3{-6, -4, -9});

    auto p1 = build_param_system(q1());
    CHECK(p1.pi() == IMat3{{{3, 5, 0}, {-1, 0, -7}, {0, 3, 5}}});
    CHECK(determinant(p1.pi()) == 88);
    CHECK(p1.lambda_max() == 88);
}

TEST_CASE("q(s,t) = Pi (s^2, st, t^2) and adj(Pi) q = Delta (s^2, st, t^2)")
{
    Rng rng(51);
    for (int i = 0; i < 50; ++i) {
        auto sys = build_param_system(random_special(rng, 30));
        CHECK(determinant(sys.pi()) == sys.discriminant());
        for (int k = 0; k < 50; ++k) {
            const i64 s = rng.uniform(-100000, 100000), t = rng.uniform(-100000, 100000);
            const IVec3 mono{s * s, s * t, t * t};
            const I128Vec3 q = sys.q(s, t);
            for (int r = 0; r < 3; ++r) {
                i128 via_pi = 0, via_adj = 0;
                for (int c = 0; c < 3; ++c) {
                    via_pi += static_cast<i128>(sys.pi()[r][c]) * mono[c];
                    via_adj += static_cast<i128>(sys.adj_pi()[r][c]) * q[c];
                }
                CHECK(via_pi == q[r]);
                CHECK(via_adj == static_cast<i128>(sys.discriminant()) * mono[r]);
            }
            CHECK(evaluate(sys.source().form(), {narrow(q[0]), narrow(q[1]), narrow(q[2])}) == 0);
        }
    }
}

TEST_CASE("rho* desk values for Q1")
{
    const std::vector<std::pair<i64, i64>> expected{{1, 1}, {2, 1}, {3, 0}, {4, 2}, {8, 4}, {11, 10}, {121, 0}, {16, 0}};
    for (auto [n, v] : expected) {
        CHECK(rho_star(q1(), n) == v);
        CHECK(rho_star_direct(q1(), n) == v);
        CHECK(static_cast<i64>(residue_classes(q1(), n).size()) == v);
    }
    CHECK(rho_star(q0(), 1) == 1);
    CHECK(rho_star(q0(), 2) == 0);
}

TEST_CASE("factored and direct rho* agree")
{
    Rng rng(52);
    for (int i = 0; i < 30; ++i) {
        auto s = random_special(rng, 12);
        for (i64 n = 1; n <= 120; ++n) CHECK(rho_star(s, n) == rho_star_direct(s, n));
    }
    CHECK_THROWS((void)rho_star_direct(q1(), kRhoDirectCap + 1));
}

TEST_CASE("residue classes satisfy their definition")
{
    auto sys = build_param_system(q1());
    for (i64 n : {4, 8, 11, 22, 44, 88}) {
        for (auto [sg, tu] : residue_classes(q1(), n)) {
            CHECK(gcd(gcd(sg, tu), n) == 1);
            for (i128 v : sys.q(sg, tu)) CHECK(v % n == 0);
        }
    }
}

TEST_CASE("linear congruences")
{
    CHECK(solve_linear_congruence(3, 1, 7) == std::vector<i64>{5});
    CHECK(solve_linear_congruence(4, 2, 6) == std::vector<i64>{2, 5});
    CHECK(solve_linear_congruence(4, 1, 6).empty());
    CHECK(solve_linear_congruence(0, 0, 3) == std::vector<i64>{0, 1, 2});
}

TEST_CASE("points from parameters on Q0")
{
    auto sys = build_param_system(q0());
    auto p = point_from_parameter(sys, 1, 1);
    CHECK(p.lambda == 1);
    CHECK((p.point == IVec3{1, 1, 1} || p.point == IVec3{-1, -1, -1}));
    p = point_from_parameter(sys, 2, 1);
    CHECK((p.point == IVec3{2, 4, 1} || p.point == IVec3{-2, -4, -1}));
    p = point_from_parameter(sys, 0, 1);
    CHECK((p.point == IVec3{0, 0, 1} || p.point == IVec3{0, 0, -1}));
    CHECK_FALSE(p.exceptional);
    CHECK(point_from_parameter(sys, 1, 0).exceptional);
    CHECK_THROWS((void)point_from_parameter(sys, 2, 4));

    CHECK(parameter_from_point(sys, {2, 4, 1}).parameter == std::make_pair<i64, i64>(2, 1));
    CHECK(parameter_from_point(sys, {0, 0, -1}).parameter == std::make_pair<i64, i64>(0, 1));
    CHECK(parameter_from_point(sys, {0, 1, 0}).exceptional);
    CHECK_THROWS((void)parameter_from_point(sys, {1, 2, 3}));
}

TEST_CASE("the tangent parameter is the one sent to the base point")
{
    CHECK(build_param_system(q1()).tangent_parameter() == std::make_pair<i64, i64>(-5, 3));
    CHECK(build_param_system(q0()).tangent_parameter() == std::make_pair<i64, i64>(1, 0));
    Rng rng(53);
    for (int i = 0; i < 200; ++i) {
        auto sys = build_param_system(random_special(rng, 30));
        auto [s, t] = sys.tangent_parameter();
        CHECK(sys.linear(s, t) == 0);
        CHECK(point_from_parameter(sys, s, t).exceptional);
        // no other small parameter lands on the base point
        for (i64 u = -6; u <= 6; ++u)
            for (i64 v = 0; v <= 6; ++v)
                if (gcd(u, v) == 1 && (v > 0 || u == 1) && !(u == s && v == t))
                    CHECK_FALSE(point_from_parameter(sys, u, v).exceptional);
    }
}

TEST_CASE("round trip through the parametrization")
{
    Rng rng(54);
    for (int i = 0; i < 20; ++i) {
        auto sys = build_param_system(random_special(rng, 10));
        for_each_zero_in_box(sys.source().form(), 40, [&](const IVec3& x) {
            if (gcd(x[0], x[1], x[2]) != 1) return;
            auto par = parameter_from_point(sys, x);
            if (par.exceptional) {
                CHECK((x == IVec3{0, 1, 0} || x == IVec3{0, -1, 0}));
                return;
            }
            auto back = point_from_parameter(sys, par.parameter->first, par.parameter->second);
            const IVec3 neg{-x[0], -x[1], -x[2]};
            CHECK((back.point == x || back.point == neg));
            CHECK(back.lambda > 0);
            CHECK(sys.lambda_max() % back.lambda == 0);
        });
    }
}
