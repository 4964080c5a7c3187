#include "doctest.h"

#include <cmath>

#include "conics/harness.hpp"
#include "conics/norms.hpp"

using namespace conics;

namespace {

IsometricNorm random_norm(Rng& rng)
{
    for (;;) {
        IMat3 m{};
        for (auto& row : m)
            for (auto& v : row) v = rng.uniform(-4, 4);
        if (determinant(m) != 0) return {m, rng.uniform(1, 5)};
    }
}

}  // namespace

TEST_CASE("sup norm")
{
    auto n = IsometricNorm::sup();
    CHECK(n.is_sup());
    CHECK(n.k0() == Rational(2));
    CHECK(n.exact_value({3, -7, 2}) == Rational(7));
    CHECK(n.within(IVec3{3, -7, 2}, Bound::integer(7)));
    CHECK_FALSE(n.within(IVec3{3, -7, 2}, Bound::integer(6)));
    CHECK(n.abs_determinant() == Rational(1));
}

TEST_CASE("rejects singular or badly scaled g")
{
    CHECK_THROWS_AS(IsometricNorm(IMat3{{{1, 2, 0}, {2, 4, 0}, {0, 0, 1}}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(IsometricNorm(identity_matrix(), 0), std::invalid_argument);
}

TEST_CASE("rational entries are stored in lowest terms")
{
    std::array<std::array<Rational, 3>, 3> g{};
    g[0][0] = Rational(1, 2);
    g[1][1] = Rational(3, 4);
    g[2][2] = Rational(2);
    g[0][1] = Rational(1, 6);
    auto n = IsometricNorm::from_rationals(g);
    CHECK(n.denominator() == 12);
    CHECK(n.entry(0, 1) == Rational(1, 6));
    CHECK(n.entry(2, 2) == Rational(2));
    CHECK(IsometricNorm(IMat3{{{2, 0, 0}, {0, 4, 0}, {0, 0, 6}}}, 4) ==
          IsometricNorm(IMat3{{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}}, 2));
    // diag(1/2, 3/4, 2): row sums of g^-1 are 2, 4/3, 1/2
    CHECK(n.k0() > Rational(3));
}

TEST_CASE("K0 bounds the sup norm on random samples")
{
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = random_norm(rng);
        const Rational k = n.k0() - 1;
        for (int i = 0; i < 50; ++i) {
            IVec3 x{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
            if (x == IVec3{0, 0, 0}) continue;
            CHECK(Rational(sup_norm(x)) <= k * n.exact_value(x));
        }
    }
}

TEST_CASE("exact and floating values agree")
{
    Rng rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        auto n = random_norm(rng);
        IVec3 x{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        const Rational v = n.exact_value(x);
        CHECK(n.value({double(x[0]), double(x[1]), double(x[2])}) == doctest::Approx(to_double(v)));
        // exact threshold test at v itself and just below
        Bound at{static_cast<i128>(boost::multiprecision::numerator(v)),
                 static_cast<i128>(boost::multiprecision::denominator(v))};
        CHECK(n.within(x, at));
        if (v > 0) {
            Bound below{at.num * 1000 - 1, at.den * 1000};
            CHECK_FALSE(n.within(x, below));
        }
    }
}

TEST_CASE("composition with a unimodular matrix")
{
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto n = random_norm(rng);
        auto m = random_unimodular(rng);
        auto c = n.compose_with_matrix(m);
        IVec3 x{rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-100, 100)};
        CHECK(c.exact_value(x) == n.exact_value(conics::apply(m.matrix(), x)));
        CHECK(c.abs_determinant() == n.abs_determinant());
    }
}

TEST_CASE("Bound arithmetic stays exact")
{
    Bound b{10, 3};
    auto d = b.divided_by_square(2);
    CHECK(d.num == 5);
    CHECK(d.den == 6);
    auto t = d.times(3);
    CHECK(t.num == 5);
    CHECK(t.den == 2);
    CHECK(t.value() == 2.5);
}
