#include "doctest.h"

#include "conics/harness.hpp"
#include "conics/quadform.hpp"
#include "forms.hpp"

using namespace conics;
using conics::testing::q0;
using conics::testing::q1;

namespace {

TernaryQuadraticForm random_form(Rng& rng, i64 h)
{
    for (;;) {
        try {
            return TernaryQuadraticForm(rng.uniform(-h, h), rng.uniform(-h, h), rng.uniform(-h, h), rng.uniform(-h, h),
                                        rng.uniform(-h, h), rng.uniform(-h, h));
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST_CASE("construction rejects singular input")
{
    CHECK_THROWS_AS(TernaryQuadraticForm(0, 0, 0, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(TernaryQuadraticForm(1, 0, 0, 0, 0, 0), std::invalid_argument);  // x^2
    CHECK_THROWS_AS(SpecialConic(1, 0, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(UnimodularMatrix(IMat3{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(UnimodularMatrix(IMat3{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}), std::invalid_argument);
}

TEST_CASE("Q0 and Q1 invariants")
{
    CHECK(discriminant_special(q0()) == 1);
    CHECK(gram_determinant(q0().form()) == -2);
    CHECK(delta_gcd_minors(q0().form()) == 1);
    CHECK(height(q0().form()) == 1);

    // 1*25 - 0 + 7*9
    CHECK(discriminant_special(q1()) == 88);
    CHECK(gram_determinant(q1().form()) == -176);
    CHECK(height(q1().form()) == 7);
    CHECK(q1().gcd_be() == 1);
    CHECK(as_special(q1().form()) == q1());
    CHECK_FALSE(as_special(TernaryQuadraticForm(1, 0, 0, 1, 0, -1)).has_value());
}

TEST_CASE("doubled gram matrix round trip")
{
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        auto q = random_form(rng, 20);
        IMat3 a = gram_doubled(q);
        CHECK(TernaryQuadraticForm::from_gram_doubled(a) == q);
        CHECK(determinant(a) == gram_determinant(q));
        IVec3 x{rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
        i128 xax = 0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) xax += static_cast<i128>(x[r]) * a[r][c] * x[c];
        CHECK(xax == 2 * evaluate(q, x));
    }
}

TEST_CASE("special shape: det A = -2 Delta")
{
    Rng rng(5);
    int seen = 0;
    while (seen < 300) {
        i64 a = rng.uniform(-30, 30), b = rng.uniform(-30, 30), d = rng.uniform(-30, 30), e = rng.uniform(-30, 30),
            f = rng.uniform(-30, 30);
        if (static_cast<i128>(a) * e * e - static_cast<i128>(d) * e * b + static_cast<i128>(f) * b * b == 0) continue;
        SpecialConic s(a, b, d, e, f);
        CHECK(gram_determinant(s.form()) == -2 * discriminant_special(s));
        CHECK(evaluate(s.form(), {0, 1, 0}) == 0);
        ++seen;
    }
}

TEST_CASE("transform composes with evaluation and keeps the invariants")
{
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        auto q = random_form(rng, 10);
        auto m = random_unimodular(rng);
        auto qm = transform(q, m);
        CHECK(gram_determinant(qm) == gram_determinant(q));
        CHECK(delta_gcd_minors(qm) == delta_gcd_minors(q));
        for (int k = 0; k < 5; ++k) {
            IVec3 x{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
            CHECK(evaluate(qm, x) == evaluate(q, conics::apply(m.matrix(), x)));
        }
        CHECK(transform(qm, m.inverse()) == q);
        // M^T A M has entries at most 9 ||M||^2 ||A||
        const i64 mm = sup_norm(m.matrix());
        CHECK(height(qm) <= 18 * mm * mm * height(q));
    }
}

TEST_CASE("unimodular group operations")
{
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        auto m = random_unimodular(rng);
        auto n = random_unimodular(rng);
        CHECK((m * m.inverse()).matrix() == identity_matrix());
        CHECK(determinant((m * n).matrix()) == 1);
        CHECK(multiply(m.matrix(), adjugate(m.matrix())) == identity_matrix());
    }
    CHECK(transpose(IMat3{{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}})[0][2] == 7);
}

TEST_CASE("scaling and overflow")
{
    auto q = q1().form().scaled(3);
    CHECK(q.coefficients() == std::array<i64, 6>{3, 9, 0, 0, 15, 21});
    TernaryQuadraticForm wide(1, 0, 0, -1, 0, std::numeric_limits<i64>::max() / 2);
    CHECK_THROWS_AS((void)wide.scaled(4), std::overflow_error);
}
