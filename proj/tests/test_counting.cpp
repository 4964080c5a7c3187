#include "doctest.h"

#include <cmath>

#include "conics/counting.hpp"
#include "conics/harness.hpp"
#include "forms.hpp"

using namespace conics;
using conics::testing::q0;
using conics::testing::q1;

namespace {

const IsometricNorm kSup = IsometricNorm::sup();

i64 sum_corrections(const CountReport& r)
{
    i64 s = 0;
    for (const auto& c : r.corrections) s += c.vectors;
    return s;
}

IsometricNorm random_norm(Rng& rng)
{
    for (;;) {
        IMat3 m{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = i == j ? rng.uniform(1, 3) : rng.uniform(-1, 1);
        if (determinant(m) != 0) return {m, rng.uniform(1, 2)};
    }
}

}  // namespace

TEST_CASE("brute force desk values for Q0")
{
    CHECK(count_N_brute(q0().form(), kSup, 1) == 8);
    CHECK(count_N_brute(q0().form(), kSup, 2) == 8);
    CHECK(count_N_brute(q0().form(), kSup, 4) == 16);
    CHECK_THROWS_AS((void)count_N_brute(q0().form(), kSup, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)count_N_brute(q0().form(), kSup, kBruteCap + 1), std::length_error);
}

TEST_CASE("parameter counts for Q0 and Q1")
{
    const ParamRegion r0(q0(), kSup);
    CHECK(count_N_script(r0, 1) == 3);
    CHECK(count_N_script(r0, 4) == 7);
    const ParamRegion r1(q1(), kSup);
    CHECK(count_N_script(r1, 1) == 2);
    CHECK(count_N_script(r1, 10) == 10);

    CHECK(count_M(r0, Bound::integer(4), 1, 0, 0) == 10);
    CHECK(count_M(r0, Bound::integer(4), 2, 1, 1) == 2);
    CHECK(count_M(r0, Bound::integer(1), 3, 0, 1) == 1);
    CHECK(count_M_star(r0, Bound::integer(4), 1, 0, 0) == 7);
    CHECK(count_M_star(r0, Bound::integer(1), 1, 0, 0) == 3);
    CHECK(count_M(r0, Bound::integer(1), 5, 2, 3) == 0);
}

TEST_CASE("bounding box radius")
{
    CHECK(bounding_box(q0(), kSup, Bound::integer(1)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(bounding_box(q0(), kSup, Bound::integer(1000000)) == doctest::Approx(1732.0508).epsilon(1e-6));
    const ParamRegion r1(q1(), kSup);
    const double adj = static_cast<double>(sup_norm(r1.system().adj_pi()));
    CHECK(bounding_box(q1(), kSup, Bound::integer(1)) == doctest::Approx(std::sqrt(3 * adj / 88)));
    // r^2 = 3 ||adj Pi|| T / 88, exact
    CHECK(r1.box_radius_squared(Bound::integer(88)) == Rational(3 * sup_norm(r1.system().adj_pi())));
}

TEST_CASE("volume of V")
{
    CHECK(volume_V(q0(), kSup, 1e-4) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(volume_V(SpecialConic(2, 0, 0, -2, 0), kSup, 1e-4) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS((void)volume_V(q0(), kSup, 0.2), std::invalid_argument);
    CHECK_THROWS_AS((void)volume_V(q0(), kSup, 0.0), std::invalid_argument);
    // ||g x|| with g = 2 I shrinks V by 2 in area
    CHECK(volume_V(q0(), IsometricNorm(IMat3{{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}}, 1), 1e-4) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("pipeline count and its corrections")
{
    auto r4 = count_N_param(q0().form(), kSup, 4);
    CHECK(r4.n_param == 16);
    CHECK(r4.script_n == 7);
    CHECK(sum_corrections(r4) == 16);
    CHECK(r4.corrections.front().vectors == 14);
    CHECK(r4.corrections.back().vectors == 2);
    auto r1 = count_N_param(q0().form(), kSup, 1);
    CHECK(r1.n_param == 8);
    CHECK(r1.script_n == 3);
    for (i64 b : {1, 2, 5, 10, 37}) {
        auto r = count_N_param(q1().form(), kSup, b);
        CHECK(r.n_param == count_N_brute(q1().form(), kSup, b));
        CHECK(sum_corrections(r) == *r.n_param);
    }
    // anisotropic input cannot be reduced
    CHECK_THROWS((void)count_N_param(TernaryQuadraticForm(1, 0, 0, 1, 0, -3), kSup, 5));
}

TEST_CASE("general image of Q1 at B = 100")
{
    Rng rng(61);
    for (int i = 0; i < 3; ++i) {
        auto m = random_unimodular(rng, 3, 2);
        auto q = transform(q1().form(), m);
        CHECK(count_N_param(q, kSup, 100).n_param == count_N_brute(q, kSup, 100));
    }
}

TEST_CASE("param equals brute on random forms")
{
    auto corpus = generate_corpus({30, 12, Shape::special, 101});
    auto general = generate_corpus({30, 12, Shape::general, 102});
    corpus.insert(corpus.end(), general.begin(), general.end());
    for (const auto& f : corpus)
        for (i64 b : {1, 3, 20, 60}) CHECK_MESSAGE(count_N_param(f.form, kSup, b).n_param == count_N_brute(f.form, kSup, b), f.id);
}

TEST_CASE("param equals brute under non-sup norms")
{
    Rng rng(62);
    auto corpus = generate_corpus({20, 8, Shape::general, 103});
    for (const auto& f : corpus) {
        auto norm = random_norm(rng);
        for (i64 b : {2, 15, 40}) CHECK_MESSAGE(count_N_param(f.form, norm, b).n_param == count_N_brute(f.form, norm, b), f.id);
    }
}

TEST_CASE("brute count is invariant under a change of variables")
{
    Rng rng(63);
    for (const auto& f : generate_corpus({10, 10, Shape::special, 104})) {
        auto m = random_unimodular(rng, 3, 2);
        auto norm = IsometricNorm::sup();
        CHECK(count_N_brute(transform(f.form, m), norm.compose_with_matrix(m), 30) == count_N_brute(f.form, norm, 30));
    }
}

TEST_CASE("decomposition and inversion identities on Q1")
{
    const ParamRegion r1(q1(), kSup);
    for (i64 b : {1, 2, 7, 20, 50}) CHECK(script_n_by_decomposition(r1, b) == count_N_script(r1, b));
    for (i64 n : {1, 2, 4, 8, 11, 22, 44, 88})
        for (auto [sg, tu] : residue_classes(q1(), n))
            for (i64 t : {1, 10, 300, 5000})
                CHECK(m_star_by_inversion(r1, Bound::integer(t), n, sg, tu) ==
                      count_M_star(r1, Bound::integer(t), n, sg, tu));
    CHECK_THROWS_AS((void)m_star_by_inversion(r1, Bound::integer(5), 3, 0, 1), std::invalid_argument);
}

TEST_CASE("lattice count error stays small")
{
    const ParamRegion r0(q0(), kSup);
    const double vol = volume_V(r0, 1e-5);
    for (i64 t : {10, 1000, 100000})
        for (i64 n : {1, 2, 5, 9})
            CHECK(lattice_error_ratio(r0, vol, Bound::integer(t), n, 1, 1) <= 10);
}
