#include "doctest.h"

#include "conics/harness.hpp"
#include "conics/unimodular.hpp"

using namespace conics;

TEST_CASE("small cases")
{
    auto e2 = complete_to_sl3({0, 1, 0});
    CHECK(satisfies_completion_contract(e2, {0, 1, 0}));
    auto e1 = complete_to_sl3({1, 0, 0});
    CHECK(satisfies_completion_contract(e1, {1, 0, 0}));
    CHECK(sup_norm(e1.matrix()) == 1);
    auto m = complete_to_sl3({2, 3, 5});
    CHECK(m.column(1) == IVec3{2, 3, 5});
    CHECK(determinant(m.matrix()) == 1);
    CHECK(sup_norm(m.matrix()) <= 15);
    for (IVec3 a : {IVec3{0, 0, -1}, IVec3{-1, 0, 0}, IVec3{0, 4, -7}, IVec3{6, 0, 35}, IVec3{-3, -3, 1}})
        CHECK(satisfies_completion_contract(complete_to_sl3(a), a));
}

TEST_CASE("rejects zero and non-primitive vectors")
{
    CHECK_THROWS_AS((void)complete_to_sl3({0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS((void)complete_to_sl3({2, 4, 6}), std::invalid_argument);
    CHECK_THROWS_AS((void)complete_to_sl3({0, -3, 0}), std::invalid_argument);
}

TEST_CASE("contract checker catches violations")
{
    auto m = complete_to_sl3({2, 3, 5});
    CHECK_FALSE(satisfies_completion_contract(m, {2, 3, 4}));
    CHECK_FALSE(satisfies_completion_contract(UnimodularMatrix(IMat3{{{1, 2, 40}, {0, 3, 1}, {0, 5, 2}}}), {2, 3, 5}));
}

TEST_CASE("random primitive vectors at several scales")
{
    Rng rng(41);
    for (i64 bound : {1LL, 2LL, 10LL, 1000LL, 1000000LL, 1000000000LL}) {
        for (int i = 0; i < 400; ++i) {
            IVec3 a = random_primitive(rng, bound);
            auto m = complete_to_sl3(a);
            CHECK(determinant(m.matrix()) == 1);
            CHECK(m.column(1) == a);
            CHECK(sup_norm(m.matrix()) <= 3 * std::max<i64>(1, sup_norm(a)));
            CHECK(complete_to_sl3(a).matrix() == m.matrix());
        }
    }
}

TEST_CASE("vectors with zero entries and equal moduli")
{
    Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        IVec3 a = random_primitive(rng, 50);
        a[rng.uniform(0, 2)] = 0;
        if (a == IVec3{0, 0, 0} || gcd(a[0], a[1], a[2]) != 1) continue;
        CHECK(satisfies_completion_contract(complete_to_sl3(a), a));
    }
    for (i64 k = 1; k < 30; ++k) {
        IVec3 a{k, k + 1, -k};
        CHECK(satisfies_completion_contract(complete_to_sl3(a), a));
    }
}
