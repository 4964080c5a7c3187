#include "doctest.h"

#include <atomic>
#include <set>

#include "conics/harness.hpp"
#include "conics/zeros.hpp"
#include "forms.hpp"

using namespace conics;

TEST_CASE("rng is reproducible and stays in range")
{
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
    Rng r(1);
    std::set<i64> seen;
    for (int i = 0; i < 5000; ++i) {
        i64 v = r.uniform(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(r.uniform(5, 5) == 5);
    // full 64-bit span does not trip the rejection threshold
    (void)r.uniform(std::numeric_limits<i64>::min(), std::numeric_limits<i64>::max());
}

TEST_CASE("random generators")
{
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        auto m = random_unimodular(rng);
        CHECK(determinant(m.matrix()) == 1);
        IVec3 a = random_primitive(rng, 1000);
        CHECK(gcd(a[0], a[1], a[2]) == 1);
        CHECK(sup_norm(a) <= 1000);
    }
}

TEST_CASE("corpus generation")
{
    auto s = generate_corpus({20, 5, Shape::special, 7});
    REQUIRE(s.size() == 20);
    CHECK(s[0].id == "s000");
    for (const auto& f : s) {
        REQUIRE(f.special.has_value());
        CHECK(discriminant_special(*f.special) != 0);
        CHECK(height(f.form) <= 5);
    }
    auto g = generate_corpus({20, 30, Shape::general, 7});
    CHECK(g[19].id == "g019");
    for (const auto& f : g) {
        CHECK(height(f.form) <= 30);
        REQUIRE(f.base.has_value());
        CHECK(transform(f.base->form(), *f.applied) == f.form);
        CHECK(find_primitive_zero(f.form).zero.has_value());
    }
    auto one = generate_corpus({1, 1, Shape::special, 3});
    CHECK(discriminant_special(*one[0].special) != 0);

    auto again = generate_corpus({20, 30, Shape::general, 7});
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(again[i].form == g[i].form);
    CHECK(generate_corpus({20, 30, Shape::general, 8})[0].form != g[0].form);

    CHECK_THROWS_AS((void)generate_corpus({5, 0, Shape::special, 1}), std::invalid_argument);
    CHECK_THROWS_AS((void)generate_corpus({0, 5, Shape::special, 1}), std::invalid_argument);
}

TEST_CASE("verification batteries pass on a corpus")
{
    auto corpus = generate_corpus({4, 12, Shape::special, 11});
    auto general = generate_corpus({4, 12, Shape::general, 12});
    corpus.insert(corpus.end(), general.begin(), general.end());
    VerifyOptions o;
    o.b_max = 20;
    o.adj_samples = 100;
    o.multiplicativity_pairs = 10;
    o.rho_support_limit = 300;
    o.round_trip_radius = 30;
    auto rep = verify_identities(corpus, o);
    CHECK(rep.batteries.size() == 7);
    for (const auto& b : rep.batteries) {
        CHECK_MESSAGE(b.passed(), b.name);
        CHECK(b.checks > 0);
    }
    CHECK(rep.passed());

    o.threads = 3;
    auto threaded = verify_identities(corpus, o);
    CHECK(to_json(threaded).dump() == to_json(rep).dump());
}

TEST_CASE("tampered rho* is caught by the decomposition battery")
{
    auto corpus = generate_corpus({3, 10, Shape::special, 13});
    VerifyOptions o;
    o.b_max = 10;
    o.adj_samples = 10;
    o.multiplicativity_pairs = 5;
    o.rho_support_limit = 50;
    o.round_trip_radius = 10;
    o.rho_override = [](const SpecialConic& s, i64 n) { return rho_star(s, n) + 1; };
    auto rep = verify_identities(corpus, o);
    CHECK_FALSE(rep.passed());
    bool decomposition_failed = false;
    for (const auto& b : rep.batteries)
        if (b.name.find("decomposition") != std::string::npos) decomposition_failed = !b.passed();
    CHECK(decomposition_failed);
    CHECK(rep.failure_count() > 0);
}

TEST_CASE("empty corpus passes trivially")
{
    auto rep = verify_identities({}, VerifyOptions{});
    CHECK(rep.passed());
    CHECK(rep.failure_count() == 0);
    VerifyOptions bad;
    bad.b_max = 101;
    CHECK_THROWS_AS((void)verify_identities({}, bad), std::invalid_argument);
}

TEST_CASE("sweep rows and CSV")
{
    CHECK(sweep_csv({}) == std::string(kSweepHeader) + "\n");
    auto rows = run_sweep("q0", testing::q0().form(), IsometricNorm::sup(), {10}, 24 / (M_PI * M_PI));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == count_N_brute(testing::q0().form(), IsometricNorm::sup(), 10));
    CHECK(rows[0].cb == doctest::Approx(240 / (M_PI * M_PI)));
    auto csv = sweep_csv(rows);
    CHECK(csv.rfind(std::string(kSweepHeader) + "\nq0,10,", 0) == 0);
    CHECK(run_sweep("q0", testing::q0().form(), IsometricNorm::sup(), {}, 1.0).empty());
}

TEST_CASE("parallel_for visits every index once")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, 4, [](std::size_t) { FAIL("called on an empty range"); });
}

TEST_CASE("JSON round trips")
{
    auto g = generate_corpus({3, 20, Shape::general, 21});
    for (const auto& f : g) {
        CHECK(form_from_json(to_json(f)) == f.form);
        CHECK(form_from_json(Json::parse(to_json(f.form).dump())) == f.form);
    }
    auto s = testing::q1();
    CHECK(special_from_json(to_json(s)) == s);
    CHECK(form_from_json(to_json(s)) == s.form());
    CHECK(special_from_json(to_json(s.form())) == s);
    CHECK_FALSE(special_from_json(to_json(TernaryQuadraticForm(1, 0, 0, 1, 0, -2))).has_value());
    CHECK_THROWS((void)form_from_json(Json::parse(R"({"c200": 1.5})")));
    CHECK_THROWS((void)form_from_json(Json::parse(R"({"x": 1})")));

    CHECK(norm_from_json(Json()).is_sup());
    IsometricNorm n(IMat3{{{2, 1, 0}, {0, 3, 0}, {1, 0, 4}}}, 3);
    CHECK(norm_from_json(to_json(n)) == n);
    CHECK(norm_from_json(Json{{"norm", to_json(n)}}) == n);
    CHECK(to_json(n)["g"][0][0] == "2/3");
    CHECK_THROWS((void)norm_from_json(Json::parse(R"({"g": [[1,0],[0,1]]})")));
}

TEST_CASE("reports carry the spec version")
{
    CountReport c;
    c.b = 3;
    c.n_brute = 8;
    c.n_param = 8;
    auto j = to_json(c);
    CHECK(j["spec_version"] == kSpecVersion);
    CHECK(j["agree"] == true);
    CHECK(to_json(DensityReport{})["spec_version"] == kSpecVersion);
    CHECK(to_json(VerificationReport{})["passed"] == true);
}
