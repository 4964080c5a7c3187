#include "conics/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "conics/parametrization.hpp"
#include "conics/zeros.hpp"

namespace conics {

// ------------------------------------------------------------------------ RNG

i64 Rng::uniform(i64 lo, i64 hi)
{
    if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<i64>(engine_());
    // reject the top partial block so every residue is equally likely
    const std::uint64_t threshold = (0 - span) % span;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return static_cast<i64>(static_cast<std::uint64_t>(lo) + r % span);
    }
}

UnimodularMatrix random_unimodular(Rng& rng, int max_factors, i64 entry)
{
    IMat3 m = identity_matrix();
    const i64 factors = rng.uniform(1, max_factors);
    for (i64 k = 0; k < factors; ++k) {
        const int i = static_cast<int>(rng.uniform(0, 2));
        int j = static_cast<int>(rng.uniform(0, 1));
        if (j >= i) ++j;
        IMat3 e = identity_matrix();
        e[i][j] = rng.uniform(-entry, entry);
        m = multiply(m, e);
    }
    return UnimodularMatrix(m);
}

IVec3 random_primitive(Rng& rng, i64 bound)
{
    if (bound < 1) throw std::invalid_argument("random_primitive: bound must be >= 1");
    for (;;) {
        const IVec3 a{rng.uniform(-bound, bound), rng.uniform(-bound, bound), rng.uniform(-bound, bound)};
        if ((a[0] || a[1] || a[2]) && gcd(a[0], a[1], a[2]) == 1) return a;
    }
}

// --------------------------------------------------------------------- corpus

namespace {

std::string padded(const char* prefix, i64 i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%03lld", prefix, static_cast<long long>(i));
    return buf;
}

SpecialConic draw_special(Rng& rng, i64 h, i64& draws)
{
    for (;;) {
        if (++draws > kMaxCorpusDraws) throw std::runtime_error("generate_corpus: rejection loop exceeded 10^6 draws");
        const i64 a = rng.uniform(-h, h), b = rng.uniform(-h, h), d = rng.uniform(-h, h), e = rng.uniform(-h, h),
                  f = rng.uniform(-h, h);
        const i128 delta = static_cast<i128>(a) * e * e - static_cast<i128>(d) * e * b + static_cast<i128>(f) * b * b;
        if (delta != 0) return {a, b, d, e, f};
    }
}

}  // namespace

std::vector<CorpusForm> generate_corpus(const CorpusSpec& spec)
{
    if (spec.count < 1) throw std::invalid_argument("generate_corpus: count must be >= 1");
    if (spec.height_bound < 1) throw std::invalid_argument("generate_corpus: height bound must be >= 1");
    Rng rng(spec.seed);
    i64 draws = 0;
    std::vector<CorpusForm> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (i64 i = 0; i < spec.count; ++i) {
        if (spec.shape == Shape::special) {
            const SpecialConic s = draw_special(rng, spec.height_bound, draws);
            out.push_back({padded("s", i), s.form(), s, std::nullopt, std::nullopt});
            continue;
        }
        for (;;) {
            const SpecialConic base = draw_special(rng, rng.uniform(1, spec.height_bound), draws);
            const UnimodularMatrix m = random_unimodular(rng);
            const TernaryQuadraticForm q = transform(base.form(), m);
            if (height(q) <= spec.height_bound && q.c020 != 0) {
                out.push_back({padded("g", i), q, std::nullopt, base, m});
                break;
            }
            if (++draws > kMaxCorpusDraws)
                throw std::runtime_error("generate_corpus: rejection loop exceeded 10^6 draws");
        }
    }
    return out;
}

// ------------------------------------------------------------------ batteries

bool VerificationReport::passed() const
{
    for (const auto& b : batteries)
        if (!b.passed()) return false;
    return true;
}

i64 VerificationReport::failure_count() const
{
    i64 n = 0;
    for (const auto& b : batteries) n += static_cast<i64>(b.failures.size());
    return n;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f)
{
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

BatteryInput battery_input(const CorpusForm& f, const IsometricNorm& norm)
{
    if (f.special) return {f.id, *f.special, norm};
    if (auto s = as_special(f.form)) return {f.id, *s, norm};
    const SpecialReduction r = reduce_to_special(f.form, norm);
    return {f.id, r.special, r.norm};
}

namespace {

std::string describe(const BatteryInput& in) { return in.id + " " + to_string(in.special.form()); }

RhoFunction or_default(const RhoFunction& rho)
{
    if (rho) return rho;
    return [](const SpecialConic& s, i64 n) { return rho_star(s, n); };
}

std::vector<i64> b_ladder(i64 b_max)
{
    std::vector<i64> out;
    for (i64 b : {1, 2, 3, 5, 10, 20, 50, 100})
        if (b <= b_max) out.push_back(b);
    if (out.empty() || out.back() != b_max) out.push_back(b_max);
    return out;
}

std::uint64_t mix(std::uint64_t seed, const std::string& id)
{
    return seed ^ std::hash<std::string>{}(id) * 0x9E3779B97F4A7C15ULL;
}

}  // namespace

BatteryResult battery_decomposition(const std::vector<BatteryInput>& forms, i64 b_max, const RhoFunction& rho_in)
{
    const RhoFunction rho = or_default(rho_in);
    BatteryResult r;
    r.name = "moebius_decomposition";
    for (const auto& in : forms) {
        const ParamRegion region(in.special, in.norm);
        for (i64 n : divisors(region.system().lambda_max())) {
            ++r.checks;
            const auto classes = static_cast<i64>(residue_classes(in.special, n).size());
            const i64 expected = rho(in.special, n);
            if (classes != expected)
                r.failures.push_back(describe(in) + ": #classes mod " + std::to_string(n) + " = " +
                                     std::to_string(classes) + " but rho*(n) = " + std::to_string(expected));
        }
        for (i64 b : b_ladder(b_max)) {
            ++r.checks;
            const i64 lhs = count_N_script(region, b);
            const i64 rhs = script_n_by_decomposition(region, b);
            if (lhs != rhs)
                r.failures.push_back(describe(in) + ": B = " + std::to_string(b) + ", script N = " +
                                     std::to_string(lhs) + ", decomposition = " + std::to_string(rhs));
        }
    }
    return r;
}

std::vector<LatticeInstance> lattice_grid(const SpecialConic& s, const std::vector<i64>& t_values, i64 max_n,
                                          std::size_t classes_per_n)
{
    const ParamSystem sys(s);
    std::vector<LatticeInstance> out;
    for (i64 n : divisors(sys.lambda_max())) {
        if (n > max_n) break;
        const auto classes = residue_classes(s, n);
        // spread the chosen classes over the sorted list
        const std::size_t step = std::max<std::size_t>(1, classes.size() / std::max<std::size_t>(1, classes_per_n));
        std::size_t taken = 0;
        for (std::size_t k = 0; k < classes.size() && taken < classes_per_n; k += step, ++taken)
            for (i64 t : t_values) out.push_back({Bound::integer(t), n, classes[k].first, classes[k].second});
    }
    return out;
}

BatteryResult battery_inversion(const std::vector<BatteryInput>& forms, i64 b_max)
{
    BatteryResult r;
    r.name = "primitive_inversion";
    const std::vector<i64> t_values{1, 7, b_max, 4 * b_max};
    for (const auto& in : forms) {
        const ParamRegion region(in.special, in.norm);
        for (const auto& g : lattice_grid(in.special, t_values)) {
            ++r.checks;
            const i64 lhs = count_M_star(region, g.t, g.n, g.sigma, g.tau);
            const i64 rhs = m_star_by_inversion(region, g.t, g.n, g.sigma, g.tau);
            if (lhs != rhs)
                r.failures.push_back(describe(in) + ": T = " + to_string(g.t.num) + ", n = " + std::to_string(g.n) +
                                     ", (sigma,tau) = (" + std::to_string(g.sigma) + "," + std::to_string(g.tau) +
                                     "), M* = " + std::to_string(lhs) + ", inversion = " + std::to_string(rhs));
        }
    }
    return r;
}

BatteryResult battery_adj(const std::vector<BatteryInput>& forms, int samples, std::uint64_t seed)
{
    BatteryResult r;
    r.name = "adj_identity";
    for (const auto& in : forms) {
        const ParamSystem sys(in.special);
        Rng rng(mix(seed, in.id));
        const IMat3& adj = sys.adj_pi();
        for (int k = 0; k < samples; ++k) {
            const i64 s = rng.uniform(-1000000, 1000000), t = rng.uniform(-1000000, 1000000);
            const I128Vec3 q = sys.q(s, t);
            const std::array<i128, 3> mono{static_cast<i128>(s) * s, static_cast<i128>(s) * t, static_cast<i128>(t) * t};
            ++r.checks;
            for (int i = 0; i < 3; ++i) {
                i128 lhs = 0;
                for (int j = 0; j < 3; ++j) lhs = checked_add(lhs, checked_mul<i128>(adj[i][j], q[j]));
                if (lhs != checked_mul<i128>(sys.discriminant(), mono[i])) {
                    r.failures.push_back(describe(in) + ": adj(Pi) q != Delta (s^2,st,t^2) at (s,t) = (" +
                                         std::to_string(s) + "," + std::to_string(t) + ")");
                    break;
                }
            }
        }
    }
    return r;
}

BatteryResult battery_multiplicativity(const std::vector<BatteryInput>& forms, int pairs, std::uint64_t seed,
                                       const RhoFunction& rho_in)
{
    const RhoFunction rho = or_default(rho_in);
    BatteryResult r;
    r.name = "rho_multiplicativity";
    for (const auto& in : forms) {
        Rng rng(mix(seed, in.id) + 1);
        const ParamSystem sys(in.special);
        // coprime splits of divisors of lambda_max first (nonzero values), then random pairs;
        // mn stays small enough for the direct double loop
        std::vector<std::pair<i64, i64>> chosen;
        for (i64 d : divisors(sys.lambda_max())) {
            if (d > 1500) break;
            const auto pp = factorize(d);
            if (pp.size() < 2) continue;
            const i64 m = ipow(pp[0].p, pp[0].k);
            chosen.emplace_back(m, d / m);
            if (static_cast<int>(chosen.size()) >= pairs / 2) break;
        }
        while (static_cast<int>(chosen.size()) < pairs) {
            const i64 m = rng.uniform(1, 60);
            const i64 n = rng.uniform(1, 600 / m);
            if (gcd(m, n) == 1) chosen.emplace_back(m, n);
        }
        for (auto [m, n] : chosen) {
            ++r.checks;
            const i64 joint = rho(in.special, m * n);
            const i64 product = checked_mul(rho(in.special, m), rho(in.special, n));
            const i64 direct = rho_star_direct(in.special, m * n);
            if (joint != product || joint != direct)
                r.failures.push_back(describe(in) + ": (m,n) = (" + std::to_string(m) + "," + std::to_string(n) +
                                     "), rho*(mn) = " + std::to_string(joint) + ", rho*(m) rho*(n) = " +
                                     std::to_string(product) + ", direct = " + std::to_string(direct));
        }
    }
    return r;
}

BatteryResult battery_rho_support(const std::vector<BatteryInput>& forms, i64 limit, const RhoFunction& rho_in)
{
    const RhoFunction rho = or_default(rho_in);
    BatteryResult r;
    r.name = "rho_support_bound";
    for (const auto& in : forms) {
        const ParamSystem sys(in.special);
        const i64 g = in.special.gcd_be();
        for (i64 n = 1; n <= limit; ++n) {
            ++r.checks;
            const i64 v = rho(in.special, n);
            if (v > 0 && sys.lambda_max() % n != 0)
                r.failures.push_back(describe(in) + ": rho*(" + std::to_string(n) + ") = " + std::to_string(v) +
                                     " but n does not divide " + std::to_string(sys.lambda_max()));
            if (v > checked_mul(n, g))
                r.failures.push_back(describe(in) + ": rho*(" + std::to_string(n) + ") = " + std::to_string(v) +
                                     " exceeds n gcd(b,e)");
        }
    }
    return r;
}

BatteryResult battery_round_trip(const std::vector<BatteryInput>& forms, i64 radius)
{
    BatteryResult r;
    r.name = "parameter_round_trip";
    for (const auto& in : forms) {
        const ParamSystem sys(in.special);
        for_each_zero_in_box(in.special.form(), radius, [&](const IVec3& x) {
            if (gcd(x[0], x[1], x[2]) != 1) return;
            const ParameterOfPoint par = parameter_from_point(sys, x);
            if (par.exceptional) return;
            ++r.checks;
            const ParamPoint back = point_from_parameter(sys, par.parameter->first, par.parameter->second);
            const IVec3 neg{-x[0], -x[1], -x[2]};
            if (back.point != x && back.point != neg)
                r.failures.push_back(describe(in) + ": x = " + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
                                     std::to_string(x[2]) + " does not come back from its parameter");
        });
    }
    return r;
}

BatteryResult battery_oracle(const std::vector<CorpusForm>& forms, const std::vector<i64>& b_values, int threads)
{
    BatteryResult r;
    r.name = "param_equals_brute";
    std::vector<std::vector<std::string>> fails(forms.size());
    parallel_for(forms.size(), threads, [&](std::size_t i) {
        for (i64 b : b_values) {
            const i64 brute = count_N_brute(forms[i].form, IsometricNorm::sup(), b);
            const CountReport rep = count_N_param(forms[i].form, IsometricNorm::sup(), b);
            if (rep.n_param != brute)
                fails[i].push_back(forms[i].id + " " + to_string(forms[i].form) + ": B = " + std::to_string(b) +
                                   ", param = " + std::to_string(rep.n_param.value_or(-1)) +
                                   ", brute = " + std::to_string(brute));
        }
    });
    r.checks = static_cast<i64>(forms.size() * b_values.size());
    for (auto& f : fails)
        for (auto& s : f) r.failures.push_back(std::move(s));
    return r;
}

LatticeErrorSummary lattice_error_survey(const std::vector<BatteryInput>& forms, const std::vector<i64>& t_values,
                                         double volume_tol)
{
    LatticeErrorSummary out;
    for (const auto& in : forms) {
        const ParamRegion region(in.special, in.norm);
        const double vol = volume_V(region, volume_tol);
        std::vector<LatticeInstance> grid = lattice_grid(in.special, t_values);
        // residue classes without the divisibility condition as well
        for (i64 n : {2, 3, 5, 8})
            for (i64 t : t_values)
                for (auto [sg, tu] : std::vector<std::pair<i64, i64>>{{0, 1}, {1, 1}, {n - 1, n / 2}})
                    grid.push_back({Bound::integer(t), n, sg, tu});
        for (const auto& g : grid) {
            ++out.instances;
            const double ratio = lattice_error_ratio(region, vol, g.t, g.n, g.sigma, g.tau);
            if (ratio > out.max_ratio) {
                out.max_ratio = ratio;
                out.worst = describe(in) + ": T = " + to_string(g.t.num) + ", n = " + std::to_string(g.n) +
                            ", (sigma,tau) = (" + std::to_string(g.sigma) + "," + std::to_string(g.tau) + ")";
            }
        }
    }
    return out;
}

VerificationReport verify_identities(const std::vector<CorpusForm>& corpus, const VerifyOptions& o)
{
    if (o.b_max < 1 || o.b_max > 100) throw std::invalid_argument("verify_identities: B_max must lie in [1, 100]");
    std::vector<BatteryInput> inputs(corpus.size(), BatteryInput{"", SpecialConic{1, 0, 0, -1, 0}, IsometricNorm()});
    parallel_for(corpus.size(), o.threads, [&](std::size_t i) { inputs[i] = battery_input(corpus[i]); });

    VerificationReport rep;
    rep.batteries.resize(7);
    std::vector<std::function<void()>> jobs{
        [&] { rep.batteries[0] = battery_oracle(corpus, b_ladder(o.b_max), 1); },
        [&] { rep.batteries[1] = battery_decomposition(inputs, o.b_max, o.rho_override); },
        [&] { rep.batteries[2] = battery_inversion(inputs, o.b_max); },
        [&] { rep.batteries[3] = battery_adj(inputs, o.adj_samples, o.seed); },
        [&] { rep.batteries[4] = battery_multiplicativity(inputs, o.multiplicativity_pairs, o.seed, o.rho_override); },
        [&] { rep.batteries[5] = battery_rho_support(inputs, o.rho_support_limit, o.rho_override); },
        [&] { rep.batteries[6] = battery_round_trip(inputs, o.round_trip_radius); },
    };
    parallel_for(jobs.size(), o.threads, [&](std::size_t i) { jobs[i](); });
    return rep;
}

// ---------------------------------------------------------------------- sweep

std::vector<SweepRow> run_sweep(const std::string& form_id, const TernaryQuadraticForm& q, const IsometricNorm& norm,
                                const std::vector<i64>& b_values, std::optional<double> c_q, double tol)
{
    std::vector<SweepRow> rows;
    if (b_values.empty()) return rows;
    const double c = c_q ? *c_q : peyre_constant(q, norm, tol).c_q->value;
    const double k0 = to_double(norm.k0());
    const double h5 = std::pow(static_cast<double>(height(q)), 5);
    for (i64 b : b_values) {
        const CountReport rep = count_N_param(q, norm, b);
        SweepRow row;
        row.form_id = form_id;
        row.b = b;
        row.n = *rep.n_param;
        row.cb = c * static_cast<double>(b);
        row.abs_err = std::fabs(static_cast<double>(row.n) - row.cb);
        const double bk = static_cast<double>(b) * k0;
        row.norm_err = row.abs_err / (std::sqrt(bk) * std::log(bk) * h5);
        row.elapsed_ms = rep.elapsed_ms_param;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << kSweepHeader << "\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%lld,%lld,%.6f,%.6f,%.6e,%.3f\n", r.form_id.c_str(),
                      static_cast<long long>(r.b), static_cast<long long>(r.n), r.cb, r.abs_err, r.norm_err,
                      r.elapsed_ms);
        out << buf;
    }
    return out.str();
}

// ----------------------------------------------------------------------- JSON

Json to_json(const TernaryQuadraticForm& q)
{
    return Json{{"c200", q.c200}, {"c110", q.c110}, {"c101", q.c101},
                {"c020", q.c020}, {"c011", q.c011}, {"c002", q.c002}};
}

Json to_json(const SpecialConic& s) { return Json{{"a", s.a}, {"b", s.b}, {"d", s.d}, {"e", s.e}, {"f", s.f}}; }

Json to_json(const IMat3& m)
{
    Json out = Json::array();
    for (const auto& row : m) out.push_back(Json(row));
    return out;
}

Json to_json(const IsometricNorm& n)
{
    Json g = Json::array();
    for (int i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 3; ++j) {
            const Rational e = n.entry(i, j);
            if (denominator(e) == 1)
                row.push_back(static_cast<i64>(numerator(e)));
            else
                row.push_back(to_string(e));
        }
        g.push_back(row);
    }
    return Json{{"g", g}};
}

Json to_json(const CorpusForm& f)
{
    Json j{{"id", f.id}, {"form", to_json(f.form)}};
    if (f.special) j["special"] = to_json(*f.special);
    if (f.base) j["base"] = to_json(*f.base);
    if (f.applied) j["transform"] = to_json(f.applied->matrix());
    return j;
}

namespace {

Json rationals_json(const std::vector<std::pair<i64, Rational>>& list)
{
    Json out = Json::array();
    for (const auto& [p, v] : list) out.push_back(Json{{"p", p}, {"value", to_string(v)}, {"approx", to_double(v)}});
    return out;
}

Json real_json(const RealValue& v) { return Json{{"value", v.value}, {"error", v.error}}; }

}  // namespace

Json to_json(const DensityReport& r)
{
    Json j{{"spec_version", kSpecVersion}};
    if (r.sigma_infinity)
        j["sigma_infinity"] = Json{{"value", r.sigma_infinity->value},
                                   {"error", r.sigma_infinity->error},
                                   {"levels", r.sigma_infinity->levels},
                                   {"diagnostic", r.sigma_infinity->diagnostic}};
    if (!r.sigma_p_list.empty()) j["sigma_p"] = rationals_json(r.sigma_p_list);
    if (!r.tail_description.empty()) j["tail"] = r.tail_description;
    if (r.c_q) j["c_Q"] = real_json(*r.c_q);
    if (r.volume_v) j["volume_V"] = *r.volume_v;
    if (!r.sigma_p_prime_list.empty() || r.c_prime_q) j["sigma_p_prime"] = rationals_json(r.sigma_p_prime_list);
    if (r.euler)
        j["euler_check"] = Json{{"closed_form", r.euler->closed_form}, {"double_sum", r.euler->double_sum},
                                {"tail_bound", r.euler->tail_bound},   {"terms", r.euler->terms},
                                {"ok", r.euler->ok}};
    if (r.c_prime_q) j["c_prime_Q"] = real_json(*r.c_prime_q);
    if (r.ratio) j["ratio"] = *r.ratio;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

Json to_json(const CountReport& r)
{
    Json j{{"spec_version", kSpecVersion}, {"B", r.b}};
    if (r.n_brute) j["N_brute"] = *r.n_brute;
    if (r.n_param) j["N_param"] = *r.n_param;
    if (r.script_n) j["script_N"] = *r.script_n;
    if (r.n_brute && r.n_param) j["agree"] = *r.n_brute == *r.n_param;
    Json corr = Json::array();
    for (const auto& c : r.corrections) corr.push_back(Json{{"label", c.label}, {"vectors", c.vectors}});
    j["corrections"] = corr;
    if (r.n_brute) j["elapsed_ms_brute"] = r.elapsed_ms_brute;
    if (r.n_param) j["elapsed_ms_param"] = r.elapsed_ms_param;
    if (r.zero) j["zero"] = Json(*r.zero);
    if (r.transform_matrix) j["transform"] = to_json(r.transform_matrix->matrix());
    if (r.transformed_form) j["transformed_form"] = to_json(*r.transformed_form);
    return j;
}

Json to_json(const VerificationReport& r)
{
    Json bats = Json::array();
    for (const auto& b : r.batteries)
        bats.push_back(Json{{"name", b.name}, {"checks", b.checks}, {"passed", b.passed()}, {"failures", b.failures}});
    return Json{{"spec_version", kSpecVersion},
                {"passed", r.passed()},
                {"failure_count", r.failure_count()},
                {"batteries", bats}};
}

namespace {

i64 coefficient(const Json& j, const char* key)
{
    if (!j.contains(key)) return 0;
    const Json& v = j.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string("coefficient ") + key + " must be an integer");
    return v.get<i64>();
}

bool has_any(const Json& j, std::initializer_list<const char*> keys)
{
    for (const char* k : keys)
        if (j.contains(k)) return true;
    return false;
}

}  // namespace

std::optional<SpecialConic> special_from_json(const Json& j)
{
    if (!j.is_object()) throw std::invalid_argument("form JSON must be an object");
    if (j.contains("form")) return special_from_json(j.at("form"));
    if (has_any(j, {"a", "b", "d", "e", "f"}))
        return SpecialConic{coefficient(j, "a"), coefficient(j, "b"), coefficient(j, "d"), coefficient(j, "e"),
                            coefficient(j, "f")};
    return as_special(form_from_json(j));
}

TernaryQuadraticForm form_from_json(const Json& j)
{
    if (!j.is_object()) throw std::invalid_argument("form JSON must be an object");
    if (j.contains("form")) return form_from_json(j.at("form"));
    if (has_any(j, {"c200", "c110", "c101", "c020", "c011", "c002"}))
        return TernaryQuadraticForm(coefficient(j, "c200"), coefficient(j, "c110"), coefficient(j, "c101"),
                                    coefficient(j, "c020"), coefficient(j, "c011"), coefficient(j, "c002"));
    if (has_any(j, {"a", "b", "d", "e", "f"})) return special_from_json(j)->form();
    throw std::invalid_argument("form JSON needs c200..c002 or a,b,d,e,f");
}

IsometricNorm norm_from_json(const Json& j)
{
    if (j.is_null()) return IsometricNorm::sup();
    if (!j.is_object()) throw std::invalid_argument("norm JSON must be an object");
    if (j.contains("norm")) return norm_from_json(j.at("norm"));
    if (!j.contains("g")) return IsometricNorm::sup();
    const Json& g = j.at("g");
    if (!g.is_array() || g.size() != 3) throw std::invalid_argument("norm g must be a 3x3 array");
    std::array<std::array<Rational, 3>, 3> m{};
    for (int i = 0; i < 3; ++i) {
        if (!g[i].is_array() || g[i].size() != 3) throw std::invalid_argument("norm g must be a 3x3 array");
        for (int k = 0; k < 3; ++k) {
            const Json& e = g[i][k];
            if (e.is_number_integer())
                m[i][k] = Rational(e.get<i64>());
            else if (e.is_string())
                m[i][k] = parse_rational(e.get<std::string>());
            else
                throw std::invalid_argument("norm entries must be integers or \"p/q\" strings");
        }
    }
    return IsometricNorm::from_rationals(m);
}

}  // namespace conics
