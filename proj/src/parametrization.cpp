#include "conics/parametrization.hpp"

#include <algorithm>

namespace conics {

ParamSystem::ParamSystem(const SpecialConic& s) : source_(s)
{
    pi_ = {{{s.b, s.e, 0}, {-s.a, -s.d, -s.f}, {0, s.b, s.e}}};
    adj_pi_ = adjugate(pi_);
    delta_ = narrow(discriminant_special(s));
    if (determinant(pi_) != delta_) throw std::logic_error("det(Pi) != Delta: internal inconsistency");
    lambda_max_ = abs_val(delta_) / s.gcd_be();
}

i128 ParamSystem::linear(i128 s, i128 t) const
{
    return checked_add(checked_mul<i128>(source_.b, s), checked_mul<i128>(source_.e, t));
}

i128 ParamSystem::quadratic(i128 s, i128 t) const
{
    i128 r = checked_mul(checked_mul<i128>(source_.a, s), s);
    r = checked_add(r, checked_mul(checked_mul<i128>(source_.d, s), t));
    return checked_add(r, checked_mul(checked_mul<i128>(source_.f, t), t));
}

I128Vec3 ParamSystem::q(i128 s, i128 t) const
{
    const i128 l = linear(s, t);
    return {checked_mul(s, l), -quadratic(s, t), checked_mul(t, l)};
}

i128 ParamSystem::lambda(i128 s, i128 t) const
{
    const I128Vec3 v = q(s, t);
    return gcd(gcd(v[0], v[1]), v[2]);
}

std::pair<i64, i64> ParamSystem::tangent_parameter() const
{
    // L(s,t) = b s + e t = 0  <=>  (s,t) ~ (e, -b)
    const i64 g = source_.gcd_be();
    i64 s = source_.e / g, t = -source_.b / g;
    if (t < 0 || (t == 0 && s < 0)) {
        s = -s;
        t = -t;
    }
    return {s, t};
}

ParamSystem build_param_system(const SpecialConic& s) { return ParamSystem(s); }

ParamPoint point_from_parameter(const ParamSystem& p, i64 s, i64 t)
{
    if (s == 0 && t == 0) throw std::invalid_argument("parameter (0,0) is not a line");
    if (gcd(s, t) != 1) throw std::invalid_argument("parameter (s,t) must be coprime");
    const I128Vec3 v = p.q(s, t);
    const i128 lam = gcd(gcd(v[0], v[1]), v[2]);
    if (lam == 0) throw std::domain_error("degenerate parameter: q(s,t) = 0");
    ParamPoint out{s, t, narrow(lam), {narrow(v[0] / lam), narrow(v[1] / lam), narrow(v[2] / lam)}, false};
    out.exceptional = out.point[0] == 0 && out.point[2] == 0;
    return out;
}

ParameterOfPoint parameter_from_point(const ParamSystem& p, const IVec3& x)
{
    if (evaluate(p.source().form(), x) != 0) throw std::invalid_argument("parameter_from_point: x is not a zero");
    if (gcd(x[0], x[1], x[2]) != 1) throw std::invalid_argument("parameter_from_point: x is not primitive");
    ParameterOfPoint out;
    if (x[0] == 0 && x[2] == 0) {
        out.exceptional = true;
        return out;
    }
    const i64 g = gcd(x[0], x[2]);
    i64 s = x[0] / g, t = x[2] / g;
    if (t < 0 || (t == 0 && s < 0)) {
        s = -s;
        t = -t;
    }
    out.parameter = std::make_pair(s, t);
    return out;
}

std::vector<i64> solve_linear_congruence(i64 c, i64 d, i64 m)
{
    c = mod(c, m);
    d = mod(d, m);
    const i64 g = gcd(c, m);
    std::vector<i64> out;
    if (d % g != 0) return out;
    const i64 step = m / g;
    const i64 x0 = step == 1 ? 0 : narrow(mod(static_cast<i128>(d / g) * mod_inverse(c / g, step), static_cast<i128>(step)));
    out.reserve(static_cast<std::size_t>(g));
    for (i64 j = 0; j < g; ++j) out.push_back(x0 + j * step);
    return out;
}

namespace {

// Classes mod p^k: (r t, t) with t a unit and L(r,1) = g(r,1) = 0, plus
// (s, u s) with s a unit, p | u and L(1,u) = g(1,u) = 0.
struct PrimePowerRoots {
    std::vector<i64> r;  // ratios s/t
    std::vector<i64> u;  // ratios t/s with p | u
};

PrimePowerRoots prime_power_roots(const SpecialConic& sc, i64 p, int k)
{
    const i64 m = ipow(p, k);
    PrimePowerRoots out;
    auto g_mod = [&](i64 s, i64 t) {
        i128 v = static_cast<i128>(sc.a) * s % m * s + static_cast<i128>(sc.d) * s % m * t + static_cast<i128>(sc.f) * t % m * t;
        return mod(v, static_cast<i128>(m));
    };
    for (i64 r : solve_linear_congruence(sc.b, -sc.e, m))
        if (g_mod(r, 1) == 0) out.r.push_back(r);
    for (i64 u : solve_linear_congruence(sc.e, -sc.b, m))
        if (u % p == 0 && g_mod(1, u) == 0) out.u.push_back(u);
    return out;
}

std::vector<std::pair<i64, i64>> prime_power_classes(const SpecialConic& sc, i64 p, int k)
{
    const i64 m = ipow(p, k);
    const PrimePowerRoots roots = prime_power_roots(sc, p, k);
    std::vector<std::pair<i64, i64>> out;
    for (i64 unit = 1; unit < m; ++unit) {
        if (unit % p == 0) continue;
        for (i64 r : roots.r) out.emplace_back(narrow(static_cast<i128>(r) * unit % m), unit);
        for (i64 u : roots.u) out.emplace_back(unit, narrow(static_cast<i128>(u) * unit % m));
    }
    return out;
}

}  // namespace

i64 rho_star_prime_power(const SpecialConic& s, i64 p, int k)
{
    if (k == 0) return 1;
    const i64 m = ipow(p, k);
    const PrimePowerRoots roots = prime_power_roots(s, p, k);
    const i64 phi = m - m / p;
    return checked_mul(phi, static_cast<i64>(roots.r.size() + roots.u.size()));
}

i64 rho_star(const SpecialConic& s, i64 n)
{
    if (n < 1) throw std::invalid_argument("rho_star: n must be positive");
    i64 r = 1;
    for (auto [p, k] : factorize(n)) {
        r = checked_mul(r, rho_star_prime_power(s, p, k));
        if (r == 0) return 0;
    }
    return r;
}

i64 rho_star_direct(const SpecialConic& sc, i64 n)
{
    if (n < 1) throw std::invalid_argument("rho_star_direct: n must be positive");
    if (n > kRhoDirectCap) throw std::length_error("rho_star_direct: n exceeds the enumeration cap");
    const i64 b = mod(sc.b, n), e = mod(sc.e, n);
    i64 count = 0;
    for (i64 s = 0; s < n; ++s) {
        i64 l = b * s % n;  // L(s, t) mod n, stepped in t
        for (i64 t = 0; t < n; ++t, l = (l + e) % n) {
            if (l != 0) continue;
            const i128 g = mod(static_cast<i128>(sc.a) * s % n * s + static_cast<i128>(sc.d) * s % n * t +
                                   static_cast<i128>(sc.f) * t % n * t,
                               static_cast<i128>(n));
            if (g == 0 && gcd(gcd(s, t), n) == 1) ++count;
        }
    }
    return count;
}

std::vector<std::pair<i64, i64>> residue_classes(const SpecialConic& s, i64 n)
{
    if (n < 1) throw std::invalid_argument("residue_classes: n must be positive");
    std::vector<std::pair<i64, i64>> acc{{0, 0}};
    i64 modulus = 1;
    for (auto [p, k] : factorize(n)) {
        const i64 m = ipow(p, k);
        const auto local = prime_power_classes(s, p, k);
        if (local.empty()) return {};
        // CRT: x = a mod modulus, x = b mod m
        const i64 inv = mod_inverse(mod(modulus, m), m);
        const i64 next = checked_mul(modulus, m);
        std::vector<std::pair<i64, i64>> merged;
        merged.reserve(acc.size() * local.size());
        auto crt = [&](i64 a, i64 b) {
            i128 h = mod(static_cast<i128>(b - a) * inv, static_cast<i128>(m));
            return narrow(mod(static_cast<i128>(a) + h * modulus, static_cast<i128>(next)));
        };
        for (auto [s0, t0] : acc)
            for (auto [s1, t1] : local) merged.emplace_back(crt(s0, s1), crt(t0, t1));
        acc = std::move(merged);
        modulus = next;
    }
    std::sort(acc.begin(), acc.end());
    return acc;
}

}  // namespace conics
