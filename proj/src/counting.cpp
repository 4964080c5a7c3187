#include "conics/counting.hpp"

#include <unordered_map>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "conics/unimodular.hpp"

namespace conics {

namespace {

using Interval = std::pair<long double, long double>;
constexpr long double kInf = std::numeric_limits<long double>::infinity();

// {s : |alpha s^2 + beta s + gamma| <= w}, sorted and disjoint.
std::vector<Interval> band(long double alpha, long double beta, long double gamma, long double w)
{
    if (alpha < 0) {
        alpha = -alpha;
        beta = -beta;
        gamma = -gamma;
    }
    if (alpha == 0) {
        if (beta == 0) {
            if (std::fabs(gamma) <= w) return {{-kInf, kInf}};
            return {};
        }
        long double lo = (-w - gamma) / beta, hi = (w - gamma) / beta;
        if (lo > hi) std::swap(lo, hi);
        return {{lo, hi}};
    }
    // Stable roots of alpha s^2 + beta s + c = 0.
    auto roots = [&](long double c, long double& r1, long double& r2) {
        const long double disc = beta * beta - 4 * alpha * c;
        if (disc < 0) return false;
        const long double sq = std::sqrt(disc);
        const long double qq = -0.5L * (beta + (beta >= 0 ? sq : -sq));
        if (qq == 0) {
            r1 = r2 = 0;
        } else {
            r1 = qq / alpha;
            r2 = c / qq;
        }
        if (r1 > r2) std::swap(r1, r2);
        return true;
    };
    long double r1 = 0, r2 = 0;
    if (!roots(gamma - w, r1, r2)) return {};
    long double u1 = 0, u2 = 0;
    if (!roots(gamma + w, u1, u2) || u1 == u2) return {{r1, r2}};
    u1 = std::max(u1, r1);
    u2 = std::min(u2, r2);
    return {{r1, u1}, {u2, r2}};
}

std::vector<Interval> intersect(const std::vector<Interval>& a, const std::vector<Interval>& b)
{
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const long double lo = std::max(a[i].first, b[j].first);
        const long double hi = std::min(a[i].second, b[j].second);
        if (lo <= hi) out.emplace_back(lo, hi);
        if (a[i].second < b[j].second)
            ++i;
        else
            ++j;
    }
    return out;
}

// Binary gcd on magnitudes; falls back to i128 Euclid when out of range.
i128 fast_gcd(i128 a, i128 b)
{
    a = abs_val(a);
    b = abs_val(b);
    constexpr i128 lim = static_cast<i128>(std::numeric_limits<std::uint64_t>::max());
    if (a > lim || b > lim) return gcd(a, b);
    auto x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
    if (x == 0) return static_cast<i128>(y);
    if (y == 0) return static_cast<i128>(x);
    const int shift = __builtin_ctzll(x | y);
    x >>= __builtin_ctzll(x);
    while (y != 0) {
        y >>= __builtin_ctzll(y);
        if (x > y) std::swap(x, y);
        y -= x;
    }
    return static_cast<i128>(x << shift);
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ParamRegion::ParamRegion(const SpecialConic& s, const IsometricNorm& norm)
    : system_(s), norm_(norm), k0_(norm.k0()), adj_sup_(sup_norm(system_.adj_pi())), height_(conics::height(s.form()))
{
    const IMat3 c = multiply(norm_.numerator(), system_.pi());
    for (int i = 0; i < 3; ++i)
        rows_[i] = {static_cast<long double>(c[i][0]), static_cast<long double>(c[i][1]),
                    static_cast<long double>(c[i][2])};
}

Rational ParamRegion::box_radius_squared(const Bound& t) const
{
    const Rational bound(BigInt(to_string(t.num)), BigInt(to_string(t.den)));
    return Rational(3 * adj_sup_) * (k0_ - 1) * bound / Rational(abs_val(system_.discriminant()));
}

double ParamRegion::box_radius(const Bound& t) const { return std::sqrt(to_double(box_radius_squared(t))); }

i64 ParamRegion::box_radius_floor(const Bound& t) const
{
    const Rational r2 = box_radius_squared(t);
    const BigInt fl = boost::multiprecision::numerator(r2) / boost::multiprecision::denominator(r2);
    return narrow(isqrt(fl));
}

std::vector<Interval> ParamRegion::s_intervals(long double t, long double w) const
{
    std::vector<Interval> acc{{-kInf, kInf}};
    for (const Row& r : rows_) {
        acc = intersect(acc, band(r.c_ss, r.c_st * t, r.c_tt * t * t, w));
        if (acc.empty()) break;
    }
    return acc;
}

std::vector<std::pair<i64, i64>> ParamRegion::s_ranges(i64 t, const Bound& bound, i64 clip) const
{
    const long double w = static_cast<long double>(bound.num) / static_cast<long double>(bound.den) *
                          static_cast<long double>(norm_.denominator());
    std::vector<std::pair<i64, i64>> out;
    for (auto [lo, hi] : s_intervals(static_cast<long double>(t), w)) {
        const long double pad_lo = 1 + 1e-9L * std::fabs(std::isfinite(lo) ? lo : 0);
        const long double pad_hi = 1 + 1e-9L * std::fabs(std::isfinite(hi) ? hi : 0);
        const long double flo = std::max(lo - pad_lo, -static_cast<long double>(clip));
        const long double fhi = std::min(hi + pad_hi, static_cast<long double>(clip));
        if (flo > fhi) continue;
        const auto ilo = static_cast<i64>(std::ceil(flo));
        const auto ihi = static_cast<i64>(std::floor(fhi));
        if (ilo > ihi) continue;
        if (!out.empty() && ilo <= out.back().second + 1)
            out.back().second = std::max(out.back().second, ihi);
        else
            out.emplace_back(ilo, ihi);
    }
    return out;
}

double ParamRegion::s_length(double t, double bound) const
{
    const long double w = static_cast<long double>(bound) * static_cast<long double>(norm_.denominator());
    long double len = 0;
    for (auto [lo, hi] : s_intervals(t, w)) {
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::logic_error("region V is unbounded");
        len += hi - lo;
    }
    return static_cast<double>(len);
}

double ParamRegion::t_extent(double bound) const
{
    const long double w = static_cast<long double>(bound) * static_cast<long double>(norm_.denominator());
    long double lo = 0, hi = box_radius(Bound{static_cast<i128>(std::ceil(bound)), 1}) + 1;
    for (int it = 0; it < 200 && hi - lo > 1e-15L * hi; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (s_intervals(mid, w).empty())
            hi = mid;
        else
            lo = mid;
    }
    return static_cast<double>(hi);
}

void ParamRegion::for_each_point(const Bound& bound, i64 n, i64 sigma, i64 tau,
                                 const std::function<void(i64, i64, const I128Vec3&)>& visit) const
{
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    const i64 r = box_radius_floor(bound);
    const double extent = t_extent(bound.value());
    const i64 t_hi = std::min<i64>(r, static_cast<i64>(std::floor(extent * (1 + 1e-9))) + 1);
    const i64 t0 = 1 + mod(tau - 1, n);
    for (i64 t = t0; t <= t_hi; t += n) {
        for (auto [lo, hi] : s_ranges(t, bound, r + 1)) {
            for (i64 s = lo + mod(sigma - lo, n); s <= hi; s += n) {
                const I128Vec3 qv = system_.q(s, t);
                if (!norm_.within(qv, bound)) continue;
                if (abs_val(s) > r) throw std::logic_error("point of V outside the rigorous bounding box");
                visit(s, t, qv);
            }
        }
    }
}

void ParamRegion::for_each_point(const Bound& bound, i64 n, const std::vector<std::pair<i64, i64>>& classes,
                                 const std::function<void(i64, i64, const I128Vec3&)>& visit) const
{
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    if (classes.empty()) return;
    const i64 r = box_radius_floor(bound);
    const double extent = t_extent(bound.value());
    const i64 t_hi = std::min<i64>(r, static_cast<i64>(std::floor(extent * (1 + 1e-9))) + 1);
    // sigma values bucketed by tau mod n
    std::unordered_map<i64, std::vector<i64>> by_tau;
    for (auto [sigma, tau] : classes) by_tau[mod(tau, n)].push_back(sigma);
    for (i64 t = 1; t <= t_hi; ++t) {
        const auto it = by_tau.find(t % n);
        if (it == by_tau.end()) continue;
        for (auto [lo, hi] : s_ranges(t, bound, r + 1))
            for (i64 sigma : it->second)
                for (i64 s = lo + mod(sigma - lo, n); s <= hi; s += n) {
                    const I128Vec3 qv = system_.q(s, t);
                    if (!norm_.within(qv, bound)) continue;
                    if (abs_val(s) > r) throw std::logic_error("point of V outside the rigorous bounding box");
                    visit(s, t, qv);
                }
    }
}

i64 count_N_brute(const TernaryQuadraticForm& q, const IsometricNorm& norm, i64 b, i64 cap)
{
    if (b < 1) throw std::invalid_argument("B must be >= 1");
    if (b > cap) throw std::length_error("count_N_brute: B exceeds the brute-force cap");
    const Rational radius = (norm.k0() - 1) * b;
    const i64 r = narrow(BigInt(boost::multiprecision::numerator(radius) / boost::multiprecision::denominator(radius)));
    const Bound bound = Bound::integer(b);
    i64 count = 0;
    for_each_zero_in_box(q, r, [&](const IVec3& x) {
        if (gcd(x[0], x[1], x[2]) == 1 && norm.within(x, bound)) ++count;
    });
    return count;
}

double bounding_box(const SpecialConic& s, const IsometricNorm& norm, const Bound& t)
{
    return ParamRegion(s, norm).box_radius(t);
}

double volume_V(const ParamRegion& region, double tol)
{
    if (!(tol > 0 && tol <= 0.1)) throw std::invalid_argument("volume_V: tol must lie in (0, 0.1]");
    const double extent = region.t_extent(1.0);
    auto midpoint = [&](int n) {
        const double h = extent / n;
        double sum = 0;
        for (int i = 0; i < n; ++i) sum += region.s_length((i + 0.5) * h, 1.0);
        return sum * h;
    };
    int n = 64;
    double prev = midpoint(n);
    for (int refinement = 0; refinement < 14; ++refinement) {
        n *= 2;
        const double cur = midpoint(n);
        if (std::fabs(cur - prev) < 0.25 * tol * std::fabs(cur)) return cur;
        prev = cur;
    }
    throw std::runtime_error("volume_V: no convergence after 14 refinements");
}

i64 count_M(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau)
{
    i64 count = 0;
    region.for_each_point(t, n, sigma, tau, [&](i64, i64, const I128Vec3&) { ++count; });
    return count;
}

i64 count_M_star(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau)
{
    i64 count = 0;
    region.for_each_point(t, n, sigma, tau, [&](i64 s, i64 tt, const I128Vec3&) {
        if (fast_gcd(s, tt) == 1) ++count;
    });
    return count;
}

i64 count_N_script(const ParamRegion& region, i64 b)
{
    if (b < 1) throw std::invalid_argument("B must be >= 1");
    const Bound outer = Bound::integer(checked_mul(region.system().lambda_max(), b));
    const Bound plain = Bound::integer(b);
    const IsometricNorm& norm = region.norm();
    i64 count = 0;
    region.for_each_point(outer, 1, 0, 0, [&](i64 s, i64 t, const I128Vec3& qv) {
        if (fast_gcd(s, t) != 1) return;
        if (norm.within(qv, plain)) {
            ++count;
            return;
        }
        // q = (s L, -g, t L) with t >= 1, so lambda = gcd(L, g).
        const i128 lam = fast_gcd(qv[2] / t, qv[1]);
        if (norm.within(qv, Bound::integer(checked_mul<i128>(lam, b)))) ++count;
    });
    return count;
}

i64 script_n_by_decomposition(const ParamRegion& region, i64 b)
{
    const SpecialConic& s = region.system().source();
    i64 total = 0;
    for (i64 n : divisors(region.system().lambda_max())) {
        const auto classes = residue_classes(s, n);
        if (classes.empty()) continue;
        for (i64 k : divisors(n)) {
            const int mu = mobius(k);
            if (mu == 0) continue;
            const i64 lam = n / k;
            const Bound bound = Bound::integer(checked_mul(b, lam));
            i64 inner = 0;
            region.for_each_point(bound, n, classes, [&](i64 sv, i64 tv, const I128Vec3&) {
                if (fast_gcd(sv, tv) == 1) ++inner;
            });
            total += mu * inner;
        }
    }
    return total;
}

i64 m_star_by_inversion(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau)
{
    if (gcd(sigma, tau, n) != 1) throw std::invalid_argument("inversion requires gcd(sigma, tau, n) = 1");
    const I128Vec3 qv = region.system().q(sigma, tau);
    for (i128 v : qv)
        if (v % n != 0) throw std::invalid_argument("inversion requires n | q(sigma, tau)");
    // m^2 n <= 2 T K0
    const Rational limit = Rational(2) * Rational(BigInt(to_string(t.num)), BigInt(to_string(t.den))) * region.k0();
    i64 total = 0;
    for (i64 m = 1; Rational(checked_mul(checked_mul(m, m), n)) <= limit; ++m) {
        if (gcd(m, n) != 1) continue;
        const int mu = mobius(m);
        if (mu == 0) continue;
        const i64 inv = mod_inverse(m, n);
        const i64 s2 = narrow(mod(static_cast<i128>(inv) * sigma, static_cast<i128>(n)));
        const i64 t2 = narrow(mod(static_cast<i128>(inv) * tau, static_cast<i128>(n)));
        total += mu * count_M(region, t.divided_by_square(m), n, s2, t2);
    }
    return total;
}

double lattice_error_ratio(const ParamRegion& region, double volume, const Bound& t, i64 n, i64 sigma, i64 tau)
{
    const double m = static_cast<double>(count_M(region, t, n, sigma, tau));
    const double tv = t.value();
    const double expected = volume * tv / (static_cast<double>(n) * static_cast<double>(n));
    const double scale = 1 + std::sqrt(to_double(region.k0()) * tv) / static_cast<double>(n) *
                                 static_cast<double>(region.height()) /
                                 std::sqrt(std::fabs(static_cast<double>(region.system().discriminant())));
    return std::fabs(m - expected) / scale;
}

SpecialReduction reduce_to_special(const TernaryQuadraticForm& q, const IsometricNorm& norm, std::optional<i64> zero_cap)
{
    if (auto special = as_special(q)) return {{0, 1, 0}, UnimodularMatrix::identity(), *special, norm};
    const ZeroSearchResult found = zero_cap ? find_primitive_zero(q, *zero_cap) : find_primitive_zero(q);
    if (!found.zero) throw std::runtime_error("count_N_param: " + found.message());
    const IVec3 xi = found.zero->xi;
    const UnimodularMatrix m = complete_to_sl3(xi);
    const auto special = as_special(transform(q, m));
    if (!special) throw std::logic_error("transformed form lacks a zero at (0,1,0)");
    return {xi, m, *special, norm.compose_with_matrix(m)};
}

CountReport count_N_param(const TernaryQuadraticForm& q, const IsometricNorm& norm, i64 b, std::optional<i64> zero_cap)
{
    if (b < 1) throw std::invalid_argument("B must be >= 1");
    const auto start = std::chrono::steady_clock::now();
    CountReport report;
    report.b = b;
    const SpecialReduction red = reduce_to_special(q, norm, zero_cap);
    report.zero = red.zero;
    report.transform_matrix = red.m;
    report.transformed_form = red.special.form();

    const ParamRegion region(red.special, red.norm);
    const ParamSystem& sys = region.system();
    const i64 script = count_N_script(region, b);
    report.script_n = script;

    const Bound bound = Bound::integer(b);
    i64 total = kVectorsPerParameter * script;
    report.corrections.push_back({"parameters with t > 0 (x" + std::to_string(kVectorsPerParameter) + " vectors)",
                                  total});

    const auto [ts, tt] = sys.tangent_parameter();
    if (tt > 0) {
        const ParamPoint tangent = point_from_parameter(sys, ts, tt);
        if (red.norm.within(tangent.point, bound)) {
            report.corrections.push_back({"tangent parameter (" + std::to_string(ts) + "," + std::to_string(tt) +
                                              ") maps to the base point",
                                          -kVectorsPerParameter});
            total -= kVectorsPerParameter;
        }
    } else {
        report.corrections.push_back({"tangent parameter is (1,0); no t > 0 adjustment", 0});
    }
    if (!(ts == 1 && tt == 0)) {
        const ParamPoint horizontal = point_from_parameter(sys, 1, 0);
        if (red.norm.within(horizontal.point, bound)) {
            report.corrections.push_back({"parameter (1,0) with t = 0", kVectorsPerParameter});
            total += kVectorsPerParameter;
        }
    }
    if (red.norm.within(IVec3{0, 1, 0}, bound)) {
        report.corrections.push_back({"base point +-xi", 2});
        total += 2;
    }
    report.n_param = total;
    report.elapsed_ms_param = elapsed_ms(start);
    return report;
}

}  // namespace conics
