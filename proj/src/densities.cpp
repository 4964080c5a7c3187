#include "conics/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "conics/counting.hpp"
#include "conics/parametrization.hpp"

namespace conics {

namespace {

void require_prime(i64 p, const char* who)
{
    if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
}

BigInt big_pow(i64 p, int e)
{
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

int valuation_big(const BigInt& v, i64 p) { return v == 0 ? std::numeric_limits<int>::max() : valuation(v, p); }

// ---------------------------------------------------------------- Hensel tree

constexpr i64 kHenselBudget = 50'000'000;

struct HenselTree {
    IMat3 a;  // doubled Gram
    TernaryQuadraticForm q;
    i64 p;
    i64 nodes = 0;

    HenselTree(const TernaryQuadraticForm& form, i64 prime) : a(gram_doubled(form)), q(form), p(prime) {}

    [[nodiscard]] i128 value(const std::array<i128, 3>& x) const
    {
        const std::array<i64, 6> c = q.coefficients();
        i128 r = checked_mul(checked_mul<i128>(c[0], x[0]), x[0]);
        r = checked_add(r, checked_mul(checked_mul<i128>(c[1], x[0]), x[1]));
        r = checked_add(r, checked_mul(checked_mul<i128>(c[2], x[0]), x[2]));
        r = checked_add(r, checked_mul(checked_mul<i128>(c[3], x[1]), x[1]));
        r = checked_add(r, checked_mul(checked_mul<i128>(c[4], x[1]), x[2]));
        return checked_add(r, checked_mul(checked_mul<i128>(c[5], x[2]), x[2]));
    }

    // min_i v_p((A x)_i mod p^k), capped at k
    [[nodiscard]] int gradient_valuation(const std::array<i128, 3>& x, i128 pk, int k) const
    {
        int g = k;
        for (int i = 0; i < 3; ++i) {
            i128 v = 0;
            for (int j = 0; j < 3; ++j) v = checked_add(v, checked_mul<i128>(a[i][j], x[j]));
            v = mod(v, pk);
            if (v == 0) continue;
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            g = std::min(g, e);
        }
        return g;
    }

    void tick()
    {
        if (++nodes > kHenselBudget) throw std::runtime_error("Hensel tree exceeded its node budget");
    }

    template <typename Leaf>
    void walk(std::array<i128, 3> x, int k, i128 pk, int depth_limit, const Leaf& leaf)
    {
        tick();
        if (mod(value(x), pk) != 0) return;
        const int g = gradient_valuation(x, pk, k);
        if (leaf(x, k, pk, g)) return;
        if (k >= depth_limit) throw std::runtime_error("Hensel tree did not close within its depth limit");
        const i128 next = checked_mul(pk, static_cast<i128>(p));
        for (i64 y0 = 0; y0 < p; ++y0)
            for (i64 y1 = 0; y1 < p; ++y1)
                for (i64 y2 = 0; y2 < p; ++y2)
                    walk({x[0] + pk * y0, x[1] + pk * y1, x[2] + pk * y2}, k + 1, next, depth_limit, leaf);
    }

    template <typename Leaf>
    void walk_roots(int depth_limit, const Leaf& leaf)
    {
        for (i64 x0 = 0; x0 < p; ++x0)
            for (i64 x1 = 0; x1 < p; ++x1)
                for (i64 x2 = 0; x2 < p; ++x2)
                    if (x0 || x1 || x2) walk({x0, x1, x2}, 1, p, depth_limit, leaf);
    }
};

int v_p_det(const TernaryQuadraticForm& q, i64 p)
{
    return valuation(BigInt(to_string(gram_determinant(q))), p);
}

// ------------------------------------------------------------- Gauss sums

BigInt gauss_total(const PadicDiagonal& d, i64 p, int n)
{
    if (n == 0) return 1;
    BigInt s = big_pow(p, 3 * n);
    const int minus_one = (p % 4 == 1) ? 1 : -1;
    for (int j = 1; j <= n; ++j) {
        int odd = 0, sign = 1, exp = 0;
        for (int i = 0; i < 3; ++i) {
            if (d.exponent[i] < j) {
                const int m = j - d.exponent[i];
                exp += n - m + m / 2;
                if (m % 2 == 1) {
                    ++odd;
                    sign *= d.unit_symbol[i];
                }
            } else {
                exp += n;
            }
        }
        if (odd % 2 == 1) continue;
        if ((odd / 2) % 2 == 1) sign *= minus_one;
        exp += odd / 2;
        const BigInt term = (big_pow(p, j) - big_pow(p, j - 1)) * big_pow(p, exp);
        s += sign * term;
    }
    const BigInt pn = big_pow(p, n);
    if (s % pn != 0) throw std::logic_error("Gauss sum count is not an integer");
    return s / pn;
}

// ---------------------------------------------------------- real quadratics

// Symmetric S with R(w) = w^T S w on the cube [-1,1]^3, and the Jacobian 1/|det G|.
struct CubeForm {
    std::array<std::array<double, 3>, 3> s;
    double jacobian;
};

CubeForm cube_form(const TernaryQuadraticForm& q, const IsometricNorm& norm)
{
    const IMat3 adj = adjugate(norm.numerator());
    const BigInt det(to_string(determinant(norm.numerator())));
    const IMat3 a = gram_doubled(q);
    std::array<std::array<BigInt, 3>, 3> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigInt acc = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) acc += BigInt(adj[k][i]) * a[k][l] * adj[l][j];
            m[i][j] = acc;
        }
    const BigInt den = norm.denominator();
    CubeForm out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.s[i][j] = to_double(Rational(m[i][j] * den * den, 2 * det * det));
    out.jacobian = to_double(Rational(den * den * den, abs(det)));
    return out;
}

bool is_definite(const TernaryQuadraticForm& q)
{
    const IMat3 a = gram_doubled(q);
    const i128 m1 = a[0][0];
    const i128 m2 = static_cast<i128>(a[0][0]) * a[1][1] - static_cast<i128>(a[0][1]) * a[1][0];
    const i128 m3 = gram_determinant(q);
    return m2 > 0 && ((m1 > 0 && m3 > 0) || (m1 < 0 && m3 < 0));
}

// Real roots of c2 y^2 + c1 y + c0 that fall inside (-1, 1).
void interior_roots(double c2, double c1, double c0, std::vector<double>& out)
{
    auto push = [&](double r) {
        if (std::isfinite(r) && r > -1 && r < 1) out.push_back(r);
    };
    if (c2 == 0) {
        if (c1 != 0) push(-c0 / c1);
        return;
    }
    const double disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return;
    const double sq = std::sqrt(disc);
    const double h = -0.5 * (c1 + (c1 >= 0 ? sq : -sq));
    if (h == 0) {
        push(0);
        return;
    }
    push(h / c2);
    push(c0 / h);
}

// |[lo,hi] intersect [-1,1]|
double overlap(double lo, double hi) { return std::max(0.0, std::min(hi, 1.0) - std::max(lo, -1.0)); }

// |{z in [-1,1] : alpha z^2 + beta z + gamma <= 0}|
double sublevel(double alpha, double beta, double gamma)
{
    if (alpha == 0) {
        if (beta == 0) return gamma <= 0 ? 2.0 : 0.0;
        const double r = -gamma / beta;
        return beta > 0 ? overlap(-1, r) : overlap(r, 1);
    }
    const double disc = beta * beta - 4 * alpha * gamma;
    if (disc < 0) return alpha > 0 ? 0.0 : 2.0;
    const double sq = std::sqrt(disc);
    const double h = -0.5 * (beta + (beta >= 0 ? sq : -sq));
    double r1 = h / alpha, r2 = h != 0 ? gamma / h : r1;
    if (r1 > r2) std::swap(r1, r2);
    const double inside = overlap(r1, r2);
    return alpha > 0 ? inside : 2.0 - inside;
}

// The pivot variable z is the one with the largest |S_cc|; x, y are the other two.
struct Slicing {
    int c, i, j;
    double alpha;
};

Slicing choose_slicing(const CubeForm& f)
{
    int c = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(f.s[k][k]) > std::abs(f.s[c][c])) c = k;
    const int i = c == 0 ? 1 : 0;
    const int j = c == 2 ? 1 : 2;
    return {c, i, j, f.s[c][c]};
}

// R(x,y,z) = alpha z^2 + beta z + gamma with beta, gamma polynomials in y at fixed x.
struct SliceCoefficients {
    double b1, b0;      // beta = b1 y + b0
    double g2, g1, g0;  // gamma = g2 y^2 + g1 y + g0
};

SliceCoefficients slice_at(const CubeForm& f, const Slicing& sl, double x)
{
    const auto& s = f.s;
    return {2 * s[sl.c][sl.j], 2 * s[sl.c][sl.i] * x, s[sl.j][sl.j], 2 * s[sl.i][sl.j] * x, s[sl.i][sl.i] * x * x};
}

// Breakpoints in y where the z-structure of {R = level} on [-1,1] changes.
std::vector<double> breakpoints(const Slicing& sl, const SliceCoefficients& k, const std::vector<double>& levels)
{
    std::vector<double> pts{-1.0, 1.0};
    const double a = sl.alpha;
    interior_roots(0, k.b1, k.b0, pts);
    for (double lv : levels) {
        interior_roots(k.b1 * k.b1 - 4 * a * k.g2, 2 * k.b1 * k.b0 - 4 * a * k.g1, k.b0 * k.b0 - 4 * a * (k.g0 - lv), pts);
        for (double side : {-1.0, 1.0})
            interior_roots(k.g2, k.g1 + side * k.b1, k.g0 + side * k.b0 + a - lv, pts);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <typename F>
double integrate_pieces(const std::vector<double>& pts, const F& f, double rel_tol)
{
    thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
    double total = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double lo = pts[k], hi = pts[k + 1];
        if (hi - lo < 1e-13) continue;
        double err = 0;
        total += ts.integrate(f, lo, hi, rel_tol, &err);
    }
    return total;
}

double outer_integral(const std::function<double(double)>& g, double tol, unsigned depth = 18)
{
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, -1.0, 1.0, depth, tol, &err);
}

std::vector<std::pair<i64, Rational>> bad_prime_densities(const TernaryQuadraticForm& q)
{
    std::vector<std::pair<i64, Rational>> out;
    for (i64 p : bad_primes(q)) out.emplace_back(p, sigma_p(q, p));
    return out;
}

}  // namespace

// ======================================================================= p-adic

std::vector<i64> bad_primes(const TernaryQuadraticForm& q)
{
    const i128 det = gram_determinant(q);
    std::vector<i64> out{2};
    BigInt rest(to_string(abs_val(det)));
    while (rest % 2 == 0) rest /= 2;
    // det A fits in i64 for every form this library accepts
    for (i64 p : prime_divisors(narrow(rest)))
        if (p != 2) out.push_back(p);
    return out;
}

BigInt count_Nstar_hensel(const TernaryQuadraticForm& q, i64 p, int n)
{
    require_prime(p, "count_Nstar_hensel");
    if (n < 1) throw std::invalid_argument("count_Nstar_hensel: n must be positive");
    HenselTree tree(q, p);
    BigInt total = 0;
    i128 pn = 1;
    for (int i = 0; i < n; ++i) pn = checked_mul(pn, static_cast<i128>(p));
    tree.walk_roots(n, [&](const std::array<i128, 3>& x, int k, i128 pk, int g) {
        if (k == n) {
            total += 1;
            return true;
        }
        if (2 * g >= k) return false;
        const i128 v = tree.value(x);
        if (n <= k + g) {
            if (mod(v, pn) == 0) total += big_pow(p, 3 * (n - k));
        } else if (mod(v, checked_mul(pk, static_cast<i128>(ipow(p, g)))) == 0) {
            total += big_pow(p, 2 * (n - k) + g);
        }
        return true;
    });
    return total;
}

Rational sigma_p_hensel_limit(const TernaryQuadraticForm& q, i64 p)
{
    require_prime(p, "sigma_p_hensel_limit");
    HenselTree tree(q, p);
    Rational total = 0;
    const int depth = 2 * v_p_det(q, p) + 4;
    tree.walk_roots(depth, [&](const std::array<i128, 3>& x, int k, i128 pk, int g) {
        if (2 * g >= k) return false;
        if (mod(tree.value(x), checked_mul(pk, static_cast<i128>(ipow(p, g)))) == 0)
            total += Rational(BigInt(1), big_pow(p, 2 * k - g));
        return true;
    });
    return total;
}

PadicDiagonal padic_diagonalize(const TernaryQuadraticForm& q, i64 p)
{
    require_prime(p, "padic_diagonalize");
    if (p == 2) throw std::invalid_argument("padic_diagonalize: p must be odd");
    const IMat3 a = gram_doubled(q);
    std::array<std::array<Rational, 3>, 3> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
    auto v = [&](const Rational& r) {
        if (r == 0) return std::numeric_limits<int>::max();
        return valuation_big(numerator(r), p) - valuation_big(denominator(r), p);
    };
    std::vector<int> live{0, 1, 2};
    std::vector<Rational> diag;
    while (!live.empty()) {
        int bi = -1, bj = -1, best = std::numeric_limits<int>::max();
        for (int i : live)
            for (int j : live) {
                const int e = v(m[i][j]);
                if (e < best || (e == best && i == j && bi != bj)) {
                    best = e;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) throw std::logic_error("padic_diagonalize: singular form");
        if (bi != bj) {
            // x_i <- x_i + x_j makes the pivot diagonal with the same valuation (p odd)
            for (int k : live) m[bi][k] += m[bj][k];
            for (int k : live) m[k][bi] += m[k][bj];
        }
        const int piv = bi;
        const Rational d = m[piv][piv];
        for (int k : live)
            for (int l : live)
                if (k != piv && l != piv) m[k][l] -= m[k][piv] * m[piv][l] / d;
        diag.push_back(d);
        live.erase(std::find(live.begin(), live.end(), piv));
    }
    PadicDiagonal out{};
    for (int i = 0; i < 3; ++i) {
        // coefficient of x_i^2 in Q is diag_i / 2
        const Rational c = diag[i] / 2;
        BigInt num = numerator(c), den = denominator(c);
        int e = 0;
        while (num % p == 0) {
            num /= p;
            ++e;
        }
        while (den % p == 0) {
            den /= p;
            --e;
        }
        out.exponent[i] = e;
        const i64 u = static_cast<i64>(BigInt(((num % p) * (den % p) % p + p) % p));
        out.unit_symbol[i] = legendre(u, p);
    }
    return out;
}

BigInt count_Nstar_gauss(const TernaryQuadraticForm& q, i64 p, int n)
{
    require_prime(p, "count_Nstar_gauss");
    if (n < 1) throw std::invalid_argument("count_Nstar_gauss: n must be positive");
    const PadicDiagonal d = padic_diagonalize(q, p);
    const BigInt total = gauss_total(d, p, n);
    const BigInt divisible = n >= 2 ? big_pow(p, 3) * gauss_total(d, p, n - 2) : BigInt(1);
    return total - divisible;
}

i64 count_Nstar_enumerate(const TernaryQuadraticForm& q, i64 p, int n)
{
    require_prime(p, "count_Nstar_enumerate");
    const i64 m = ipow(p, n);
    if (m > 64) throw std::length_error("count_Nstar_enumerate: p^n exceeds 64");
    i64 count = 0;
    for (i64 x = 0; x < m; ++x)
        for (i64 y = 0; y < m; ++y)
            for (i64 z = 0; z < m; ++z) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                if (mod(evaluate(q, {x, y, z}), static_cast<i128>(m)) == 0) ++count;
            }
    return count;
}

i64 count_Nstar_mod(const TernaryQuadraticForm& q, i64 p, int n)
{
    require_prime(p, "count_Nstar_mod");
    if (n < 1) throw std::invalid_argument("count_Nstar_mod: n must be positive");
    if (big_pow(p, n) > kNstarCap) throw std::length_error("count_Nstar_mod: p^n exceeds the enumeration cap");
    const BigInt r = p == 2 ? count_Nstar_hensel(q, p, n) : count_Nstar_gauss(q, p, n);
    return narrow(r);
}

int sigma_p_level(const TernaryQuadraticForm& q, i64 p) { return v_p_det(q, p) + (p == 2 ? 1 : 0) + 3; }

Rational sigma_p(const TernaryQuadraticForm& q, i64 p)
{
    require_prime(p, "sigma_p");
    auto level = [&](int n) {
        const BigInt c = p == 2 ? count_Nstar_hensel(q, p, n) : count_Nstar_gauss(q, p, n);
        return Rational(c, big_pow(p, 2 * n));
    };
    const Rational smooth = 1 - Rational(1, p * p);
    if (p != 2 && v_p_det(q, p) == 0) {
        if (level(1) != smooth) throw std::logic_error("sigma_p: N*(p) != p^2 - 1 at a good prime");
        return smooth;
    }
    const int cap = sigma_p_level(q, p);
    const Rational last = level(cap);
    if (level(cap - 1) != last) throw std::runtime_error("density not stabilized at p = " + std::to_string(p));
    return last;
}

// =================================================================== sigma_inf

double sigma_infinity_at(const TernaryQuadraticForm& q, const IsometricNorm& norm, double eps, double quad_tol)
{
    if (!(eps > 0)) throw std::invalid_argument("sigma_infinity_at: eps must be positive");
    const CubeForm f = cube_form(q, norm);
    const Slicing sl = choose_slicing(f);
    const std::vector<double> levels{eps, -eps};
    auto inner = [&](double x) {
        const SliceCoefficients k = slice_at(f, sl, x);
        auto band = [&](double y) {
            const double beta = k.b1 * y + k.b0;
            const double gamma = (k.g2 * y + k.g1) * y + k.g0;
            return sublevel(sl.alpha, beta, gamma - eps) - sublevel(sl.alpha, beta, gamma + eps);
        };
        return integrate_pieces(breakpoints(sl, k, levels), band, quad_tol);
    };
    const double vol = outer_integral(inner, quad_tol);
    return vol / (2 * eps) * f.jacobian;
}

double sigma_infinity_coarea(const TernaryQuadraticForm& q, const IsometricNorm& norm)
{
    if (is_definite(q)) return 0.0;
    const CubeForm f = cube_form(q, norm);
    const Slicing sl = choose_slicing(f);
    const std::vector<double> levels{0.0};
    auto inner = [&](double x) {
        const SliceCoefficients k = slice_at(f, sl, x);
        auto density = [&](double y) {
            const double beta = k.b1 * y + k.b0;
            const double gamma = (k.g2 * y + k.g1) * y + k.g0;
            if (sl.alpha == 0) {
                if (beta == 0) return 0.0;
                const double z = -gamma / beta;
                return std::abs(z) <= 1 ? 1 / std::abs(beta) : 0.0;
            }
            const double disc = beta * beta - 4 * sl.alpha * gamma;
            if (disc <= 0) return 0.0;
            const double sq = std::sqrt(disc);
            int inside = 0;
            for (double r : {(-beta + sq) / (2 * sl.alpha), (-beta - sq) / (2 * sl.alpha)})
                if (std::abs(r) <= 1) ++inside;
            return inside / sq;
        };
        return integrate_pieces(breakpoints(sl, k, levels), density, 1e-9);
    };
    return outer_integral(inner, 1e-8, 12) * f.jacobian;
}

SigmaInfinity sigma_infinity(const TernaryQuadraticForm& q, const IsometricNorm& norm, double tol)
{
    if (!(tol > 0 && tol <= 0.05)) throw std::invalid_argument("sigma_infinity: tol must lie in (0, 0.05]");
    SigmaInfinity out;
    if (is_definite(q)) {
        out.diagnostic = "no real points: the form is definite";
        return out;
    }
    const CubeForm f = cube_form(q, norm);
    double smax = 0;
    for (const auto& row : f.s)
        for (double v : row) smax = std::max(smax, std::abs(v));
    const double eps0 = smax / 16;
    constexpr int kMaxLevels = 12;
    constexpr int kOrder = 3;
    // quadrature noise far below the extrapolation differences being tested
    const double quad_tol = std::clamp(tol * 1e-4, 1e-11, 1e-7);
    // Neville table in h = sqrt(eps), h halving per level
    std::vector<std::vector<double>> t;
    std::string trail;
    for (int k = 0; k < kMaxLevels; ++k) {
        const double eps = eps0 * std::pow(4.0, -k);
        std::vector<double> row{sigma_infinity_at(q, norm, eps, quad_tol)};
        for (int j = 1; j <= std::min(k, kOrder); ++j)
            row.push_back(row[j - 1] + (row[j - 1] - t[k - 1][j - 1]) / (std::pow(2.0, j) - 1));
        trail += (trail.empty() ? "" : ", ") + std::to_string(row.back());
        t.push_back(std::move(row));
        if (k > kOrder) {
            const double now = t[k][kOrder], before = t[k - 1][kOrder];
            const double diff = std::abs(now - before);
            if (diff < tol * std::abs(now)) {
                out.value = now;
                out.error = diff;
                out.levels = k + 1;
                return out;
            }
        }
    }
    throw std::runtime_error("sigma_infinity did not converge; extrapolants: " + trail);
}

// ================================================================= constants

Rational sigma_p_prime(const SpecialConic& s, i64 p)
{
    require_prime(p, "sigma_p_prime");
    const ParamSystem sys(s);
    const int top = valuation(sys.lambda_max(), p);
    Rational sum = 0;
    for (int d = 1; d <= top; ++d) sum += Rational(rho_star_prime_power(s, p, d), ipow(p, d));
    return (1 - Rational(1, p * p)) * (1 + Rational(p, p + 1) * sum);
}

EulerCheck euler_product_check(const SpecialConic& s, i64 terms)
{
    if (terms < 1) throw std::invalid_argument("euler_product_check: terms must be positive");
    const ParamSystem sys(s);
    const i64 dprime = sys.lambda_max();
    EulerCheck out;
    out.terms = terms;

    Rational local = 1;
    for (i64 p : prime_divisors(abs_val(sys.discriminant())))
        local *= sigma_p_prime(s, p) / (1 - Rational(1, p * p));
    out.closed_form = to_double(local) * kSixOverPiSquared;

    std::vector<int> mu(static_cast<std::size_t>(terms) + 1, 1);
    std::vector<bool> composite(static_cast<std::size_t>(terms) + 1, false);
    for (i64 i = 2; i <= terms; ++i) {
        if (composite[i]) continue;
        for (i64 j = i; j <= terms; j += i) {
            if (j > i) composite[j] = true;
            mu[j] = -mu[j];
        }
        for (i64 j = i * i; j <= terms; j += i * i) mu[j] = 0;
    }
    auto truncated = [&](i64 n) {
        double acc = 0;
        for (i64 m = 1; m <= terms; ++m)
            if (mu[m] != 0 && gcd(m, n) == 1) acc += mu[m] / (static_cast<double>(m) * m);
        return acc;
    };
    double weight = 0;
    for (i64 n : divisors(dprime)) {
        const i64 rho = rho_star(s, n);
        if (rho == 0) continue;
        const double inner = truncated(n);
        for (i64 k : divisors(n)) {
            const int mk = mobius(k);
            if (mk == 0) continue;
            const double c = static_cast<double>(rho) / (static_cast<double>(k) * k * (n / k));
            out.double_sum += mk * c * inner;
            weight += c;
        }
    }
    out.tail_bound = weight / static_cast<double>(terms) + 1e-12 * std::max(1.0, weight);
    out.ok = std::abs(out.double_sum - out.closed_form) <= out.tail_bound;
    return out;
}

DensityReport peyre_constant(const TernaryQuadraticForm& q, const IsometricNorm& norm, double tol)
{
    DensityReport r;
    r.sigma_infinity = sigma_infinity(q, norm, tol);
    r.tail_description = "prod over p not dividing 2 det A of (1 - p^-2) = (6/pi^2) prod over p | 2 det A of (1 - p^-2)^-1";
    if (r.sigma_infinity->value == 0) {
        r.c_q = RealValue{0, 0};
        r.diagnostic = r.sigma_infinity->diagnostic;
        return r;
    }
    r.sigma_p_list = bad_prime_densities(q);
    Rational local = 1;
    for (const auto& [p, sp] : r.sigma_p_list) local *= sp / (1 - Rational(1, p * p));
    const double factor = 0.5 * to_double(local) * kSixOverPiSquared;
    r.c_q = RealValue{factor * r.sigma_infinity->value, factor * r.sigma_infinity->error};
    return r;
}

DensityReport c_prime(const SpecialConic& s, const IsometricNorm& norm, double tol)
{
    DensityReport r;
    const double vol = volume_V(s, norm, tol);
    r.volume_v = vol;
    const ParamSystem sys(s);
    Rational local = 1;
    for (i64 p : prime_divisors(abs_val(sys.discriminant()))) {
        const Rational sp = sigma_p_prime(s, p);
        r.sigma_p_prime_list.emplace_back(p, sp);
        local *= sp / (1 - Rational(1, p * p));
    }
    r.euler = euler_product_check(s);
    const double value = vol * to_double(local) * kSixOverPiSquared;
    // volume_V stops once successive refinements differ by < tol/4 relative
    r.c_prime_q = RealValue{value, 0.25 * tol * value};
    if (!r.euler->ok) r.diagnostic = "Euler product and double sum disagree beyond the tail bound";
    return r;
}

}  // namespace conics
