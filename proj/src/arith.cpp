#include "conics/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace conics {

i64 narrow(i128 v)
{
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("integer overflow (narrowing)");
    return static_cast<i64>(v);
}

i64 narrow(const BigInt& v)
{
    if (v > std::numeric_limits<i64>::max() || v < std::numeric_limits<i64>::min())
        throw std::overflow_error("integer overflow (narrowing)");
    return static_cast<i64>(v);
}

i64 gcd(i64 a, i64 b)
{
    return narrow(gcd(static_cast<i128>(a), static_cast<i128>(b)));
}

i128 gcd(i128 a, i128 b)
{
    a = abs_val(a);
    b = abs_val(b);
    while (b != 0) {
        i128 r = a % b;
        a = b;
        b = r;
    }
    return a;
}

i64 gcd(i64 a, i64 b, i64 c) { return gcd(gcd(a, b), c); }

ExtGcd ext_gcd(i128 a, i128 b)
{
    i128 old_r = a, r = b;
    i128 old_s = 1, s = 0;
    i128 old_t = 0, t = 1;
    while (r != 0) {
        i128 q = old_r / r;
        i128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

i64 mod_inverse(i64 a, i64 m)
{
    if (m == 1) return 0;
    auto [g, x, y] = ext_gcd(mod(a, m), m);
    (void)y;
    if (g != 1) throw std::domain_error("mod_inverse: not invertible");
    return narrow(mod(x, static_cast<i128>(m)));
}

i128 floor_div(i128 a, i128 b)
{
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 isqrt(i128 n)
{
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n < 2) return n;
    // Newton from a floating estimate, then exact correction.
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool exact_sqrt(i128 n, i128& root)
{
    if (n < 0) return false;
    root = isqrt(n);
    return root * root == n;
}

BigInt isqrt(const BigInt& n)
{
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

IntegerRoots integer_roots(i128 alpha, i128 beta, i128 gamma)
{
    IntegerRoots out;
    if (alpha == 0) {
        if (beta == 0) {
            out.all = (gamma == 0);
            return out;
        }
        if (gamma % beta == 0) {
            out.roots[0] = -gamma / beta;
            out.count = 1;
        }
        return out;
    }
    const i128 disc = checked_sub(checked_mul(beta, beta), checked_mul(checked_mul<i128>(4, alpha), gamma));
    i128 root = 0;
    if (!exact_sqrt(disc, root)) return out;
    const i128 two_alpha = checked_mul<i128>(2, alpha);
    for (i128 num : {-beta - root, -beta + root}) {
        if (num % two_alpha != 0) continue;
        i128 z = num / two_alpha;
        if (out.count == 1 && out.roots[0] == z) continue;
        out.roots[out.count++] = z;
    }
    return out;
}

std::vector<PrimePower> factorize(i64 n)
{
    if (n == 0) throw std::domain_error("factorize(0)");
    std::vector<PrimePower> out;
    i128 m = abs_val(static_cast<i128>(n));
    for (i64 p = 2; static_cast<i128>(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (m > 1) out.push_back({narrow(m), 1});
    return out;
}

std::vector<i64> prime_divisors(i64 n)
{
    std::vector<i64> ps;
    for (auto [p, k] : factorize(n)) ps.push_back(p);
    return ps;
}

std::vector<i64> divisors(i64 n)
{
    std::vector<i64> ds{1};
    for (auto [p, k] : factorize(n)) {
        const std::size_t base = ds.size();
        i64 pk = 1;
        for (int j = 1; j <= k; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int mobius(i64 n)
{
    int sign = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1) return 0;
        sign = -sign;
    }
    return sign;
}

bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

int valuation(i64 n, i64 p)
{
    if (n == 0) throw std::domain_error("valuation(0)");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const BigInt& n, i64 p)
{
    if (n == 0) throw std::domain_error("valuation(0)");
    BigInt m = n;
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

i64 ipow(i64 base, int exp)
{
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

int legendre(i64 a, i64 p)
{
    a = mod(a, p);
    if (a == 0) return 0;
    // Euler's criterion by square-and-multiply.
    i128 result = 1, b = a;
    i64 e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) result = result * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

std::string to_string(i128 v)
{
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    // Avoid negating INT128_MIN: work digit by digit on the signed value.
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

Rational parse_rational(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto parse_int = [](const std::string& s) {
        if (s.empty() || s == "-" || s == "+") throw std::invalid_argument("bad integer: '" + s + "'");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j])))
                throw std::invalid_argument("bad integer: '" + s + "'");
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    };
    if (auto slash = t.find('/'); slash != std::string::npos) {
        BigInt den = parse_int(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(parse_int(t.substr(0, slash)), den);
    }
    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string frac = t.substr(dot + 1);
        std::string whole = t.substr(0, dot);
        bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt w = parse_int(whole);
        BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
        if (frac.size() && (frac[0] == '-' || frac[0] == '+')) throw std::invalid_argument("bad decimal");
        BigInt num = abs(w) * scale + f;
        if (neg || w < 0) num = -num;
        return Rational(num, scale);
    }
    return Rational(parse_int(t));
}

std::string to_string(const Rational& r)
{
    auto n = boost::multiprecision::numerator(r);
    auto d = boost::multiprecision::denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace conics
