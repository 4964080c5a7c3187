#ifndef CONICS_ARITH_HPP
#define CONICS_ARITH_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace conics {

using i64 = std::int64_t;
using i128 = __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Checked arithmetic. Overflow is a hard error, never a wrap.
template <typename A, typename B>
[[nodiscard]] constexpr auto checked_add(A a, B b)
{
    using T = std::common_type_t<A, B>;
    T r{};
    if (__builtin_add_overflow(static_cast<T>(a), static_cast<T>(b), &r)) throw std::overflow_error("integer overflow (add)");
    return r;
}

template <typename A, typename B>
[[nodiscard]] constexpr auto checked_sub(A a, B b)
{
    using T = std::common_type_t<A, B>;
    T r{};
    if (__builtin_sub_overflow(static_cast<T>(a), static_cast<T>(b), &r)) throw std::overflow_error("integer overflow (sub)");
    return r;
}

template <typename A, typename B>
[[nodiscard]] constexpr auto checked_mul(A a, B b)
{
    using T = std::common_type_t<A, B>;
    T r{};
    if (__builtin_mul_overflow(static_cast<T>(a), static_cast<T>(b), &r)) throw std::overflow_error("integer overflow (mul)");
    return r;
}

[[nodiscard]] i64 narrow(i128 v);
[[nodiscard]] i64 narrow(const BigInt& v);

template <typename T>
[[nodiscard]] constexpr T abs_val(T v) { return v < 0 ? -v : v; }

[[nodiscard]] i64 gcd(i64 a, i64 b);
[[nodiscard]] i128 gcd(i128 a, i128 b);
[[nodiscard]] i64 gcd(i64 a, i64 b, i64 c);

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
struct ExtGcd {
    i128 g, x, y;
};
[[nodiscard]] ExtGcd ext_gcd(i128 a, i128 b);

/// Inverse of a modulo m (m >= 1, gcd(a,m) = 1), in [0, m).
[[nodiscard]] i64 mod_inverse(i64 a, i64 m);

/// Non-negative residue.
[[nodiscard]] constexpr i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}
[[nodiscard]] constexpr i128 mod(i128 a, i128 m)
{
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

/// Floor division for a positive divisor.
[[nodiscard]] i128 floor_div(i128 a, i128 b);
[[nodiscard]] i128 ceil_div(i128 a, i128 b);

/// floor(sqrt(n)) for n >= 0, exact.
[[nodiscard]] i128 isqrt(i128 n);
/// Returns true and sets root when n is a perfect square.
[[nodiscard]] bool exact_sqrt(i128 n, i128& root);

[[nodiscard]] BigInt isqrt(const BigInt& n);

/// Integer roots of alpha z^2 + beta z + gamma = 0. When the polynomial is
/// identically zero every integer is a root and `all` is set.
struct IntegerRoots {
    bool all = false;
    int count = 0;
    std::array<i128, 2> roots{};
};
[[nodiscard]] IntegerRoots integer_roots(i128 alpha, i128 beta, i128 gamma);

struct PrimePower {
    i64 p;
    int k;
};
/// Trial-division factorization of |n| (n != 0).
[[nodiscard]] std::vector<PrimePower> factorize(i64 n);
[[nodiscard]] std::vector<i64> prime_divisors(i64 n);
[[nodiscard]] std::vector<i64> divisors(i64 n);
[[nodiscard]] int mobius(i64 n);
[[nodiscard]] bool is_prime(i64 n);
[[nodiscard]] int valuation(i64 n, i64 p);
[[nodiscard]] int valuation(const BigInt& n, i64 p);
[[nodiscard]] i64 ipow(i64 base, int exp);

/// Legendre symbol (a/p) for odd prime p; 0 when p | a.
[[nodiscard]] int legendre(i64 a, i64 p);

[[nodiscard]] std::string to_string(i128 v);

/// Rational parsed from "p/q", "n" or a finite decimal like "0.25".
[[nodiscard]] Rational parse_rational(const std::string& text);
[[nodiscard]] std::string to_string(const Rational& r);
[[nodiscard]] double to_double(const Rational& r);

}  // namespace conics

#endif  // CONICS_ARITH_HPP
