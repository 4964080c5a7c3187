#include "conics/norms.hpp"

#include <cmath>

namespace conics {

Bound Bound::divided_by_square(i64 k) const
{
    i128 d = checked_mul(den, checked_mul<i128>(k, k));
    i128 g = gcd(num, d);
    return {num / g, d / g};
}

Bound Bound::times(i64 k) const
{
    i128 n = checked_mul<i128>(num, k);
    i128 g = gcd(n, den);
    return {n / g, den / g};
}

IsometricNorm::IsometricNorm() : num_(identity_matrix()), den_(1) {}

IsometricNorm::IsometricNorm(const IMat3& numerator, i64 denominator) : num_(numerator), den_(denominator)
{
    if (den_ <= 0) throw std::invalid_argument("norm denominator must be positive");
    if (determinant(num_) == 0) throw std::invalid_argument("norm matrix g is singular");
    i64 g = den_;
    for (const auto& row : num_)
        for (i64 v : row) g = gcd(g, v);
    if (g > 1) {
        for (auto& row : num_)
            for (i64& v : row) v /= g;
        den_ /= g;
    }
}

IsometricNorm IsometricNorm::from_rationals(const std::array<std::array<Rational, 3>, 3>& g)
{
    BigInt l = 1;
    for (const auto& row : g)
        for (const auto& v : row) l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(v)));
    IMat3 num{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rational scaled = g[i][j] * Rational(l);
            num[i][j] = narrow(BigInt(boost::multiprecision::numerator(scaled)));
        }
    return {num, narrow(l)};
}

RMat3 IsometricNorm::matrix() const
{
    RMat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = static_cast<double>(num_[i][j]) / static_cast<double>(den_);
    return m;
}

bool IsometricNorm::is_sup() const { return den_ == 1 && num_ == identity_matrix(); }

double IsometricNorm::value(const RVec3& x) const
{
    double r = 0;
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int j = 0; j < 3; ++j) s += static_cast<double>(num_[i][j]) * x[j];
        r = std::max(r, std::fabs(s));
    }
    return r / static_cast<double>(den_);
}

bool IsometricNorm::within(const I128Vec3& x, const Bound& bound) const
{
    // max_i |num_i . x| * bound.den <= bound.num * den
    const i128 rhs = checked_mul<i128>(bound.num, den_);
    for (int i = 0; i < 3; ++i) {
        i128 s = 0;
        for (int j = 0; j < 3; ++j) s = checked_add(s, checked_mul<i128>(num_[i][j], x[j]));
        if (checked_mul(abs_val(s), bound.den) > rhs) return false;
    }
    return true;
}

bool IsometricNorm::within(const IVec3& x, const Bound& bound) const
{
    return within(I128Vec3{x[0], x[1], x[2]}, bound);
}

Rational IsometricNorm::exact_value(const IVec3& x) const
{
    i128 best = 0;
    for (int i = 0; i < 3; ++i) {
        i128 s = 0;
        for (int j = 0; j < 3; ++j) s = checked_add(s, checked_mul<i128>(num_[i][j], x[j]));
        best = std::max(best, abs_val(s));
    }
    return Rational(BigInt(to_string(best)), den_);
}

Rational IsometricNorm::k0() const
{
    // g^{-1} = den * adj(num) / det(num)
    const IMat3 adj = adjugate(num_);
    const BigInt det = BigInt(to_string(abs_val(determinant(num_))));
    BigInt best = 0;
    for (const auto& row : adj) {
        BigInt s = 0;
        for (i64 v : row) s += abs_val(v);
        best = std::max(best, s);
    }
    return Rational(1) + Rational(best * den_, det);
}

IsometricNorm IsometricNorm::compose_with_matrix(const UnimodularMatrix& m) const
{
    return {multiply(num_, m.matrix()), den_};
}

Rational IsometricNorm::abs_determinant() const
{
    BigInt d3 = BigInt(den_) * den_ * den_;
    return Rational(BigInt(to_string(abs_val(determinant(num_)))), d3);
}

}  // namespace conics
