#ifndef CONICS_NORMS_HPP
#define CONICS_NORMS_HPP

#include <array>

#include "conics/arith.hpp"
#include "conics/quadform.hpp"

namespace conics {

using RVec3 = std::array<double, 3>;
using RMat3 = std::array<std::array<double, 3>, 3>;
using I128Vec3 = std::array<i128, 3>;

/// A positive rational threshold num/den used in exact norm comparisons.
struct Bound {
    i128 num = 1;
    i128 den = 1;

    static Bound integer(i128 v) { return {v, 1}; }
    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    /// this / k^2, kept exact
    [[nodiscard]] Bound divided_by_square(i64 k) const;
    [[nodiscard]] Bound times(i64 k) const;
};

/// ||x|| = ||g x||_inf with g = numerator / denominator, g invertible and exact.
class IsometricNorm {
public:
    IsometricNorm();  // the sup norm
    IsometricNorm(const IMat3& numerator, i64 denominator);
    static IsometricNorm from_rationals(const std::array<std::array<Rational, 3>, 3>& g);
    static IsometricNorm sup() { return {}; }

    [[nodiscard]] const IMat3& numerator() const { return num_; }
    [[nodiscard]] i64 denominator() const { return den_; }
    [[nodiscard]] Rational entry(int i, int j) const { return Rational(num_[i][j], den_); }
    [[nodiscard]] RMat3 matrix() const;
    [[nodiscard]] bool is_sup() const;

    /// max_i |(g x)_i|
    [[nodiscard]] double value(const RVec3& x) const;
    /// Exact test ||x|| <= bound for integer x.
    [[nodiscard]] bool within(const I128Vec3& x, const Bound& bound) const;
    [[nodiscard]] bool within(const IVec3& x, const Bound& bound) const;
    /// Exact ||x|| as a rational, for reporting.
    [[nodiscard]] Rational exact_value(const IVec3& x) const;

    /// K0 = 1 + max absolute row sum of g^{-1}, exact.
    [[nodiscard]] Rational k0() const;
    /// The norm x -> ||M x||, i.e. matrix g M.
    [[nodiscard]] IsometricNorm compose_with_matrix(const UnimodularMatrix& m) const;
    [[nodiscard]] Rational abs_determinant() const;

    bool operator==(const IsometricNorm&) const = default;

private:
    IMat3 num_;
    i64 den_;
};

}  // namespace conics

#endif  // CONICS_NORMS_HPP
