#ifndef CONICS_QUADFORM_HPP
#define CONICS_QUADFORM_HPP

#include <array>
#include <optional>
#include <string>

#include "conics/arith.hpp"

namespace conics {

using IVec3 = std::array<i64, 3>;
using IMat3 = std::array<std::array<i64, 3>, 3>;

[[nodiscard]] IMat3 identity_matrix();
[[nodiscard]] i128 determinant(const IMat3& m);
[[nodiscard]] IMat3 adjugate(const IMat3& m);
[[nodiscard]] IMat3 multiply(const IMat3& a, const IMat3& b);
[[nodiscard]] IMat3 transpose(const IMat3& m);
[[nodiscard]] IVec3 apply(const IMat3& m, const IVec3& x);
/// Largest absolute entry.
[[nodiscard]] i64 sup_norm(const IMat3& m);
[[nodiscard]] i64 sup_norm(const IVec3& x);
[[nodiscard]] std::string to_string(const IMat3& m);

/// An SL3(Z) element. Construction rejects any matrix whose determinant is not +1.
class UnimodularMatrix {
public:
    explicit UnimodularMatrix(const IMat3& m);
    static UnimodularMatrix identity() { return UnimodularMatrix(identity_matrix()); }

    [[nodiscard]] const IMat3& matrix() const { return m_; }
    [[nodiscard]] i64 operator()(int i, int j) const { return m_[i][j]; }
    [[nodiscard]] IVec3 column(int j) const { return {m_[0][j], m_[1][j], m_[2][j]}; }
    /// Exact inverse, which for det 1 is the adjugate.
    [[nodiscard]] UnimodularMatrix inverse() const;
    [[nodiscard]] UnimodularMatrix operator*(const UnimodularMatrix& o) const;

private:
    IMat3 m_;
};

/// Q = c200 x^2 + c110 xy + c101 xz + c020 y^2 + c011 yz + c002 z^2, nonsingular.
class TernaryQuadraticForm {
public:
    TernaryQuadraticForm(i64 c200, i64 c110, i64 c101, i64 c020, i64 c011, i64 c002);
    /// Inverse of gram_doubled: the matrix must be symmetric with even diagonal.
    static TernaryQuadraticForm from_gram_doubled(const IMat3& a);

    i64 c200, c110, c101, c020, c011, c002;

    [[nodiscard]] std::array<i64, 6> coefficients() const { return {c200, c110, c101, c020, c011, c002}; }
    [[nodiscard]] TernaryQuadraticForm scaled(i64 k) const;
    bool operator==(const TernaryQuadraticForm&) const = default;
};

/// Q = a x^2 + b xy + d xz + e yz + f z^2, so (0,1,0) is a zero.
class SpecialConic {
public:
    SpecialConic(i64 a, i64 b, i64 d, i64 e, i64 f);

    i64 a, b, d, e, f;

    [[nodiscard]] TernaryQuadraticForm form() const;
    [[nodiscard]] i64 gcd_be() const;
    bool operator==(const SpecialConic&) const = default;
};

/// The special shape of Q when its y^2 coefficient vanishes.
[[nodiscard]] std::optional<SpecialConic> as_special(const TernaryQuadraticForm& q);

/// Symmetric integral matrix A with x.A.x = 2 Q(x).
[[nodiscard]] IMat3 gram_doubled(const TernaryQuadraticForm& q);
/// det(gram_doubled(q)); for a special conic this is -2 * discriminant_special.
[[nodiscard]] i128 gram_determinant(const TernaryQuadraticForm& q);
/// a e^2 - d e b + f b^2.
[[nodiscard]] i128 discriminant_special(const SpecialConic& s);
/// gcd of the nine 2x2 minors of gram_doubled(q).
[[nodiscard]] i64 delta_gcd_minors(const TernaryQuadraticForm& q);
/// Largest absolute coefficient.
[[nodiscard]] i64 height(const TernaryQuadraticForm& q);
[[nodiscard]] i128 evaluate(const TernaryQuadraticForm& q, const IVec3& x);
/// The form x -> Q(M x).
[[nodiscard]] TernaryQuadraticForm transform(const TernaryQuadraticForm& q, const UnimodularMatrix& m);

[[nodiscard]] std::string to_string(const TernaryQuadraticForm& q);

}  // namespace conics

#endif  // CONICS_QUADFORM_HPP
