#ifndef CONICS_PARAMETRIZATION_HPP
#define CONICS_PARAMETRIZATION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "conics/norms.hpp"
#include "conics/quadform.hpp"

namespace conics {

/// Lines s z = t x through the base point (0,1,0) of a special conic, and the
/// quadratic map q(s,t) = Pi (s^2, st, t^2) = (s L, -g, t L) onto the conic.
class ParamSystem {
public:
    explicit ParamSystem(const SpecialConic& s);

    [[nodiscard]] const SpecialConic& source() const { return source_; }
    [[nodiscard]] const IMat3& pi() const { return pi_; }
    [[nodiscard]] const IMat3& adj_pi() const { return adj_pi_; }
    [[nodiscard]] i64 discriminant() const { return delta_; }
    /// |Delta| / gcd(b, e): every lambda = gcd(q(s,t)) with gcd(s,t) = 1 divides it.
    [[nodiscard]] i64 lambda_max() const { return lambda_max_; }

    [[nodiscard]] i128 linear(i128 s, i128 t) const;     // L = b s + e t
    [[nodiscard]] i128 quadratic(i128 s, i128 t) const;  // g = a s^2 + d s t + f t^2
    [[nodiscard]] I128Vec3 q(i128 s, i128 t) const;
    /// gcd of q(s,t); for coprime (s,t) this is gcd(L, g).
    [[nodiscard]] i128 lambda(i128 s, i128 t) const;

    /// The primitive parameter with L(s,t) = 0, normalized to t > 0 or (1, 0).
    [[nodiscard]] std::pair<i64, i64> tangent_parameter() const;

private:
    SpecialConic source_;
    IMat3 pi_;
    IMat3 adj_pi_;
    i64 delta_;
    i64 lambda_max_;
};

[[nodiscard]] ParamSystem build_param_system(const SpecialConic& s);

struct ParamPoint {
    i64 s, t;
    i64 lambda;
    IVec3 point;  // q(s,t) / lambda
    /// The point is the base point +-(0,1,0) (the tangent direction).
    bool exceptional;
};

/// Requires gcd(s,t) = 1 and (s,t) != (0,0).
[[nodiscard]] ParamPoint point_from_parameter(const ParamSystem& p, i64 s, i64 t);

struct ParameterOfPoint {
    std::optional<std::pair<i64, i64>> parameter;  // (s, t), t > 0 or (1, 0)
    bool exceptional = false;                      // x = +-(0,1,0)
};
/// Requires Q(x) = 0 and x primitive.
[[nodiscard]] ParameterOfPoint parameter_from_point(const ParamSystem& p, const IVec3& x);

/// Residue classes (sigma, tau) mod n with gcd(sigma, tau, n) = 1 and n | q(sigma, tau).
[[nodiscard]] std::vector<std::pair<i64, i64>> residue_classes(const SpecialConic& s, i64 n);

/// rho*(n) by factoring n and counting each prime power via homogeneity.
[[nodiscard]] i64 rho_star(const SpecialConic& s, i64 n);
[[nodiscard]] i64 rho_star_prime_power(const SpecialConic& s, i64 p, int k);
/// rho*(n) by the double loop over [0,n)^2; n <= kRhoDirectCap.
inline constexpr i64 kRhoDirectCap = 3000;
[[nodiscard]] i64 rho_star_direct(const SpecialConic& s, i64 n);

/// Solutions x mod m of c x = d (mod m).
[[nodiscard]] std::vector<i64> solve_linear_congruence(i64 c, i64 d, i64 m);

}  // namespace conics

#endif  // CONICS_PARAMETRIZATION_HPP
