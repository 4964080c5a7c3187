#ifndef CONICS_DENSITIES_HPP
#define CONICS_DENSITIES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conics/norms.hpp"
#include "conics/quadform.hpp"

namespace conics {

/// p^n above which count_Nstar_mod refuses to run.
inline constexpr i64 kNstarCap = 1000000;

/// #{x mod p^n : p does not divide x, Q(x) = 0 mod p^n}. Requires p^n <= kNstarCap.
/// Odd p go through the p-adic diagonal form, p = 2 through the Hensel tree.
[[nodiscard]] i64 count_Nstar_mod(const TernaryQuadraticForm& q, i64 p, int n);

/// Same count by walking residues mod p^k and closing each branch once the
/// gradient valuation g satisfies 2g < k. Any p; throws past the node budget.
[[nodiscard]] BigInt count_Nstar_hensel(const TernaryQuadraticForm& q, i64 p, int n);
/// Same count from the diagonalization over Z_p and quadratic Gauss sums. Odd p only.
[[nodiscard]] BigInt count_Nstar_gauss(const TernaryQuadraticForm& q, i64 p, int n);
/// Plain triple loop, p^n <= 64. Test oracle.
[[nodiscard]] i64 count_Nstar_enumerate(const TernaryQuadraticForm& q, i64 p, int n);

/// lim N*(p^n)/p^(2n), summed exactly over the closed branches of the Hensel tree.
[[nodiscard]] Rational sigma_p_hensel_limit(const TernaryQuadraticForm& q, i64 p);

/// Diagonal form over Z_p (p odd): Q ~ sum u_i p^(a_i) x_i^2, with the
/// Legendre symbol of each unit u_i.
struct PadicDiagonal {
    std::array<int, 3> exponent;
    std::array<int, 3> unit_symbol;
};
[[nodiscard]] PadicDiagonal padic_diagonalize(const TernaryQuadraticForm& q, i64 p);

/// Level at which sigma_p is read off: v_p(2 det A) + 3.
[[nodiscard]] int sigma_p_level(const TernaryQuadraticForm& q, i64 p);
/// N*(p^n)/p^(2n) at the last two levels up to sigma_p_level; they must agree.
[[nodiscard]] Rational sigma_p(const TernaryQuadraticForm& q, i64 p);

/// Primes dividing 2 det A.
[[nodiscard]] std::vector<i64> bad_primes(const TernaryQuadraticForm& q);

struct RealValue {
    double value = 0;
    double error = 0;
};

struct SigmaInfinity {
    double value = 0;
    double error = 0;
    int levels = 0;  // epsilon levels used
    std::string diagnostic;
};

/// (1/2eps) vol{|Q| <= eps, ||x|| <= 1} at eps = eps0 4^-k, extrapolated in sqrt(eps).
/// tol in (0, 0.05]. A definite form gives 0 with a diagnostic.
[[nodiscard]] SigmaInfinity sigma_infinity(const TernaryQuadraticForm& q, const IsometricNorm& norm, double tol);
/// Scaled near-solution volume at one eps; quad_tol is the relative quadrature tolerance.
[[nodiscard]] double sigma_infinity_at(const TernaryQuadraticForm& q, const IsometricNorm& norm, double eps,
                                       double quad_tol = 1e-11);
/// Surface integral of 1/|grad Q| over {Q = 0, ||x|| <= 1}: the limit taken analytically.
[[nodiscard]] double sigma_infinity_coarea(const TernaryQuadraticForm& q, const IsometricNorm& norm);

/// (1 - p^-2)(1 + p/(p+1) sum_{d>=1} rho*(p^d)/p^d).
[[nodiscard]] Rational sigma_p_prime(const SpecialConic& s, i64 p);

struct EulerCheck {
    double closed_form = 0;  // prod over p | Delta of sigma'_p / (1 - p^-2), times 6/pi^2
    double double_sum = 0;   // truncated at m <= terms
    double tail_bound = 0;
    i64 terms = 0;
    bool ok = false;
};
[[nodiscard]] EulerCheck euler_product_check(const SpecialConic& s, i64 terms = 200000);

struct DensityReport {
    std::optional<SigmaInfinity> sigma_infinity;
    std::vector<std::pair<i64, Rational>> sigma_p_list;
    std::string tail_description;
    std::optional<RealValue> c_q;
    std::optional<double> volume_v;
    std::vector<std::pair<i64, Rational>> sigma_p_prime_list;
    std::optional<EulerCheck> euler;
    std::optional<RealValue> c_prime_q;
    std::optional<double> ratio;
    std::string diagnostic;
};

/// c_Q = 1/2 sigma_inf prod_p sigma_p, the tail over good primes in closed form.
[[nodiscard]] DensityReport peyre_constant(const TernaryQuadraticForm& q, const IsometricNorm& norm, double tol);
/// c'_Q = vol(V) prod_p sigma'_p for a special conic.
[[nodiscard]] DensityReport c_prime(const SpecialConic& s, const IsometricNorm& norm, double tol);

inline constexpr double kSixOverPiSquared = 0.60792710185402662866;

}  // namespace conics

#endif  // CONICS_DENSITIES_HPP
