#ifndef CONICS_COUNTING_HPP
#define CONICS_COUNTING_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conics/norms.hpp"
#include "conics/parametrization.hpp"
#include "conics/quadform.hpp"
#include "conics/zeros.hpp"

namespace conics {

/// Each projective point off the base point is met by exactly one primitive
/// parameter with t > 0 or (s,t) = (1,0), and is carried by the two vectors +-x.
inline constexpr i64 kVectorsPerParameter = 2;

/// V_T = {(s,t) : t > 0, ||q(s,t)|| <= T} for a special conic and an exact norm.
class ParamRegion {
public:
    ParamRegion(const SpecialConic& s, const IsometricNorm& norm);

    [[nodiscard]] const ParamSystem& system() const { return system_; }
    [[nodiscard]] const IsometricNorm& norm() const { return norm_; }
    [[nodiscard]] const Rational& k0() const { return k0_; }
    [[nodiscard]] i64 height() const { return height_; }

    /// r^2 = 3 ||adj Pi||_inf (K0 - 1) T / |Delta|; every point of V_T has |s|,|t| <= r.
    [[nodiscard]] Rational box_radius_squared(const Bound& t) const;
    [[nodiscard]] double box_radius(const Bound& t) const;
    [[nodiscard]] i64 box_radius_floor(const Bound& t) const;

    /// Integer s-ranges covering {s : ||q(s,t)|| <= T} at fixed t (superset; merged, sorted).
    [[nodiscard]] std::vector<std::pair<i64, i64>> s_ranges(i64 t, const Bound& bound, i64 clip) const;
    /// Lebesgue measure of {s : ||q(s,t)|| <= T}.
    [[nodiscard]] double s_length(double t, double bound) const;
    /// sup of t over V_T.
    [[nodiscard]] double t_extent(double bound) const;

    /// Calls visit(s, t, q(s,t)) for every integer (s,t) in V_T with (s,t) = (sigma,tau) mod n.
    void for_each_point(const Bound& bound, i64 n, i64 sigma, i64 tau,
                        const std::function<void(i64, i64, const I128Vec3&)>& visit) const;
    /// Same, for several classes mod n in one sweep over t.
    void for_each_point(const Bound& bound, i64 n, const std::vector<std::pair<i64, i64>>& classes,
                        const std::function<void(i64, i64, const I128Vec3&)>& visit) const;

private:
    struct Row {
        long double c_ss, c_st, c_tt;
    };
    [[nodiscard]] std::vector<std::pair<long double, long double>> s_intervals(long double t, long double w) const;

    ParamSystem system_;
    IsometricNorm norm_;
    Rational k0_;
    i64 adj_sup_;
    i64 height_;
    std::array<Row, 3> rows_;
};

/// N(Q,B) by enumerating x with ||x||_inf <= (K0-1) B and solving for one coordinate.
inline constexpr i64 kBruteCap = 10000;
[[nodiscard]] i64 count_N_brute(const TernaryQuadraticForm& q, const IsometricNorm& norm, i64 b,
                                i64 cap = kBruteCap);

[[nodiscard]] double bounding_box(const SpecialConic& s, const IsometricNorm& norm, const Bound& t);

[[nodiscard]] double volume_V(const ParamRegion& region, double tol);
[[nodiscard]] inline double volume_V(const SpecialConic& s, const IsometricNorm& norm, double tol)
{
    return volume_V(ParamRegion(s, norm), tol);
}

[[nodiscard]] i64 count_M(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau);
[[nodiscard]] i64 count_M_star(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau);
/// #{(s,t) primitive, t > 0, ||q(s,t)|| <= lambda B}, lambda = gcd(q(s,t)).
[[nodiscard]] i64 count_N_script(const ParamRegion& region, i64 b);

/// Right-hand side of the Moebius/residue-class decomposition of count_N_script.
[[nodiscard]] i64 script_n_by_decomposition(const ParamRegion& region, i64 b);
/// Right-hand side of the Moebius inversion for M*: sum over m <= sqrt(2 T K0 / n), gcd(m,n) = 1.
/// Requires gcd(sigma,tau,n) = 1 and n | q(sigma,tau).
[[nodiscard]] i64 m_star_by_inversion(const ParamRegion& region, const Bound& t, i64 n, i64 sigma, i64 tau);

/// |M - vol T / n^2| / (1 + sqrt(K0 T)/n * <Q> / sqrt|Delta|).
[[nodiscard]] double lattice_error_ratio(const ParamRegion& region, double volume, const Bound& t, i64 n, i64 sigma,
                                         i64 tau);

struct CountCorrection {
    std::string label;
    i64 vectors;
};

struct CountReport {
    i64 b = 0;
    std::optional<i64> n_brute;
    std::optional<i64> n_param;
    std::optional<i64> script_n;
    std::vector<CountCorrection> corrections;
    double elapsed_ms_brute = 0;
    double elapsed_ms_param = 0;
    std::optional<IVec3> zero;
    std::optional<UnimodularMatrix> transform_matrix;
    std::optional<TernaryQuadraticForm> transformed_form;
};

/// Reduction to the special shape: a primitive zero xi, M in SL3(Z) with M e2 = xi,
/// Q' = Q o M (special) and the norm x -> ||M x||.
struct SpecialReduction {
    IVec3 zero;
    UnimodularMatrix m;
    SpecialConic special;
    IsometricNorm norm;
};
[[nodiscard]] SpecialReduction reduce_to_special(const TernaryQuadraticForm& q, const IsometricNorm& norm,
                                                 std::optional<i64> zero_cap = std::nullopt);

/// N(Q,B) through the parametrization of Q' with exact, logged corrections.
[[nodiscard]] CountReport count_N_param(const TernaryQuadraticForm& q, const IsometricNorm& norm, i64 b,
                                        std::optional<i64> zero_cap = std::nullopt);

}  // namespace conics

#endif  // CONICS_COUNTING_HPP
