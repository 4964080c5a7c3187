#ifndef CONICS_ZEROS_HPP
#define CONICS_ZEROS_HPP

#include <functional>
#include <optional>
#include <string>

#include "conics/quadform.hpp"

namespace conics {

/// Calls `visit` for every nonzero integer x with ||x||_inf <= radius and Q(x) = 0,
/// primitive or not. Cost is O(radius^2): one coordinate is solved for exactly.
void for_each_zero_in_box(const TernaryQuadraticForm& q, i64 radius, const std::function<void(const IVec3&)>& visit);

struct PrimitiveZero {
    IVec3 xi;
    i64 search_radius_used;
};

struct ZeroSearchResult {
    std::optional<PrimitiveZero> zero;
    i64 cap = 0;
    /// True when the cap reached 3 <Q>, so a miss means Q has no rational zero.
    bool conclusive = false;
    [[nodiscard]] std::string message() const;
};

[[nodiscard]] i64 default_zero_cap(const TernaryQuadraticForm& q);

/// Smallest primitive zero by sup norm, ties broken by (|x|,|y|,|z|) then by
/// preferring nonnegative coordinates. Radii 1, 2, 4, ... up to cap.
[[nodiscard]] ZeroSearchResult find_primitive_zero(const TernaryQuadraticForm& q, i64 cap);
[[nodiscard]] inline ZeroSearchResult find_primitive_zero(const TernaryQuadraticForm& q)
{
    return find_primitive_zero(q, default_zero_cap(q));
}

}  // namespace conics

#endif  // CONICS_ZEROS_HPP
