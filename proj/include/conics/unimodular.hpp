#ifndef CONICS_UNIMODULAR_HPP
#define CONICS_UNIMODULAR_HPP

#include "conics/quadform.hpp"

namespace conics {

/// Entry bound constant c in ||M||_inf <= c * max(1, ||a||_inf).
inline constexpr i64 kCompletionBound = 3;

/// An SL3(Z) matrix whose second column is the primitive vector `a`, with
/// entries of size O(||a||_inf). Deterministic. Rejects zero or non-primitive input.
[[nodiscard]] UnimodularMatrix complete_to_sl3(const IVec3& a);

/// True when m satisfies every postcondition of complete_to_sl3 for `a`.
[[nodiscard]] bool satisfies_completion_contract(const UnimodularMatrix& m, const IVec3& a,
                                                 i64 bound = kCompletionBound);

}  // namespace conics

#endif  // CONICS_UNIMODULAR_HPP
