#ifndef CONICS_TESTS_FORMS_HPP
#define CONICS_TESTS_FORMS_HPP

#include "conics/quadform.hpp"

namespace conics::testing {

// x^2 - yz
inline SpecialConic q0() { return {1, 0, 0, -1, 0}; }
// x^2 + 3xy + 5yz + 7z^2
inline SpecialConic q1() { return {1, 3, 0, 5, 7}; }

}  // namespace conics::testing

#endif
