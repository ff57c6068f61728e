#pragma once

#include <vector>

#include "hallseek/exact_arith.hpp"

namespace hallseek {

enum class FamilyKind { hall, fermat_pell, scaled };

/// A member of one of the parametric solution families. The point satisfies
/// x^3 - y^2 = k exactly; membership is always verified numerically rather
/// than trusting printed identities.
struct FamilyMember {
    FamilyKind family;
    Int t;
    HallPoint point;
};

// The degree-10 polynomial family: x = (t/9)(t^9 + 6t^6 + 15t^3 + 12),
// y = |t^15/27 + (t^12 + 4t^9 + 8t^6)/3 + (5t^3 + 1)/2|, evaluated in exact
// rational arithmetic, with k = -(3t^6 + 14t^3 + 27)/108. Requires
// t == 3 (mod 6); negative t allowed. Non-integral values of x or y signal a
// transcription error and throw std::logic_error.
FamilyMember hall_family(const Int& t);

// The quadratic (Fermat-Pell style) generator x(t) = 3125 t^2 + 3000 t + 719.
Int fermat_pell_x(const Int& t);

// Scan t in [t_lo, t_hi], evaluating k(x(t)) directly and keeping members
// with k != 0 and ratio >= theta. threads = 0 picks the hardware count.
std::vector<FamilyMember> fermat_pell_scan(const Int& t_lo, const Int& t_hi,
                                           const Threshold& theta, unsigned threads = 0);

// (x, y, k) -> (t^2 x, t^3 y, t^6 k), the equation re-asserted. Nearest-ness
// of t^3 y is not claimed, only equation membership. Requires t >= 1.
HallPoint scale_solution(const HallPoint& point, const Int& t);

}  // namespace hallseek
