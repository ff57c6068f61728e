#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hallseek {

using Int = mpz_class;
using Rat = mpq_class;

/// One solution record of x^3 - y^2 = k. hall_k() is the canonical
/// constructor and guarantees y is the nearest integer to x^{3/2};
/// scale_solution() produces points that satisfy the equation but whose y
/// is not necessarily nearest.
struct HallPoint {
    Int x;
    Int y;
    Int k;  // x^3 - y^2

    friend bool operator==(const HallPoint&, const HallPoint&) = default;
};

/// Exact rational threshold p/q for the figure of merit sqrt(x)/|k|.
struct Threshold {
    Int p = 1;
    Int q = 1;

    friend bool operator==(const Threshold&, const Threshold&) = default;
};

// Floor square root by Newton iteration on big integers, with exact floor
// correction for the final digit. Throws std::domain_error for n < 0.
Int isqrt(const Int& n);

// The unique y in {s, s+1}, s = isqrt(n), minimizing |n - y^2|. A tie is
// impossible: it would force 2n = 2s^2 + 2s + 1, odd = even. Requires n >= 1.
Int nearest_root_square(const Int& n);

// k(x) = x^3 - round(x^{3/2})^2 with y the nearest root. Requires x >= 2
// (x = 1 is trivially k = 0 and rejected at this boundary).
HallPoint hall_k(const Int& x);

// Exact test sqrt(x)/|k| >= p/q, decided as q^2 x >= p^2 k^2.
// Requires k != 0 and p, q >= 1.
bool ratio_at_least(const Int& x, const Int& k, const Threshold& theta);

// sqrt(x)/|k| rounded half-up to `digits` decimals, computed from an integer
// square root of x scaled by guard digits. Requires k != 0, digits >= 0.
std::string ratio_decimal(const Int& x, const Int& k, int digits);

// |k|/sqrt(x) rounded half-up to `digits` decimals (the sample-side ratio).
std::string inv_ratio_decimal(const Int& x, const Int& k, int digits);

bool is_perfect_square(const Int& n);

// Equation membership plus nearest-ness of y; used by validation paths.
bool is_nearest_point(const HallPoint& p);

}  // namespace hallseek
