#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hallseek/exact_arith.hpp"
#include "hallseek/modular.hpp"

namespace hallseek {

/// One unit of the search: denominator b and intercept parameter C = c2/2.
/// C is carried exclusively as c2 = 2C so half-integer values stay exact.
/// Invariants: gcd(c2, b) = 1, and c2 odd whenever b is even.
struct SearchCell {
    std::int64_t b = 2;
    Int c2 = 1;

    friend bool operator==(const SearchCell&, const SearchCell&) = default;
};

/// A fully lifted candidate: the integers a whose class polynomial has its
/// minimum near the origin, i.e. the x0 = (a^2 - alpha)/b^2 most likely to
/// give small k. Satisfies 2a^3 - 3*alpha*a + c2 == 0 (mod 2b^3) exactly.
struct Candidate {
    SearchCell cell;
    Int a0;     // cube root of c2 mod b^2
    Int alpha;  // balanced residue of a^2 mod b^2 (equal for a and a0)
    Int d;      // gcd(3(2 a0^2 - alpha), 2b)
    Int k0;     // lift residue mod 2b/d
    Int n;      // selected multiple of 2b^3/d, window offsets included
    Int a;      // a0 + k0 b^2 + n (2b^3/d)
    Int x0;     // (a^2 - alpha)/b^2
};

struct BuildStats {
    std::uint64_t roots = 0;
    std::uint64_t lifts_failed = 0;
    std::uint64_t discarded = 0;  // a <= b or gcd(a, b) != 1
};

// All cells for this b: c2 in [1, cap] with cap = override or floor(2*b^u),
// coprime to b, and odd when b is even.
std::vector<SearchCell> admissible_cells(std::int64_t b, const Rat& u,
                                         const std::optional<Int>& c2_cap_override = {});

// All roots of a^3 == c2 (mod b^2); empty ends the cell.
std::vector<Int> solve_a0(const SearchCell& cell);

struct Lift {
    Int d;
    Int k0;
};

// Lift a root mod b^2 to the congruence mod 2b^3. Returns nothing when the
// divisibility d*b^2 | (2 a0^3 - 3 alpha a0 + c2) fails (counted upstream,
// not fatal).
std::optional<Lift> lift_k0(std::int64_t b, const Int& a0, const Int& alpha, const Int& c2);

// n = round((d/(2b^3)) * (3 alpha^2 / (4 c2) - a0 - k0 b^2)) in exact
// rational arithmetic, half away from zero.
Int select_n(std::int64_t b, const Int& c2, const Int& alpha, const Int& a0, const Int& k0,
             const Int& d);

// The full cell pipeline: every root, every n in [n* - w, n* + w], degenerate
// a filtered out, the defining congruence checked by direct substitution on
// every candidate before it is emitted (throws std::logic_error if violated).
std::vector<Candidate> build_candidates(const SearchCell& cell, int n_window,
                                        BuildStats* stats = nullptr);

// 2a^3 + 3(b^2 i - alpha) a + c2 == 0 (mod 2b^3), alpha recomputed from a.
bool lemma_congruence_holds(const Int& a, std::int64_t b, const Int& c2, std::int64_t i);

// k in the cleared-denominator form
//   4 b^6 k = -4 c2 a^3 + 3 D^2 a^2 - 6 c2 D a - c2^2 + 4 D^3,  D = b^2 i - alpha.
// The division by 4b^6 is exact iff the congruence above holds; a non-exact
// division throws std::domain_error.
Int k_from_lemma(const Int& a, std::int64_t b, const Int& c2, std::int64_t i);

/// P0(z) = z^3 + (3/4) t^2 z^2 - (3C/b^3) t z - (2C/b^3) t^3 - C^2/b^6 with
/// t = a/b, C = c2/2, plus the parabola-vertex estimate
/// (3/4) t^2 (alpha/b^2)^2 - (c2/b^3) t^3.
struct P0Polynomial {
    std::array<Rat, 4> coeff;  // index = degree in z
    Rat vertex_estimate;

    Rat eval(const Rat& z) const;
};

P0Polynomial polynomial_p0(std::int64_t b, const Int& c2, const Int& a);

}  // namespace hallseek
