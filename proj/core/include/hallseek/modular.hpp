#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hallseek/exact_arith.hpp"

namespace hallseek {

/// A positive integer together with its complete prime-power factorization,
/// factors sorted by increasing prime.
struct FactoredInteger {
    Int n = 1;
    std::vector<std::pair<Int, unsigned>> factors;

    /// n^k with every exponent scaled; the cheap way to factor b^2 given b.
    FactoredInteger pow(unsigned k) const;

    friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;
};

// Complete factorization: trial division against the prime table, then a
// Brent-cycle rho with a primality test for the cofactor. Requires n >= 1;
// factorize(1) is the empty factorization.
FactoredInteger factorize(const Int& n);

// The representative alpha == v (mod m) with -m/2 < alpha <= m/2
// (a tie at exactly m/2 resolves to +m/2). Requires m >= 1.
Int balanced_residue(const Int& v, const Int& m);

// Inverse of a modulo m in [0, m). Throws std::invalid_argument when
// gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

// The complete set {r in [0, p^e) : r^3 == m (mod p^e)}, sorted. Empty when
// m is a cubic non-residue. Requires p prime, e >= 1, and gcd(m, p) = 1
// (p | m throws: such inputs are excluded upstream by gcd(2C, b) = 1).
std::vector<Int> cube_roots_mod_prime_power(const Int& m, const Int& p, unsigned e);

// The complete root set mod modulus.n, assembled by CRT over all
// combinations of prime-power roots. Cardinality is the product of the
// per-factor cardinalities. Requires gcd(m, modulus.n) = 1.
std::vector<Int> cube_roots_mod(const Int& m, const FactoredInteger& modulus);

// Primes below 10^6, sieved once and read-only thereafter.
const std::vector<std::uint32_t>& small_primes();

bool probably_prime(const Int& n);

}  // namespace hallseek
