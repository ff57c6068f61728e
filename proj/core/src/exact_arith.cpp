#include "hallseek/exact_arith.hpp"

#include <cmath>
#include <stdexcept>

namespace hallseek {

Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    if (n < 2) return n;

    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    Int x;
    if (bits <= 1000) {
        // Seed from the double approximation; the +2 pad usually puts the
        // seed at or above the true root so the descent is short.
        x = Int(std::sqrt(n.get_d())) + 2;
    } else {
        x = 1;
        x <<= (bits + 1) / 2;
    }

    // One forced step first: by AM-GM it lands at or just above the floor
    // root even when the seed is far below it. The descent then terminates
    // within a unit of the floor.
    x = (x + n / x) >> 1;
    Int y = (x + n / x) >> 1;
    while (y < x) {
        x = y;
        y = (x + n / x) >> 1;
    }

    // Exact floor correction; never trust the last digit to the iteration.
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

Int nearest_root_square(const Int& n) {
    if (n < 1) throw std::domain_error("nearest_root_square: requires n >= 1");
    Int s = isqrt(n);
    // n - s^2 <= s  <=>  s nearer than s + 1 (equality cannot occur).
    if (n - s * s <= s) return s;
    return s + 1;
}

HallPoint hall_k(const Int& x) {
    if (x < 2) throw std::domain_error("hall_k: requires x >= 2");
    Int cube;
    mpz_pow_ui(cube.get_mpz_t(), x.get_mpz_t(), 3);
    Int y = nearest_root_square(cube);
    Int k = cube - y * y;
    return HallPoint{x, y, k};
}

bool ratio_at_least(const Int& x, const Int& k, const Threshold& theta) {
    if (k == 0) throw std::invalid_argument("ratio_at_least: k must be nonzero");
    if (theta.p < 1 || theta.q < 1)
        throw std::invalid_argument("ratio_at_least: threshold must be positive");
    return theta.q * theta.q * x >= theta.p * theta.p * k * k;
}

namespace {

Int pow10(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// Renders v (a value scaled by 10^digits) with the decimal point restored.
std::string place_decimal(const Int& v, int digits) {
    std::string s = v.get_str();
    if (digits == 0) return s;
    if (static_cast<int>(s.size()) <= digits)
        s.insert(0, std::string(digits + 1 - s.size(), '0'));
    s.insert(s.size() - digits, ".");
    return s;
}

constexpr int kGuardDigits = 6;

}  // namespace

std::string ratio_decimal(const Int& x, const Int& k, int digits) {
    if (k == 0) throw std::invalid_argument("ratio_decimal: k must be nonzero");
    if (digits < 0) throw std::invalid_argument("ratio_decimal: digits < 0");
    // sqrt(x) * 10^(digits+g) / |k|, then drop the g guard digits rounding
    // half-up.
    Int s = isqrt(x * pow10(2 * (digits + kGuardDigits)));
    Int den = abs(k) * pow10(kGuardDigits);
    Int q = (2 * s + den) / (2 * den);
    return place_decimal(q, digits);
}

std::string inv_ratio_decimal(const Int& x, const Int& k, int digits) {
    if (k == 0) throw std::invalid_argument("inv_ratio_decimal: k must be nonzero");
    if (digits < 0) throw std::invalid_argument("inv_ratio_decimal: digits < 0");
    if (x < 1) throw std::domain_error("inv_ratio_decimal: requires x >= 1");
    // |k| * 10^digits / sqrt(x) with sqrt(x) held to g guard digits.
    Int s = isqrt(x * pow10(2 * kGuardDigits));
    Int num = abs(k) * pow10(digits + kGuardDigits);
    Int q = (2 * num + s) / (2 * s);
    return place_decimal(q, digits);
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_nearest_point(const HallPoint& p) {
    if (p.x < 1 || p.y < 0) return false;
    Int cube;
    mpz_pow_ui(cube.get_mpz_t(), p.x.get_mpz_t(), 3);
    if (cube - p.y * p.y != p.k) return false;
    return p.y == nearest_root_square(cube);
}

}  // namespace hallseek
