#include "hallseek/modular.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hallseek {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Modular-arithmetic primitives shared by the u64 fast path and the big
// integer path. The u64 instantiation is only entered for moduli <= 2^62 so
// the intermediate 2p / 3p products below cannot overflow.
template <class Z>
struct Ops;

template <>
struct Ops<u64> {
    static u64 mul(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }
    static u64 pow(u64 b, u64 e, u64 m) {
        u64 r = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) r = mul(r, b, m);
            b = mul(b, b, m);
            e >>= 1;
        }
        return r;
    }
};

template <>
struct Ops<Int> {
    static Int mul(const Int& a, const Int& b, const Int& m) { return Int((a * b) % m); }
    static Int pow(const Int& b, const Int& e, const Int& m) {
        Int r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        return r;
    }
};

// All cube roots of m modulo a prime p with p not dividing m.
//
// p == 2 (mod 3): cubing is a bijection on the units, inverted by the
// exponent (2p-1)/3. p == 1 (mod 3): residue test by m^((p-1)/3), then one
// root by the Adleman-Manders-Miller extraction and the full set by
// multiplying with the cube roots of unity.
template <class Z>
std::vector<Z> cube_roots_mod_prime(Z m, Z p) {
    m = m % p;
    if (p == 2 || p == 3) return {m};  // r^3 == r in both prime fields
    if (p % 3 == 2) {
        Z e = (2 * p - 1) / 3;
        return {Ops<Z>::pow(m, e, p)};
    }

    Z third = (p - 1) / 3;
    if (Ops<Z>::pow(m, third, p) != 1) return {};

    // p - 1 = 3^s * t with 3 not dividing t.
    Z t = p - 1;
    unsigned s = 0;
    while (t % 3 == 0) {
        t /= 3;
        ++s;
    }
    // Deterministic scan for a cubic non-residue.
    Z g = 2;
    while (Ops<Z>::pow(g, third, p) == 1) ++g;
    Z h = Ops<Z>::pow(g, t, p);  // generates the Sylow 3-subgroup, order 3^s

    // aexp solves 3*aexp == 1 (mod t); then root0^3 = m * (m^t)^j.
    Z aexp = (t % 3 == 1) ? Z((2 * t + 1) / 3) : Z((t + 1) / 3);
    Z j = (3 * aexp - 1) / t;  // 1 or 2
    Z root0 = Ops<Z>::pow(m, aexp, p);
    Z big_a = Ops<Z>::pow(m, t, p);

    Z hinv = Ops<Z>::pow(h, p - 2, p);
    Z pw3 = 1;  // 3^(s-1)
    for (unsigned i = 0; i + 1 < s; ++i) pw3 = pw3 * 3;
    Z omega = Ops<Z>::pow(h, pw3, p);  // order 3

    // Pohlig-Hellman digits of dlog_h(big_a); m a cube forces 3 | dlog.
    Z dlog = 0;
    Z cur = big_a;
    Z pw = 1;
    for (unsigned i = 0; i < s; ++i) {
        Z e = 1;
        for (unsigned q = 0; q + 1 + i < s; ++q) e = e * 3;
        Z w = Ops<Z>::pow(cur, e, p);
        unsigned digit = (w == 1) ? 0u : ((w == omega) ? 1u : 2u);
        if (digit) {
            dlog = dlog + Z(digit) * pw;
            cur = Ops<Z>::mul(cur, Ops<Z>::pow(hinv, Z(digit) * pw, p), p);
        }
        pw = pw * 3;
    }

    Z corr = (dlog / 3) * j;
    Z r = Ops<Z>::mul(root0, Ops<Z>::pow(hinv, corr, p), p);
    Z omega2 = Ops<Z>::mul(omega, omega, p);
    std::vector<Z> roots{r, Ops<Z>::mul(r, omega, p), Ops<Z>::mul(r, omega2, p)};
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Lift roots of r^3 == m from mod p to mod p^e. For p != 3 the derivative
// 3r^2 is invertible and each root lifts uniquely (Hensel). For p = 3 the
// derivative vanishes mod 3, so each level scans the three branches
// r + j*3^lvl and keeps the survivors.
template <class Z>
std::vector<Z> lift_cube_roots(const Z& m, const Z& p, unsigned e, std::vector<Z> roots) {
    Z mod = p;
    for (unsigned lvl = 1; lvl < e; ++lvl) {
        Z nextmod = mod * p;
        Z mred = m % nextmod;
        std::vector<Z> next;
        if (p == 3) {
            for (const Z& r : roots) {
                for (unsigned b = 0; b < 3; ++b) {
                    Z cand = r + Z(b) * mod;
                    Z c3 = Ops<Z>::mul(Ops<Z>::mul(cand, cand, nextmod), cand, nextmod);
                    if (c3 == mred) next.push_back(cand);
                }
            }
        } else {
            for (const Z& r : roots) {
                Z fr = Ops<Z>::mul(Ops<Z>::mul(r, r, nextmod), r, nextmod);
                fr = (fr + nextmod - mred) % nextmod;  // r^3 - m, divisible by mod
                Z u = fr / mod;
                Z der = Ops<Z>::mul(Ops<Z>::mul(Z(3) % p, r % p, p), r % p, p);
                Z delta = Ops<Z>::mul(u, Ops<Z>::pow(der, p - 2, p), p);
                Z cand = (r + nextmod - delta * mod) % nextmod;
                next.push_back(cand);
            }
        }
        roots = std::move(next);
        mod = nextmod;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Deterministic enough for every input we factor; GMP's test is BPSW plus
// Miller-Rabin rounds.
bool probably_prime_impl(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

u64 brent_rho_u64(u64 n) {
    // n odd composite with no factor below the trial-division bound
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto step = [&](u64 v) { return (Ops<u64>::mul(v, v, n) + c) % n; };
        do {
            x = step(x);
            y = step(step(y));
            d = gcd_u64(x > y ? x - y : y - x, n);
        } while (d == 1);
        if (d != n) return d;
    }
}

Int rho_split(const Int& n) {
    if (mpz_fits_ulong_p(n.get_mpz_t())) return Int(brent_rho_u64(n.get_ui()));
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto step = [&](const Int& v) { return Int((v * v + c) % n); };
        do {
            x = step(x);
            y = step(step(y));
            Int diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (d == 1);
        if (d != n) return d;
    }
}

void split_into_primes(const Int& v, std::map<Int, unsigned>& acc) {
    if (v == 1) return;
    if (probably_prime_impl(v)) {
        ++acc[v];
        return;
    }
    Int f = rho_split(v);
    split_into_primes(f, acc);
    split_into_primes(Int(v / f), acc);
}

constexpr u64 kU64ModulusCap = u64(1) << 62;

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t n = 1'000'000;
        std::vector<bool> composite(n + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= n; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (u64 j = u64(i) * i; j <= n; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool probably_prime(const Int& n) { return n > 1 && probably_prime_impl(n); }

FactoredInteger FactoredInteger::pow(unsigned k) const {
    FactoredInteger out;
    if (k == 0) return out;
    mpz_pow_ui(out.n.get_mpz_t(), n.get_mpz_t(), k);
    out.factors.reserve(factors.size());
    for (const auto& [p, e] : factors) out.factors.emplace_back(p, e * k);
    return out;
}

FactoredInteger factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize: requires n >= 1");
    FactoredInteger out;
    out.n = n;
    if (n == 1) return out;

    Int rem = n;
    for (std::uint32_t p : small_primes()) {
        if (Int(p) * p > rem) break;
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                rem /= p;
                ++e;
            } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
            out.factors.emplace_back(Int(p), e);
        }
    }
    if (rem > 1) {
        std::map<Int, unsigned> tail;
        split_into_primes(rem, tail);
        for (const auto& [p, e] : tail) out.factors.emplace_back(p, e);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Int balanced_residue(const Int& v, const Int& m) {
    if (m < 1) throw std::invalid_argument("balanced_residue: requires m >= 1");
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;  // tie at exactly m/2 stays at +m/2
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    if (m < 1) throw std::invalid_argument("mod_inverse: requires m >= 1");
    if (m == 1) return 0;
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::invalid_argument("mod_inverse: input not invertible");
    return r;
}

std::vector<Int> cube_roots_mod_prime_power(const Int& m, const Int& p, unsigned e) {
    if (p < 2 || e < 1) throw std::invalid_argument("cube_roots_mod_prime_power: bad modulus");
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("cube_roots_mod_prime_power: p divides m");

    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    Int mred;
    mpz_mod(mred.get_mpz_t(), m.get_mpz_t(), pe.get_mpz_t());

    if (pe <= Int(kU64ModulusCap)) {
        u64 pu = p.get_ui();
        u64 mu = mpz_class(mred % p).get_ui();
        std::vector<u64> base = cube_roots_mod_prime<u64>(mu, pu);
        std::vector<u64> lifted = lift_cube_roots<u64>(mred.get_ui(), pu, e, std::move(base));
        std::vector<Int> out;
        out.reserve(lifted.size());
        for (u64 r : lifted) out.emplace_back(r);
        return out;
    }
    std::vector<Int> base = cube_roots_mod_prime<Int>(Int(mred % p), p);
    return lift_cube_roots<Int>(mred, p, e, std::move(base));
}

std::vector<Int> cube_roots_mod(const Int& m, const FactoredInteger& modulus) {
    Int g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), modulus.n.get_mpz_t());
    if (g != 1) throw std::invalid_argument("cube_roots_mod: gcd(m, modulus) != 1");
    if (modulus.n == 1) return {Int(0)};

    std::vector<Int> res{Int(0)};
    Int mod = 1;
    for (const auto& [p, e] : modulus.factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        std::vector<Int> roots = cube_roots_mod_prime_power(m, p, e);
        if (roots.empty()) return {};
        Int minv = mod_inverse(Int(mod % pe), pe);
        std::vector<Int> next;
        next.reserve(res.size() * roots.size());
        for (const Int& r1 : res) {
            for (const Int& r2 : roots) {
                Int diff;
                mpz_mod(diff.get_mpz_t(), Int(r2 - r1).get_mpz_t(), pe.get_mpz_t());
                next.push_back(Int(r1 + mod * Int((diff * minv) % pe)));
            }
        }
        res = std::move(next);
        mod *= pe;
    }
    std::sort(res.begin(), res.end());
    return res;
}

}  // namespace hallseek
