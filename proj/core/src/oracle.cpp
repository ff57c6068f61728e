#include "hallseek/oracle.hpp"

#include <stdexcept>
#include <thread>

namespace hallseek {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// x below this keeps x^3 comfortably inside 128 bits.
constexpr u64 kWordCutoff = 4'000'000'000'000ULL;

Int u128_to_int(u128 v) {
    Int hi(static_cast<unsigned long>(v >> 64));
    return (hi << 64) + Int(static_cast<unsigned long>(v));
}

void verify_tracked(const Int& x, const Int& y) {
    Int cube;
    mpz_pow_ui(cube.get_mpz_t(), x.get_mpz_t(), 3);
    if (nearest_root_square(cube) != y)
        throw std::logic_error("brute_scan: tracked y diverged from full recompute");
}

void emit(const Int& x, const Int& k, const Int& y, BruteResult& out) {
    out.samples.push_back(RatioSample{x, k, inv_ratio_decimal(x, k, 6)});
    if (k * k <= x) {
        HallPoint pt{x, y, k};
        // hits are rare; cross-check each against a fresh evaluation
        if (hall_k(x) != pt) throw std::logic_error("brute_scan: hit failed re-verification");
        out.hits.push_back(make_hit(pt, HitSource::brute));
    }
}

// Machine-word scan. Valid preconditions: hi <= kWordCutoff so x^3 and y^2
// fit u128, and n_max small enough that n_max^2 * x fits too.
BruteResult scan_words(u64 lo, u64 hi, u64 n_max) {
    BruteResult out;
    u128 c = u128(lo) * lo * lo;
    Int y0 = nearest_root_square(u128_to_int(c));
    u64 y = y0.get_ui();
    u128 ysq = u128(y) * y;
    u64 r = isqrt(Int(static_cast<unsigned long>(lo))).get_ui();

    for (u64 x = lo;; ++x) {
        if (x != lo) {
            c += 3 * (u128(x) * (x - 1)) + 1;
            while ((r + 1) * (r + 1) <= x) ++r;
            y += (3 * r) >> 1;  // predicted growth of x^{3/2}
            ysq = u128(y) * y;
        }
        // correct to the nearest root: k = c - y^2 must lie in (-y, y]
        while (c > ysq + y) {
            ysq += 2 * u128(y) + 1;
            ++y;
        }
        while (ysq > c && ysq - c >= y) {
            ysq -= 2 * u128(y) - 1;
            --y;
        }
        ++out.scanned;
        if ((x & 0xFFFF) == 0)
            verify_tracked(Int(static_cast<unsigned long>(x)), Int(static_cast<unsigned long>(y)));

        if (c != ysq) {
            const bool neg = ysq > c;
            u128 absk = neg ? ysq - c : c - ysq;
            // cheap filter: n_max sqrt(x) <= n_max (r+1)
            if (absk <= u128(n_max) * (r + 1)) {
                u64 ak = static_cast<u64>(absk);
                if (u128(ak) * ak <= u128(n_max) * n_max * x) {
                    Int kk(static_cast<unsigned long>(ak));
                    if (neg) kk = -kk;
                    emit(Int(static_cast<unsigned long>(x)), kk, Int(static_cast<unsigned long>(y)),
                         out);
                }
            }
        }
        if (x == hi) break;
    }
    return out;
}

// Big-integer scan with the same incremental structure.
BruteResult scan_wide(const Int& lo, const Int& hi, const Int& n_max) {
    BruteResult out;
    Int c;
    mpz_pow_ui(c.get_mpz_t(), lo.get_mpz_t(), 3);
    Int y = nearest_root_square(c);
    Int ysq = y * y;
    Int r = isqrt(lo);
    unsigned steps = 0;

    for (Int x = lo;; ++x) {
        if (x != lo) {
            c += 3 * x * (x - 1) + 1;
            while ((r + 1) * (r + 1) <= x) ++r;
            y += (3 * r) >> 1;
            ysq = y * y;
        }
        while (c > ysq + y) {
            ysq += 2 * y + 1;
            ++y;
        }
        while (ysq > c && ysq - c >= y) {
            ysq -= 2 * y - 1;
            --y;
        }
        ++out.scanned;
        if ((++steps & 0xFFFF) == 0) verify_tracked(x, y);

        if (c != ysq) {
            Int k = c - ysq;
            // cheap filter before the full-width square
            if (abs(k) <= n_max * (r + 1) && k * k <= n_max * n_max * x) emit(x, k, y, out);
        }
        if (x == hi) break;
    }
    return out;
}

BruteResult scan_range(const Int& lo, const Int& hi, const Int& n_max) {
    if (hi <= Int(static_cast<unsigned long>(kWordCutoff)) && n_max <= (Int(1) << 20)) {
        return scan_words(lo.get_ui(), hi.get_ui(), n_max.get_ui());
    }
    return scan_wide(lo, hi, n_max);
}

}  // namespace

BruteResult brute_scan(const Int& x_lo, const Int& x_hi, const Int& n_max, unsigned threads) {
    if (x_lo < 2 || x_lo > x_hi) throw std::invalid_argument("brute_scan: requires 2 <= x_lo <= x_hi");
    if (n_max < 1) throw std::invalid_argument("brute_scan: requires n_max >= 1");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    Int span = x_hi - x_lo + 1;
    if (span < 1 << 18) threads = 1;

    if (threads == 1) return scan_range(x_lo, x_hi, n_max);

    std::vector<BruteResult> parts(threads);
    std::vector<std::thread> pool;
    Int chunk = span / static_cast<long>(threads);
    for (unsigned i = 0; i < threads; ++i) {
        Int lo = x_lo + chunk * static_cast<long>(i);
        Int hi = (i + 1 == threads) ? x_hi : Int(lo + chunk - 1);
        pool.emplace_back([lo, hi, n_max, &parts, i] { parts[i] = scan_range(lo, hi, n_max); });
    }
    for (auto& th : pool) th.join();

    BruteResult out;
    for (auto& part : parts) {
        out.scanned += part.scanned;
        out.samples.insert(out.samples.end(), std::make_move_iterator(part.samples.begin()),
                           std::make_move_iterator(part.samples.end()));
        out.hits.insert(out.hits.end(), std::make_move_iterator(part.hits.begin()),
                        std::make_move_iterator(part.hits.end()));
    }
    return out;
}

}  // namespace hallseek
