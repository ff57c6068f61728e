#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallseek/evaluator.hpp"
#include "hallseek/exact_arith.hpp"

namespace hallseek {

/// One observation |k|/sqrt(x) for the distribution analysis; the ratio is
/// kept exact as (k, x) with a decimal rendering for reports.
struct RatioSample {
    Int x;
    Int k;                      // nonzero
    std::string ratio_display;  // |k|/sqrt(x) to 6 decimals
};

struct BruteResult {
    std::vector<RatioSample> samples;  // |k| <= n_max sqrt(x), exact test k^2 <= n_max^2 x
    std::vector<Hit> hits;             // |k| <= sqrt(x)
    std::uint64_t scanned = 0;
};

// Exhaustive nearest-root scan of k(x) over [x_lo, x_hi]. y is tracked
// incrementally across consecutive x and corrected by a few unit steps; the
// tracked value is re-asserted against a full integer square root every 2^16
// steps. Ranges whose cubes fit 128 bits run on machine words, the rest on
// big integers. Requires 2 <= x_lo <= x_hi, n_max >= 1. threads = 0 picks
// the hardware count; results merge in x order.
BruteResult brute_scan(const Int& x_lo, const Int& x_hi, const Int& n_max, unsigned threads = 0);

}  // namespace hallseek
