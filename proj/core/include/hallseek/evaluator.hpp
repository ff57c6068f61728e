#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hallseek/candidate.hpp"
#include "hallseek/exact_arith.hpp"

namespace hallseek {

enum class HitSource { search, brute, family_hall, family_fp, scaled, table };

/// A verified good example: k != 0 and sqrt(x)/|k| at least the run's
/// threshold. b/c2/a carry the discovering cell when the source is the
/// search pipeline and are absent otherwise.
struct Hit {
    HallPoint point;
    std::string r_display;  // sqrt(x)/|k| to 2 decimals
    std::optional<std::int64_t> b;
    std::optional<Int> c2;
    std::optional<Int> a;
    HitSource source = HitSource::search;

    friend bool operator==(const Hit&, const Hit&) = default;
};

// Exact evaluation of k(x) for x = x0 + i, |i| <= i_window. Emits a Hit for
// every x >= 10 with k != 0 and ratio >= theta; every point is re-verified
// by independent big-integer arithmetic before emission. Deterministic in
// (cand, i_window, theta).
std::vector<Hit> evaluate_candidate(const Candidate& cand, int i_window, const Threshold& theta);

Hit make_hit(const HallPoint& point, HitSource source,
             std::optional<std::int64_t> b = std::nullopt, std::optional<Int> c2 = std::nullopt,
             std::optional<Int> a = std::nullopt);

}  // namespace hallseek
