#include "hallseek/evaluator.hpp"

#include <stdexcept>

namespace hallseek {

namespace {

// Hits below this are tiny-x noise; the x = 2 row comes from the bundled
// table, not the search.
constexpr long kMinHitX = 10;

}  // namespace

Hit make_hit(const HallPoint& point, HitSource source, std::optional<std::int64_t> b,
             std::optional<Int> c2, std::optional<Int> a) {
    return Hit{point, ratio_decimal(point.x, point.k, 2), b, std::move(c2), std::move(a), source};
}

std::vector<Hit> evaluate_candidate(const Candidate& cand, int i_window, const Threshold& theta) {
    if (i_window < 0) throw std::invalid_argument("evaluate_candidate: i_window < 0");
    std::vector<Hit> hits;
    for (long i = -i_window; i <= i_window; ++i) {
        Int x = cand.x0 + i;
        if (x < 2) continue;
        HallPoint pt = hall_k(x);
        if (pt.k == 0) continue;
        if (!ratio_at_least(pt.x, pt.k, theta)) continue;
        if (pt.x < kMinHitX) continue;
        // Belt and braces against pipeline bugs: re-verify the equation with
        // plain multiplications before anything is emitted.
        if (pt.x * pt.x * pt.x - pt.y * pt.y != pt.k)
            throw std::logic_error("evaluate_candidate: point failed re-verification");
        hits.push_back(make_hit(pt, HitSource::search, cand.cell.b, cand.cell.c2, cand.a));
    }
    return hits;
}

}  // namespace hallseek
