#include "hallseek/families.hpp"

#include <stdexcept>
#include <thread>

namespace hallseek {

namespace {

Int rat_to_int(const Rat& v, const char* what) {
    if (v.get_den() != 1) throw std::logic_error(std::string(what) + ": non-integral value");
    return v.get_num();
}

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Int pow_int(const Int& b, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

FamilyMember hall_family(const Int& t) {
    Int m;
    mpz_mod(m.get_mpz_t(), t.get_mpz_t(), Int(6).get_mpz_t());
    if (m != 3) throw std::invalid_argument("hall_family: requires t == 3 (mod 6)");

    const Int t3 = pow_int(t, 3), t6 = pow_int(t, 6), t9 = pow_int(t, 9);
    const Int t12 = pow_int(t, 12), t15 = pow_int(t, 15);

    Rat fx = make_rat(t, 9) * make_rat(Int(t9 + 6 * t6 + 15 * t3 + 12), 1);
    Rat gy = make_rat(t15, 27) + make_rat(Int(t12 + 4 * t9 + 8 * t6), 3) +
             make_rat(Int(5 * t3 + 1), 2);
    Rat kq = make_rat(Int(-(3 * t6 + 14 * t3 + 27)), 108);

    Int x = rat_to_int(fx, "hall_family x");
    Int y = abs(rat_to_int(gy, "hall_family y"));
    Int k = rat_to_int(kq, "hall_family k");
    if (pow_int(x, 3) - y * y != k)
        throw std::logic_error("hall_family: x^3 - y^2 != k");
    return FamilyMember{FamilyKind::hall, t, HallPoint{x, y, k}};
}

Int fermat_pell_x(const Int& t) { return 3125 * t * t + 3000 * t + 719; }

namespace {

void fp_scan_range(const Int& lo, const Int& hi, const Threshold& theta,
                   std::vector<FamilyMember>& out) {
    for (Int t = lo; t <= hi; ++t) {
        Int x = fermat_pell_x(t);
        HallPoint pt = hall_k(x);
        if (pt.k == 0) continue;
        if (!ratio_at_least(pt.x, pt.k, theta)) continue;
        out.push_back(FamilyMember{FamilyKind::fermat_pell, t, pt});
    }
}

}  // namespace

std::vector<FamilyMember> fermat_pell_scan(const Int& t_lo, const Int& t_hi,
                                           const Threshold& theta, unsigned threads) {
    if (t_lo > t_hi) return {};
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    Int span = t_hi - t_lo + 1;
    if (threads > 1 && span < 1024) threads = 1;

    if (threads == 1) {
        std::vector<FamilyMember> out;
        fp_scan_range(t_lo, t_hi, theta, out);
        return out;
    }

    // Partition by t range; each chunk is independent and results merge in
    // t order.
    std::vector<std::vector<FamilyMember>> parts(threads);
    std::vector<std::thread> pool;
    Int chunk = span / static_cast<long>(threads);
    for (unsigned i = 0; i < threads; ++i) {
        Int lo = t_lo + chunk * static_cast<long>(i);
        Int hi = (i + 1 == threads) ? t_hi : Int(lo + chunk - 1);
        pool.emplace_back([lo, hi, &theta, &parts, i] { fp_scan_range(lo, hi, theta, parts[i]); });
    }
    for (auto& th : pool) th.join();

    std::vector<FamilyMember> out;
    for (auto& part : parts)
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    return out;
}

HallPoint scale_solution(const HallPoint& point, const Int& t) {
    if (t < 1) throw std::invalid_argument("scale_solution: requires t >= 1");
    if (pow_int(point.x, 3) - point.y * point.y != point.k)
        throw std::invalid_argument("scale_solution: input is not a solution");
    HallPoint scaled{point.x * t * t, point.y * pow_int(t, 3), point.k * pow_int(t, 6)};
    if (pow_int(scaled.x, 3) - scaled.y * scaled.y != scaled.k)
        throw std::logic_error("scale_solution: scaled point failed re-verification");
    return scaled;
}

}  // namespace hallseek
