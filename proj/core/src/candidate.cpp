#include "hallseek/candidate.hpp"

#include <stdexcept>

namespace hallseek {

namespace {

Int int_pow(std::int64_t base, unsigned e) {
    Int b(static_cast<long>(base));
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

void validate_cell(const SearchCell& cell) {
    if (cell.b < 2) throw std::invalid_argument("cell: requires b >= 2");
    if (cell.c2 < 1) throw std::invalid_argument("cell: requires c2 >= 1");
    Int g;
    Int b(static_cast<long>(cell.b));
    mpz_gcd(g.get_mpz_t(), cell.c2.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw std::invalid_argument("cell: gcd(c2, b) != 1");
    if (cell.b % 2 == 0 && mpz_even_p(cell.c2.get_mpz_t()))
        throw std::invalid_argument("cell: even b requires odd c2");
}

// Half-away-from-zero rounding of num/den, den > 0.
Int round_rational(const Int& num, const Int& den) {
    Int mag = (2 * abs(num) + den) / (2 * den);
    return num < 0 ? Int(-mag) : mag;
}

}  // namespace

std::vector<SearchCell> admissible_cells(std::int64_t b, const Rat& u,
                                         const std::optional<Int>& c2_cap_override) {
    if (b < 2) throw std::invalid_argument("admissible_cells: requires b >= 2");
    Int cap;
    if (c2_cap_override) {
        cap = *c2_cap_override;
    } else {
        // floor(2 b^(p/q)) = floor((2^q b^p)^(1/q))
        Int p = u.get_num(), q = u.get_den();
        if (p < 1 || q < 1) throw std::invalid_argument("admissible_cells: u must be positive");
        if (!p.fits_ulong_p() || !q.fits_ulong_p())
            throw std::invalid_argument("admissible_cells: u numerator/denominator too large");
        Int m;
        mpz_ui_pow_ui(m.get_mpz_t(), 2, q.get_ui());
        Int bp;
        mpz_pow_ui(bp.get_mpz_t(), Int(static_cast<long>(b)).get_mpz_t(), p.get_ui());
        m *= bp;
        mpz_root(cap.get_mpz_t(), m.get_mpz_t(), q.get_ui());
    }

    std::vector<SearchCell> cells;
    const bool even_b = (b % 2 == 0);
    Int bz(static_cast<long>(b));
    for (Int c2 = 1; c2 <= cap; ++c2) {
        if (even_b && mpz_even_p(c2.get_mpz_t())) continue;
        Int g;
        mpz_gcd(g.get_mpz_t(), c2.get_mpz_t(), bz.get_mpz_t());
        if (g != 1) continue;
        cells.push_back(SearchCell{b, c2});
    }
    return cells;
}

std::vector<Int> solve_a0(const SearchCell& cell) {
    validate_cell(cell);
    FactoredInteger b2 = factorize(Int(static_cast<long>(cell.b))).pow(2);
    return cube_roots_mod(cell.c2, b2);
}

std::optional<Lift> lift_k0(std::int64_t b, const Int& a0, const Int& alpha, const Int& c2) {
    const Int b2 = int_pow(b, 2);
    const Int two_b(static_cast<long>(2 * b));

    Int u = 3 * (2 * a0 * a0 - alpha);
    Int d;
    mpz_gcd(d.get_mpz_t(), u.get_mpz_t(), two_b.get_mpz_t());

    Int n_val = 2 * a0 * a0 * a0 - 3 * alpha * a0 + c2;
    Int db2 = d * b2;
    if (!mpz_divisible_p(n_val.get_mpz_t(), db2.get_mpz_t())) return std::nullopt;

    Int quotient = n_val / db2;  // exact
    Int modulus = two_b / d;
    Int uinv = mod_inverse(Int(u / d), modulus);
    Int k0;
    mpz_mod(k0.get_mpz_t(), Int(-(uinv * quotient)).get_mpz_t(), modulus.get_mpz_t());
    return Lift{d, k0};
}

Int select_n(std::int64_t b, const Int& c2, const Int& alpha, const Int& a0, const Int& k0,
             const Int& d) {
    const Int b2 = int_pow(b, 2);
    const Int b3 = int_pow(b, 3);
    // (d/(2b^3)) (3 alpha^2/(4 c2) - a0 - k0 b^2) = num/den with den > 0
    Int num = d * (3 * alpha * alpha - 4 * c2 * (a0 + k0 * b2));
    Int den = 8 * c2 * b3;
    return round_rational(num, den);
}

std::vector<Candidate> build_candidates(const SearchCell& cell, int n_window,
                                        BuildStats* stats) {
    if (n_window < 0) throw std::invalid_argument("build_candidates: n_window < 0");
    validate_cell(cell);
    const std::int64_t b = cell.b;
    const Int b2 = int_pow(b, 2);
    const Int two_b3 = 2 * int_pow(b, 3);
    const Int bz(static_cast<long>(b));

    std::vector<Candidate> out;
    for (const Int& a0 : solve_a0(cell)) {
        if (stats) ++stats->roots;
        Int alpha0 = balanced_residue(a0 * a0, b2);
        auto lift = lift_k0(b, a0, alpha0, cell.c2);
        if (!lift) {
            if (stats) ++stats->lifts_failed;
            continue;
        }
        Int step = two_b3 / lift->d;
        Int base = a0 + lift->k0 * b2;
        Int n_star = select_n(b, cell.c2, alpha0, a0, lift->k0, lift->d);

        for (int delta = -n_window; delta <= n_window; ++delta) {
            Int n = n_star + delta;
            Int a = base + n * step;
            if (a <= bz) {
                if (stats) ++stats->discarded;
                continue;
            }
            Int g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), bz.get_mpz_t());
            if (g != 1) {
                if (stats) ++stats->discarded;
                continue;
            }
            Int alpha = balanced_residue(a * a, b2);
            Int x0 = (a * a - alpha) / b2;
            if (!lemma_congruence_holds(a, b, cell.c2, 0))
                throw std::logic_error("build_candidates: defining congruence violated");
            out.push_back(Candidate{cell, a0, alpha, lift->d, lift->k0, n, a, x0});
        }
    }
    return out;
}

bool lemma_congruence_holds(const Int& a, std::int64_t b, const Int& c2, std::int64_t i) {
    const Int b2 = int_pow(b, 2);
    const Int two_b3 = 2 * int_pow(b, 3);
    Int alpha = balanced_residue(a * a, b2);
    Int dcoef = b2 * Int(static_cast<long>(i)) - alpha;
    Int lhs = 2 * a * a * a + 3 * dcoef * a + c2;
    return mpz_divisible_p(lhs.get_mpz_t(), two_b3.get_mpz_t()) != 0;
}

Int k_from_lemma(const Int& a, std::int64_t b, const Int& c2, std::int64_t i) {
    const Int b2 = int_pow(b, 2);
    Int alpha = balanced_residue(a * a, b2);
    Int dcoef = b2 * Int(static_cast<long>(i)) - alpha;

    Int num = -4 * c2 * a * a * a + 3 * dcoef * dcoef * a * a - 6 * c2 * dcoef * a -
              c2 * c2 + 4 * dcoef * dcoef * dcoef;
    Int den = 4 * int_pow(b, 6);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::domain_error("k_from_lemma: congruence precondition violated");
    return num / den;
}

Rat P0Polynomial::eval(const Rat& z) const {
    Rat acc = coeff[3];
    for (int d = 2; d >= 0; --d) acc = acc * z + coeff[d];
    return acc;
}

P0Polynomial polynomial_p0(std::int64_t b, const Int& c2, const Int& a) {
    const Int b2 = int_pow(b, 2);
    Rat t(a, Int(static_cast<long>(b)));
    t.canonicalize();
    Rat c(c2, 2);
    c.canonicalize();
    Rat b3(int_pow(b, 3));
    Rat b6(int_pow(b, 6));

    P0Polynomial poly;
    poly.coeff[3] = 1;
    poly.coeff[2] = Rat(3, 4) * t * t;
    poly.coeff[1] = Rat(-3) * c / b3 * t;
    poly.coeff[0] = Rat(-2) * c / b3 * t * t * t - c * c / b6;

    Int alpha = balanced_residue(a * a, b2);
    Rat za(alpha, b2);
    za.canonicalize();
    poly.vertex_estimate = Rat(3, 4) * t * t * za * za - Rat(2) * c / b3 * t * t * t;
    return poly;
}

}  // namespace hallseek
