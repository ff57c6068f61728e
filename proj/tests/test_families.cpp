#include <algorithm>

#include "doctest.h"
#include "hallseek/families.hpp"

using namespace hallseek;

TEST_SUITE("families") {

TEST_CASE("hall family reproduces the four registry members") {
    FamilyMember m = hall_family(Int(-3));
    CHECK(m.point.x == 5234);
    CHECK(m.point.k == -17);
    CHECK(m.point == hall_k(Int(5234)));

    m = hall_family(Int(3));
    CHECK(m.point.x == 8158);
    CHECK(m.point.y == 736844);
    CHECK(m.point.k == -24);
    CHECK(m.point == hall_k(Int(8158)));

    CHECK(hall_family(Int(-9)).point.x == 384242766);
    CHECK(hall_family(Int(9)).point.x == 390620082);
    CHECK(hall_family(Int(-9)).point == hall_k(Int(384242766)));
    CHECK(hall_family(Int(9)).point == hall_k(Int(390620082)));
}

TEST_CASE("hall family closed-form k") {
    // k = -(3t^6 + 14t^3 + 27)/108 at t = -3 gives -1836/108 = -17
    CHECK(hall_family(Int(-3)).point.k == -17);
    CHECK(hall_family(Int(3)).point.k == -2592 / 108);
}

TEST_CASE("hall family rejects t outside 3 mod 6") {
    CHECK_THROWS_AS(hall_family(Int(2)), std::invalid_argument);
    CHECK_THROWS_AS(hall_family(Int(6)), std::invalid_argument);
    CHECK_THROWS_AS(hall_family(Int(0)), std::invalid_argument);
    CHECK_THROWS_AS(hall_family(Int(-6)), std::invalid_argument);
}

TEST_CASE("hall family members satisfy the equation for many t") {
    for (long j = -40; j <= 40; ++j) {
        Int t = 6 * j + 3;
        FamilyMember m = hall_family(t);
        Int cube;
        mpz_pow_ui(cube.get_mpz_t(), m.point.x.get_mpz_t(), 3);
        CHECK(Int(cube - m.point.y * m.point.y) == m.point.k);
        CHECK(m.point.x > 0);
        CHECK(m.point.y > 0);
    }
}

TEST_CASE("fermat-pell generator and scan") {
    CHECK(fermat_pell_x(Int(5)) == 93844);
    CHECK(fermat_pell_x(Int(0)) == 719);

    auto got = fermat_pell_scan(Int(5), Int(5), Threshold{1, 1});
    REQUIRE(got.size() == 1);
    CHECK(got[0].point.x == 93844);
    CHECK(got[0].point.k == -297);
    CHECK(got[0].point == hall_k(Int(93844)));

    // t = 0 gives x = 719 whose k is far too large to pass theta = 1
    CHECK(fermat_pell_scan(Int(0), Int(0), Threshold{1, 1}).empty());
    CHECK(fermat_pell_scan(Int(-20), Int(20), Threshold{1, 1}).size() == 1);
    CHECK(fermat_pell_scan(Int(1), Int(0), Threshold{1, 1}).empty());
}

TEST_CASE("scan results merge in t order across threads") {
    auto seq = fermat_pell_scan(Int(-3000), Int(3000), Threshold{1, 2}, 1);
    auto par = fermat_pell_scan(Int(-3000), Int(3000), Threshold{1, 2}, 2);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].t == par[i].t);
        CHECK(seq[i].point == par[i].point);
    }
}

TEST_CASE("scale_solution examples") {
    HallPoint base{2, 3, -1};
    HallPoint scaled = scale_solution(base, Int(3));
    CHECK(scaled.x == 18);
    CHECK(scaled.y == 81);
    CHECK(scaled.k == -729);
    CHECK(Int(Int(18) * 18 * 18 - Int(81) * 81) == -729);

    CHECK(scale_solution(base, Int(1)) == base);
    CHECK_THROWS_AS(scale_solution(HallPoint{2, 3, 5}, Int(2)), std::invalid_argument);
    CHECK_THROWS_AS(scale_solution(base, Int(0)), std::invalid_argument);
}

TEST_CASE("scaling law holds identically for t up to 10") {
    for (long x : {2L, 5234L, 8158L, 93844L}) {
        HallPoint base = hall_k(Int(x));
        for (long t = 1; t <= 10; ++t) {
            HallPoint s = scale_solution(base, Int(t));
            Int cube;
            mpz_pow_ui(cube.get_mpz_t(), s.x.get_mpz_t(), 3);
            CHECK(Int(cube - s.y * s.y) == s.k);
            CHECK(s.k == base.k * Int(t) * t * t * t * t * t);
        }
    }
}

TEST_CASE("registry row 20 scales to row 22") {
    HallPoint record = hall_k(Int("5853886516781223"));
    HallPoint scaled = scale_solution(record, Int(2));
    CHECK(scaled.x == Int("23415546067124892"));
    // the scaled point is still the nearest-root point there
    CHECK(hall_k(scaled.x) == scaled);
}

}  // TEST_SUITE
