#include <algorithm>
#include <set>

#include "doctest.h"
#include "hallseek/families.hpp"
#include "hallseek/table.hpp"

using namespace hallseek;

namespace {

bool has_tag(const KnownHitRow& row, const std::string& tag) {
    return std::find(row.tags.begin(), row.tags.end(), tag) != row.tags.end();
}

}  // namespace

TEST_SUITE("table") {

TEST_CASE("registry has 44 rows in order") {
    const auto& rows = known_good_examples();
    REQUIRE(rows.size() == 44);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].index == static_cast<int>(i) + 1);
    CHECK(rows[0].x == 2);
    CHECK_FALSE(rows[0].b.has_value());
    CHECK(rows[1].x == 5234);
    CHECK(rows[1].b == 26);
    CHECK(rows[1].c2 == Int(1));
    // row 39 carries the ambiguous printed C as C2 = 39
    CHECK(rows[38].index == 39);
    CHECK(rows[38].c2 == Int(39));
}

TEST_CASE("every row verifies") {
    TableReport report = verify_table(known_good_examples());
    CHECK(report.failures == 0);
    CHECK(report.rows.size() == 44);
    for (const RowReport& rr : report.rows) {
        CAPTURE(rr.index);
        CHECK(rr.pass);
        CHECK(rr.detail.empty());
    }
    std::string text = format_table_report(report, false);
    CHECK(text.find("44/44 rows pass") != std::string::npos);
}

TEST_CASE("a corrupted row is itemized with nonzero failure count") {
    auto rows = known_good_examples();
    rows[5].r_printed = "9.99";
    TableReport report = verify_table(rows);
    CHECK(report.failures == 1);
    CHECK_FALSE(report.rows[5].pass);
    CHECK(report.rows[5].detail.find("mismatch") != std::string::npos);
}

TEST_CASE("data file and built-in registry agree") {
    auto file_rows = load_table(HALLSEEK_DATA_FILE);
    const auto& builtin = known_good_examples();
    REQUIRE(file_rows.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
        CHECK(file_rows[i].index == builtin[i].index);
        CHECK(file_rows[i].x == builtin[i].x);
        CHECK(file_rows[i].r_printed == builtin[i].r_printed);
        CHECK(file_rows[i].b == builtin[i].b);
        CHECK(file_rows[i].c2 == builtin[i].c2);
        CHECK(file_rows[i].tags == builtin[i].tags);
    }
}

TEST_CASE("family tags cross-check against the generators") {
    const auto& rows = known_good_examples();

    std::set<Int> eq2_xs;
    for (long t : {-9, -3, 3, 9}) eq2_xs.insert(hall_family(Int(t)).point.x);
    std::set<Int> tagged;
    for (const auto& row : rows)
        if (has_tag(row, "eq2")) tagged.insert(row.x);
    CHECK(tagged == eq2_xs);

    // row 4 is the t = 5 member of the quadratic family
    CHECK(fermat_pell_x(Int(5)) == rows[3].x);

    // row 22 is row 20 scaled by t = 2
    CHECK(scale_solution(hall_k(rows[19].x), Int(2)).x == rows[21].x);
    CHECK(has_tag(rows[21], "*"));
    CHECK(has_tag(rows[19], "!"));
}

TEST_CASE("load_table rejects missing files") {
    CHECK_THROWS_AS(load_table("no_such_table.tsv"), std::runtime_error);
}

}  // TEST_SUITE
