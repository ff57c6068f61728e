#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hallseek/exact_arith.hpp"

namespace hallseek {

/// One row of the bundled registry of known good examples. b and c2 record
/// the discovering cell where one is known; tags carry attribution and
/// family markers.
struct KnownHitRow {
    int index = 0;
    Int x;
    std::string r_printed;  // 2-decimal ratio as printed
    std::optional<std::int64_t> b;
    std::optional<Int> c2;
    std::vector<std::string> tags;
};

// The built-in copy of the registry (44 rows). The data file
// core/data/good_examples.tsv carries the same rows; a test keeps the two
// in sync.
const std::vector<KnownHitRow>& known_good_examples();

// Parse a registry in the data-file format (tab separated, '#' comments).
std::vector<KnownHitRow> load_table(const std::string& path);
std::vector<KnownHitRow> parse_table(std::istream& in);

struct RowReport {
    int index = 0;
    bool pass = false;
    Int k;
    std::string r_computed;
    std::string detail;  // empty when the row passes
};

struct TableReport {
    std::vector<RowReport> rows;
    int failures = 0;
};

// Recompute y, k, r from x alone for every row: k must be nonzero with
// k^2 <= x, and the recomputed 2-decimal ratio must match the printed one
// to +-0.01. Mismatches are itemized, not fatal.
TableReport verify_table(const std::vector<KnownHitRow>& rows);

std::string format_table_report(const TableReport& report, bool verbose);

}  // namespace hallseek
