#include "hallseek/table.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hallseek {

namespace {

struct RawRow {
    int index;
    const char* x;
    const char* r;
    const char* b;
    const char* c2;
    const char* tags;
};

// Mirror of core/data/good_examples.tsv. Row 39's C column is printed
// ambiguously as "39.2" in the source table and is carried as C2 = 39.
constexpr RawRow kRows[] = {
    {1, "2", "1.41", "-", "-", "-"},
    {2, "5234", "4.26", "26", "1", "H,GPZ,eq2"},
    {3, "8158", "3.76", "28", "1", "H,GPZ,eq2"},
    {4, "93844", "1.03", "53", "2", "H,GPZ,eq3"},
    {5, "367806", "2.93", "117", "1", "H,GPZ"},
    {6, "421351", "1.05", "26", "1", "H,GPZ"},
    {7, "720114", "3.77", "42", "1", "H,GPZ"},
    {8, "939787", "3.16", "115", "4", "H,GPZ"},
    {9, "28187351", "4.87", "159", "10", "H,GPZ"},
    {10, "110781386", "1.23", "95", "1", "H,GPZ"},
    {11, "154319269", "1.08", "228", "1", "H,GPZ"},
    {12, "384242766", "1.34", "728", "1", "H,GPZ,eq2"},
    {13, "390620082", "1.33", "730", "1", "H,GPZ,eq2"},
    {14, "3790689201", "2.20", "1155", "8", "GPZ"},
    {15, "65589428378", "2.19", "5235", "17", "E"},
    {16, "952764389446", "1.15", "1448", "5", "E"},
    {17, "12438517260105", "1.27", "13415", "12", "E"},
    {18, "35495694227489", "1.15", "97266", "1", "E"},
    {19, "53197086958290", "1.66", "13777", "2", "E"},
    {20, "5853886516781223", "46.60", "137035", "18", "E,!"},
    {21, "12813608766102806", "1.30", "6291", "35", "E"},
    {22, "23415546067124892", "1.46", "1315447", "64", "E,*"},
    {23, "38115991067861271", "6.50", "321346", "1", "E"},
    {24, "322001299796379844", "1.04", "1313479", "22", "E,eq3"},
    {25, "471477085999389882", "1.38", "3281374", "95", "E"},
    {26, "810574762403977064", "4.66", "5346121", "49", "E"},
    {27, "9870884617163518770", "1.90", "4928788", "109", "JHS"},
    {28, "42532374580189966073", "3.47", "583876", "9", "JHS"},
    {29, "51698891432429706382", "1.75", "19061951", "58", "JHS"},
    {30, "44648329463517920535", "1.79", "11744301", "26", "JHS"},
    {31, "231411667627225650649", "3.71", "11694866", "347", "JHS"},
    {32, "601724682280310364065", "1.88", "7496613", "26", "JHS"},
    {33, "4996798823245299750533", "2.17", "76010518", "67", "JHS"},
    {34, "5592930378182848874404", "1.38", "93203798", "139", "JHS"},
    {35, "14038790674256691230847", "1.27", "61769318", "53", "JHS"},
    {36, "77148032713960680268604", "10.18", "184388019", "8", "JB"},
    {37, "180179004295105849668818", "5.65", "292889921", "45", "JB"},
    {38, "372193377967238474960883", "1.33", "2554989", "8", "JHS"},
    {39, "664947779818324205678136", "16.53", "678534061", "39", "JHS"},
    {40, "2028871373185892500636155", "1.14", "490670918", "55", "JB"},
    {41, "37223900078734215181946587", "1.87", "530793746", "1457", "JHS"},
    {42, "3690445383173227306376634720", "1.51", "685266726", "1", "JHS"},
    {43, "1114592308630995805123571151844", "1.04", "52019836686", "1475", "eq3"},
    {44, "6078673043126084065007902175846955", "1.03", "8144029787", "6", "JHS"},
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(s);
    while (std::getline(is, field, sep)) out.push_back(field);
    return out;
}

KnownHitRow make_row(int index, const std::string& x, const std::string& r, const std::string& b,
                     const std::string& c2, const std::string& tags) {
    KnownHitRow row;
    row.index = index;
    row.x = Int(x);
    row.r_printed = r;
    if (b != "-") row.b = std::stoll(b);
    if (c2 != "-") row.c2 = Int(c2);
    if (tags != "-") row.tags = split(tags, ',');
    return row;
}

// printed 2-decimal value as integer hundredths
long to_cents(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || s.size() - dot - 1 != 2)
        throw std::invalid_argument("expected a 2-decimal value: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    return std::stol(digits);
}

}  // namespace

const std::vector<KnownHitRow>& known_good_examples() {
    static const std::vector<KnownHitRow> rows = [] {
        std::vector<KnownHitRow> out;
        out.reserve(std::size(kRows));
        for (const RawRow& r : kRows) out.push_back(make_row(r.index, r.x, r.r, r.b, r.c2, r.tags));
        return out;
    }();
    return rows;
}

std::vector<KnownHitRow> parse_table(std::istream& in) {
    std::vector<KnownHitRow> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 6) throw std::invalid_argument("table row: expected 6 columns");
        out.push_back(
            make_row(std::stoi(fields[0]), fields[1], fields[2], fields[3], fields[4], fields[5]));
    }
    return out;
}

std::vector<KnownHitRow> load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_table: cannot open " + path);
    return parse_table(in);
}

TableReport verify_table(const std::vector<KnownHitRow>& rows) {
    TableReport report;
    for (const KnownHitRow& row : rows) {
        RowReport rr;
        rr.index = row.index;
        HallPoint pt = hall_k(row.x);
        rr.k = pt.k;
        if (pt.k == 0) {
            rr.detail = "k = 0 (perfect square)";
        } else {
            rr.r_computed = ratio_decimal(pt.x, pt.k, 2);
            if (pt.k * pt.k > pt.x) {
                rr.detail = "|k| > sqrt(x)";
            } else if (std::labs(to_cents(rr.r_computed) - to_cents(row.r_printed)) > 1) {
                rr.detail = "r mismatch: computed " + rr.r_computed + ", printed " + row.r_printed;
            }
        }
        rr.pass = rr.detail.empty();
        if (!rr.pass) ++report.failures;
        report.rows.push_back(std::move(rr));
    }
    return report;
}

std::string format_table_report(const TableReport& report, bool verbose) {
    std::ostringstream os;
    for (const RowReport& rr : report.rows) {
        if (rr.pass && !verbose) continue;
        os << "row " << rr.index << ": " << (rr.pass ? "pass" : "FAIL");
        if (rr.pass)
            os << " (k = " << rr.k.get_str() << ", r = " << rr.r_computed << ")";
        else
            os << " " << rr.detail;
        os << "\n";
    }
    os << report.rows.size() - report.failures << "/" << report.rows.size() << " rows pass\n";
    return os.str();
}

}  // namespace hallseek
