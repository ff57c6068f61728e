#include "hallseek/hit_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hallseek {

namespace {

constexpr std::string_view kAbsent = "-";

std::string opt_str(const std::optional<Int>& v) { return v ? v->get_str() : std::string(kAbsent); }

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, '\t')) out.push_back(field);
    return out;
}

}  // namespace

const char* source_name(HitSource source) {
    switch (source) {
        case HitSource::search: return "search";
        case HitSource::brute: return "brute";
        case HitSource::family_hall: return "family-hall";
        case HitSource::family_fp: return "family-fp";
        case HitSource::scaled: return "scaled";
        case HitSource::table: return "table";
    }
    throw std::logic_error("source_name: unknown source");
}

HitSource source_from_name(std::string_view name) {
    if (name == "search") return HitSource::search;
    if (name == "brute") return HitSource::brute;
    if (name == "family-hall") return HitSource::family_hall;
    if (name == "family-fp") return HitSource::family_fp;
    if (name == "scaled") return HitSource::scaled;
    if (name == "table") return HitSource::table;
    throw std::invalid_argument("source_from_name: unknown source '" + std::string(name) + "'");
}

std::string to_tsv_line(const Hit& hit) {
    std::ostringstream os;
    os << hit.point.x.get_str() << '\t' << hit.point.y.get_str() << '\t' << hit.point.k.get_str()
       << '\t' << hit.r_display << '\t'
       << (hit.b ? std::to_string(*hit.b) : std::string(kAbsent)) << '\t' << opt_str(hit.c2)
       << '\t' << opt_str(hit.a) << '\t' << source_name(hit.source);
    return os.str();
}

Hit parse_tsv_line(const std::string& line) {
    auto fields = split_tabs(line);
    if (fields.size() != 8) throw std::invalid_argument("parse_tsv_line: expected 8 columns");
    Hit hit;
    hit.point.x = Int(fields[0]);
    hit.point.y = Int(fields[1]);
    hit.point.k = Int(fields[2]);
    hit.r_display = fields[3];
    if (fields[4] != kAbsent) hit.b = std::stoll(fields[4]);
    if (fields[5] != kAbsent) hit.c2 = Int(fields[5]);
    if (fields[6] != kAbsent) hit.a = Int(fields[6]);
    hit.source = source_from_name(fields[7]);
    return hit;
}

std::string to_jsonl_line(const Hit& hit) {
    nlohmann::json j;
    j["x"] = hit.point.x.get_str();
    j["y"] = hit.point.y.get_str();
    j["k"] = hit.point.k.get_str();
    j["r"] = hit.r_display;
    j["b"] = hit.b ? nlohmann::json(*hit.b) : nlohmann::json(nullptr);
    j["C2"] = hit.c2 ? nlohmann::json(hit.c2->get_str()) : nlohmann::json(nullptr);
    j["a"] = hit.a ? nlohmann::json(hit.a->get_str()) : nlohmann::json(nullptr);
    j["source"] = source_name(hit.source);
    return j.dump();
}

Hit parse_jsonl_line(const std::string& line) {
    nlohmann::json j = nlohmann::json::parse(line);
    Hit hit;
    hit.point.x = Int(j.at("x").get<std::string>());
    hit.point.y = Int(j.at("y").get<std::string>());
    hit.point.k = Int(j.at("k").get<std::string>());
    hit.r_display = j.at("r").get<std::string>();
    if (!j.at("b").is_null()) hit.b = j.at("b").get<std::int64_t>();
    if (!j.at("C2").is_null()) hit.c2 = Int(j.at("C2").get<std::string>());
    if (!j.at("a").is_null()) hit.a = Int(j.at("a").get<std::string>());
    hit.source = source_from_name(j.at("source").get<std::string>());
    return hit;
}

std::string format_hit(const Hit& hit, OutputFormat format) {
    return format == OutputFormat::tsv ? to_tsv_line(hit) : to_jsonl_line(hit);
}

Hit parse_hit(const std::string& line, OutputFormat format) {
    return format == OutputFormat::tsv ? parse_tsv_line(line) : parse_jsonl_line(line);
}

std::vector<Hit> read_hits(const std::string& path, OutputFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_hits: cannot open " + path);
    std::vector<Hit> hits;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        hits.push_back(parse_hit(line, format));
    }
    return hits;
}

}  // namespace hallseek
