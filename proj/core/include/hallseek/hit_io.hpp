#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hallseek/evaluator.hpp"

namespace hallseek {

enum class OutputFormat { tsv, jsonl };

// TSV columns: x, y, k, r(2dp), b, C2, a, source. Absent fields print "-".
// All integers in full decimal, never scientific notation.
std::string to_tsv_line(const Hit& hit);
Hit parse_tsv_line(const std::string& line);

// JSON-lines record with the same fields; integers carried as decimal
// strings so arbitrary sizes survive, absent fields as null.
std::string to_jsonl_line(const Hit& hit);
Hit parse_jsonl_line(const std::string& line);

std::string format_hit(const Hit& hit, OutputFormat format);
Hit parse_hit(const std::string& line, OutputFormat format);

std::vector<Hit> read_hits(const std::string& path, OutputFormat format);

const char* source_name(HitSource source);
HitSource source_from_name(std::string_view name);

}  // namespace hallseek
