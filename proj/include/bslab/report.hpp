#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace bslab {

inline constexpr const char* kBslabVersion = "0.1.0";

// Tabular result with provenance. The CSV rendering carries a timestamp as
// its first line; everything below it, and the entire JSON mirror, is a pure
// function of the data so reruns with the same config are byte-identical.
struct ReportTable {
  std::string module;
  std::string config_hash;
  nlohmann::json meta = nlohmann::json::object();  // budgets, tolerances, ...
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

// Deterministic cell formats: shortest-faithful doubles, exact rationals.
std::string fmt_double(double x);
std::string fmt_bool(bool b);

std::string render_csv(const ReportTable& t, bool with_timestamp = true);
nlohmann::json render_json(const ReportTable& t);

// Writes <out_dir>/<stem>.csv and <out_dir>/<stem>.json, creating out_dir.
void write_report_files(const ReportTable& t, const std::string& out_dir,
                        const std::string& stem);

}  // namespace bslab
