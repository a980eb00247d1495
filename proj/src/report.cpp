#include "bslab/report.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "bslab/errors.hpp"

namespace bslab {

void ReportTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw InvariantViolation("report row width " + std::to_string(cells.size()) +
                             " does not match " + std::to_string(columns.size()) +
                             " columns");
  rows.push_back(std::move(cells));
}

std::string fmt_double(double x) {
  // Shortest representation that round-trips; stable across reruns.
  for (int prec = 1; prec <= 17; ++prec) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) return buf;
  }
  return "nan";
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string render_csv(const ReportTable& t, bool with_timestamp) {
  std::string out;
  if (with_timestamp) out += "# generated " + timestamp_utc() + "\n";
  out += "# module=" + t.module + " version=" + kBslabVersion +
         " config=" + t.config_hash;
  for (auto it = t.meta.begin(); it != t.meta.end(); ++it)
    out += " " + it.key() + "=" +
           (it->is_string() ? it->get<std::string>() : it->dump());
  out += "\n";
  for (size_t j = 0; j < t.columns.size(); ++j)
    out += (j ? "," : "") + csv_cell(t.columns[j]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + csv_cell(row[j]);
    out += "\n";
  }
  return out;
}

nlohmann::json render_json(const ReportTable& t) {
  nlohmann::json j;
  j["module"] = t.module;
  j["version"] = kBslabVersion;
  j["config_hash"] = t.config_hash;
  j["meta"] = t.meta;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j;
}

void write_report_files(const ReportTable& t, const std::string& out_dir,
                        const std::string& stem) {
  namespace fs = std::filesystem;
  fs::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());

  {
    std::ofstream csv(dir / (stem + ".csv"), std::ios::binary);
    if (!csv) throw ConfigError("cannot write " + (dir / (stem + ".csv")).string());
    csv << render_csv(t);
  }
  {
    std::ofstream js(dir / (stem + ".json"), std::ios::binary);
    if (!js) throw ConfigError("cannot write " + (dir / (stem + ".json")).string());
    js << render_json(t).dump(2) << "\n";
  }
}

}  // namespace bslab
