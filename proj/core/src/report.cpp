#include "rigidpoints/report.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "rigidpoints/common.hpp"

namespace rigidpoints {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::initializer_list<double> values) {
  if (values.size() != columns.size()) {
    throw std::invalid_argument("Table::add_row: column count mismatch");
  }
  rows.emplace_back(values);
}

std::string table_to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string plotdata_csv(std::span<const PlotRow> rows) {
  std::string out = "series,x,y,yerr\n";
  for (const PlotRow& row : rows) {
    out += row.series;
    out += ',';
    out += format_double(row.x);
    out += ',';
    out += format_double(row.y);
    out += ',';
    out += format_double(row.yerr);
    out += '\n';
  }
  return out;
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["config"] = report.config_json.empty()
                    ? nlohmann::json::object()
                    : nlohmann::json::parse(report.config_json);
  j["summary"] = report.summary_json.empty()
                     ? nlohmann::json::object()
                     : nlohmann::json::parse(report.summary_json);
  j["rows"] = report.table.rows.size();
  nlohmann::json plot = nlohmann::json::array();
  for (const PlotRow& row : report.plot) {
    plot.push_back({{"series", row.series},
                    {"x", row.x},
                    {"y", row.y},
                    {"yerr", row.yerr}});
  }
  j["plot"] = std::move(plot);
  j["wall_seconds"] = report.wall_seconds;
  j["version"] = report.version_tag;
  return j.dump(2);
}

std::string write_report_files(const ExperimentReport& report,
                               const std::string& out_dir,
                               const std::string& stem) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path base = fs::path(out_dir) / stem;

  const fs::path json_path = base.string() + ".json";
  std::ofstream(json_path, std::ios::binary) << report_to_json(report) << '\n';
  std::ofstream(base.string() + ".csv", std::ios::binary)
      << table_to_csv(report.table);
  std::ofstream(base.string() + "_plot.csv", std::ios::binary)
      << plotdata_csv(report.plot);
  return json_path.string();
}

}  // namespace rigidpoints
