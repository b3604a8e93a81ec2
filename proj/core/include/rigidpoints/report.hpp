#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace rigidpoints {

// Shortest decimal encoding that parses back to the same f64 bits.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> values);
};

std::string table_to_csv(const Table& table);

// Tidy long-format series for external plotting.
struct PlotRow {
  std::string series;
  double x = 0.0;
  double y = 0.0;
  double yerr = 0.0;
};

std::string plotdata_csv(std::span<const PlotRow> rows);

struct ExperimentReport {
  std::string command;
  std::string config_json;   // echo of the resolved configuration
  std::string summary_json;  // per-experiment scalar results
  Table table;               // per-replica rows
  std::vector<PlotRow> plot;
  double wall_seconds = 0.0;
  std::string version_tag;
};

std::string report_to_json(const ExperimentReport& report);

// Writes <stem>.json, <stem>.csv and <stem>_plot.csv under out_dir
// (creating it if needed); returns the JSON path. UTF-8, LF endings.
std::string write_report_files(const ExperimentReport& report,
                               const std::string& out_dir,
                               const std::string& stem);

}  // namespace rigidpoints
