#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace heatineq {

struct PlotTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Machine-readable result stream (JSON lines) plus a human summary and named
// plot-data tables.  Records carry no timestamps so identical runs produce
// byte-identical files.
struct Report {
  std::vector<nlohmann::json> records;
  std::vector<std::string> summary;
  bool any_check_failed = false;

  void add_record(nlohmann::json j) { records.push_back(std::move(j)); }
  void note(std::string line) { summary.push_back(std::move(line)); }

  // Tables are embedded in the record stream so plot data can be recovered
  // from records.jsonl alone.
  void add_table(const std::string& name, const PlotTable& table);

  // Writes records.jsonl and summary.txt under out_dir (created if needed).
  void write(const std::string& out_dir) const;
};

// Extracts a named table from a records.jsonl file; throws if absent.
PlotTable table_from_records(const std::string& records_path,
                             const std::string& name);

// CSV with a header row.  Decay tables must not contain nonpositive rows
// (log-log ready); rows violating that are rejected.
void write_csv(const PlotTable& table, const std::string& path,
               bool log_log_ready = false);

}  // namespace heatineq
