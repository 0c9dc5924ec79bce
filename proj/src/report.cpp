#include "heatineq/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace heatineq {

void Report::add_table(const std::string& name, const PlotTable& table) {
  nlohmann::json j;
  j["record"] = "plot-table";
  j["name"] = name;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  add_record(std::move(j));
}

void Report::write(const std::string& out_dir) const {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/records.jsonl");
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/records.jsonl");
    for (const auto& r : records) out << r.dump() << "\n";
  }
  {
    std::ofstream out(out_dir + "/summary.txt");
    if (!out) throw std::runtime_error("cannot write " + out_dir + "/summary.txt");
    for (const auto& line : summary) out << line << "\n";
  }
}

PlotTable table_from_records(const std::string& records_path,
                             const std::string& name) {
  std::ifstream in(records_path);
  if (!in) throw std::runtime_error("cannot open " + records_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    if (j.value("record", "") == "plot-table" && j.value("name", "") == name) {
      PlotTable t;
      t.columns = j.at("columns").get<std::vector<std::string>>();
      t.rows = j.at("rows").get<std::vector<std::vector<double>>>();
      return t;
    }
  }
  throw std::runtime_error("table '" + name + "' not found in " + records_path);
}

void write_csv(const PlotTable& table, const std::string& path, bool log_log_ready) {
  if (table.rows.empty()) throw std::runtime_error("refusing to write an empty table");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << "\n";
  char buf[64];
  for (const auto& row : table.rows) {
    if (log_log_ready)
      for (double v : row)
        if (!(v > 0.0))
          throw std::runtime_error("log-log table contains a nonpositive value");
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace heatineq
