#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gp/types.hpp"

namespace gp::cli {

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation = "<=";  // value <relation> tolerance
  bool pass = false;
  std::string note;
};

Check check_at_most(std::string name, double value, double tolerance);
Check check_at_least(std::string name, double value, double tolerance);
Check check_flag(std::string name, bool ok, std::string note = {});

// Shortest round-trip text, locale independent; non-finite -> "nan"/"inf"/"-inf".
std::string format_number(double x);

class CsvTable {
 public:
  CsvTable(std::string file_name, std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  const std::string& file_name() const { return file_name_; }
  std::size_t rows() const { return rows_.size(); }
  std::string render() const;  // LF line endings

 private:
  std::string file_name_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct RunReport {
  std::string subcommand;
  nlohmann::json config;
  std::vector<Check> checks;
  nlohmann::json results = nlohmann::json::object();
  std::vector<CsvTable> tables;

  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Writes report.json and every table into `dir` (created if missing).
void write_outputs(const RunReport& report, const std::string& dir);

}  // namespace gp::cli
