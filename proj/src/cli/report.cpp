#include "gp/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace gp::cli {

Check check_at_most(std::string name, double value, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tolerance;
  c.relation = "<=";
  c.pass = std::isfinite(value) && value <= tolerance;
  return c;
}

Check check_at_least(std::string name, double value, double tolerance) {
  Check c = check_at_most(std::move(name), value, tolerance);
  c.relation = ">=";
  c.pass = std::isfinite(value) && value >= tolerance;
  return c;
}

Check check_flag(std::string name, bool ok, std::string note) {
  Check c;
  c.name = std::move(name);
  c.value = ok ? 1.0 : 0.0;
  c.tolerance = 1.0;
  c.relation = "==";
  c.pass = ok;
  c.note = std::move(note);
  return c;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::string file_name, std::vector<std::string> header)
    : file_name_(std::move(file_name)), header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw InvalidArgument(file_name_ + ": row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += cells[k];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

bool RunReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

namespace {
// JSON has no inf/nan; keep them as strings so the value survives.
nlohmann::json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}
}  // namespace

nlohmann::json RunReport::to_json() const {
  nlohmann::json out;
  out["subcommand"] = subcommand;
  out["config"] = config;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j = {{"name", c.name}, {"value", number_json(c.value)}, {"tolerance", number_json(c.tolerance)},
                        {"relation", c.relation}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    list.push_back(j);
  }
  out["checks"] = list;
  out["results"] = results;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& t : tables) files.push_back(t.file_name());
  out["tables"] = files;
  out["all_pass"] = all_pass();
  return out;
}

void write_outputs(const RunReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&dir](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + (fs::path(dir) / name).string());
    f << text;
  };
  write("report.json", report.to_json().dump(2) + "\n");
  for (const auto& t : report.tables) write(t.file_name(), t.render());
}

}  // namespace gp::cli
