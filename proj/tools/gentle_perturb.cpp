#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gp/cli/config.hpp"
#include "gp/cli/report.hpp"
#include "gp/cli/runner.hpp"
#include "gp/kernels.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void apply_thread_cap() {
  const char* env = std::getenv("GP_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "gentle-perturb: ignoring GP_THREADS='" << env << "' (expected a positive integer)\n";
    return;
  }
  gp::kernels::set_thread_limit(static_cast<int>(n));
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-one perturbation experiments"};
  std::string subcommand;
  std::string config_path;
  std::string names;
  for (const auto& s : gp::cli::subcommands()) names += (names.empty() ? "" : ", ") + s;
  app.add_option("subcommand", subcommand, "one of: " + names)->required()->check(CLI::IsMember(gp::cli::subcommands()));
  app.add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  app.allow_extras();
  app.footer("Dotted overrides such as --grid.N=2048 replace config fields. GP_THREADS caps parallelism.");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }
  apply_thread_cap();

  const auto started = std::chrono::steady_clock::now();
  const std::string started_at = utc_now();
  gp::cli::ExperimentConfig config;
  try {
    std::ifstream in(config_path);
    nlohmann::json raw;
    try {
      raw = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw gp::cli::ConfigError("<file>", std::string("not valid JSON: ") + e.what());
    }
    raw = gp::cli::apply_overrides(std::move(raw), app.remaining());
    config = gp::cli::parse_config(raw);
  } catch (const gp::cli::ConfigError& e) {
    std::cerr << "gentle-perturb: invalid config field " << e.field() << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const gp::InvalidArgument& e) {
    std::cerr << "gentle-perturb: invalid config: " << e.what() << "\n";
    return kExitConfig;
  }

  gp::cli::RunReport report;
  try {
    report = gp::cli::run(subcommand, config);
  } catch (const gp::NumericalGuard& e) {
    std::cerr << "gentle-perturb: numerical guard tripped in " << subcommand << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const gp::SingularCoupling& e) {
    std::cerr << "gentle-perturb: singular coupling in " << subcommand << ": " << e.what() << "\n";
    return kExitNumerical;
  }

  gp::cli::write_outputs(report, config.output_dir);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  {
    const nlohmann::json timing = {{"started_at", started_at}, {"wall_seconds", seconds},
                                   {"threads", gp::kernels::thread_limit()}};
    std::ofstream f(std::filesystem::path(config.output_dir) / "timing.json", std::ios::binary | std::ios::trunc);
    f << timing.dump(2) << "\n";
  }

  int failed = 0;
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    ++failed;
    std::cerr << "FAIL " << c.name << ": " << gp::cli::format_number(c.value) << " " << c.relation << " "
              << gp::cli::format_number(c.tolerance) << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
  }
  std::cout << subcommand << ": " << report.checks.size() - failed << "/" << report.checks.size()
            << " checks passed; outputs in " << config.output_dir << "\n";
  return failed == 0 ? 0 : kExitChecksFailed;
}
