#pragma once

#include <string>
#include <vector>

#include "gp/cli/config.hpp"
#include "gp/cli/report.hpp"

namespace gp::cli {

const std::vector<std::string>& subcommands();

// Runs one suite (or all of them); does not touch the filesystem.
RunReport run(const std::string& subcommand, const ExperimentConfig& config);

}  // namespace gp::cli
