#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bluesky/config_io.hpp"

namespace bluesky::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kUsage = 2, kInconclusive = 3 };

/// Everything that determines a run's outputs.
struct RunManifest {
  std::string config_path;
  std::string command;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::vector<ConfigOverride> overrides;
};

nlohmann::json manifest_to_json(const RunManifest& m);

/// Entry point shared by main() and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bluesky::cli
