#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace afpp {

// Process exit codes shared by the library runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitExpectation = 4;

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  std::optional<long long> budget_override;  // caps solver work and cells
  std::string format = "json";               // "json" or "csv"
};

struct RunArtifact {
  std::string name;     // file name relative to the output directory
  std::string content;
};

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;      // schema afpp-report/1
  std::vector<RunArtifact> files;     // what the CLI writes out
  std::string summary;                // one status line
  std::string error;                  // set when exit_code != 0
};

/// Executes one experiment config end to end. Reports are byte-stable for
/// a fixed config + seed, except the timestamp field.
RunOutcome run_config(const nlohmann::json& config, const RunOptions& opts);

}  // namespace afpp
