#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "parabolic/cli/config.hpp"

namespace parabolic::cli {

inline constexpr const char* kToolName = "parabolic-cli";
inline constexpr const char* kToolVersion = "0.1.0";

/// algebra, audit, spectra, flow, verify.
const std::vector<std::string>& command_names();

struct RunOptions {
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  /// Extra lemma for `verify`.
  std::optional<std::string> lemma;
};

struct CommandOutcome {
  int exit_code = 0;
  Json body;
  /// CSV side files by file name.
  std::map<std::string, std::string> csv;
};

/// 0 ok, 2 parse, 3 validation, 4 claim failure, 5 numeric domain, 1 anything else.
int exit_code_for(ErrorCode code);

/// Runs the tasks of the command's kind (a default task when the config has none).
/// Task errors are recorded in the body; config-level errors propagate as Error.
CommandOutcome run_command(const std::string& command, const ScenarioConfig& config, const RunOptions& options);

/// {tool, version, config_digest, timestamp}.
Json envelope(const ScenarioConfig& config);

Json algebra_descriptor(const AlgebraHandle& algebra);

}  // namespace parabolic::cli
