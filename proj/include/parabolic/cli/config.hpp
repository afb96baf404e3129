#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parabolic/cli/serialize.hpp"

namespace parabolic::cli {

enum class TaskKind { audit, spectra, flow, verify_lemma };
const char* task_kind_name(TaskKind k);

struct AuditOptions {
  std::size_t samples = 4;
};

struct SpectraOptions {
  /// Empty means every rep the algebra supports.
  std::vector<std::string> reps;
};

struct FlowOptions {
  std::vector<double> scales{0.25, 0.5, 1, 2, 4};
  std::vector<double> times{0.125, 0.5, 1, 2, 8};
  double t_probe = 0.5;
  std::size_t grid_size = 200;
  std::vector<double> schedule{1, 10, 100, 1000};
  double s = 1;
  double tolerance = 1e-8;
  double holonomy_tolerance = 1e-6;
};

struct Task {
  TaskKind kind = TaskKind::audit;
  AuditOptions audit;
  SpectraOptions spectra;
  FlowOptions flow;
  std::string lemma;
};

/// geometry {family, params, scalar}, isotropy {standard: tag} or {matrix: rows of exact strings}, tasks.
struct ScenarioConfig {
  Family family = Family::grassmannian;
  FamilyParams params;
  ScalarTag scalar = ScalarTag::gaussian_rational;
  std::optional<std::string> standard_isotropy;
  std::optional<QMatrix> isotropy_matrix;
  std::vector<Task> tasks;
};

/// Throws parse-error for malformed documents and unknown keys or values.
ScenarioConfig parse_config(const std::string& text);
/// Canonical form: fixed key order, two-space indent, trailing newline.
std::string serialize_config(const ScenarioConfig& config);
/// Hex SHA-256 of the canonical form.
std::string config_digest(const ScenarioConfig& config);

AlgebraHandle scenario_algebra(const ScenarioConfig& config);
/// Throws validation-error when the isotropy is zero, outside the algebra or outside p+.
AlgebraElement scenario_isotropy(const ScenarioConfig& config, const AlgebraHandle& algebra);

}  // namespace parabolic::cli
