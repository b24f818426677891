#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ugks/model.hpp"
#include "ugks/state.hpp"

namespace ugks::experiment {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExitCode : int {
  ok = 0,
  config_error = 2,
  io_error = 3,
  invariant_violation = 4,
};

enum class InitialKind { equilibrium_sine, equilibrium_gaussian, random_nonequilibrium };

std::string to_string(InitialKind kind);

struct ModelConfig {
  double a = 1.0;
  double theta = 1.0;
  double tau = 1e-2;
};

struct VelocityGridConfig {
  int half_count = 48;
  double coverage = 6.0;
  bool renormalize = false;
};

struct SpatialGridConfig {
  int cells = 64;
  double length = 1.0;
};

struct RunConfig {
  std::optional<double> t_end;
  /// Alternative to t_end: a fixed number of policy steps.
  std::optional<long> steps;
  double cfl_safety = 0.9;
  std::optional<double> dt_override;
};

struct InitialConditionConfig {
  InitialKind kind = InitialKind::equilibrium_sine;
  double amplitude = 1.0;
  /// Number of sine periods across the domain.
  double wavenumber = 1.0;
  std::optional<std::uint64_t> seed;
  /// Gaussian width; defaults to length / 10.
  std::optional<double> width;
};

struct OutputConfig {
  std::string directory = "ugks_out";
  bool record_submethods = false;
  bool record_spectra = false;
  /// Velocity indices k (-K..K) whose f-slices are added to final_state.csv.
  std::vector<int> f_slices;
};

struct ExperimentConfig {
  ModelConfig model;
  VelocityGridConfig velocity_grid;
  SpatialGridConfig spatial_grid;
  RunConfig run;
  InitialConditionConfig initial_condition;
  OutputConfig outputs;
};

/// Throws ConfigError on missing/ill-typed fields or invalid values.
ExperimentConfig parse_config(const nlohmann::json& doc);
/// Throws IoError if unreadable, ConfigError if not valid JSON or schema.
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Name of the environment variable that relocates relative output directories.
inline constexpr const char* kOutputRootEnv = "UGKS_OUTPUT_ROOT";

/// outputs.directory, placed under $UGKS_OUTPUT_ROOT when that is set and the
/// directory is relative.
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

}  // namespace ugks::experiment
