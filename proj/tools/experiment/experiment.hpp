#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "config.hpp"
#include "ugks/solver.hpp"

namespace ugks::experiment {

/// Per-step slack on weighted_l2 monotonicity and on macro_l2 <= weighted_l2.
inline constexpr double kNormSlack = 1e-12;

/// Everything a configuration fixes before stepping.
struct Setup {
  ModelParams params;
  VelocityGrid vgrid;
  SpatialGrid sgrid;
  StepConfig step;
  double t_end = 0.0;
};

/// Throws ConfigError if the grids or parameters cannot be built.
Setup make_setup(const ExperimentConfig& config);

/// Initial state for the configured kind:
///  - equilibrium-sine: u = A sin(2 pi m x / L), f = u ω
///  - equilibrium-gaussian: u = A exp(-(x - L/2)² / (2 w²)), f = u ω
///  - random-nonequilibrium: u_i = A ζ_i, p_{k,i} = A sqrt(ω_k) ζ_{k,i}, projected
///    so that Σ_k dc f_{k,i} = u_i; ζ uniform on [-1, 1) from SplitMix64(seed),
///    cells first, then the perturbation in node-major order.
KineticState make_initial_state(const InitialConditionConfig& ic, const VelocityGrid& vgrid,
                                const SpatialGrid& sgrid);

/// A e^{-nu k² t} sin(k (x - a t)) with k = 2 pi m / L.
double exact_sine_solution(double x, double t, double amplitude, double wavenumber,
                           double length, const ModelParams& params);

struct ExperimentResult {
  ExitCode exit_code = ExitCode::ok;
  std::vector<StepRecord> records;
  NormReport initial;
  std::vector<std::string> violations;
  double dt_used = 0.0;
  double max_norm_ratio = 1.0;
  double final_residual = 0.0;
  bool cfl_violated = false;
  KineticState final_state;
};

/// Runs one configuration and writes norms.csv, final_state.csv and, when
/// enabled, submethods.csv and spectra.csv into `output_dir`.
/// Throws ConfigError or IoError; invariant failures are reported through
/// exit_code and `violations`.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& output_dir);

struct SweepRow {
  double tau = 0.0;
  double dt_used = 0.0;
  double dt_over_tau = 0.0;
  double max_norm_ratio = 1.0;
  double final_constraint_residual = 0.0;
  ExitCode exit_code = ExitCode::ok;
};

/// Runs the base configuration once per tau (in parallel, each in
/// output_dir/tau_<index>) and writes output_dir/sweep.csv in input order.
std::vector<SweepRow> run_tau_sweep(const ExperimentConfig& base, std::span<const double> taus,
                                    const std::filesystem::path& output_dir);

struct ConvergenceRow {
  int cells = 0;
  double dx = 0.0;
  double dt_used = 0.0;
  double l2_error = 0.0;
  std::optional<double> observed_order;
};

/// Refinement study for an equilibrium-sine configuration; writes
/// output_dir/convergence.csv.
std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& base,
                                            std::span<const int> cells,
                                            const std::filesystem::path& output_dir);

/// Stability-region CSV with columns alpha,beta,xi,gap.
void write_stability_csv(std::ostream& out, double alpha, std::span<const double> betas,
                         int phases = 129);

ExitCode worst(ExitCode a, ExitCode b);

}  // namespace ugks::experiment
