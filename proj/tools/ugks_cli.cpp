// Command-line driver: run, sweep, converge, spectra.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "experiment.hpp"
#include "ugks/model.hpp"

namespace ex = ugks::experiment;

namespace {

int code(ex::ExitCode c) { return static_cast<int>(c); }

int cmd_run(const std::string& config_path) {
  const ex::ExperimentConfig config = ex::load_config(config_path);
  const auto dir = ex::resolve_output_dir(config);
  const ex::ExperimentResult r = ex::run_experiment(config, dir);
  std::cout << "steps " << r.records.size() << ", dt " << ex::format_double(r.dt_used)
            << ", max norm ratio " << ex::format_double(r.max_norm_ratio)
            << ", final residual " << ex::format_double(r.final_residual) << "\n"
            << "output " << dir.string() << "\n";
  for (const auto& v : r.violations) std::cerr << "violation: " << v << "\n";
  return code(r.exit_code);
}

int cmd_sweep(const std::string& config_path, const std::string& taus_arg) {
  const ex::ExperimentConfig config = ex::load_config(config_path);
  const std::vector<double> taus = ex::parse_number_list(taus_arg);
  const auto dir = ex::resolve_output_dir(config);
  const auto rows = ex::run_tau_sweep(config, taus, dir);
  ex::ExitCode result = ex::ExitCode::ok;
  for (const auto& row : rows) {
    std::cout << "tau " << ex::format_double(row.tau) << ": dt/tau "
              << ex::format_double(row.dt_over_tau) << ", max norm ratio "
              << ex::format_double(row.max_norm_ratio) << ", residual "
              << ex::format_double(row.final_constraint_residual) << "\n";
    result = ex::worst(result, row.exit_code);
  }
  std::cout << "output " << (dir / "sweep.csv").string() << "\n";
  return code(result);
}

int cmd_converge(const std::string& config_path, const std::string& cells_arg,
                 double min_order) {
  const ex::ExperimentConfig config = ex::load_config(config_path);
  const std::vector<int> cells = ex::parse_int_list(cells_arg);
  const auto dir = ex::resolve_output_dir(config);
  const auto rows = ex::run_convergence(config, cells, dir);
  bool ok = true;
  for (const auto& row : rows) {
    std::cout << "I " << row.cells << ": error " << ex::format_double(row.l2_error);
    if (row.observed_order) {
      std::cout << ", order " << ex::format_double(*row.observed_order);
      if (*row.observed_order < min_order) ok = false;
    }
    std::cout << "\n";
  }
  std::cout << "output " << (dir / "convergence.csv").string() << "\n";
  return ok ? 0 : code(ex::ExitCode::invariant_violation);
}

int cmd_spectra(double alpha, const std::string& betas_arg, int phases,
                const std::string& out_path) {
  if (!(alpha > 0.0)) throw ex::ConfigError("--alpha must be > 0");
  if (phases < 2) throw ex::ConfigError("--phases must be >= 2");
  const std::vector<double> betas = ex::parse_number_list(betas_arg);
  for (double b : betas) {
    if (!(b >= 0.0)) throw ex::ConfigError("every beta must be >= 0");
  }
  if (out_path.empty()) {
    ex::write_stability_csv(std::cout, alpha, betas, phases);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ex::IoError("cannot write " + out_path);
  ex::write_stability_csv(out, alpha, betas, phases);
  if (!out) throw ex::IoError("write failed for " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UGKS experiments for the linear BGK model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string taus;
  std::string cells;
  std::string betas;
  std::string out_path;
  double alpha = 1.0;
  double min_order = -1e300;
  int phases = 129;

  auto* run = app.add_subcommand("run", "Run one configuration");
  run->add_option("--config", config_path, "JSON configuration")->required();

  auto* sweep = app.add_subcommand("sweep", "Run the configuration for several tau");
  sweep->add_option("--config", config_path, "JSON configuration")->required();
  sweep->add_option("--taus", taus, "Comma-separated tau values")->required();

  auto* converge = app.add_subcommand("converge", "Grid refinement against the exact sine solution");
  converge->add_option("--config", config_path, "JSON configuration")->required();
  converge->add_option("--cells", cells, "Comma-separated cell counts")->required();
  converge->add_option("--min-order", min_order,
                       "Fail (exit 4) if any observed order falls below this");

  auto* spectra = app.add_subcommand("spectra", "Sample the amplification gap as CSV");
  spectra->add_option("--alpha", alpha, "a / sqrt(theta)")->required();
  spectra->add_option("--betas", betas, "Comma-separated sqrt(a² + theta/2) dt/dx values")
      ->required();
  spectra->add_option("--phases", phases, "Uniform phase samples on [0, pi]");
  spectra->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ex::ExitCode::config_error);
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*sweep) return cmd_sweep(config_path, taus);
    if (*converge) return cmd_converge(config_path, cells, min_order);
    if (*spectra) return cmd_spectra(alpha, betas, phases, out_path);
  } catch (const ex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return code(ex::ExitCode::config_error);
  } catch (const ex::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return code(ex::ExitCode::io_error);
  } catch (const ugks::CflViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return code(ex::ExitCode::invariant_violation);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return code(ex::ExitCode::config_error);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
