#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ugks {

/// Physical constants of the linear BGK model.
///
/// The relaxation targets the Gaussian equilibrium u·ω(c) centred at the
/// advection velocity `a` with spread `theta`; in the small-`tau` limit the
/// macroscopic density obeys u_t + a u_x = nu u_xx with nu = theta·tau/2.
class ModelParams {
 public:
  /// Throws std::invalid_argument unless all three values are finite and > 0.
  ModelParams(double a, double theta, double tau);

  double a() const { return a_; }
  double theta() const { return theta_; }
  double tau() const { return tau_; }

  /// Diffusivity of the hydrodynamic limit, recomputed from theta and tau.
  double nu() const { return 0.5 * theta_ * tau_; }

  /// sqrt(a² + theta/2), the analytic root second moment of the equilibrium.
  double root_second_moment() const;

  /// a / sqrt(theta).
  double alpha() const;

  ModelParams with_tau(double tau) const { return {a_, theta_, tau}; }

 private:
  double a_;
  double theta_;
  double tau_;
};

/// Absolute deviations of the discrete moments from 1, a and a² + theta/2.
struct MomentDefects {
  double zeroth = 0.0;
  double first = 0.0;
  double second = 0.0;

  double max() const;
};

struct GridOptions {
  double quadrature_tolerance = 1e-12;
  /// Rescale the weights so the zeroth moment is exactly one. This departs
  /// from the literal Maxwellian weights and is off by default.
  bool renormalize_weights = false;
  bool warn_on_defect = true;
  /// Destination for the non-fatal quadrature warning (std::clog when null).
  std::ostream* diagnostics = nullptr;
};

/// Uniform discrete velocity space c_k = a + k·dc, k = -K..K, with weights
/// ω_k = (theta·pi)^(-1/2)·exp(-(c_k - a)²/theta).
///
/// Node j (0-based) corresponds to k = j - K. Immutable after construction.
class VelocityGrid {
 public:
  int half_count() const { return half_count_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  double spacing() const { return spacing_; }
  double a() const { return a_; }
  double theta() const { return theta_; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
  double weight(int j) const { return weights_[static_cast<std::size_t>(j)]; }
  int velocity_index(int j) const { return j - half_count_; }

  /// Σ_k dc·c_k^order·ω_k, summed in ascending k.
  double moment(int order) const;
  double max_abs_node() const;

  const MomentDefects& moment_defects() const { return defects_; }
  double quadrature_tolerance() const { return tolerance_; }
  bool quadrature_ok() const { return defects_.max() < tolerance_; }
  bool renormalized() const { return renormalized_; }

 private:
  friend VelocityGrid build_grid(const ModelParams&, int, double,
                                 const GridOptions&);
  VelocityGrid() = default;

  int half_count_ = 0;
  double spacing_ = 0.0;
  double a_ = 0.0;
  double theta_ = 0.0;
  double tolerance_ = 0.0;
  bool renormalized_ = false;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  MomentDefects defects_;
};

/// Builds 2K+1 nodes spanning a ± coverage·sqrt(theta), so dc = coverage·sqrt(theta)/K.
/// Throws std::invalid_argument for K < 1 or coverage <= 0. A moment defect
/// above the tolerance is reported through `options.diagnostics` only.
VelocityGrid build_grid(const ModelParams& params, int half_count = 48,
                        double coverage = 6.0, const GridOptions& options = {});

/// ∫_0^x exp(-t²) dt. Note the missing 2/sqrt(pi): the range is (-sqrt(pi)/2, sqrt(pi)/2).
double erf_unscaled(double x);

/// g_k = u·ω_k for every node.
std::vector<double> equilibrium_projection(double u, const VelocityGrid& grid);

}  // namespace ugks
