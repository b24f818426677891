#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ugks/flux.hpp"
#include "ugks/model.hpp"
#include "ugks/state.hpp"

namespace ugks {

/// Thrown by step() when dt exceeds the stability bound and no override is set.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double dt_max);
  double dt() const { return dt_; }
  double dt_max() const { return dt_max_; }

 private:
  double dt_;
  double dt_max_;
};

struct StepConfig {
  double cfl_safety = 0.9;
  /// Fixed time step. Exceeding the CFL bound is then allowed and only flagged.
  std::optional<double> dt_override;
  bool record_submethods = false;
  FluxOptions flux;

  /// Throws std::invalid_argument unless cfl_safety is in (0, 1] and any
  /// override is finite and positive.
  void validate() const;
};

/// dx / max(max_k |c_k|, sqrt(a² + theta/2) / erf_unscaled(a/sqrt(theta))).
/// Independent of tau.
double cfl_max_dt(const VelocityGrid& vgrid, const ModelParams& params,
                  const SpatialGrid& sgrid);

/// u_i = profile(x_i), f_{k,i} = u_i·ω_k.
KineticState init_equilibrium(const std::function<double(double)>& profile,
                              const VelocityGrid& vgrid, const SpatialGrid& sgrid);

/// f_{k,i} = u_i ω_k + p_{k,i} - ω_k Σ_l dc p_{l,i}. The perturbation is a
/// nodes × cells array (no ghost columns).
KineticState init_nonequilibrium(const std::function<double(double)>& profile,
                                 const Array2D& perturbation, const VelocityGrid& vgrid,
                                 const SpatialGrid& sgrid);

/// The three physics sub-updates whose convex combination is one full step.
/// Distribution arrays use the ghost-column layout of KineticState.
struct SubMethodOutputs {
  Array2D free_transport;       ///< f - (c dt/dx) Δ f_upwind
  Array2D interface_collision;  ///< f - (c dt/dx) Δ g_interface
  Array2D cell_collision;       ///< u^{n+1}·ω_k
  Array2D flux_prediction;      ///< W·free_transport + (1 - W)·interface_collision
  std::vector<double> u_free;
  std::vector<double> u_interface;
  std::vector<double> u_next;
  double weight = 1.0;       ///< W(dt/tau)
  double dt_over_tau = 0.0;

  /// Coefficients of free_transport, interface_collision and cell_collision;
  /// they are non-negative and sum to one.
  double free_coefficient() const { return weight / (1.0 + dt_over_tau); }
  double interface_coefficient() const { return (1.0 - weight) / (1.0 + dt_over_tau); }
  double cell_coefficient() const { return dt_over_tau / (1.0 + dt_over_tau); }

  /// The convex combination; equals the full-step distribution.
  Array2D recombine() const;
};

struct StepResult {
  KineticState state;
  std::optional<SubMethodOutputs> submethods;
  bool cfl_violated = false;
};

/// One first-order UGKS step:
///  1. interface fluxes f*, F*;
///  2. u^{n+1} = u - (dt/dx)(F*_{i+1/2} - F*_{i-1/2}), g^{n+1} = u^{n+1} ω;
///  3. f^{n+1} = [f - (c dt/dx)(f*_{i+1/2} - f*_{i-1/2}) + (dt/tau) g^{n+1}] / (1 + dt/tau).
/// Throws CflViolation if dt > cfl_max_dt and no override is configured.
StepResult step(const KineticState& state, double dt, const VelocityGrid& vgrid,
                const SpatialGrid& sgrid, const ModelParams& params,
                const StepConfig& config = {});

SubMethodOutputs sub_methods(const KineticState& state, double dt,
                             const VelocityGrid& vgrid, const SpatialGrid& sgrid,
                             const ModelParams& params, const FluxOptions& options = {});

struct StepRecord {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  NormReport norms;
  bool cfl_violated = false;
};

using StepObserver = std::function<void(const StepRecord&, const KineticState&,
                                        const SubMethodOutputs*)>;

/// Advances `state` to t_end with dt = min(cfl_safety·dt_max, remaining) or the
/// override, shortening only the final step. Returns one record per step.
std::vector<StepRecord> run(KineticState& state, double t_end, const VelocityGrid& vgrid,
                            const SpatialGrid& sgrid, const ModelParams& params,
                            const StepConfig& config = {},
                            const StepObserver& observer = {});

/// The nominal step size run() would use before the final partial step.
double policy_dt(const VelocityGrid& vgrid, const SpatialGrid& sgrid,
                 const ModelParams& params, const StepConfig& config);

}  // namespace ugks
