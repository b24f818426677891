#pragma once

#include <span>
#include <vector>

#include "ugks/model.hpp"
#include "ugks/state.hpp"

namespace ugks {

/// Normalisation of the interface equilibrium density
/// u^g = Σ_k dc (c_k / s) f^g_k.
enum class InterfaceMoment {
  analytic,  ///< s = sqrt(a² + theta/2)
  discrete,  ///< s = sqrt(Σ_k dc c_k² ω_k)
};

struct FluxOptions {
  InterfaceMoment moment = InterfaceMoment::analytic;
};

/// W(r) = (1 - e^{-r}) / r, the time-averaged weight of the free-transport
/// part of the interface solution. Decreasing on (0, ∞) with range (0, 1).
/// Throws std::invalid_argument for r <= 0 or non-finite r.
double relaxation_weight(double dt_over_tau);

/// ½(left + right) - ½·sign(c)·(right - left), with sign(0) = 0.
double upwind_interface(double left, double right, double velocity);

/// The s used in the interface density for the chosen normalisation.
double interface_moment_scale(const VelocityGrid& vgrid, const ModelParams& params,
                              InterfaceMoment moment);

struct InterfaceEquilibrium {
  double density = 0.0;    ///< u^g
  std::vector<double> g;   ///< u^g·ω_k
};

/// Equilibrium state at one interface from the full velocity slices on each side:
/// f^g_k = ½(fL + fR) - erf_unscaled(a/√θ)(fR - fL), u^g = Σ dc (c_k/s) f^g_k.
InterfaceEquilibrium equilibrium_interface(std::span<const double> left,
                                           std::span<const double> right,
                                           const VelocityGrid& vgrid,
                                           const ModelParams& params,
                                           const FluxOptions& options = {});

/// Every interface quantity of one step. Interface columns are indexed
/// 0..I, column m sitting at x_{m+1/2}; columns 0 and I coincide by periodicity.
struct FluxSet {
  Array2D f_star;
  Array2D f_upwind;
  Array2D g_interface;
  std::vector<double> F_star;        ///< Σ_k dc c_k f*_k per interface
  std::vector<double> u_g_interface;
  double weight = 1.0;               ///< W(dt/tau)
};

/// Time-averaged interface fluxes f* = W·f_upwind + (1 - W)·g_interface.
/// Ghost columns of `state` are refreshed on a private copy first.
/// Throws std::invalid_argument on shape mismatch or dt <= 0.
FluxSet assemble_fluxes(const KineticState& state, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid, const ModelParams& params, double dt,
                        const FluxOptions& options = {});

/// Σ_k dc c_k values(k), ascending k; the reduction used for every F*.
double first_moment(const VelocityGrid& vgrid, const Array2D& values, int column);

}  // namespace ugks
