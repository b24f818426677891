#include "ugks/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace ugks {

namespace {

constexpr double kSeriesThreshold = 1e-6;

double sign(double x) { return (x > 0.0) - (x < 0.0); }

bool ghosts_fresh(const KineticState& s) {
  const int last = s.cells();
  if (s.u[0] != s.u[size_t(last)] || s.u[size_t(last + 1)] != s.u[1]) return false;
  for (int j = 0; j < s.f.rows(); ++j) {
    if (s.f(j, 0) != s.f(j, last) || s.f(j, last + 1) != s.f(j, 1)) return false;
  }
  return true;
}

}  // namespace

double relaxation_weight(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    throw std::invalid_argument("relaxation weight needs dt/tau > 0");
  }
  if (r < kSeriesThreshold) return 1.0 - r / 2.0 + r * r / 6.0 - r * r * r / 24.0;
  return -std::expm1(-r) / r;
}

double upwind_interface(double left, double right, double velocity) {
  return 0.5 * (left + right) - 0.5 * sign(velocity) * (right - left);
}

double interface_moment_scale(const VelocityGrid& vgrid, const ModelParams& params,
                              InterfaceMoment moment) {
  return moment == InterfaceMoment::analytic ? params.root_second_moment()
                                             : std::sqrt(vgrid.moment(2));
}

InterfaceEquilibrium equilibrium_interface(std::span<const double> left,
                                           std::span<const double> right,
                                           const VelocityGrid& vgrid,
                                           const ModelParams& params,
                                           const FluxOptions& options) {
  const auto n = static_cast<std::size_t>(vgrid.size());
  if (left.size() != n || right.size() != n) {
    throw std::invalid_argument("interface slices do not match the velocity grid");
  }
  const double jump_coeff = erf_unscaled(params.alpha());
  const double scale = interface_moment_scale(vgrid, params, options.moment);

  double density = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double fg = 0.5 * (left[j] + right[j]) - jump_coeff * (right[j] - left[j]);
    density += vgrid.spacing() * (vgrid.nodes()[j] / scale) * fg;
  }
  return {density, equilibrium_projection(density, vgrid)};
}

double first_moment(const VelocityGrid& vgrid, const Array2D& values, int column) {
  double sum = 0.0;
  for (int j = 0; j < vgrid.size(); ++j) {
    sum += vgrid.spacing() * vgrid.node(j) * values(j, column);
  }
  return sum;
}

namespace detail {

FluxSet assemble_fluxes_refreshed(const KineticState& state, const VelocityGrid& vgrid,
                                  const SpatialGrid& sgrid, const ModelParams& params,
                                  double dt, const FluxOptions& options) {
  const int nv = vgrid.size();
  const int ni = sgrid.cells + 1;
  FluxSet out;
  out.f_star = Array2D(nv, ni);
  out.f_upwind = Array2D(nv, ni);
  out.g_interface = Array2D(nv, ni);
  out.F_star.assign(static_cast<std::size_t>(ni), 0.0);
  out.u_g_interface.assign(static_cast<std::size_t>(ni), 0.0);
  out.weight = relaxation_weight(dt / params.tau());

  const double jump_coeff = erf_unscaled(params.alpha());
  const double scale = interface_moment_scale(vgrid, params, options.moment);
  const double w = out.weight;

  for (int m = 0; m < ni; ++m) {
    // Interface x_{m+1/2} separates cell m (left) and cell m+1 (right).
    double density = 0.0;
    for (int j = 0; j < nv; ++j) {
      const double fl = state.f(j, m);
      const double fr = state.f(j, m + 1);
      const double fg = 0.5 * (fl + fr) - jump_coeff * (fr - fl);
      density += vgrid.spacing() * (vgrid.node(j) / scale) * fg;
      out.f_upwind(j, m) = upwind_interface(fl, fr, vgrid.node(j));
    }
    out.u_g_interface[size_t(m)] = density;
    for (int j = 0; j < nv; ++j) {
      const double g = density * vgrid.weight(j);
      out.g_interface(j, m) = g;
      out.f_star(j, m) = (1.0 - w) * g + w * out.f_upwind(j, m);
    }
    out.F_star[size_t(m)] = first_moment(vgrid, out.f_star, m);
  }
  return out;
}

}  // namespace detail

FluxSet assemble_fluxes(const KineticState& state, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid, const ModelParams& params, double dt,
                        const FluxOptions& options) {
  if (state.f.rows() != vgrid.size() || state.cells() != sgrid.cells ||
      state.f.cols() != sgrid.cells + 2) {
    throw std::invalid_argument("state does not match the grids");
  }
  if (!std::isfinite(dt) || dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (ghosts_fresh(state)) {
    return detail::assemble_fluxes_refreshed(state, vgrid, sgrid, params, dt, options);
  }
  KineticState copy = state;
  copy.refresh_ghosts();
  return detail::assemble_fluxes_refreshed(copy, vgrid, sgrid, params, dt, options);
}

}  // namespace ugks
