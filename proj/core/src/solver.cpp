#include "ugks/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ugks {

namespace {

// Relative slack on the CFL comparison so that dt = dt_max computed along a
// different arithmetic path is not rejected.
constexpr double kCflSlack = 1e-12;

void check_state(const KineticState& s, const VelocityGrid& vgrid, const SpatialGrid& sgrid) {
  if (s.f.rows() != vgrid.size() || s.f.cols() != sgrid.cells + 2 ||
      s.cells() != sgrid.cells) {
    throw std::invalid_argument("state does not match the grids");
  }
}

// Conservative difference of one interface row onto interior cell i.
double flux_difference(const Array2D& iface, int j, int i) {
  return iface(j, i) - iface(j, i - 1);
}

}  // namespace

CflViolation::CflViolation(double dt, double dt_max)
    : std::runtime_error("time step " + std::to_string(dt) + " exceeds the CFL bound " +
                         std::to_string(dt_max)),
      dt_(dt), dt_max_(dt_max) {}

void StepConfig::validate() const {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument("cfl_safety must lie in (0, 1]");
  }
  if (dt_override && !(std::isfinite(*dt_override) && *dt_override > 0.0)) {
    throw std::invalid_argument("dt_override must be finite and > 0");
  }
}

double cfl_max_dt(const VelocityGrid& vgrid, const ModelParams& params,
                  const SpatialGrid& sgrid) {
  const double transport = vgrid.max_abs_node();
  const double interface = params.root_second_moment() / erf_unscaled(params.alpha());
  return sgrid.dx / std::max(transport, interface);
}

KineticState init_equilibrium(const std::function<double(double)>& profile,
                              const VelocityGrid& vgrid, const SpatialGrid& sgrid) {
  KineticState s = make_zero_state(vgrid, sgrid);
  for (int i = 1; i <= sgrid.cells; ++i) {
    const double u = profile(sgrid.center(i));
    s.u[size_t(i)] = u;
    for (int j = 0; j < vgrid.size(); ++j) s.f(j, i) = u * vgrid.weight(j);
  }
  s.refresh_ghosts();
  return s;
}

KineticState init_nonequilibrium(const std::function<double(double)>& profile,
                                 const Array2D& perturbation, const VelocityGrid& vgrid,
                                 const SpatialGrid& sgrid) {
  if (perturbation.rows() != vgrid.size() || perturbation.cols() != sgrid.cells) {
    throw std::invalid_argument("perturbation must be nodes x cells");
  }
  KineticState s = init_equilibrium(profile, vgrid, sgrid);
  for (int i = 1; i <= sgrid.cells; ++i) {
    double mass = 0.0;
    for (int j = 0; j < vgrid.size(); ++j) mass += vgrid.spacing() * perturbation(j, i - 1);
    for (int j = 0; j < vgrid.size(); ++j) {
      s.f(j, i) += perturbation(j, i - 1) - vgrid.weight(j) * mass;
    }
  }
  s.refresh_ghosts();
  return s;
}

Array2D SubMethodOutputs::recombine() const {
  Array2D out(free_transport.rows(), free_transport.cols());
  const double cf = free_coefficient();
  const double cg = interface_coefficient();
  const double cs = cell_coefficient();
  for (int j = 0; j < out.rows(); ++j) {
    for (int i = 0; i < out.cols(); ++i) {
      out(j, i) = cf * free_transport(j, i) + cg * interface_collision(j, i) +
                  cs * cell_collision(j, i);
    }
  }
  return out;
}

SubMethodOutputs sub_methods(const KineticState& state, double dt,
                             const VelocityGrid& vgrid, const SpatialGrid& sgrid,
                             const ModelParams& params, const FluxOptions& options) {
  check_state(state, vgrid, sgrid);
  const FluxSet fluxes = assemble_fluxes(state, vgrid, sgrid, params, dt, options);
  const int nv = vgrid.size();
  const int cells = sgrid.cells;
  const double ratio = dt / sgrid.dx;

  SubMethodOutputs out;
  out.weight = fluxes.weight;
  out.dt_over_tau = dt / params.tau();
  out.free_transport = make_cell_array(vgrid, sgrid);
  out.interface_collision = make_cell_array(vgrid, sgrid);
  out.cell_collision = make_cell_array(vgrid, sgrid);
  out.flux_prediction = make_cell_array(vgrid, sgrid);
  out.u_free.assign(size_t(cells + 2), 0.0);
  out.u_interface.assign(size_t(cells + 2), 0.0);
  out.u_next.assign(size_t(cells + 2), 0.0);

  std::vector<double> F_upwind(static_cast<std::size_t>(cells + 1));
  std::vector<double> F_equilibrium(static_cast<std::size_t>(cells + 1));
  for (int m = 0; m <= cells; ++m) {
    F_upwind[size_t(m)] = first_moment(vgrid, fluxes.f_upwind, m);
    F_equilibrium[size_t(m)] = first_moment(vgrid, fluxes.g_interface, m);
  }

  const double w = fluxes.weight;
  for (int i = 1; i <= cells; ++i) {
    const auto si = size_t(i);
    out.u_free[si] = state.u[si] - ratio * (F_upwind[si] - F_upwind[si - 1]);
    out.u_interface[si] = state.u[si] - ratio * (F_equilibrium[si] - F_equilibrium[si - 1]);
    out.u_next[si] = state.u[si] - ratio * (fluxes.F_star[si] - fluxes.F_star[si - 1]);
    for (int j = 0; j < nv; ++j) {
      const double courant = vgrid.node(j) * ratio;
      const double ff = state.f(j, i) - courant * flux_difference(fluxes.f_upwind, j, i);
      const double fg = state.f(j, i) - courant * flux_difference(fluxes.g_interface, j, i);
      out.free_transport(j, i) = ff;
      out.interface_collision(j, i) = fg;
      out.flux_prediction(j, i) = w * ff + (1.0 - w) * fg;
      out.cell_collision(j, i) = out.u_next[si] * vgrid.weight(j);
    }
  }
  refresh_ghosts(out.free_transport);
  refresh_ghosts(out.interface_collision);
  refresh_ghosts(out.cell_collision);
  refresh_ghosts(out.flux_prediction);
  refresh_ghosts(out.u_free);
  refresh_ghosts(out.u_interface);
  refresh_ghosts(out.u_next);
  return out;
}

StepResult step(const KineticState& state, double dt, const VelocityGrid& vgrid,
                const SpatialGrid& sgrid, const ModelParams& params,
                const StepConfig& config) {
  check_state(state, vgrid, sgrid);
  if (!std::isfinite(dt) || dt <= 0.0) throw std::invalid_argument("dt must be > 0");

  StepResult result;
  const double dt_max = cfl_max_dt(vgrid, params, sgrid);
  if (dt > dt_max * (1.0 + kCflSlack)) {
    if (!config.dt_override) throw CflViolation(dt, dt_max);
    result.cfl_violated = true;
  }

  KineticState current = state;
  current.refresh_ghosts();
  const FluxSet fluxes = assemble_fluxes(current, vgrid, sgrid, params, dt, config.flux);

  const double ratio = dt / sgrid.dx;
  const double r = dt / params.tau();
  const double inv = 1.0 / (1.0 + r);

  KineticState next = make_zero_state(vgrid, sgrid);
  for (int i = 1; i <= sgrid.cells; ++i) {
    const auto si = size_t(i);
    const double u_next =
        current.u[si] - ratio * (fluxes.F_star[si] - fluxes.F_star[si - 1]);
    next.u[si] = u_next;
    for (int j = 0; j < vgrid.size(); ++j) {
      const double transported =
          current.f(j, i) - vgrid.node(j) * ratio * flux_difference(fluxes.f_star, j, i);
      next.f(j, i) = (transported + r * u_next * vgrid.weight(j)) * inv;
    }
  }
  next.refresh_ghosts();
  next.time = state.time + dt;
  next.step_index = state.step_index + 1;
  result.state = std::move(next);

  if (config.record_submethods) {
    result.submethods = sub_methods(current, dt, vgrid, sgrid, params, config.flux);
  }
  return result;
}

double policy_dt(const VelocityGrid& vgrid, const SpatialGrid& sgrid,
                 const ModelParams& params, const StepConfig& config) {
  config.validate();
  if (config.dt_override) return *config.dt_override;
  return config.cfl_safety * cfl_max_dt(vgrid, params, sgrid);
}

std::vector<StepRecord> run(KineticState& state, double t_end, const VelocityGrid& vgrid,
                            const SpatialGrid& sgrid, const ModelParams& params,
                            const StepConfig& config, const StepObserver& observer) {
  if (!(t_end >= state.time)) {
    throw std::invalid_argument("t_end must not precede the state time");
  }
  const double nominal = policy_dt(vgrid, sgrid, params, config);
  std::vector<StepRecord> records;
  while (state.time < t_end) {
    const double remaining = t_end - state.time;
    const bool last = remaining <= nominal * (1.0 + 1e-12);
    const double dt = last ? remaining : nominal;

    StepResult result = step(state, dt, vgrid, sgrid, params, config);
    state = std::move(result.state);
    if (last) state.time = t_end;

    StepRecord rec;
    rec.step = state.step_index;
    rec.time = state.time;
    rec.dt = dt;
    rec.norms = norm_report(state, vgrid, sgrid);
    rec.cfl_violated = result.cfl_violated;
    records.push_back(rec);
    if (observer) {
      observer(rec, state, result.submethods ? &*result.submethods : nullptr);
    }
  }
  return records;
}

}  // namespace ugks
