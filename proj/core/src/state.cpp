#include "ugks/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ugks {

namespace {

void check_shape(const Array2D& f, const VelocityGrid& vgrid, const SpatialGrid& sgrid) {
  if (f.rows() != vgrid.size() || f.cols() != sgrid.cells + 2) {
    throw std::invalid_argument("distribution array is " + std::to_string(f.rows()) + "x" +
                                std::to_string(f.cols()) + ", expected " +
                                std::to_string(vgrid.size()) + "x" +
                                std::to_string(sgrid.cells + 2));
  }
}

}  // namespace

SpatialGrid make_spatial_grid(int cells, double length) {
  if (cells < 2) throw std::invalid_argument("spatial grid needs at least 2 cells");
  if (!std::isfinite(length) || length <= 0.0) {
    throw std::invalid_argument("spatial grid length must be > 0");
  }
  return {cells, length / cells};
}

Array2D::Array2D(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative array extent");
}

Array2D make_cell_array(const VelocityGrid& vgrid, const SpatialGrid& sgrid) {
  return Array2D(vgrid.size(), sgrid.cells + 2);
}

void refresh_ghosts(Array2D& f) {
  const int last = f.cols() - 2;
  for (int j = 0; j < f.rows(); ++j) {
    f(j, 0) = f(j, last);
    f(j, last + 1) = f(j, 1);
  }
}

void refresh_ghosts(std::vector<double>& u) {
  const std::size_t last = u.size() - 2;
  u[0] = u[last];
  u[last + 1] = u[1];
}

void KineticState::refresh_ghosts() {
  ugks::refresh_ghosts(f);
  ugks::refresh_ghosts(u);
}

KineticState make_zero_state(const VelocityGrid& vgrid, const SpatialGrid& sgrid) {
  KineticState s;
  s.f = make_cell_array(vgrid, sgrid);
  s.u.assign(static_cast<std::size_t>(sgrid.cells + 2), 0.0);
  return s;
}

double weighted_l2_norm(const Array2D& f, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid) {
  check_shape(f, vgrid, sgrid);
  double total = 0.0;
  for (int j = 0; j < vgrid.size(); ++j) {
    const double inv_w = 1.0 / vgrid.weight(j);
    double row_sum = 0.0;
    for (int i = 1; i <= sgrid.cells; ++i) {
      const double v = f(j, i);
      row_sum += sgrid.dx * v * v * inv_w;
    }
    total += vgrid.spacing() * row_sum;
  }
  return std::sqrt(total);
}

double weighted_l2_norm(const KineticState& state, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid) {
  return weighted_l2_norm(state.f, vgrid, sgrid);
}

double macro_l2_norm(std::span<const double> u, const SpatialGrid& sgrid) {
  if (u.size() != static_cast<std::size_t>(sgrid.cells + 2)) {
    throw std::invalid_argument("density vector does not match the spatial grid");
  }
  double total = 0.0;
  for (int i = 1; i <= sgrid.cells; ++i) total += sgrid.dx * u[size_t(i)] * u[size_t(i)];
  return std::sqrt(total);
}

double macro_l2_norm(const KineticState& state, const SpatialGrid& sgrid) {
  return macro_l2_norm(state.u, sgrid);
}

double density_moment(const Array2D& f, const VelocityGrid& vgrid, int cell) {
  double sum = 0.0;
  for (int j = 0; j < vgrid.size(); ++j) sum += vgrid.spacing() * f(j, cell);
  return sum;
}

double constraint_residual(const KineticState& state, const VelocityGrid& vgrid) {
  if (state.f.rows() != vgrid.size() || state.f.cols() != static_cast<int>(state.u.size())) {
    throw std::invalid_argument("state does not match the velocity grid");
  }
  double worst = 0.0;
  for (int i = 1; i <= state.cells(); ++i) {
    worst = std::max(worst, std::abs(state.u[size_t(i)] - density_moment(state.f, vgrid, i)));
  }
  return worst;
}

NormReport norm_report(const KineticState& state, const VelocityGrid& vgrid,
                       const SpatialGrid& sgrid) {
  return {weighted_l2_norm(state, vgrid, sgrid), macro_l2_norm(state, sgrid),
          constraint_residual(state, vgrid)};
}

double max_abs_density(const KineticState& state) {
  double m = 0.0;
  for (int i = 1; i <= state.cells(); ++i) m = std::max(m, std::abs(state.u[size_t(i)]));
  return m;
}

double constraint_tolerance(double initial_max_density) {
  return std::max(1e-12 * initial_max_density, 1e-14);
}

}  // namespace ugks
