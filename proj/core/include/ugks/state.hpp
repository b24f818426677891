#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ugks/model.hpp"

namespace ugks {

/// Uniform periodic grid of `cells` control volumes of width `dx`.
struct SpatialGrid {
  int cells = 0;
  double dx = 0.0;

  double length() const { return cells * dx; }
  /// Centre of interior cell i (1-based, i = 1..cells).
  double center(int i) const { return (i - 0.5) * dx; }
};

/// Throws std::invalid_argument unless cells >= 2 and length > 0.
SpatialGrid make_spatial_grid(int cells, double length);

/// Dense row-major 2-D array.
class Array2D {
 public:
  Array2D() = default;
  Array2D(int rows, int cols, double fill = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[index(r, c)]; }
  double operator()(int r, int c) const { return data_[index(r, c)]; }

  std::span<double> row(int r) { return {data_.data() + index(r, 0), size_t(cols_)}; }
  std::span<const double> row(int r) const {
    return {data_.data() + index(r, 0), size_t(cols_)};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const Array2D&) const = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Per-cell distribution arrays are stored with one ghost column on each
/// side: column 0 mirrors column I and column I+1 mirrors column 1.
/// Rows are velocity nodes j = 0..2K.
Array2D make_cell_array(const VelocityGrid& vgrid, const SpatialGrid& sgrid);
void refresh_ghosts(Array2D& f);
void refresh_ghosts(std::vector<double>& u);

/// Discrete distribution f_{k,i} and density u_i at one time level.
///
/// `u` has I+2 entries with the same ghost layout as the columns of `f`.
struct KineticState {
  Array2D f;
  std::vector<double> u;
  double time = 0.0;
  long step_index = 0;

  int cells() const { return static_cast<int>(u.size()) - 2; }
  int velocities() const { return f.rows(); }
  void refresh_ghosts();
};

KineticState make_zero_state(const VelocityGrid& vgrid, const SpatialGrid& sgrid);

struct NormReport {
  double weighted_l2 = 0.0;
  double macro_l2 = 0.0;
  double constraint_residual = 0.0;
};

/// (Σ_k dc Σ_i dx f_{k,i}²/ω_k)^(1/2) over interior cells; k outer, i inner, ascending.
double weighted_l2_norm(const Array2D& f, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid);
double weighted_l2_norm(const KineticState& state, const VelocityGrid& vgrid,
                        const SpatialGrid& sgrid);

/// (Σ_i dx u_i²)^(1/2) over interior cells.
double macro_l2_norm(std::span<const double> u, const SpatialGrid& sgrid);
double macro_l2_norm(const KineticState& state, const SpatialGrid& sgrid);

/// Zeroth moment Σ_k dc f_{k,i} of interior cell i.
double density_moment(const Array2D& f, const VelocityGrid& vgrid, int cell);

/// max_i |u_i - Σ_k dc f_{k,i}|.
double constraint_residual(const KineticState& state, const VelocityGrid& vgrid);

NormReport norm_report(const KineticState& state, const VelocityGrid& vgrid,
                       const SpatialGrid& sgrid);

/// max_i |u_i| over interior cells.
double max_abs_density(const KineticState& state);

/// Residual bound used by the solver checks: 1e-12·‖u⁰‖_∞ with floor 1e-14.
double constraint_tolerance(double initial_max_density);

}  // namespace ugks
