#include "ugks/model.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ugks {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string(name) + " must be finite and > 0, got " +
                                std::to_string(value));
  }
}

}  // namespace

ModelParams::ModelParams(double a, double theta, double tau)
    : a_(a), theta_(theta), tau_(tau) {
  require_positive(a, "advection velocity a");
  require_positive(theta, "theta");
  require_positive(tau, "tau");
}

double ModelParams::root_second_moment() const {
  return std::sqrt(a_ * a_ + 0.5 * theta_);
}

double ModelParams::alpha() const { return a_ / std::sqrt(theta_); }

double MomentDefects::max() const { return std::max({zeroth, first, second}); }

double VelocityGrid::moment(int order) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    double term = spacing_ * weights_[j];
    for (int p = 0; p < order; ++p) term *= nodes_[j];
    sum += term;
  }
  return sum;
}

double VelocityGrid::max_abs_node() const {
  double m = 0.0;
  for (double c : nodes_) m = std::max(m, std::abs(c));
  return m;
}

VelocityGrid build_grid(const ModelParams& params, int half_count, double coverage,
                        const GridOptions& options) {
  if (half_count < 1) {
    throw std::invalid_argument("velocity grid needs K >= 1, got " +
                                std::to_string(half_count));
  }
  if (!std::isfinite(coverage) || coverage <= 0.0) {
    throw std::invalid_argument("velocity grid coverage must be > 0");
  }

  const double a = params.a();
  const double theta = params.theta();

  VelocityGrid grid;
  grid.half_count_ = half_count;
  grid.spacing_ = coverage * std::sqrt(theta) / half_count;
  grid.a_ = a;
  grid.theta_ = theta;
  grid.tolerance_ = options.quadrature_tolerance;

  const auto n = static_cast<std::size_t>(2 * half_count + 1);
  grid.nodes_.resize(n);
  grid.weights_.resize(n);
  const double norm = 1.0 / std::sqrt(theta * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    const int k = static_cast<int>(j) - half_count;
    // Offsets are formed from k directly so that c_k + c_{-k} = 2a holds exactly.
    const double offset = k * grid.spacing_;
    grid.nodes_[j] = a + offset;
    grid.weights_[j] = norm * std::exp(-offset * offset / theta);
  }

  if (options.renormalize_weights) {
    const double m0 = grid.moment(0);
    for (double& w : grid.weights_) w /= m0;
    grid.renormalized_ = true;
  }

  const double m2_exact = a * a + 0.5 * theta;
  grid.defects_.zeroth = std::abs(grid.moment(0) - 1.0);
  grid.defects_.first = std::abs(grid.moment(1) - a);
  grid.defects_.second = std::abs(grid.moment(2) - m2_exact);

  if (options.warn_on_defect && !grid.quadrature_ok()) {
    std::ostream& out = options.diagnostics ? *options.diagnostics : std::clog;
    out << "warning: velocity quadrature defects (" << grid.defects_.zeroth << ", "
        << grid.defects_.first << ", " << grid.defects_.second
        << ") exceed tolerance " << grid.tolerance_ << " (K=" << half_count
        << ", coverage=" << coverage << ")\n";
  }
  return grid;
}

double erf_unscaled(double x) {
  return 0.5 * std::sqrt(std::numbers::pi) * std::erf(x);
}

std::vector<double> equilibrium_projection(double u, const VelocityGrid& grid) {
  std::vector<double> g(grid.weights().begin(), grid.weights().end());
  for (double& v : g) v *= u;
  return g;
}

}  // namespace ugks
