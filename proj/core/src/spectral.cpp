#include "ugks/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>

#include "ugks/solver.hpp"

namespace ugks {

namespace {

double sin_half_sq(double xi) {
  const double s = std::sin(0.5 * xi);
  return s * s;
}

std::vector<double> bisection_phases() {
  std::vector<double> phases = phase_samples(129);
  for (int j = 1; j <= 60; ++j) phases.push_back(std::ldexp(std::numbers::pi, -j));
  return phases;
}

}  // namespace

TransportAmplification transport_amplification(double eta, double xi) {
  using namespace std::complex_literals;
  TransportAmplification out;
  out.factor = 1.0 - eta * (1.0 - std::exp(-1i * xi));
  out.modulus_sq = 1.0 - 4.0 * eta * (1.0 - eta) * sin_half_sq(xi);
  return out;
}

std::complex<double> upwind_amplification(double eta, double xi) {
  using namespace std::complex_literals;
  if (eta >= 0.0) return 1.0 - eta * (1.0 - std::exp(-1i * xi));
  return 1.0 - eta * (std::exp(1i * xi) - 1.0);
}

double gks_gap(double beta, double alpha, double xi) {
  const double e = erf_unscaled(alpha);
  const double s2 = sin_half_sq(xi);
  return 4.0 * s2 * (beta * (beta - e) - beta * beta * (1.0 - e * e) * s2);
}

std::complex<double> gks_amplification(double beta, double jump_coeff, double xi) {
  using namespace std::complex_literals;
  const std::complex<double> right = std::exp(1i * xi);
  const std::complex<double> left = std::exp(-1i * xi);
  // Interface values for the harmonic e^{i m x}, relative to the cell value.
  const std::complex<double> plus = 0.5 * (1.0 + right) - jump_coeff * (right - 1.0);
  const std::complex<double> minus = 0.5 * (left + 1.0) - jump_coeff * (1.0 - left);
  return 1.0 - beta * (plus - minus);
}

double gks_beta_limit(double jump_coeff) {
  if (!(jump_coeff > 0.0)) throw std::invalid_argument("jump coefficient must be > 0");
  return std::min(2.0 * jump_coeff, 1.0 / (2.0 * jump_coeff));
}

std::vector<double> phase_samples(int n) {
  if (n < 2) throw std::invalid_argument("need at least two phase samples");
  std::vector<double> xi(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) xi[size_t(j)] = std::numbers::pi * j / (n - 1);
  xi.back() = std::numbers::pi;
  return xi;
}

double sup_gap(double beta, double alpha, std::span<const double> phases) {
  double m = -std::numeric_limits<double>::infinity();
  for (double xi : phases) m = std::max(m, gks_gap(beta, alpha, xi));
  return m;
}

double critical_beta(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return erf_unscaled(alpha);
}

double critical_beta_bisection(double alpha, double tolerance) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  const std::vector<double> phases = bisection_phases();
  double lo = 0.0;
  double hi = 1.0;
  while (sup_gap(hi, alpha, phases) <= 0.0) hi *= 2.0;
  while (hi - lo > 0.25 * tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (sup_gap(mid, alpha, phases) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<StabilitySample> stability_region(double alpha, std::span<const double> betas,
                                              int phases) {
  const std::vector<double> xis = phase_samples(phases);
  std::vector<StabilitySample> out;
  out.reserve(betas.size() * xis.size());
  for (double beta : betas) {
    for (double xi : xis) out.push_back({alpha, beta, xi, gks_gap(beta, alpha, xi)});
  }
  return out;
}

Array2D EigenStructure::matrix(double root_second_moment) const {
  const int n = size();
  Array2D A(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) A(k, l) = b[size_t(k)] * b[size_t(l)] / root_second_moment;
  }
  return A;
}

EigenStructure eigen_structure(const VelocityGrid& vgrid, const ModelParams& params) {
  const int n = vgrid.size();
  const double s = params.root_second_moment();
  EigenStructure eig;
  eig.b.resize(size_t(n));
  eig.l1.resize(size_t(n));
  for (int j = 0; j < n; ++j) {
    eig.b[size_t(j)] = vgrid.node(j) * std::sqrt(vgrid.weight(j) * vgrid.spacing());
    eig.l1[size_t(j)] = eig.b[size_t(j)] / s;
  }
  eig.lambda1 = vgrid.moment(2) / s;

  double norm_sq = 0.0;
  for (double v : eig.l1) norm_sq += v * v;
  if (!(norm_sq > 0.0)) throw std::runtime_error("degenerate leading eigenvector");
  std::vector<double> unit(eig.l1);
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& v : unit) v *= inv_norm;

  // Householder vector v with H e_1 = ±unit; the sign avoids cancellation in v_1.
  const bool flip = unit[0] > 0.0;
  std::vector<double> v(unit);
  for (double& x : v) x = flip ? x : -x;
  v[0] += 1.0;
  double vv = 0.0;
  for (double x : v) vv += x * x;

  eig.L = Array2D(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      eig.L(m, k) = (m == k ? 1.0 : 0.0) - 2.0 * v[size_t(m)] * v[size_t(k)] / vv;
    }
  }
  if (flip) {
    for (int k = 0; k < n; ++k) eig.L(0, k) = -eig.L(0, k);
  }
  return eig;
}

double orthogonality_residual(const EigenStructure& eig) {
  const int n = eig.size();
  double worst = 0.0;
  for (int m = 0; m < n; ++m) {
    for (int p = 0; p < n; ++p) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += eig.L(m, k) * eig.L(p, k);
      worst = std::max(worst, std::abs(dot - (m == p ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double null_space_residual(const EigenStructure& eig, double root_second_moment) {
  const int n = eig.size();
  const Array2D A = eig.matrix(root_second_moment);
  double worst = 0.0;
  for (int m = 1; m < n; ++m) {
    for (int l = 0; l < n; ++l) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += eig.L(m, k) * A(k, l);
      worst = std::max(worst, std::abs(dot));
    }
  }
  return worst;
}

Array2D riemann_transform(const Array2D& f, const VelocityGrid& vgrid,
                          const EigenStructure& eig) {
  const int n = vgrid.size();
  if (f.rows() != n || eig.size() != n || f.cols() < 3) {
    throw std::invalid_argument("distribution does not match the eigenstructure");
  }
  const int cells = f.cols() - 2;
  std::vector<double> inv_root(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) inv_root[size_t(k)] = 1.0 / std::sqrt(vgrid.weight(k));

  Array2D R(n, cells);
  std::vector<double> U(static_cast<std::size_t>(n));
  for (int i = 1; i <= cells; ++i) {
    for (int k = 0; k < n; ++k) U[size_t(k)] = f(k, i) * inv_root[size_t(k)];
    for (int m = 0; m < n; ++m) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += eig.L(m, k) * U[size_t(k)];
      R(m, i - 1) = dot;
    }
  }
  return R;
}

Array2D inverse_riemann_transform(const Array2D& invariants, const VelocityGrid& vgrid,
                                  const EigenStructure& eig) {
  const int n = vgrid.size();
  if (invariants.rows() != n || eig.size() != n) {
    throw std::invalid_argument("invariants do not match the eigenstructure");
  }
  const int cells = invariants.cols();
  Array2D f(n, cells + 2);
  for (int i = 1; i <= cells; ++i) {
    for (int k = 0; k < n; ++k) {
      double dot = 0.0;
      for (int m = 0; m < n; ++m) dot += eig.L(m, k) * invariants(m, i - 1);
      f(k, i) = std::sqrt(vgrid.weight(k)) * dot;
    }
  }
  refresh_ghosts(f);
  return f;
}

std::vector<double> momentum_moment(const Array2D& f, const VelocityGrid& vgrid) {
  if (f.rows() != vgrid.size()) {
    throw std::invalid_argument("distribution does not match the velocity grid");
  }
  std::vector<double> F(size_t(f.cols()), 0.0);
  for (int i = 1; i < f.cols() - 1; ++i) F[size_t(i)] = first_moment(vgrid, f, i);
  refresh_ghosts(F);
  return F;
}

std::vector<double> gks_momentum_step(std::span<const double> F, double speed, double dt,
                                      const ModelParams& params, const SpatialGrid& sgrid) {
  if (F.size() != size_t(sgrid.cells + 2)) {
    throw std::invalid_argument("momentum vector does not match the spatial grid");
  }
  std::vector<double> padded(F.begin(), F.end());
  refresh_ghosts(padded);
  const double e = erf_unscaled(params.alpha());
  const double ratio = speed * dt / sgrid.dx;
  auto interface = [&](int m) {
    const double l = padded[size_t(m)];
    const double r = padded[size_t(m + 1)];
    return 0.5 * (l + r) - e * (r - l);
  };
  std::vector<double> out(padded.size(), 0.0);
  for (int i = 1; i <= sgrid.cells; ++i) {
    out[size_t(i)] = padded[size_t(i)] - ratio * (interface(i) - interface(i - 1));
  }
  refresh_ghosts(out);
  return out;
}

std::vector<double> momentum_limit_scheme(std::span<const double> F, double dt,
                                          const ModelParams& params,
                                          const VelocityGrid& vgrid,
                                          const SpatialGrid& sgrid) {
  const double speed = vgrid.moment(2) / params.root_second_moment();
  return gks_momentum_step(F, speed, dt, params, sgrid);
}

InterfaceInvariantReport verify_submethod_g_invariants(const KineticState& state, double dt,
                                                       const VelocityGrid& vgrid,
                                                       const SpatialGrid& sgrid,
                                                       const ModelParams& params,
                                                       const EigenStructure& eig) {
  const SubMethodOutputs sub = [&] {
    KineticState s = state;
    s.refresh_ghosts();
    return sub_methods(s, dt, vgrid, sgrid, params);
  }();

  const Array2D before = riemann_transform(state.f, vgrid, eig);
  const Array2D after = riemann_transform(sub.interface_collision, vgrid, eig);

  InterfaceInvariantReport report;
  for (int m = 1; m < before.rows(); ++m) {
    for (int i = 0; i < before.cols(); ++i) {
      report.max_frozen_change =
          std::max(report.max_frozen_change, std::abs(after(m, i) - before(m, i)));
    }
  }

  const double s = params.root_second_moment();
  const std::vector<double> F = momentum_moment(state.f, vgrid);
  const std::vector<double> predicted = gks_momentum_step(F, s, dt, params, sgrid);
  // R_1 = F / (s sqrt(dc)) because l1 = b / s.
  const double to_invariant = 1.0 / (s * std::sqrt(vgrid.spacing()));
  for (int i = 1; i <= sgrid.cells; ++i) {
    const double r1 = after(0, i - 1);
    report.r1_scale = std::max(report.r1_scale, std::abs(r1));
    report.max_r1_mismatch =
        std::max(report.max_r1_mismatch, std::abs(r1 - predicted[size_t(i)] * to_invariant));
  }

  const std::vector<double> F_after = momentum_moment(sub.interface_collision, vgrid);
  report.momentum_l2_before = macro_l2_norm(F, sgrid);
  report.momentum_l2_after = macro_l2_norm(F_after, sgrid);
  return report;
}

}  // namespace ugks
