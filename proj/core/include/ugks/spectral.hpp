#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ugks/flux.hpp"
#include "ugks/model.hpp"
#include "ugks/state.hpp"

namespace ugks {

// --- Von Neumann analysis -------------------------------------------------

struct TransportAmplification {
  std::complex<double> factor;  ///< 1 - eta(1 - e^{-i xi})
  double modulus_sq = 0.0;      ///< 1 - 4 eta (1 - eta) sin²(xi/2)
};

/// Amplification of the first-order upwind update for a node with positive
/// velocity and Courant number eta = c dt/dx, at phase xi = m dx.
TransportAmplification transport_amplification(double eta, double xi);

/// Same update for any signed Courant number: the upwind side follows sign(eta).
std::complex<double> upwind_amplification(double eta, double xi);

/// g(xi) = |G|² - 1 of the interface momentum scheme in closed form,
/// 4 sin²(xi/2) [beta(beta - E) - beta²(1 - E²) sin²(xi/2)], E = erf_unscaled(alpha).
double gks_gap(double beta, double alpha, double xi);

/// Direct amplification of F_i <- F_i - beta (F_{i+1/2} - F_{i-1/2}) with
/// F_{i+1/2} = ½(F_i + F_{i+1}) - jump_coeff (F_{i+1} - F_i).
/// gks_gap corresponds to jump_coeff = erf_unscaled(alpha) / 2.
std::complex<double> gks_amplification(double beta, double jump_coeff, double xi);

/// Largest beta for which |gks_amplification| <= 1 at every phase:
/// min(2c, 1/(2c)) for jump coefficient c > 0.
double gks_beta_limit(double jump_coeff);

/// n uniform phases on [0, pi] (default 129).
std::vector<double> phase_samples(int n = 129);

/// max over `phases` of gks_gap(beta, alpha, ·).
double sup_gap(double beta, double alpha, std::span<const double> phases);

/// The binding stability bound beta <= erf_unscaled(alpha).
double critical_beta(double alpha);

/// Locates the sign change of sup_xi gks_gap in beta by bisection. The phase
/// set adds a geometric cluster toward xi = 0 to the uniform samples, since the
/// unstable band shrinks to zero width at the boundary.
double critical_beta_bisection(double alpha, double tolerance = 1e-6);

struct StabilitySample {
  double alpha = 0.0;
  double beta = 0.0;
  double xi = 0.0;
  double gap = 0.0;
};

/// Row-major (beta outer, xi inner) samples of gks_gap.
std::vector<StabilitySample> stability_region(double alpha, std::span<const double> betas,
                                              int phases = 129);

// --- Rank-one interface system ----------------------------------------------

/// Left eigenstructure of A = b bᵀ / sqrt(a² + theta/2), b_k = c_k sqrt(ω_k dc).
struct EigenStructure {
  std::vector<double> b;
  double lambda1 = 0.0;    ///< Σ dc c_k² ω_k / sqrt(a² + theta/2)
  std::vector<double> l1;  ///< b / sqrt(a² + theta/2)
  Array2D L;               ///< orthogonal; row 0 is l1 normalised

  int size() const { return static_cast<int>(b.size()); }
  /// A_{kl} formed explicitly.
  Array2D matrix(double root_second_moment) const;
};

/// Completes l1 to an orthonormal basis with the Householder reflection that
/// maps the first coordinate axis onto l1. Deterministic.
EigenStructure eigen_structure(const VelocityGrid& vgrid, const ModelParams& params);

/// max |(L Lᵀ - I)_{mn}|.
double orthogonality_residual(const EigenStructure& eig);

/// max over m >= 2 of |l_mᵀ A|_∞.
double null_space_residual(const EigenStructure& eig, double root_second_moment);

/// Riemann invariants R_{m,i} = l_mᵀ U_i with U_i = (f_{k,i}/sqrt(ω_k))_k.
/// Input uses the ghost-column layout; output is modes × interior cells.
Array2D riemann_transform(const Array2D& f, const VelocityGrid& vgrid,
                          const EigenStructure& eig);

/// U = Lᵀ R, returned in the ghost-column layout with f_{k,i} = sqrt(ω_k) U_{k,i}.
Array2D inverse_riemann_transform(const Array2D& invariants, const VelocityGrid& vgrid,
                                  const EigenStructure& eig);

/// F_i = Σ_k dc c_k f_{k,i}; interior cells, ghost layout.
std::vector<double> momentum_moment(const Array2D& f, const VelocityGrid& vgrid);

/// One step of the scalar interface scheme
/// F_i <- F_i - speed (dt/dx)(F^g_{i+1/2} - F^g_{i-1/2}) with the
/// erf_unscaled(a/sqrt(theta)) jump coefficient. F uses the ghost layout.
std::vector<double> gks_momentum_step(std::span<const double> F, double speed, double dt,
                                      const ModelParams& params, const SpatialGrid& sgrid);

/// gks_momentum_step with speed ã = Σ dc c_k² ω_k / sqrt(a² + theta/2).
std::vector<double> momentum_limit_scheme(std::span<const double> F, double dt,
                                          const ModelParams& params,
                                          const VelocityGrid& vgrid,
                                          const SpatialGrid& sgrid);

struct InterfaceInvariantReport {
  double max_frozen_change = 0.0;  ///< max_{m>=2,i} |R^{n+1}_{m,i} - R^n_{m,i}|
  double max_r1_mismatch = 0.0;    ///< max_i |R^{n+1}_{1,i} - scalar-scheme prediction|
  double r1_scale = 0.0;           ///< max_i |R^{n+1}_{1,i}|
  double momentum_l2_before = 0.0; ///< (Σ_i dx F_i²)^(1/2)
  double momentum_l2_after = 0.0;
};

/// Applies one interface-collision sub-step and compares its Riemann invariants
/// with the frozen-mode prediction and with the scalar momentum scheme at
/// speed sqrt(a² + theta/2).
InterfaceInvariantReport verify_submethod_g_invariants(const KineticState& state, double dt,
                                                       const VelocityGrid& vgrid,
                                                       const SpatialGrid& sgrid,
                                                       const ModelParams& params,
                                                       const EigenStructure& eig);

}  // namespace ugks
