// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ugks_acceptance                 run every criterion
//   ugks_acceptance --criterion X   run one (see --list)

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment.hpp"
#include "ugks/ugks.hpp"

using namespace ugks;
namespace ex = ugks::experiment;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

struct Criterion {
  std::string name;
  std::function<void(Outcome&)> body;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// Default-resolution setup shared by the stepping criteria.
struct Bench {
  ModelParams params;
  VelocityGrid vgrid;
  SpatialGrid sgrid;

  explicit Bench(double tau, int cells = 64)
      : params(1.0, 1.0, tau), vgrid(build_grid(params)), sgrid(make_spatial_grid(cells, 1.0)) {}

  double dt() const { return 0.9 * cfl_max_dt(vgrid, params, sgrid); }
};

KineticState random_state(const Bench& b, std::uint64_t seed) {
  ex::InitialConditionConfig ic;
  ic.kind = ex::InitialKind::random_nonequilibrium;
  ic.seed = seed;
  return ex::make_initial_state(ic, b.vgrid, b.sgrid);
}

KineticState sine_state(const Bench& b, double wavenumber = 1.0) {
  ex::InitialConditionConfig ic;
  ic.kind = ex::InitialKind::equilibrium_sine;
  ic.wavenumber = wavenumber;
  return ex::make_initial_state(ic, b.vgrid, b.sgrid);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

const std::vector<double> kTaus{1e-6, 1e-4, 1e-2, 1.0, 1e2};

void quadrature(Outcome& out) {
  const ModelParams p(1.0, 1.0, 1.0);
  const VelocityGrid g = build_grid(p, 48, 6.0);
  const MomentDefects& d = g.moment_defects();
  out.require(d.zeroth < 1e-12, "zeroth-moment defect " + num(d.zeroth));
  out.require(d.first < 1e-12, "first-moment defect " + num(d.first));
  out.require(d.second < 1e-12, "second-moment defect " + num(d.second));
  out.detail << "defects " << num(d.zeroth) << ", " << num(d.first) << ", " << num(d.second);
}

void constraint(Outcome& out) {
  double worst_ratio = 0.0;
  for (double tau : {1e-6, 1.0, 1e2}) {
    const Bench b(tau);
    KineticState st = random_state(b, 2024);
    const double tol = 1e-12 * max_abs_density(st);
    const double dt = b.dt();
    for (int n = 0; n < 1000; ++n) st = step(st, dt, b.vgrid, b.sgrid, b.params).state;
    const double res = constraint_residual(st, b.vgrid);
    worst_ratio = std::max(worst_ratio, res / tol);
    out.require(res <= tol, "tau " + num(tau) + " residual " + num(res));
  }

  // Contraction from an incompatible start, checked while the residual stays
  // far enough above roundoff for a 1e-10 relative comparison.
  double worst_rel = 0.0;
  for (double tau : kTaus) {
    const Bench b(tau);
    KineticState st = random_state(b, 77);
    for (int i = 1; i <= b.sgrid.cells; ++i) st.u[size_t(i)] += 0.5 * std::cos(3.0 * i);
    st.refresh_ghosts();
    const double floor = 1e-5 * max_abs_density(st);
    const double dt = b.dt();
    double res = constraint_residual(st, b.vgrid);
    for (int n = 0; n < 20; ++n) {
      st = step(st, dt, b.vgrid, b.sgrid, b.params).state;
      const double next = constraint_residual(st, b.vgrid);
      const double expected = res / (1.0 + dt / tau);
      if (expected < floor) break;
      const double rel = std::abs(next - expected) / expected;
      worst_rel = std::max(worst_rel, rel);
      out.require(rel <= 1e-10, "contraction tau " + num(tau) + " rel " + num(rel));
      res = next;
    }
  }
  out.detail << (out.pass ? "" : "; ") << "max residual/tolerance " << num(worst_ratio)
             << ", max contraction rel error " << num(worst_rel);
}

void strong_stability(Outcome& out) {
  double worst_growth = -1.0;
  double worst_macro = -1.0;
  for (double tau : kTaus) {
    const Bench b(tau);
    const double dt = b.dt();
    for (int kind = 0; kind < 2; ++kind) {
      KineticState st = kind == 0 ? sine_state(b) : random_state(b, 5);
      double prev = weighted_l2_norm(st, b.vgrid, b.sgrid);
      bool ok = true;
      for (int n = 0; n < 500; ++n) {
        st = step(st, dt, b.vgrid, b.sgrid, b.params).state;
        const NormReport r = norm_report(st, b.vgrid, b.sgrid);
        worst_growth = std::max(worst_growth, r.weighted_l2 / prev - 1.0);
        worst_macro = std::max(worst_macro, r.macro_l2 / r.weighted_l2 - 1.0);
        ok = ok && r.weighted_l2 <= prev * (1.0 + 1e-12) && r.macro_l2 <= r.weighted_l2;
        prev = r.weighted_l2;
      }
      out.require(ok, std::string(kind == 0 ? "sine" : "random") + " tau " + num(tau));
    }
  }
  const Bench lo(1e2), hi(1e-6);
  out.detail << (out.pass ? "" : "; ") << "dt/tau " << num(lo.dt() / 1e2) << ".." << num(hi.dt() / 1e-6)
             << ", max step growth " << num(worst_growth) << ", max macro/weighted - 1 "
             << num(worst_macro);
}

void convex(Outcome& out) {
  double worst_rel = 0.0;
  double worst_ratio = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Bench b(kTaus[size_t(n) % kTaus.size()], 32);
    const KineticState st = random_state(b, 1000 + std::uint64_t(n));
    StepConfig cfg;
    cfg.record_submethods = true;
    const StepResult r = step(st, b.dt(), b.vgrid, b.sgrid, b.params, cfg);
    const SubMethodOutputs& sub = *r.submethods;
    const Array2D rec = sub.recombine();
    double diff = 0.0;
    for (int j = 0; j < rec.rows(); ++j) {
      for (int i = 1; i <= b.sgrid.cells; ++i) diff = std::max(diff, std::abs(rec(j, i) - r.state.f(j, i)));
    }
    const double rel = diff / max_abs(r.state.f.data());
    worst_rel = std::max(worst_rel, rel);
    out.require(rel <= 1e-14, "state " + std::to_string(n) + " recombination rel " + num(rel));

    const double w0 = weighted_l2_norm(st, b.vgrid, b.sgrid);
    for (const Array2D* part : {&sub.free_transport, &sub.interface_collision, &sub.cell_collision}) {
      const double ratio = weighted_l2_norm(*part, b.vgrid, b.sgrid) / w0;
      worst_ratio = std::max(worst_ratio, ratio);
      out.require(ratio <= 1.0 + 1e-12, "state " + std::to_string(n) + " sub-method expands " + num(ratio));
    }
  }
  out.detail << (out.pass ? "" : "; ") << "max recombination rel " << num(worst_rel)
             << ", max sub-method norm ratio " << num(worst_ratio);
}

void eigen(Outcome& out) {
  const Bench b(1e-2, 64);
  const EigenStructure eig = eigen_structure(b.vgrid, b.params);
  const double orth = orthogonality_residual(eig);
  const double null = null_space_residual(eig, b.params.root_second_moment());
  out.require(orth <= 1e-12, "orthogonality " + num(orth));
  out.require(null <= 1e-12, "null space " + num(null));

  double frozen = 0.0, r1 = 0.0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const KineticState st = random_state(b, seed);
    const InterfaceInvariantReport rep =
        verify_submethod_g_invariants(st, b.dt(), b.vgrid, b.sgrid, b.params, eig);
    frozen = std::max(frozen, rep.max_frozen_change);
    r1 = std::max(r1, rep.max_r1_mismatch / rep.r1_scale);
  }
  out.require(frozen <= 1e-12, "frozen invariants change " + num(frozen));
  out.require(r1 <= 1e-12, "R1 mismatch " + num(r1));
  out.detail << (out.pass ? "" : "; ") << "orthogonality " << num(orth) << ", null space " << num(null)
             << ", frozen change " << num(frozen) << ", R1 rel mismatch " << num(r1);
}

void von_neumann(Outcome& out) {
  double formula_err = 0.0;
  bool iff = true;
  for (int a = 0; a <= 64; ++a) {
    const double eta = -0.5 + 2.0 * a / 64.0;
    double sup = 0.0;
    for (int x = 0; x <= 64; ++x) {
      const double xi = kPi * x / 64.0;
      const TransportAmplification t = transport_amplification(eta, xi);
      formula_err = std::max(formula_err, std::abs(t.modulus_sq - std::norm(t.factor)));
      sup = std::max(sup, std::norm(t.factor));
    }
    const bool stable = sup <= 1.0 + 1e-14;
    iff = iff && (stable == (eta >= 0.0 && eta <= 1.0));
  }
  out.require(formula_err <= 1e-14, "modulus formula error " + num(formula_err));
  out.require(iff, "stability does not coincide with eta in [0, 1]");

  const auto phases = phase_samples(129);
  double worst_stable = -1.0, weakest_unstable = 1e300, worst_bisect = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double e = critical_beta(alpha);
    for (double f : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
      worst_stable = std::max(worst_stable, sup_gap(f * e, alpha, phases));
    }
    weakest_unstable = std::min(weakest_unstable, sup_gap(1.05 * e, alpha, phases));
    worst_bisect = std::max(worst_bisect, std::abs(critical_beta_bisection(alpha) - e));
  }
  out.require(worst_stable <= 1e-14, "sup gap below the bound " + num(worst_stable));
  out.require(weakest_unstable > 0.0, "sup gap at 1.05 erf " + num(weakest_unstable));
  out.require(worst_bisect <= 1e-6, "bisection error " + num(worst_bisect));
  out.detail << (out.pass ? "" : "; ") << "formula error " << num(formula_err) << ", sup gap (stable) "
             << num(worst_stable) << ", min sup gap (1.05x) " << num(weakest_unstable)
             << ", bisection error " << num(worst_bisect);
}

void cfl_sharpness(Outcome& out) {
  const Bench b(1e2, 64);
  KineticState st = sine_state(b, b.sgrid.cells / 2.0);
  // A small smooth part keeps every other mode present too.
  for (int i = 0; i <= b.sgrid.cells + 1; ++i) {
    const double extra = 1e-3 * std::sin(2 * kPi * b.sgrid.center(i));
    st.u[size_t(i)] += extra;
    for (int j = 0; j < b.vgrid.size(); ++j) st.f(j, i) += extra * b.vgrid.weight(j);
  }
  st.refresh_ghosts();
  StepConfig cfg;
  const double dt = 1.5 * cfl_max_dt(b.vgrid, b.params, b.sgrid);
  cfg.dt_override = dt;
  const double w0 = weighted_l2_norm(st, b.vgrid, b.sgrid);
  int reached = -1;
  double growth = 1.0;
  for (int n = 1; n <= 200; ++n) {
    st = step(st, dt, b.vgrid, b.sgrid, b.params, cfg).state;
    growth = weighted_l2_norm(st, b.vgrid, b.sgrid) / w0;
    if (growth > 10.0) {
      reached = n;
      break;
    }
  }
  out.require(reached > 0, "growth only " + num(growth) + " after 200 steps");
  if (reached > 0) out.detail << "growth " << num(growth) << " at step " << reached;
}

void hydrodynamic(Outcome& out) {
  const double t_end = 0.5;
  std::vector<double> errors;
  std::vector<double> dxs;
  for (int cells : {32, 64, 128, 256}) {
    const Bench b(1e-6, cells);
    KineticState st = sine_state(b);
    StepConfig cfg;
    run(st, t_end, b.vgrid, b.sgrid, b.params, cfg);
    double err = 0.0;
    for (int i = 1; i <= cells; ++i) {
      const double exact = ex::exact_sine_solution(b.sgrid.center(i), st.time, 1.0, 1.0, 1.0, b.params);
      err += b.sgrid.dx * std::pow(st.u[size_t(i)] - exact, 2);
    }
    errors.push_back(std::sqrt(err));
    dxs.push_back(b.sgrid.dx);
  }
  const double order = std::log(errors[2] / errors[3]) / std::log(dxs[2] / dxs[3]);
  out.require(order >= 0.8, "observed order " + num(order) + " on I=128/256");

  const Bench b(1e-10, 64);
  const KineticState st = sine_state(b);
  const double dt = b.dt();
  const KineticState next = step(st, dt, b.vgrid, b.sgrid, b.params).state;
  const std::vector<double> F0 = momentum_moment(st.f, b.vgrid);
  const std::vector<double> F1 = momentum_moment(next.f, b.vgrid);
  const std::vector<double> want = momentum_limit_scheme(F0, dt, b.params, b.vgrid, b.sgrid);
  double diff = 0.0, scale = 0.0;
  for (int i = 1; i <= b.sgrid.cells; ++i) {
    diff = std::max(diff, std::abs(F1[size_t(i)] - want[size_t(i)]));
    scale = std::max(scale, std::abs(want[size_t(i)]));
  }
  const double rel = diff / scale;
  out.require(rel <= 1e-10, "momentum vs limit scheme rel " + num(rel));
  if (out.pass) out.detail << "order " << num(order) << ", errors";
  else out.detail << "; errors";
  for (double e : errors) out.detail << ' ' << num(e);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"quadrature", quadrature},
      {"constraint_preservation", constraint},
      {"strong_stability", strong_stability},
      {"convex_decomposition", convex},
      {"eigenstructure_riemann", eigen},
      {"von_neumann", von_neumann},
      {"cfl_sharpness", cfl_sharpness},
      {"hydrodynamic_limit", hydrodynamic},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UGKS acceptance suite"};
  std::vector<std::string> selected;
  bool list = false;
  app.add_option("--criterion", selected, "Criterion to run (repeatable)");
  app.add_flag("--list", list, "List criterion names");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : criteria()) std::cout << c.name << "\n";
    return 0;
  }
  for (const auto& name : selected) {
    const bool known = std::any_of(criteria().begin(), criteria().end(),
                                   [&](const Criterion& c) { return c.name == name; });
    if (!known) {
      std::cerr << "unknown criterion '" << name << "'\n";
      return 2;
    }
  }

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.name) == selected.end()) {
      continue;
    }
    Outcome out;
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::cout << (out.pass ? "PASS " : "FAIL ") << c.name << ": " << out.detail.str() << std::endl;
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
