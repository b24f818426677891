#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "ugks/model.hpp"
#include "ugks/state.hpp"

using namespace ugks;

TEST_CASE("spatial grid") {
  const SpatialGrid s = make_spatial_grid(8, 2.0);
  CHECK(s.dx == 0.25);
  CHECK(s.length() == 2.0);
  CHECK(s.center(1) == 0.125);
  CHECK(s.center(8) == 1.875);
  CHECK_THROWS_AS(make_spatial_grid(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_spatial_grid(4, 0.0), std::invalid_argument);
}

TEST_CASE("ghost columns mirror the periodic interior") {
  Array2D f(2, 6);
  for (int j = 0; j < 2; ++j) {
    for (int i = 1; i <= 4; ++i) f(j, i) = 10 * j + i;
  }
  refresh_ghosts(f);
  CHECK(f(0, 0) == 4);
  CHECK(f(0, 5) == 1);
  CHECK(f(1, 0) == 14);
  CHECK(f(1, 5) == 11);

  std::vector<double> u{0, 1, 2, 3, 0};
  refresh_ghosts(u);
  CHECK(u[0] == 3);
  CHECK(u[4] == 1);
}

TEST_CASE("norms agree with direct sums") {
  const ModelParams p(1.0, 1.0, 1.0);
  const VelocityGrid g = build_grid(p, 8, 6.0);
  const SpatialGrid s = make_spatial_grid(5, 1.0);
  KineticState st = make_zero_state(g, s);
  oracle::Lcg rng(3);
  for (int j = 0; j < g.size(); ++j) {
    for (int i = 1; i <= 5; ++i) st.f(j, i) = rng.next();
  }
  for (int i = 1; i <= 5; ++i) st.u[size_t(i)] = rng.next();
  st.refresh_ghosts();

  long double wsum = 0, usum = 0;
  for (int i = 1; i <= 5; ++i) {
    usum += s.dx * st.u[size_t(i)] * st.u[size_t(i)];
    for (int j = 0; j < g.size(); ++j) {
      wsum += s.dx * g.spacing() * st.f(j, i) * st.f(j, i) / g.weight(j);
    }
  }
  CHECK(weighted_l2_norm(st, g, s) == doctest::Approx(std::sqrt(double(wsum))).epsilon(1e-14));
  CHECK(macro_l2_norm(st, s) == doctest::Approx(std::sqrt(double(usum))).epsilon(1e-14));

  double worst = 0;
  for (int i = 1; i <= 5; ++i) {
    double m = 0;
    for (int j = 0; j < g.size(); ++j) m += g.spacing() * st.f(j, i);
    worst = std::max(worst, std::abs(st.u[size_t(i)] - m));
  }
  CHECK(constraint_residual(st, g) == doctest::Approx(worst).epsilon(1e-14));
  const NormReport r = norm_report(st, g, s);
  CHECK(r.constraint_residual == constraint_residual(st, g));
}

TEST_CASE("macro norm is bounded by the weighted norm for compatible states") {
  const ModelParams p(1.0, 1.0, 1.0);
  const VelocityGrid g = build_grid(p);
  const SpatialGrid s = make_spatial_grid(16, 1.0);
  KineticState st = make_zero_state(g, s);
  oracle::Lcg rng(11);
  for (int i = 1; i <= 16; ++i) {
    for (int j = 0; j < g.size(); ++j) st.f(j, i) = std::sqrt(g.weight(j)) * rng.next();
    st.u[size_t(i)] = density_moment(st.f, g, i);
  }
  st.refresh_ghosts();
  CHECK(constraint_residual(st, g) == 0.0);
  CHECK(macro_l2_norm(st, s) <= weighted_l2_norm(st, g, s));
}

TEST_CASE("shape mismatches are rejected") {
  const ModelParams p(1.0, 1.0, 1.0);
  const VelocityGrid g = build_grid(p, 4, 6.0);
  const SpatialGrid s = make_spatial_grid(4, 1.0);
  const SpatialGrid other = make_spatial_grid(5, 1.0);
  KineticState st = make_zero_state(g, s);
  CHECK_THROWS_AS(weighted_l2_norm(st, g, other), std::invalid_argument);
  CHECK_THROWS_AS(macro_l2_norm(st, other), std::invalid_argument);
  st.u.pop_back();
  CHECK_THROWS_AS(constraint_residual(st, g), std::invalid_argument);
}

TEST_CASE("constraint tolerance scales with the initial density") {
  CHECK(constraint_tolerance(2.0) == 2e-12);
  CHECK(constraint_tolerance(0.0) == 1e-14);
}
