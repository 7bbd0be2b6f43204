#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dirmbo/init.hpp"
#include "dirmbo/solver.hpp"
#include "dirmbo/torus_spectral.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dirmbo;
using fixtures::ShiftOperator;
using fixtures::slabs;
constexpr double kPi = std::numbers::pi;

namespace {

FieldSet dense(std::initializer_list<std::vector<double>> comps, const DomainPtr& d) {
  std::vector<ScalarField> f;
  for (const auto& c : comps) f.emplace_back(d, c);
  return FieldSet(std::move(f));
}

}  // namespace

TEST_CASE("normalised energy formula") {
  CHECK(normalized_energy(2, 2, 4.0, 0.5, 1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(normalized_energy(3, 3, 8.0, 0.125, 2.0) == doctest::Approx(4.0 / std::pow(3.0, 5.0 / 3.0) * 8.0));
  CHECK(normalized_energy(5, 2, 4 * kPi, 0.008, 5.0) == 0.0);
}

TEST_CASE("projection examples") {
  auto d = make_torus(2, 4);
  std::vector<double> a(16, 0.0), b(16, 0.0), c(16, 0.0);
  a[0] = 0.7, b[0] = 0.3;
  a[1] = 0.5, b[1] = 0.5, c[1] = 0.1;
  const auto r = project(dense({a, b, c}, d));
  CHECK(r.fields[0][0] == 0.7);
  CHECK(r.fields[1][0] == 0.0);
  CHECK(r.fields[0][1] == 0.5);
  CHECK(r.fields[1][1] == 0.0);
  CHECK(r.fields[2][1] == 0.0);
  // Points 1..15 tie (14 of them at all-zero values).
  CHECK(r.tie_count == 15);
}

TEST_CASE("projection lands on the coordinate axes and keeps the pointwise maximum") {
  auto d = make_torus(2, 16);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::vector<ScalarField> comps;
    for (int l = 0; l < 5; ++l) comps.push_back(oracle::random_field(d, seed * 10 + l));
    const FieldSet fs(std::move(comps));
    const auto r = project(fs);
    for (std::size_t i = 0; i < d->size(); ++i) {
      int nonzero = 0;
      double mx = fs[0][i], kept = 0.0;
      for (int l = 0; l < 5; ++l) {
        mx = std::max(mx, fs[l][i]);
        if (r.fields[l][i] != 0.0) ++nonzero, kept = r.fields[l][i];
      }
      CHECK(nonzero <= 1);
      CHECK(kept == (mx == 0.0 ? 0.0 : mx));
    }
  }
}

TEST_CASE("renormalisation examples and idempotence") {
  auto d = make_torus(2, 16);
  const auto l = slabs(d, 2);
  auto fs = indicator_fields(l).expand();
  for (int c = 0; c < 2; ++c)
    for (auto& v : fs[c].values()) v *= 2.0;
  const auto once = renormalize(fs);
  for (std::size_t i = 0; i < d->size(); ++i) {
    const int c = l[i];
    CHECK(once[c][i] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  }
  const auto twice = renormalize(once);
  for (int c = 0; c < 2; ++c) CHECK(oracle::max_abs_diff(once[c].values(), twice[c].values()) < 1e-12);

  FieldSet zero(d, 2);
  zero[0] = once[0];
  try {
    (void)renormalize(zero);
    FAIL("expected EmptyComponent");
  } catch (const EmptyComponent& e) {
    CHECK(e.component() == 1);
  }
}

TEST_CASE("energy agrees with a naive-DFT evaluation of the same overlaps") {
  auto d = make_torus(2, 16);
  const double tau = 0.05;
  const auto fs = random_voronoi(d, 3, 4);
  double overlap = 0.0;
  for (int l = 0; l < 3; ++l) {
    const auto h = oracle::naive_diffuse(fs[l], tau);
    overlap += weighted_inner(fs[l], ScalarField(d, h.values));
  }
  const double expected = 4.0 / std::pow(3.0, 2.0) * (3.0 - overlap) / tau;
  auto heat = make_heat_operator(d, tau);
  CHECK(energy_tilde(fs, *heat) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("energy of two slabs approaches the continuum Fourier-series value") {
  // Normalised indicator of a half-box slab on [-1, 1]^2: <u, e^{tau Laplacian} u> =
  // 1/2 + 4 sum_{m odd > 0} exp(-tau pi^2 m^2) / (pi^2 m^2).
  const double tau = 0.125;
  double series = 0.5;
  for (int m = 1; m < 2001; m += 2) series += 4.0 * std::exp(-tau * kPi * kPi * m * m) / (kPi * kPi * m * m);
  const double continuum = normalized_energy(2, 2, 4.0, tau, 2.0 * series);
  auto d = make_torus(2, 512);
  auto heat = make_heat_operator(d, tau);
  const double discrete = energy_tilde(indicator_fields(slabs(d, 2)), *heat);
  CHECK(std::abs(discrete - continuum) < 5e-3 * continuum);
}

TEST_CASE("energy requires unit-norm fields on the operator's domain") {
  auto d = make_torus(2, 16);
  auto heat = make_heat_operator(d, 0.1);
  auto fs = indicator_fields(slabs(d, 2)).expand();
  for (auto& v : fs[0].values()) v *= 1.1;
  CHECK_THROWS_AS(energy_tilde(fs, *heat), std::invalid_argument);
  auto other = make_heat_operator(make_torus(2, 32), 0.1);
  CHECK_THROWS_AS(energy_tilde(indicator_fields(slabs(d, 2)), *other), DomainMismatch);
}

TEST_CASE("energy of overlapping constant fields is zero") {
  auto d = make_torus(3, 8);
  const double c = 1.0 / std::sqrt(d->total_volume());
  const auto fs = dense({std::vector<double>(d->size(), c), std::vector<double>(d->size(), c)}, d);
  auto heat = make_heat_operator(d, 0.3);
  CHECK(std::abs(energy_tilde(fs, *heat)) < 1e-12);
}

TEST_CASE("a slab partition is a fixed point after one step") {
  for (const auto& d : {make_torus(2, 64), make_torus(3, 32)}) {
    const auto init = indicator_fields(slabs(d, 2));
    SolverConfig cfg;
    cfg.k = 2;
    cfg.tau = 0.05;
    const auto r = solve(cfg, init);
    CHECK(r.converged);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.iterations == 1);
    CHECK(r.labeling == init.labeling());
    CHECK(r.energy_trace.size() == 2);
    CHECK(r.energy == r.energy_trace.back());
    CHECK(r.energy <= r.initial_energy);
  }
}

TEST_CASE("one step from a slab partition keeps it") {
  auto d = make_torus(2, 32);
  const auto l = slabs(d, 4);
  auto heat = make_heat_operator(d, 0.02);
  const auto s = step(indicator_fields(l).expand(), *heat);
  CHECK(s.labeling == l);
  for (int c = 0; c < 4; ++c) CHECK(weighted_inner(s.fields[c], s.fields[c]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("seeded solves are bit-identical, converge to fixed points and do not raise the energy") {
  struct Case { DomainPtr d; int k; double tau; };
  for (const auto& c : {Case{make_torus(2, 64), 3, 0.02}, Case{make_torus(3, 16), 4, 0.02}, Case{make_sphere(24, 48), 3, 0.02}}) {
    SolverConfig cfg;
    cfg.k = c.k;
    cfg.tau = c.tau;
    const auto init = random_voronoi(c.d, c.k, 13);
    const auto a = solve(cfg, init);
    const auto b = solve(cfg, init);
    CHECK(a.labeling == b.labeling);
    CHECK(a.energy == b.energy);
    CHECK(a.energy_trace == b.energy_trace);
    CHECK(a.energy >= 0.0);
    CHECK(a.energy <= a.initial_energy);
    CHECK(a.energy_trace.front() == a.initial_energy);
    CHECK(a.energy_trace.size() == static_cast<std::size_t>(a.iterations) + 1);
    if (a.converged && a.iterations > 1) {
      // The iterate before the last already carries the final labeling and steps onto it.
      SolverConfig shorter = cfg;
      shorter.max_iters = a.iterations - 1;
      const auto prev = solve(shorter, init);
      CHECK(prev.labeling == a.labeling);
      auto heat = make_heat_operator(c.d, c.tau);
      CHECK(step(prev.fields.expand(), *heat).labeling == a.labeling);
    }
    for (double n2 : a.fields.norms_squared()) CHECK(std::abs(n2 - 1.0) < 1e-10);
  }
}

TEST_CASE("dense and projected initial fields give the same run") {
  auto d = make_torus(2, 32);
  const auto l = random_voronoi_labels(d, 4, 2);
  SolverConfig cfg;
  cfg.k = 4;
  cfg.tau = 0.01;
  const auto a = solve(cfg, indicator_fields(l));
  const auto b = solve(cfg, indicator_fields(l).expand());
  CHECK(a.labeling == b.labeling);
  CHECK(a.iterations == b.iterations);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-12));
}

TEST_CASE("a two-cycle is reported as an oscillation") {
  auto d = make_torus(2, 8);
  const auto init = indicator_fields(slabs(d, 2));
  ShiftOperator swap(d, 4);
  SolverConfig cfg;
  cfg.k = 2;
  const auto r = solve(cfg, init, swap);
  CHECK(r.status == SolveStatus::OscillationDetected);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
  CHECK(r.energy == r.energy_trace.back());
  CHECK(std::string(to_string(r.status)) == "oscillation_detected");
}

TEST_CASE("a labeling that keeps moving stops at the iteration cap") {
  auto d = make_torus(2, 8);
  const auto init = indicator_fields(slabs(d, 2));
  ShiftOperator roll(d, 1);
  SolverConfig cfg;
  cfg.k = 2;
  cfg.max_iters = 5;
  const auto r = solve(cfg, init, roll);
  CHECK(r.status == SolveStatus::NonConvergence);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5);
  // The slab has moved five cells.
  const auto& t = d->torus();
  for (std::size_t i = 0; i < r.labeling.size(); ++i) CHECK(r.labeling[i] == ((t.unravel(i)[0] + 3) % 8 < 4 ? 0 : 1));
}

TEST_CASE("diffusion comparable to the domain size empties components") {
  auto d = make_torus(2, 32);
  const auto labels = random_voronoi_labels(d, 8, 1);
  const auto init = indicator_fields(labels);
  // At tau = 4 every diffused field is flat to round-off, so the component
  // with the largest mean wins everywhere.
  auto heat = make_heat_operator(d, 4.0);
  const auto counts = labels.counts();
  const auto largest = std::max_element(counts.begin(), counts.end()) - counts.begin();
  const auto fs = init.expand();
  for (int l = 0; l < 8; ++l) {
    std::vector<double> v(fs[l].values().begin(), fs[l].values().end());
    heat->apply(v);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    CHECK(*hi - *lo < 1e-12 * *hi);
  }
  SolverConfig cfg;
  cfg.k = 8;
  cfg.tau = 4.0;
  try {
    (void)solve(cfg, init);
    FAIL("expected EmptyComponent");
  } catch (const EmptyComponent& e) {
    CHECK(e.component() != largest);
  }
}

TEST_CASE("solver configuration is validated") {
  auto d = make_torus(2, 16);
  const auto init = indicator_fields(slabs(d, 2));
  SolverConfig cfg;
  cfg.k = 3;
  CHECK_THROWS_AS(solve(cfg, init), std::invalid_argument);
  cfg.k = 2;
  cfg.max_iters = 0;
  CHECK_THROWS_AS(solve(cfg, init), std::invalid_argument);
  cfg.max_iters = 10;
  cfg.tau = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(solve(SolverConfig{}, init, *make_heat_operator(make_torus(2, 32), 0.1)), DomainMismatch);
}

TEST_CASE("tiled fields keep their heat overlaps exactly") {
  // A field with period L on the 2L box diffuses exactly as on the L box,
  // so the overlap sum is unchanged by tiling.
  auto d = make_torus(2, 32);
  const auto labels = random_voronoi_labels(d, 5, 6);
  const auto big = periodic_extend(labels, 2);
  const double tau = 0.03;
  auto small_heat = make_heat_operator(d, tau);
  auto big_heat = make_heat_operator(big.domain(), tau);
  const double e_small = energy_tilde(indicator_fields(labels), *small_heat);
  const double e_big = energy_tilde(indicator_fields(big), *big_heat);
  // Same overlaps; the volume prefactor grows by 2^{2/d * d} = 4.
  CHECK(e_big == doctest::Approx(4.0 * e_small).epsilon(1e-10));
}
