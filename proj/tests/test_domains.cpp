#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dirmbo/domain.hpp"
#include "dirmbo/field.hpp"
#include "dirmbo/rng.hpp"
#include "oracles.hpp"

using namespace dirmbo;
constexpr double kPi = std::numbers::pi;

TEST_CASE("torus cell volume times point count equals the box volume") {
  for (int d = 2; d <= 4; ++d)
    for (int n : {8, 16, 64})
      for (double L : {2.0, 3.0, 0.5}) {
        if (d == 4 && n == 64) continue;
        const TorusDomain t(d, n, L);
        CHECK(t.cell_volume() * static_cast<double>(t.size()) == doctest::Approx(std::pow(L, d)).epsilon(1e-15));
        CHECK(t.total_volume() == doctest::Approx(std::pow(L, d)).epsilon(1e-15));
      }
}

TEST_CASE("torus construction rejects bad parameters") {
  CHECK_THROWS_AS(TorusDomain(1, 16), std::invalid_argument);
  CHECK_THROWS_AS(TorusDomain(5, 16), std::invalid_argument);
  CHECK_THROWS_AS(TorusDomain(2, 15), std::invalid_argument);
  CHECK_THROWS_AS(TorusDomain(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(TorusDomain(2, 16, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusDomain(2, 16, -1.0), std::invalid_argument);
}

TEST_CASE("torus grid is node-centred and row-major with the last axis fastest") {
  const TorusDomain t(3, 8, 2.0);
  CHECK(t.coordinate(0) == -1.0);
  CHECK(t.coordinate(4) == 0.0);
  CHECK(t.coordinate(7) == doctest::Approx(0.75));
  CHECK(t.ravel({0, 0, 1, 0}) == 1);
  CHECK(t.ravel({0, 1, 0, 0}) == 8);
  CHECK(t.ravel({1, 0, 0, 0}) == 64);
  for (std::size_t i = 0; i < t.size(); i += 37) CHECK(t.ravel(t.unravel(i)) == i);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
  for (int n : {4, 16, 64}) {
    std::vector<double> x(n), w(n);
    gauss_legendre(n, x, w);
    for (int i = 1; i < n; ++i) CHECK(x[i] < x[i - 1]);
    for (int p = 0; p <= 2 * n - 1; p += 1) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += w[i] * std::pow(x[i], p);
      const double exact = p % 2 == 0 ? 2.0 / (p + 1) : 0.0;
      CHECK(std::abs(q - exact) < 1e-13);
    }
  }
}

TEST_CASE("sphere quadrature weights sum to 4 pi") {
  for (int n : {8, 64, 256}) {
    const SphereDomain s(n, 2 * n);
    double sum = 0.0;
    for (double w : s.quad_weights()) sum += w;
    CHECK(sum == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(s.total_volume() == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(s.lmax() == n - 1);
  }
}

TEST_CASE("sphere nodes are increasing in (0, pi) and points are unit vectors") {
  const SphereDomain s(32, 64);
  const auto th = s.theta_nodes();
  for (int i = 0; i < s.n_theta(); ++i) {
    CHECK(th[i] > 0.0);
    CHECK(th[i] < kPi);
    if (i) CHECK(th[i] > th[i - 1]);
    CHECK(std::cos(th[i]) == doctest::Approx(s.cos_theta()[i]).epsilon(1e-14));
  }
  for (std::size_t i = 0; i < s.size(); i += 7) {
    const auto p = s.point(i);
    CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto p = s.point(static_cast<std::size_t>(s.n_phi()) / 4);  // theta_0, phi = pi/2
  CHECK(p[0] == doctest::Approx(std::sin(th[0])));
  CHECK(std::abs(p[1]) < 1e-14);
  CHECK(p[2] == doctest::Approx(std::cos(th[0])));
}

TEST_CASE("sphere construction enforces the band limit") {
  CHECK_THROWS_AS(SphereDomain(16, 16), std::invalid_argument);
  CHECK_THROWS_AS(SphereDomain(16, 32, 16), std::invalid_argument);
  CHECK_NOTHROW(SphereDomain(16, 31, 15));
  CHECK_NOTHROW(SphereDomain(16, 32, 8));
}

TEST_CASE("weighted inner product examples") {
  auto t = make_torus(2, 64);
  ScalarField one(t, std::vector<double>(t->size(), 1.0));
  CHECK(weighted_inner(one, one) == doctest::Approx(4.0).epsilon(1e-14));

  ScalarField c(t);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::cos(kPi * t->torus().coordinate(t->torus().unravel(i)[0]));
  CHECK(std::abs(weighted_inner(c, c) - 2.0) < 1e-12);
  CHECK(std::abs(weighted_inner(c, one)) < 1e-12);

  auto s = make_sphere(32, 64);
  ScalarField sone(s, std::vector<double>(s->size(), 1.0));
  CHECK(weighted_inner(sone, sone) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  ScalarField z(s);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = s->sphere().point(i)[2];
  CHECK(weighted_inner(z, z) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("weighted inner product is symmetric, bilinear and positive definite") {
  for (const auto& d : {make_torus(2, 32, 3.0), make_torus(3, 8), make_sphere(16, 32)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto a = oracle::random_field(d, seed);
      const auto b = oracle::random_field(d, seed + 100);
      const auto c = oracle::random_field(d, seed + 200);
      CHECK(weighted_inner(a, b) == doctest::Approx(weighted_inner(b, a)).epsilon(1e-14));
      ScalarField lin(d);
      for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = 2.5 * a[i] - 0.5 * c[i];
      CHECK(std::abs(weighted_inner(lin, b) - (2.5 * weighted_inner(a, b) - 0.5 * weighted_inner(c, b))) < 1e-12);
      CHECK(weighted_inner(a, a) > 0.0);
    }
    ScalarField zero(d);
    CHECK(weighted_inner(zero, zero) == 0.0);
  }
}

TEST_CASE("operations across domains are rejected") {
  auto a = make_torus(2, 16);
  auto b = make_torus(2, 32);
  CHECK_THROWS_AS(weighted_inner(ScalarField(a), ScalarField(b)), DomainMismatch);
  CHECK_THROWS_AS(labeling_distance(Labeling(a, 2), Labeling(b, 2)), DomainMismatch);
  CHECK_NOTHROW(weighted_inner(ScalarField(a), ScalarField(make_torus(2, 16))));
  CHECK_THROWS_AS(a->sphere(), DomainMismatch);
}

TEST_CASE("labeling distance examples and metric properties") {
  auto d = make_torus(2, 4);
  Labeling a(d, 3), b(d, 3);
  CHECK(labeling_distance(a, b) == 0);
  b[3] = 2;
  b[7] = 1;
  CHECK(labeling_distance(a, b) == 2);
  CHECK_THROWS_AS(labeling_distance(a, Labeling(d, 4)), std::invalid_argument);

  auto g = make_torus(2, 16);
  Rng rng(7);
  auto random_labeling = [&] {
    Labeling l(g, 4);
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<Label>(rng.bits() % 4);
    return l;
  };
  for (int rep = 0; rep < 20; ++rep) {
    const auto x = random_labeling(), y = random_labeling(), z = random_labeling();
    CHECK(labeling_distance(x, x) == 0);
    CHECK(labeling_distance(x, y) == labeling_distance(y, x));
    CHECK(labeling_distance(x, z) <= labeling_distance(x, y) + labeling_distance(y, z));
    if (!(x == y)) CHECK(labeling_distance(x, y) > 0);
  }
}

TEST_CASE("periodic extension tiles the labeling") {
  auto d = make_torus(2, 8);
  Labeling slabs(d, 2);
  for (std::size_t i = 0; i < slabs.size(); ++i) slabs[i] = d->torus().unravel(i)[0] < 4 ? 0 : 1;
  CHECK(periodic_extend(slabs, 1) == slabs);

  const auto big = periodic_extend(slabs, 2);
  const auto& bt = big.domain()->torus();
  CHECK(bt.n() == 16);
  CHECK(bt.length() == 4.0);
  // Two slabs tiled twice give four alternating slabs.
  for (std::size_t i = 0; i < big.size(); ++i) CHECK(big[i] == (bt.unravel(i)[0] / 4) % 2);
  // Every copy restricts to the original.
  for (std::size_t i = 0; i < big.size(); ++i) {
    auto idx = bt.unravel(i);
    for (int a = 0; a < 2; ++a) idx[a] %= 8;
    CHECK(big[i] == slabs[d->torus().ravel(idx)]);
  }
  CHECK_THROWS_AS(periodic_extend(Labeling(make_sphere(8, 16), 2), 2), DomainMismatch);
  CHECK_THROWS_AS(periodic_extend(slabs, 0), std::invalid_argument);
}

TEST_CASE("indicator fields are unit-norm and report empty components") {
  auto d = make_torus(2, 8);
  Labeling l(d, 3);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<Label>(i % 3);
  const auto fs = indicator_fields(l);
  for (double n2 : fs.norms_squared()) CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = i % 2 ? 2 : 0;
  try {
    (void)indicator_fields(l);
    FAIL("expected EmptyComponent");
  } catch (const EmptyComponent& e) {
    CHECK(e.component() == 1);
  }
}
