#include "dirmbo/init.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "dirmbo/kernels.hpp"
#include "dirmbo/label_io.hpp"

namespace dirmbo {

namespace {

std::size_t nearest_grid_point(const Domain& domain, std::span<const double> p) {
  if (domain.is_torus()) {
    const auto& t = domain.torus();
    std::array<int, TorusDomain::kMaxDim> index{};
    for (int a = 0; a < t.dim(); ++a) {
      const long i = std::lround((p[a] + 0.5 * t.length()) / t.spacing());
      index[a] = static_cast<int>(((i % t.n()) + t.n()) % t.n());
    }
    return t.ravel(index);
  }
  const auto& s = domain.sphere();
  const double theta = std::acos(std::clamp(p[2], -1.0, 1.0));
  double phi = std::atan2(p[0], p[1]);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  const auto nodes = s.theta_nodes();
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), theta);
  std::size_t i = static_cast<std::size_t>(it - nodes.begin());
  if (i == nodes.size() || (i > 0 && theta - nodes[i - 1] < nodes[i] - theta)) --i;
  const long j = std::lround(phi / (2.0 * std::numbers::pi) * s.n_phi()) % s.n_phi();
  return i * static_cast<std::size_t>(s.n_phi()) + static_cast<std::size_t>(j);
}

FieldSet indicators(const Labeling& labels) { return indicator_fields(labels).expand(); }

}  // namespace

SeedPoints sample_seeds(const Domain& domain, int k, Rng& rng) {
  SeedPoints seeds;
  if (domain.is_torus()) {
    const auto& t = domain.torus();
    seeds.dim = t.dim();
    seeds.coords.resize(static_cast<std::size_t>(k) * t.dim());
    for (auto& c : seeds.coords) c = rng.uniform(-0.5 * t.length(), 0.5 * t.length());
    return seeds;
  }
  seeds.dim = 3;
  seeds.coords.resize(static_cast<std::size_t>(k) * 3);
  for (int i = 0; i < k; ++i) {
    double v[3], r2;
    do {
      for (auto& c : v) c = rng.normal();
      r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    } while (r2 < 1e-24);
    const double inv = 1.0 / std::sqrt(r2);
    for (int a = 0; a < 3; ++a) seeds.coords[static_cast<std::size_t>(i) * 3 + a] = v[a] * inv;
  }
  return seeds;
}

Labeling voronoi_labels(const DomainPtr& domain, const SeedPoints& seeds) {
  const int k = seeds.k();
  if (k < 1 || k > kMaxComponents) throw std::invalid_argument("seed count out of range");
  Labeling out(domain, k);
  if (domain->is_torus()) {
    if (seeds.dim != domain->dim()) throw std::invalid_argument("seed dimension does not match the torus");
    kernels::parallel::voronoi_torus(domain->torus(), seeds.coords, out.labels());
  } else {
    if (seeds.dim != 3) throw std::invalid_argument("sphere seeds must be 3-vectors");
    kernels::parallel::voronoi_sphere(domain->sphere(), seeds.coords, out.labels());
  }
  return out;
}

Labeling random_voronoi_labels(const DomainPtr& domain, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("random_voronoi needs k >= 2");
  if (k > kMaxComponents) throw std::invalid_argument("k exceeds the label capacity of 256");
  if (static_cast<std::size_t>(k) > domain->size())
    throw std::invalid_argument("k exceeds the number of grid points");
  Rng rng(seed);
  for (int attempt = 0; attempt < kVoronoiAttempts; ++attempt) {
    const auto seeds = sample_seeds(*domain, k, rng);
    std::set<std::size_t> snapped;
    for (int i = 0; i < k; ++i) snapped.insert(nearest_grid_point(*domain, seeds.point(i)));
    if (static_cast<int>(snapped.size()) != k) continue;
    auto labels = voronoi_labels(domain, seeds);
    const auto counts = labels.counts();
    if (std::find(counts.begin(), counts.end(), std::size_t{0}) != counts.end()) continue;
    return labels;
  }
  throw std::runtime_error("random Voronoi initialisation: no seed draw gave " + std::to_string(k) +
                           " nonempty cells in " + std::to_string(kVoronoiAttempts) +
                           " attempts (seed " + std::to_string(seed) + ")");
}

FieldSet random_voronoi(const DomainPtr& domain, int k, std::uint64_t seed) {
  return indicators(random_voronoi_labels(domain, k, seed));
}

Labeling schwarz_p_labels(const DomainPtr& domain) {
  if (!domain->is_torus() || domain->dim() != 3)
    throw DomainMismatch("the Schwarz-P initialisation needs a 3d torus");
  const auto& t = domain->torus();
  const int n = t.n();
  const double w = 2.0 * std::numbers::pi / t.length();
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[i] = std::cos(w * t.coordinate(i));
  Labeling out(domain, 2);
  auto labels = out.labels();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        labels[t.ravel({i, j, l, 0})] = c[i] + c[j] + c[l] > 0.0 ? 0 : 1;
  return out;
}

FieldSet schwarz_p_init(const DomainPtr& domain) { return indicators(schwarz_p_labels(domain)); }

FieldSet from_labels(const std::filesystem::path& path, int k) {
  const auto stored = read_labels(path);
  if (k < 2 || k > kMaxComponents) throw std::invalid_argument("k must be in [2, 256]");
  for (auto l : stored.labels())
    if (l >= k)
      throw std::invalid_argument(path.string() + ": label " + std::to_string(l) + " is not below k = " +
                                  std::to_string(k));
  return indicators(Labeling(stored.domain(), k, {stored.labels().begin(), stored.labels().end()}));
}

}  // namespace dirmbo
