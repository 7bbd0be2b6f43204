#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "dirmbo/field.hpp"
#include "dirmbo/rng.hpp"

namespace dirmbo {

/// k seed points: torus coordinates in [-L/2, L/2)^d, or unit 3-vectors on
/// the sphere. Stored row-major, dim() values per point.
struct SeedPoints {
  int dim = 0;
  std::vector<double> coords;

  int k() const { return dim == 0 ? 0 : static_cast<int>(coords.size()) / dim; }
  std::span<const double> point(int i) const {
    return std::span<const double>(coords).subspan(static_cast<std::size_t>(i) * dim, dim);
  }
};

/// Draws k seeds: uniform per coordinate on tori, normalised Gaussian
/// 3-vectors on the sphere.
SeedPoints sample_seeds(const Domain& domain, int k, Rng& rng);

/// Nearest-seed labels; ties go to the lowest seed index.
Labeling voronoi_labels(const DomainPtr& domain, const SeedPoints& seeds);

/// Maximum number of seed draws before random_voronoi gives up.
inline constexpr int kVoronoiAttempts = 64;

/// Voronoi labeling of random seeds. Redraws seeds when two of them snap to
/// the same grid point or a cell captures no grid point.
Labeling random_voronoi_labels(const DomainPtr& domain, int k, std::uint64_t seed);

/// Normalised indicator fields of random_voronoi_labels.
FieldSet random_voronoi(const DomainPtr& domain, int k, std::uint64_t seed);

/// Two-component split of a 3d torus by the sign of
/// cos(2 pi x1 / L) + cos(2 pi x2 / L) + cos(2 pi x3 / L); label 0 where positive.
Labeling schwarz_p_labels(const DomainPtr& domain);
FieldSet schwarz_p_init(const DomainPtr& domain);

/// Normalised indicators of a labeling stored in the label export format.
FieldSet from_labels(const std::filesystem::path& path, int k);

}  // namespace dirmbo
