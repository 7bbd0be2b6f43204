#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dirmbo {

class DomainMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic box [-L/2, L/2)^d sampled on a node-centred grid
/// x_i = -L/2 + i * L / n.
///
/// Points are linearised row-major with the last axis fastest:
/// idx = ((i0 * n + i1) * n + i2) * n + i3.
class TorusDomain {
 public:
  static constexpr int kMaxDim = 4;

  TorusDomain(int dim, int n, double length = 2.0);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const { return cell_volume_; }
  double total_volume() const { return total_volume_; }
  std::size_t size() const { return size_; }

  double coordinate(int i) const { return -0.5 * length_ + i * spacing(); }
  std::array<int, kMaxDim> unravel(std::size_t idx) const;
  std::size_t ravel(const std::array<int, kMaxDim>& index) const;

  friend bool operator==(const TorusDomain&, const TorusDomain&) = default;

 private:
  int dim_;
  int n_;
  double length_;
  double cell_volume_;
  double total_volume_;
  std::size_t size_;
};

/// Unit sphere sampled on Gauss-Legendre nodes in cos(theta) times a uniform
/// azimuth grid. Points are theta-major: idx = i_theta * n_phi + j_phi.
/// Surface coordinates follow (sin t sin p, sin t cos p, cos t).
class SphereDomain {
 public:
  /// lmax < 0 selects the default band limit n_theta - 1.
  SphereDomain(int n_theta, int n_phi, int lmax = -1);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int lmax() const { return lmax_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }
  double total_volume() const;

  /// Inclination nodes, increasing in (0, pi).
  std::span<const double> theta_nodes() const { return theta_; }
  /// cos(theta_i), decreasing.
  std::span<const double> cos_theta() const { return cos_theta_; }
  /// Gauss-Legendre weights in cos(theta); they sum to 2.
  std::span<const double> legendre_weights() const { return gl_weights_; }
  /// Per-point quadrature weight gl_weight(i) * 2 pi / n_phi, linearised like the field.
  std::span<const double> quad_weights() const { return quad_weights_; }

  double phi(int j) const;
  std::array<double, 3> point(std::size_t idx) const;

  friend bool operator==(const SphereDomain& a, const SphereDomain& b) {
    return a.n_theta_ == b.n_theta_ && a.n_phi_ == b.n_phi_ && a.lmax_ == b.lmax_;
  }

 private:
  int n_theta_;
  int n_phi_;
  int lmax_;
  std::vector<double> theta_;
  std::vector<double> cos_theta_;
  std::vector<double> gl_weights_;
  std::vector<double> quad_weights_;
};

/// Gauss-Legendre nodes (decreasing, in (-1, 1)) and weights on [-1, 1].
/// theta, when given, receives acos(node) computed without cancellation.
void gauss_legendre(int n, std::span<double> nodes, std::span<double> weights,
                    std::span<double> theta = {});

/// Either kind of computational domain. Shared read-only between fields,
/// plans, and solver state.
class Domain {
 public:
  explicit Domain(TorusDomain torus) : impl_(std::move(torus)) {}
  explicit Domain(SphereDomain sphere) : impl_(std::move(sphere)) {}

  bool is_torus() const { return std::holds_alternative<TorusDomain>(impl_); }
  bool is_sphere() const { return std::holds_alternative<SphereDomain>(impl_); }
  const TorusDomain& torus() const;
  const SphereDomain& sphere() const;

  std::size_t size() const;
  double total_volume() const;
  /// Intrinsic dimension: d for tori, 2 for the sphere.
  int dim() const;
  /// Quadrature weight of one grid point.
  double weight(std::size_t idx) const;
  std::string describe() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::variant<TorusDomain, SphereDomain> impl_;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_torus(int dim, int n, double length = 2.0);
DomainPtr make_sphere(int n_theta, int n_phi, int lmax = -1);

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) {
  return a && b && (a == b || *a == *b);
}

}  // namespace dirmbo
