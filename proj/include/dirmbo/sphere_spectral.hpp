#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "dirmbo/field.hpp"
#include "dirmbo/heat.hpp"

namespace dirmbo {

/// Spherical harmonic coefficients s_{l,m}, 0 <= m <= l <= lmax, of a real
/// field. Negative orders follow from s_{l,-m} = (-1)^m conj(s_{l,m}).
/// Storage is order-major: all degrees of m = 0, then m = 1, ...
class ShCoeffs {
 public:
  explicit ShCoeffs(int lmax);

  int lmax() const { return lmax_; }
  std::span<std::complex<double>> data() { return data_; }
  std::span<const std::complex<double>> data() const { return data_; }

  std::complex<double>& operator()(int l, int m) { return data_[index(l, m)]; }
  std::complex<double> operator()(int l, int m) const { return data_[index(l, m)]; }
  /// Any order -l <= m <= l.
  std::complex<double> at(int l, int m) const;

  /// Sum of |s_{l,m}|^2 over all orders including negative ones.
  double norm_squared() const;

  std::size_t index(int l, int m) const { return order_offset(m, lmax_) + static_cast<std::size_t>(l - m); }
  static std::size_t order_offset(int m, int lmax) {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(lmax + 1) -
           static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
  }

 private:
  int lmax_;
  std::vector<std::complex<double>> data_;
};

/// Precomputed transform data for one SphereDomain: fully normalised
/// associated Legendre functions (Condon-Shortley phase) at the northern half
/// of the Gauss-Legendre nodes; the southern half follows by parity.
class ShtPlan {
 public:
  explicit ShtPlan(DomainPtr domain);

  const DomainPtr& domain() const { return domain_; }
  const SphereDomain& sphere() const { return domain_->sphere(); }
  int lmax() const { return lmax_; }

  /// P-bar_l^m(cos theta_i) for any node i.
  double legendre(int l, int m, int i) const;

  /// Degrees l = m..lmax at northern node i (i < half_nodes()).
  std::span<const double> legendre_row(int m, int i) const;
  int half_nodes() const { return half_; }

 private:
  DomainPtr domain_;
  int lmax_;
  int half_;
  std::vector<double> table_;
};

/// Fully normalised associated Legendre values P-bar_l^m(cos theta) for
/// l = m..lmax, computed with the three-term recurrence on an extended
/// exponent so that no intermediate underflows.
void normalized_legendre(int m, int lmax, double cos_theta, double sin_theta, std::span<double> out);

/// Forward/inverse transforms with their own FFT scratch space. One instance
/// per thread; the plan is shared.
class ShtWorkspace {
 public:
  explicit ShtWorkspace(std::shared_ptr<const ShtPlan> plan);
  ~ShtWorkspace();

  const ShtPlan& plan() const { return *plan_; }
  void forward(std::span<const double> field, ShCoeffs& out);
  void inverse(const ShCoeffs& coeffs, std::span<double> field);

 private:
  struct Impl;
  std::shared_ptr<const ShtPlan> plan_;
  std::unique_ptr<Impl> impl_;
};

ShCoeffs sht_forward(const ScalarField& f, const ShtPlan& plan);
ScalarField sht_inverse(const ShCoeffs& c, const ShtPlan& plan);
ScalarField diffuse_sphere(const ScalarField& f, double tau, const ShtPlan& plan);

/// Scales every degree-l coefficient by exp(-l(l+1) tau).
void apply_heat_multiplier(ShCoeffs& c, double tau);

class SphereHeat final : public HeatOperator {
 public:
  SphereHeat(std::shared_ptr<const ShtPlan> plan, double tau);

  const DomainPtr& domain() const override { return workspace_.plan().domain(); }
  double tau() const override { return tau_; }
  void apply(std::span<double> values) override;

 private:
  ShtWorkspace workspace_;
  double tau_;
  std::vector<double> factors_;
  ShCoeffs coeffs_;
};

}  // namespace dirmbo
