#pragma once

#include <memory>
#include <span>
#include <vector>

#include "dirmbo/field.hpp"
#include "dirmbo/heat.hpp"

namespace dirmbo {

/// Frequency-space factors exp(-tau (2 pi / L)^2 |m|^2) of the periodic heat
/// kernel for m in {-n/2, ..., n/2 - 1}^d.
///
/// factors() is laid out like a real-to-complex FFT output: the first d-1
/// axes hold n frequencies in FFT order (0, 1, ..., n/2 - 1, -n/2, ..., -1),
/// the last axis holds the n/2 + 1 non-negative frequencies.
class SpectralMultiplier {
 public:
  SpectralMultiplier(DomainPtr domain, double tau);

  const DomainPtr& domain() const { return domain_; }
  const TorusDomain& torus() const { return domain_->torus(); }
  double tau() const { return tau_; }
  std::span<const double> factors() const { return factors_; }

  /// Factor for an arbitrary signed frequency vector.
  double factor(std::span<const int> m) const;

 private:
  DomainPtr domain_;
  double tau_;
  std::vector<double> factors_;
};

SpectralMultiplier build_multiplier(DomainPtr domain, double tau);

/// Signed frequency of FFT bin b on an n-point axis.
inline int signed_frequency(int b, int n) { return b < n / 2 ? b : b - n; }

class TorusHeat final : public HeatOperator {
 public:
  explicit TorusHeat(std::shared_ptr<const SpectralMultiplier> multiplier);
  ~TorusHeat() override;

  const DomainPtr& domain() const override { return multiplier_->domain(); }
  double tau() const override { return multiplier_->tau(); }
  void apply(std::span<double> values) override;

  const SpectralMultiplier& multiplier() const { return *multiplier_; }

 private:
  struct Plan;
  std::shared_ptr<const SpectralMultiplier> multiplier_;
  std::unique_ptr<Plan> plan_;
};

/// Heat-equation solution at time tau with periodic boundary conditions.
ScalarField diffuse(const ScalarField& f, const SpectralMultiplier& mult);

}  // namespace dirmbo
