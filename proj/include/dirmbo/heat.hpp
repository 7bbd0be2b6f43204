#pragma once

#include <memory>
#include <span>

#include "dirmbo/domain.hpp"

namespace dirmbo {

/// The heat semigroup e^{tau Laplacian} on one domain, applied in place to a
/// single scalar field. Implementations own transform scratch space, so one
/// instance must not be shared between concurrent callers; the underlying
/// multiplier data is immutable and may be shared.
class HeatOperator {
 public:
  virtual ~HeatOperator() = default;

  virtual const DomainPtr& domain() const = 0;
  virtual double tau() const = 0;
  virtual void apply(std::span<double> values) = 0;
};

/// Spectral heat operator for the domain kind: FFT multipliers on tori,
/// spherical harmonic multipliers on the sphere.
std::unique_ptr<HeatOperator> make_heat_operator(DomainPtr domain, double tau);

}  // namespace dirmbo
