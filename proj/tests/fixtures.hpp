#pragma once

#include <vector>

#include "dirmbo/heat.hpp"

namespace fixtures {

/// Translates a torus field by `shift` cells along axis 0. Not a heat flow:
/// it makes the projection step move the labeling rigidly, which gives exact
/// two-cycles (shift = n/2) and labelings that never settle (shift = 1).
class ShiftOperator final : public dirmbo::HeatOperator {
 public:
  ShiftOperator(dirmbo::DomainPtr d, int shift) : domain_(std::move(d)), shift_(shift) {}
  const dirmbo::DomainPtr& domain() const override { return domain_; }
  double tau() const override { return 0.125; }
  void apply(std::span<double> values) override {
    const auto& t = domain_->torus();
    std::vector<double> in(values.begin(), values.end());
    for (std::size_t i = 0; i < in.size(); ++i) {
      auto idx = t.unravel(i);
      idx[0] = (idx[0] + shift_) % t.n();
      values[t.ravel(idx)] = in[i];
    }
  }

 private:
  dirmbo::DomainPtr domain_;
  int shift_;
};

/// k equal slabs stacked along one axis.
inline dirmbo::Labeling slabs(const dirmbo::DomainPtr& d, int k, int axis = 0) {
  const auto& t = d->torus();
  dirmbo::Labeling l(d, k);
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<dirmbo::Label>(t.unravel(i)[axis] * k / t.n());
  return l;
}

}  // namespace fixtures
