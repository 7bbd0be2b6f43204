#include "dirmbo/torus_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dirmbo/kernels.hpp"
#include "fft.hpp"

namespace dirmbo {

SpectralMultiplier::SpectralMultiplier(DomainPtr domain, double tau)
    : domain_(std::move(domain)), tau_(tau) {
  if (!domain_ || !domain_->is_torus()) throw DomainMismatch("spectral multiplier needs a torus");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  const auto& t = torus();
  const int d = t.dim();
  const int n = t.n();
  const int nc = n / 2 + 1;
  const double kappa = 2.0 * std::numbers::pi / t.length();
  const double rate = tau * kappa * kappa;

  std::size_t total = static_cast<std::size_t>(nc);
  for (int a = 0; a < d - 1; ++a) total *= static_cast<std::size_t>(n);
  factors_.resize(total);
  const auto count = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto rest = static_cast<std::size_t>(i);
    const int last = static_cast<int>(rest % static_cast<std::size_t>(nc));
    rest /= static_cast<std::size_t>(nc);
    long m2 = static_cast<long>(last) * last;
    for (int a = 0; a < d - 1; ++a) {
      const int m = signed_frequency(static_cast<int>(rest % static_cast<std::size_t>(n)), n);
      rest /= static_cast<std::size_t>(n);
      m2 += static_cast<long>(m) * m;
    }
    factors_[i] = std::exp(-rate * static_cast<double>(m2));
  }
}

double SpectralMultiplier::factor(std::span<const int> m) const {
  const auto& t = torus();
  if (static_cast<int>(m.size()) != t.dim()) throw std::invalid_argument("frequency rank mismatch");
  const double kappa = 2.0 * std::numbers::pi / t.length();
  long m2 = 0;
  for (int v : m) {
    if (v < -t.n() / 2 || v >= t.n() / 2) throw std::out_of_range("frequency outside the band");
    m2 += static_cast<long>(v) * v;
  }
  return std::exp(-tau_ * kappa * kappa * static_cast<double>(m2));
}

SpectralMultiplier build_multiplier(DomainPtr domain, double tau) {
  return SpectralMultiplier(std::move(domain), tau);
}

struct TorusHeat::Plan {
  fft::RealPlan fft;
};

TorusHeat::TorusHeat(std::shared_ptr<const SpectralMultiplier> multiplier)
    : multiplier_(std::move(multiplier)) {
  const auto& t = multiplier_->torus();
  std::vector<int> shape(static_cast<std::size_t>(t.dim()), t.n());
  plan_ = std::make_unique<Plan>(Plan{fft::RealPlan::multi(shape)});
}

TorusHeat::~TorusHeat() = default;

void TorusHeat::apply(std::span<double> values) {
  auto& fft = plan_->fft;
  if (values.size() != fft.real().size()) throw DomainMismatch("field does not match the multiplier");
  std::copy(values.begin(), values.end(), fft.real().begin());
  fft.forward();
  const double scale = 1.0 / static_cast<double>(values.size());
  kernels::parallel::scale_spectrum(fft.spectrum(), multiplier_->factors(), scale);
  fft.backward();
  std::copy(fft.real().begin(), fft.real().end(), values.begin());
}

ScalarField diffuse(const ScalarField& f, const SpectralMultiplier& mult) {
  if (!same_domain(f.domain(), mult.domain())) throw DomainMismatch("field and multiplier domains differ");
  TorusHeat heat(std::shared_ptr<const SpectralMultiplier>(std::shared_ptr<const SpectralMultiplier>{}, &mult));
  ScalarField out = f;
  heat.apply(out.values());
  return out;
}

}  // namespace dirmbo
