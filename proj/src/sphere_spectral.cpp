#include "dirmbo/sphere_spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace dirmbo {

ShCoeffs::ShCoeffs(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw std::invalid_argument("band limit must be non-negative");
  data_.assign(order_offset(lmax + 1, lmax), {0.0, 0.0});
}

std::complex<double> ShCoeffs::at(int l, int m) const {
  if (l < 0 || l > lmax_ || std::abs(m) > l) throw std::out_of_range("coefficient index out of band");
  if (m >= 0) return (*this)(l, m);
  const auto c = std::conj((*this)(l, -m));
  return (-m) % 2 == 0 ? c : -c;
}

double ShCoeffs::norm_squared() const {
  double s = 0.0;
  for (int m = 0; m <= lmax_; ++m) {
    double sm = 0.0;
    for (int l = m; l <= lmax_; ++l) sm += std::norm((*this)(l, m));
    s += m == 0 ? sm : 2.0 * sm;
  }
  return s;
}

void normalized_legendre(int m, int lmax, double x, double s, std::span<double> out) {
  // Values are carried as mantissa * 2^exponent; the exponent only moves
  // while the sectoral start is far below the double range.
  constexpr int kShift = 256;
  const double big = std::ldexp(1.0, kShift);
  const double tiny = std::ldexp(1.0, -kShift);

  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  int exponent = 0;
  for (int j = 1; j <= m; ++j) {
    pmm *= -std::sqrt((2.0 * j + 1.0) / (2.0 * j)) * s;
    if (std::abs(pmm) < tiny && pmm != 0.0) {
      pmm *= big;
      exponent -= kShift;
    }
  }
  if (lmax < m) return;
  out[0] = std::ldexp(pmm, exponent);
  if (lmax == m) return;
  double p2 = pmm;
  double p1 = std::sqrt(2.0 * m + 3.0) * x * pmm;
  out[1] = std::ldexp(p1, exponent);
  const double mm = static_cast<double>(m) * m;
  for (int l = m + 2; l <= lmax; ++l) {
    const double ll = static_cast<double>(l) * l;
    const double lm1 = static_cast<double>(l - 1) * (l - 1);
    const double a = std::sqrt((4.0 * ll - 1.0) / (ll - mm));
    const double b = std::sqrt((lm1 - mm) / (4.0 * lm1 - 1.0));
    const double p = a * (x * p1 - b * p2);
    p2 = p1;
    p1 = p;
    if (exponent < 0 && std::abs(p1) > big) {
      p1 *= tiny;
      p2 *= tiny;
      exponent += kShift;
    }
    out[static_cast<std::size_t>(l - m)] = std::ldexp(p1, exponent);
  }
}

ShtPlan::ShtPlan(DomainPtr domain) : domain_(std::move(domain)) {
  if (!domain_ || !domain_->is_sphere()) throw DomainMismatch("SHT plan needs a sphere domain");
  const auto& sp = sphere();
  lmax_ = sp.lmax();
  half_ = (sp.n_theta() + 1) / 2;
  table_.resize(static_cast<std::size_t>(half_) * ShCoeffs::order_offset(lmax_ + 1, lmax_));
  const auto theta = sp.theta_nodes();
  const auto x = sp.cos_theta();
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= lmax_; ++m) {
    const auto len = static_cast<std::size_t>(lmax_ + 1 - m);
    double* block = table_.data() + static_cast<std::size_t>(half_) * ShCoeffs::order_offset(m, lmax_);
    for (int i = 0; i < half_; ++i)
      normalized_legendre(m, lmax_, x[i], std::sin(theta[i]), {block + i * len, len});
  }
}

std::span<const double> ShtPlan::legendre_row(int m, int i) const {
  const auto len = static_cast<std::size_t>(lmax_ + 1 - m);
  const auto offset = static_cast<std::size_t>(half_) * ShCoeffs::order_offset(m, lmax_) +
                      static_cast<std::size_t>(i) * len;
  return {table_.data() + offset, len};
}

double ShtPlan::legendre(int l, int m, int i) const {
  const int n = sphere().n_theta();
  if (i < half_) return legendre_row(m, i)[static_cast<std::size_t>(l - m)];
  const double v = legendre_row(m, n - 1 - i)[static_cast<std::size_t>(l - m)];
  return (l + m) % 2 == 0 ? v : -v;
}

struct ShtWorkspace::Impl {
  fft::RealPlan rings;
};

ShtWorkspace::ShtWorkspace(std::shared_ptr<const ShtPlan> plan) : plan_(std::move(plan)) {
  const auto& sp = plan_->sphere();
  impl_ = std::make_unique<Impl>(Impl{fft::RealPlan::batch(sp.n_theta(), sp.n_phi())});
}

ShtWorkspace::~ShtWorkspace() = default;

void ShtWorkspace::forward(std::span<const double> field, ShCoeffs& out) {
  const auto& sp = plan_->sphere();
  const int nt = sp.n_theta();
  const int np = sp.n_phi();
  const int nc = np / 2 + 1;
  const int lmax = plan_->lmax();
  const int half = plan_->half_nodes();
  if (field.size() != sp.size()) throw DomainMismatch("field does not match the SHT plan");
  if (out.lmax() != lmax) throw std::invalid_argument("coefficient band limit mismatch");

  auto& rings = impl_->rings;
  std::copy(field.begin(), field.end(), rings.real().begin());
  rings.forward();
  const auto spec = rings.spectrum();
  const auto w = sp.legendre_weights();
  const double dphi = 2.0 * std::numbers::pi / np;

#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= lmax; ++m) {
    auto* acc = &out(m, m);
    const int len = lmax + 1 - m;
    for (int j = 0; j < len; ++j) acc[j] = {0.0, 0.0};
    for (int i = 0; i < half; ++i) {
      const int mirror = nt - 1 - i;
      const auto north = spec[static_cast<std::size_t>(i) * nc + m];
      const auto south = spec[static_cast<std::size_t>(mirror) * nc + m];
      const double scale = w[i] * dphi;
      std::complex<double> even, odd;
      if (mirror == i) {
        even = odd = north * scale;
      } else {
        even = (north + south) * scale;
        odd = (north - south) * scale;
      }
      const auto p = plan_->legendre_row(m, i);
      for (int j = 0; j < len; j += 2) acc[j] += p[j] * even;
      for (int j = 1; j < len; j += 2) acc[j] += p[j] * odd;
    }
  }
}

void ShtWorkspace::inverse(const ShCoeffs& coeffs, std::span<double> field) {
  const auto& sp = plan_->sphere();
  const int nt = sp.n_theta();
  const int np = sp.n_phi();
  const int nc = np / 2 + 1;
  const int lmax = plan_->lmax();
  const int half = plan_->half_nodes();
  if (field.size() != sp.size()) throw DomainMismatch("field does not match the SHT plan");
  if (coeffs.lmax() != lmax) throw std::invalid_argument("coefficient band limit mismatch");

  auto& rings = impl_->rings;
  auto spec = rings.spectrum();
  std::fill(spec.begin(), spec.end(), std::complex<double>{0.0, 0.0});

#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= lmax; ++m) {
    const auto* c = coeffs.data().data() + coeffs.index(m, m);
    const int len = lmax + 1 - m;
    for (int i = 0; i < half; ++i) {
      const auto p = plan_->legendre_row(m, i);
      std::complex<double> even{0.0, 0.0}, odd{0.0, 0.0};
      for (int j = 0; j < len; j += 2) even += p[j] * c[j];
      for (int j = 1; j < len; j += 2) odd += p[j] * c[j];
      const int mirror = nt - 1 - i;
      spec[static_cast<std::size_t>(i) * nc + m] = even + odd;
      if (mirror != i) spec[static_cast<std::size_t>(mirror) * nc + m] = even - odd;
    }
  }
  rings.backward();
  const auto real = rings.real();
  std::copy(real.begin(), real.end(), field.begin());
}

namespace {

// Non-owning handle for callers that keep the plan alive themselves.
std::shared_ptr<const ShtPlan> borrow(const ShtPlan& plan) {
  return std::shared_ptr<const ShtPlan>(std::shared_ptr<const ShtPlan>{}, &plan);
}

}  // namespace

ShCoeffs sht_forward(const ScalarField& f, const ShtPlan& plan) {
  if (!same_domain(f.domain(), plan.domain())) throw DomainMismatch("field and SHT plan domains differ");
  ShtWorkspace ws(borrow(plan));
  ShCoeffs c(plan.lmax());
  ws.forward(f.values(), c);
  return c;
}

ScalarField sht_inverse(const ShCoeffs& c, const ShtPlan& plan) {
  if (c.lmax() != plan.lmax()) throw std::invalid_argument("coefficient band limit mismatch");
  ShtWorkspace ws(borrow(plan));
  ScalarField f(plan.domain());
  ws.inverse(c, f.values());
  return f;
}

void apply_heat_multiplier(ShCoeffs& c, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  for (int m = 0; m <= c.lmax(); ++m)
    for (int l = m; l <= c.lmax(); ++l) c(l, m) *= std::exp(-static_cast<double>(l) * (l + 1) * tau);
}

ScalarField diffuse_sphere(const ScalarField& f, double tau, const ShtPlan& plan) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  auto c = sht_forward(f, plan);
  apply_heat_multiplier(c, tau);
  return sht_inverse(c, plan);
}

SphereHeat::SphereHeat(std::shared_ptr<const ShtPlan> plan, double tau)
    : workspace_(std::move(plan)), tau_(tau), coeffs_(workspace_.plan().lmax()) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  const int lmax = workspace_.plan().lmax();
  factors_.resize(static_cast<std::size_t>(lmax + 1));
  for (int l = 0; l <= lmax; ++l) factors_[l] = std::exp(-static_cast<double>(l) * (l + 1) * tau);
}

void SphereHeat::apply(std::span<double> values) {
  workspace_.forward(values, coeffs_);
  const int lmax = coeffs_.lmax();
  for (int m = 0; m <= lmax; ++m) {
    auto* c = &coeffs_(m, m);
    for (int l = m; l <= lmax; ++l) c[l - m] *= factors_[static_cast<std::size_t>(l)];
  }
  workspace_.inverse(coeffs_, values);
}

}  // namespace dirmbo
