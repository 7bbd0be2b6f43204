#include "dirmbo/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dirmbo {

TorusDomain::TorusDomain(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("torus dimension must be 2, 3 or 4");
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("torus grid size must be even and >= 4");
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("torus side length must be positive");
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
  cell_volume_ = std::pow(length / n, dim);
  total_volume_ = std::pow(length, dim);
}

std::array<int, TorusDomain::kMaxDim> TorusDomain::unravel(std::size_t idx) const {
  std::array<int, kMaxDim> index{};
  for (int a = dim_ - 1; a >= 0; --a) {
    index[a] = static_cast<int>(idx % static_cast<std::size_t>(n_));
    idx /= static_cast<std::size_t>(n_);
  }
  return index;
}

std::size_t TorusDomain::ravel(const std::array<int, kMaxDim>& index) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(index[a]);
  return idx;
}

namespace {

// Legendre P_n and its derivative at x = cos(theta).
void legendre_with_derivative(int n, double x, double sin_theta, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  p = n == 0 ? 1.0 : p1;
  // (1 - x^2) P_n' = n (P_{n-1} - x P_n)
  dp = n * (p0 - x * p1) / (sin_theta * sin_theta);
}

}  // namespace

void gauss_legendre(int n, std::span<double> nodes, std::span<double> weights,
                    std::span<double> theta) {
  for (int i = 0; i < n; ++i) {
    // Newton in theta keeps sin(theta) accurate next to the poles.
    double t = std::numbers::pi * (i + 0.75) / (n + 0.5);
    for (int iter = 0; iter < 100; ++iter) {
      double p, dp;
      legendre_with_derivative(n, std::cos(t), std::sin(t), p, dp);
      const double step = p / (-std::sin(t) * dp);
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    double p, dp;
    const double s = std::sin(t);
    legendre_with_derivative(n, std::cos(t), s, p, dp);
    nodes[i] = std::cos(t);
    weights[i] = 2.0 / (s * s * dp * dp);
    if (!theta.empty()) theta[i] = t;
  }
}

SphereDomain::SphereDomain(int n_theta, int n_phi, int lmax)
    : n_theta_(n_theta), n_phi_(n_phi), lmax_(lmax < 0 ? n_theta - 1 : lmax) {
  if (n_theta < 2) throw std::invalid_argument("sphere needs at least 2 inclination nodes");
  if (n_phi < 1) throw std::invalid_argument("sphere needs at least 1 azimuth node");
  if (lmax_ > n_theta - 1) throw std::invalid_argument("sphere band limit exceeds n_theta - 1");
  if (n_phi < 2 * lmax_ + 1) throw std::invalid_argument("sphere n_phi must be >= 2 lmax + 1");

  theta_.resize(static_cast<std::size_t>(n_theta));
  cos_theta_.resize(theta_.size());
  gl_weights_.resize(theta_.size());
  gauss_legendre(n_theta, cos_theta_, gl_weights_, theta_);
  quad_weights_.resize(size());
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      quad_weights_[static_cast<std::size_t>(i) * n_phi + j] = gl_weights_[i] * dphi;
}

double SphereDomain::total_volume() const { return 4.0 * std::numbers::pi; }

double SphereDomain::phi(int j) const { return 2.0 * std::numbers::pi * j / n_phi_; }

std::array<double, 3> SphereDomain::point(std::size_t idx) const {
  const auto i = idx / static_cast<std::size_t>(n_phi_);
  const auto j = static_cast<int>(idx % static_cast<std::size_t>(n_phi_));
  const double st = std::sin(theta_[i]);
  const double p = phi(j);
  return {st * std::sin(p), st * std::cos(p), cos_theta_[i]};
}

const TorusDomain& Domain::torus() const {
  if (!is_torus()) throw DomainMismatch("expected a torus domain");
  return std::get<TorusDomain>(impl_);
}

const SphereDomain& Domain::sphere() const {
  if (!is_sphere()) throw DomainMismatch("expected a sphere domain");
  return std::get<SphereDomain>(impl_);
}

std::size_t Domain::size() const {
  return std::visit([](const auto& d) { return d.size(); }, impl_);
}

double Domain::total_volume() const {
  return std::visit([](const auto& d) { return d.total_volume(); }, impl_);
}

int Domain::dim() const { return is_torus() ? torus().dim() : 2; }

double Domain::weight(std::size_t idx) const {
  return is_torus() ? torus().cell_volume() : sphere().quad_weights()[idx];
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (is_torus()) {
    const auto& t = torus();
    os << "torus" << t.dim() << " n=" << t.n() << " L=" << t.length();
  } else {
    const auto& s = sphere();
    os << "sphere n_theta=" << s.n_theta() << " n_phi=" << s.n_phi() << " lmax=" << s.lmax();
  }
  return os.str();
}

DomainPtr make_torus(int dim, int n, double length) {
  return std::make_shared<const Domain>(TorusDomain(dim, n, length));
}

DomainPtr make_sphere(int n_theta, int n_phi, int lmax) {
  return std::make_shared<const Domain>(SphereDomain(n_theta, n_phi, lmax));
}

}  // namespace dirmbo
