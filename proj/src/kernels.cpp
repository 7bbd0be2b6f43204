#include "dirmbo/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace dirmbo::kernels {

Weights Weights::of(const Domain& domain) {
  if (domain.is_torus()) return Weights{domain.torus().cell_volume(), {}};
  return Weights{1.0, domain.sphere().quad_weights()};
}

double periodic_distance(std::span<const double> x, std::span<const double> y, double length) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    double d = std::abs(x[a] - y[a]);
    d = std::fmod(d, length);
    d = std::min(d, length - d);
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

std::size_t num_blocks(std::size_t n) { return (n + kReductionBlock - 1) / kReductionBlock; }

double block_weighted_dot(std::span<const double> a, std::span<const double> b, const Weights& w,
                          std::size_t blk) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(a.size(), lo + kReductionBlock);
  double s = 0.0;
  if (w.per_point.empty()) {
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
  } else {
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i] * w.per_point[i];
  }
  return s;
}

double block_masked_dot(std::span<const Label> labels, std::span<const double> values, Label l,
                        std::span<const double> other, const Weights& w, std::size_t blk) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(values.size(), lo + kReductionBlock);
  double s = 0.0;
  if (w.per_point.empty()) {
    for (std::size_t i = lo; i < hi; ++i)
      if (labels[i] == l) s += values[i] * other[i];
  } else {
    for (std::size_t i = lo; i < hi; ++i)
      if (labels[i] == l) s += values[i] * other[i] * w.per_point[i];
  }
  return s;
}

void block_masked_norms(std::span<const Label> labels, std::span<const double> values,
                        const Weights& w, std::size_t blk, double* out) {
  const std::size_t lo = blk * kReductionBlock;
  const std::size_t hi = std::min(values.size(), lo + kReductionBlock);
  if (w.per_point.empty()) {
    for (std::size_t i = lo; i < hi; ++i) out[labels[i]] += values[i] * values[i];
  } else {
    for (std::size_t i = lo; i < hi; ++i) out[labels[i]] += values[i] * values[i] * w.per_point[i];
  }
}

double sum_in_order(const std::vector<double>& partial, double scale) {
  double s = 0.0;
  for (double p : partial) s += p;
  return s * scale;
}

Label nearest_torus_seed(const TorusDomain& domain, std::span<const double> seeds,
                         std::size_t idx) {
  const int d = domain.dim();
  const double length = domain.length();
  const auto index = domain.unravel(idx);
  double x[TorusDomain::kMaxDim];
  for (int a = 0; a < d; ++a) x[a] = domain.coordinate(index[a]);
  const std::size_t k = seeds.size() / static_cast<std::size_t>(d);
  double best = std::numeric_limits<double>::infinity();
  Label arg = 0;
  for (std::size_t s = 0; s < k; ++s) {
    double dist2 = 0.0;
    for (int a = 0; a < d; ++a) {
      double delta = std::abs(x[a] - seeds[s * d + a]);
      delta = std::min(delta, length - delta);
      dist2 += delta * delta;
    }
    if (dist2 < best) {
      best = dist2;
      arg = static_cast<Label>(s);
    }
  }
  return arg;
}

Label nearest_sphere_seed(const SphereDomain& domain, std::span<const double> seeds,
                          std::size_t idx) {
  const auto p = domain.point(idx);
  const std::size_t k = seeds.size() / 3;
  double best = -std::numeric_limits<double>::infinity();
  Label arg = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const double dot = p[0] * seeds[3 * s] + p[1] * seeds[3 * s + 1] + p[2] * seeds[3 * s + 2];
    if (dot > best) {
      best = dot;
      arg = static_cast<Label>(s);
    }
  }
  return arg;
}

inline void argmax_point(double v, Label l, const ArgmaxState& st, std::size_t i) {
  if (l == 0) {
    st.best[i] = v;
    st.arg[i] = 0;
    st.tie[i] = 0;
  } else if (v > st.best[i]) {
    st.best[i] = v;
    st.arg[i] = l;
    st.tie[i] = 0;
  } else if (v == st.best[i]) {
    st.tie[i] = 1;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

double weighted_dot(std::span<const double> a, std::span<const double> b, const Weights& w) {
  std::vector<double> partial(num_blocks(a.size()));
  for (std::size_t blk = 0; blk < partial.size(); ++blk)
    partial[blk] = block_weighted_dot(a, b, w, blk);
  return sum_in_order(partial, w.per_point.empty() ? w.uniform : 1.0);
}

double masked_dot(std::span<const Label> labels, std::span<const double> values, Label l,
                  std::span<const double> other, const Weights& w) {
  std::vector<double> partial(num_blocks(values.size()));
  for (std::size_t blk = 0; blk < partial.size(); ++blk)
    partial[blk] = block_masked_dot(labels, values, l, other, w, blk);
  return sum_in_order(partial, w.per_point.empty() ? w.uniform : 1.0);
}

void masked_norms(std::span<const Label> labels, std::span<const double> values, const Weights& w,
                  std::span<double> out) {
  const std::size_t k = out.size();
  const std::size_t nb = num_blocks(values.size());
  std::vector<double> partial(nb * k, 0.0);
  for (std::size_t blk = 0; blk < nb; ++blk)
    block_masked_norms(labels, values, w, blk, partial.data() + blk * k);
  const double scale = w.per_point.empty() ? w.uniform : 1.0;
  for (std::size_t l = 0; l < k; ++l) {
    double s = 0.0;
    for (std::size_t blk = 0; blk < nb; ++blk) s += partial[blk * k + l];
    out[l] = s * scale;
  }
}

void argmax_update(std::span<const double> component, Label l, const ArgmaxState& state) {
  for (std::size_t i = 0; i < component.size(); ++i) argmax_point(component[i], l, state, i);
}

std::size_t count_differences(std::span<const Label> a, std::span<const Label> b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

std::size_t count_flags(std::span<const std::uint8_t> flags) {
  std::size_t n = 0;
  for (auto f : flags) n += f != 0;
  return n;
}

void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> factors,
                    double scale) {
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= factors[i] * scale;
}

void scale_by_label(std::span<const Label> labels, std::span<double> values,
                    std::span<const double> scale) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= scale[labels[i]];
}

void voronoi_torus(const TorusDomain& domain, std::span<const double> seeds,
                   std::span<Label> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = nearest_torus_seed(domain, seeds, i);
}

void voronoi_sphere(const SphereDomain& domain, std::span<const double> seeds,
                    std::span<Label> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    labels[i] = nearest_sphere_seed(domain, seeds, i);
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

double weighted_dot(std::span<const double> a, std::span<const double> b, const Weights& w) {
  const auto nb = static_cast<std::ptrdiff_t>(num_blocks(a.size()));
  std::vector<double> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    partial[blk] = block_weighted_dot(a, b, w, static_cast<std::size_t>(blk));
  return sum_in_order(partial, w.per_point.empty() ? w.uniform : 1.0);
}

double masked_dot(std::span<const Label> labels, std::span<const double> values, Label l,
                  std::span<const double> other, const Weights& w) {
  const auto nb = static_cast<std::ptrdiff_t>(num_blocks(values.size()));
  std::vector<double> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    partial[blk] = block_masked_dot(labels, values, l, other, w, static_cast<std::size_t>(blk));
  return sum_in_order(partial, w.per_point.empty() ? w.uniform : 1.0);
}

void masked_norms(std::span<const Label> labels, std::span<const double> values, const Weights& w,
                  std::span<double> out) {
  const std::size_t k = out.size();
  const auto nb = static_cast<std::ptrdiff_t>(num_blocks(values.size()));
  std::vector<double> partial(static_cast<std::size_t>(nb) * k, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t blk = 0; blk < nb; ++blk)
    block_masked_norms(labels, values, w, static_cast<std::size_t>(blk),
                       partial.data() + static_cast<std::size_t>(blk) * k);
  const double scale = w.per_point.empty() ? w.uniform : 1.0;
  for (std::size_t l = 0; l < k; ++l) {
    double s = 0.0;
    for (std::ptrdiff_t blk = 0; blk < nb; ++blk) s += partial[static_cast<std::size_t>(blk) * k + l];
    out[l] = s * scale;
  }
}

void argmax_update(std::span<const double> component, Label l, const ArgmaxState& state) {
  const auto n = static_cast<std::ptrdiff_t>(component.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    argmax_point(component[i], l, state, static_cast<std::size_t>(i));
}

std::size_t count_differences(std::span<const Label> a, std::span<const Label> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::size_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::ptrdiff_t i = 0; i < n; ++i) count += a[i] != b[i];
  return count;
}

std::size_t count_flags(std::span<const std::uint8_t> flags) {
  const auto n = static_cast<std::ptrdiff_t>(flags.size());
  std::size_t count = 0;
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::ptrdiff_t i = 0; i < n; ++i) count += flags[i] != 0;
  return count;
}

void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> factors,
                    double scale) {
  const auto n = static_cast<std::ptrdiff_t>(spectrum.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) spectrum[i] *= factors[i] * scale;
}

void scale_by_label(std::span<const Label> labels, std::span<double> values,
                    std::span<const double> scale) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) values[i] *= scale[labels[i]];
}

void voronoi_torus(const TorusDomain& domain, std::span<const double> seeds,
                   std::span<Label> labels) {
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    labels[i] = nearest_torus_seed(domain, seeds, static_cast<std::size_t>(i));
}

void voronoi_sphere(const SphereDomain& domain, std::span<const double> seeds,
                    std::span<Label> labels) {
  const auto n = static_cast<std::ptrdiff_t>(labels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    labels[i] = nearest_sphere_seed(domain, seeds, static_cast<std::size_t>(i));
}

}  // namespace parallel

}  // namespace dirmbo::kernels
