#pragma once

// Pointwise and reduction kernels used by every stage of the iteration.
//
// Each kernel exists twice: serial:: is the plain loop kept as the reference,
// parallel:: is the OpenMP version used by the library. Reductions are blocked
// with a fixed block size and the block partials are summed in block order, so
// both variants return bit-identical results for any thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

#include "dirmbo/field.hpp"

namespace dirmbo::kernels {

inline constexpr std::size_t kReductionBlock = 4096;

/// Quadrature weights: either one uniform weight or one weight per point.
struct Weights {
  double uniform = 1.0;
  std::span<const double> per_point{};

  static Weights of(const Domain& domain);
};

struct ArgmaxState {
  std::span<double> best;
  std::span<Label> arg;
  std::span<std::uint8_t> tie;
};

namespace serial {

/// Sum of a*b*w.
double weighted_dot(std::span<const double> a, std::span<const double> b, const Weights& w);

/// Sum over points with labels == l of values * other * w.
double masked_dot(std::span<const Label> labels, std::span<const double> values, Label l,
                  std::span<const double> other, const Weights& w);

/// out[l] = sum over points with labels == l of values^2 * w. out.size() == k.
void masked_norms(std::span<const Label> labels, std::span<const double> values, const Weights& w,
                  std::span<double> out);

/// Folds component l into a running pointwise argmax. The first component
/// (l == 0) initialises the state; later components win only when strictly
/// larger, so ties resolve to the lowest index and are flagged.
void argmax_update(std::span<const double> component, Label l, const ArgmaxState& state);

std::size_t count_differences(std::span<const Label> a, std::span<const Label> b);

std::size_t count_flags(std::span<const std::uint8_t> flags);

/// spectrum[i] *= factors[i] * scale.
void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> factors,
                    double scale);

/// values[i] *= scale[labels[i]].
void scale_by_label(std::span<const Label> labels, std::span<double> values,
                    std::span<const double> scale);

/// Nearest-seed labels on a periodic box with per-axis wraparound distance.
/// seeds holds k points of dimension domain.dim(), row-major.
void voronoi_torus(const TorusDomain& domain, std::span<const double> seeds,
                   std::span<Label> labels);

/// Nearest-seed labels on the sphere (largest dot product = smallest geodesic
/// distance). seeds holds k unit 3-vectors, row-major.
void voronoi_sphere(const SphereDomain& domain, std::span<const double> seeds,
                    std::span<Label> labels);

}  // namespace serial

namespace parallel {

double weighted_dot(std::span<const double> a, std::span<const double> b, const Weights& w);
double masked_dot(std::span<const Label> labels, std::span<const double> values, Label l,
                  std::span<const double> other, const Weights& w);
void masked_norms(std::span<const Label> labels, std::span<const double> values, const Weights& w,
                  std::span<double> out);
void argmax_update(std::span<const double> component, Label l, const ArgmaxState& state);
std::size_t count_differences(std::span<const Label> a, std::span<const Label> b);
std::size_t count_flags(std::span<const std::uint8_t> flags);
void scale_spectrum(std::span<std::complex<double>> spectrum, std::span<const double> factors,
                    double scale);
void scale_by_label(std::span<const Label> labels, std::span<double> values,
                    std::span<const double> scale);
void voronoi_torus(const TorusDomain& domain, std::span<const double> seeds,
                   std::span<Label> labels);
void voronoi_sphere(const SphereDomain& domain, std::span<const double> seeds,
                    std::span<Label> labels);

}  // namespace parallel

/// Periodic Euclidean distance on the box: per-axis min(|d|, L - |d|).
double periodic_distance(std::span<const double> x, std::span<const double> y, double length);

}  // namespace dirmbo::kernels
