#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dirmbo/domain.hpp"

namespace dirmbo {

/// Labels are stored as unsigned bytes, so at most this many components.
inline constexpr int kMaxComponents = 256;

using Label = std::uint8_t;

/// A component lost every grid point, so it cannot be renormalised.
class EmptyComponent : public std::runtime_error {
 public:
  explicit EmptyComponent(int component);
  int component() const { return component_; }

 private:
  int component_;
};

class ScalarField {
 public:
  explicit ScalarField(DomainPtr domain);
  ScalarField(DomainPtr domain, std::vector<double> values);

  const DomainPtr& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  DomainPtr domain_;
  std::vector<double> values_;
};

/// The k fields u_1..u_k, all on one domain.
class FieldSet {
 public:
  FieldSet(DomainPtr domain, int k);
  explicit FieldSet(std::vector<ScalarField> fields);

  const DomainPtr& domain() const { return domain_; }
  int k() const { return static_cast<int>(fields_.size()); }
  ScalarField& operator[](int l) { return fields_[static_cast<std::size_t>(l)]; }
  const ScalarField& operator[](int l) const { return fields_[static_cast<std::size_t>(l)]; }

 private:
  DomainPtr domain_;
  std::vector<ScalarField> fields_;
};

/// Per-point partition membership.
class Labeling {
 public:
  Labeling(DomainPtr domain, int k);
  Labeling(DomainPtr domain, int k, std::vector<Label> labels);

  const DomainPtr& domain() const { return domain_; }
  int k() const { return k_; }
  std::size_t size() const { return labels_.size(); }
  std::span<Label> labels() { return labels_; }
  std::span<const Label> labels() const { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }
  Label& operator[](std::size_t i) { return labels_[i]; }

  std::vector<std::size_t> counts() const;

  friend bool operator==(const Labeling& a, const Labeling& b) {
    return same_domain(a.domain_, b.domain_) && a.k_ == b.k_ && a.labels_ == b.labels_;
  }

 private:
  DomainPtr domain_;
  int k_;
  std::vector<Label> labels_;
};

/// A FieldSet whose pointwise value lies on the coordinate axes of R^k:
/// component labels[x] carries values[x], every other component is zero
/// there. This is the state of the iteration after every projection and
/// costs one double and one byte per point regardless of k.
class ProjectedFieldSet {
 public:
  ProjectedFieldSet(DomainPtr domain, int k);
  ProjectedFieldSet(Labeling labeling, std::vector<double> values);

  const DomainPtr& domain() const { return domain_; }
  int k() const { return k_; }
  std::size_t size() const { return values_.size(); }
  std::span<Label> labels() { return labels_; }
  std::span<const Label> labels() const { return labels_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  Labeling labeling() const;
  FieldSet expand() const;
  /// Writes component l (zeros off its support) into out.
  void load_component(int l, std::span<double> out) const;
  /// Squared weighted L2 norm of every component.
  std::vector<double> norms_squared() const;

 private:
  DomainPtr domain_;
  int k_;
  std::vector<Label> labels_;
  std::vector<double> values_;
};

/// Discrete L2 inner product: sum of a*b times the quadrature weight.
double weighted_inner(const ScalarField& a, const ScalarField& b);

/// Number of points whose label differs.
std::size_t labeling_distance(const Labeling& a, const Labeling& b);

/// Tiles a torus labeling m times per axis onto [-mL/2, mL/2)^d at m*n points per axis.
Labeling periodic_extend(const Labeling& l, int m);

/// Tiles a torus field the same way periodic_extend tiles labels.
ScalarField periodic_extend(const ScalarField& f, int m);

/// Normalised indicator fields of a labeling: component l is
/// chi_{label == l} / ||chi_{label == l}||. Throws EmptyComponent for a label
/// with no points.
ProjectedFieldSet indicator_fields(const Labeling& labels);

}  // namespace dirmbo
