#include "dirmbo/field.hpp"

#include <cmath>
#include <string>

#include "dirmbo/kernels.hpp"

namespace dirmbo {

EmptyComponent::EmptyComponent(int component)
    : std::runtime_error("component " + std::to_string(component) +
                         " has no grid points left; reduce tau or k, or refine the grid"),
      component_(component) {}

ScalarField::ScalarField(DomainPtr domain) : domain_(std::move(domain)) {
  if (!domain_) throw std::invalid_argument("field needs a domain");
  values_.assign(domain_->size(), 0.0);
}

ScalarField::ScalarField(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_) throw std::invalid_argument("field needs a domain");
  if (values_.size() != domain_->size())
    throw std::invalid_argument("field size does not match the domain point count");
}

FieldSet::FieldSet(DomainPtr domain, int k) : domain_(std::move(domain)) {
  if (k < 2) throw std::invalid_argument("a field set needs k >= 2");
  fields_.reserve(static_cast<std::size_t>(k));
  for (int l = 0; l < k; ++l) fields_.emplace_back(domain_);
}

FieldSet::FieldSet(std::vector<ScalarField> fields) : fields_(std::move(fields)) {
  if (fields_.size() < 2) throw std::invalid_argument("a field set needs k >= 2");
  domain_ = fields_.front().domain();
  for (const auto& f : fields_)
    if (!same_domain(f.domain(), domain_)) throw DomainMismatch("field set mixes domains");
}

Labeling::Labeling(DomainPtr domain, int k) : domain_(std::move(domain)), k_(k) {
  if (!domain_) throw std::invalid_argument("labeling needs a domain");
  if (k < 1 || k > kMaxComponents) throw std::invalid_argument("label count out of range");
  labels_.assign(domain_->size(), 0);
}

Labeling::Labeling(DomainPtr domain, int k, std::vector<Label> labels)
    : domain_(std::move(domain)), k_(k), labels_(std::move(labels)) {
  if (!domain_) throw std::invalid_argument("labeling needs a domain");
  if (k < 1 || k > kMaxComponents) throw std::invalid_argument("label count out of range");
  if (labels_.size() != domain_->size())
    throw std::invalid_argument("labeling size does not match the domain point count");
  for (auto l : labels_)
    if (l >= k) throw std::invalid_argument("label " + std::to_string(l) + " >= k");
}

std::vector<std::size_t> Labeling::counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(k_), 0);
  for (auto l : labels_) ++c[l];
  return c;
}

ProjectedFieldSet::ProjectedFieldSet(DomainPtr domain, int k) : domain_(std::move(domain)), k_(k) {
  if (!domain_) throw std::invalid_argument("field set needs a domain");
  if (k < 2 || k > kMaxComponents) throw std::invalid_argument("component count out of range");
  labels_.assign(domain_->size(), 0);
  values_.assign(domain_->size(), 0.0);
}

ProjectedFieldSet::ProjectedFieldSet(Labeling labeling, std::vector<double> values)
    : domain_(labeling.domain()), k_(labeling.k()), values_(std::move(values)) {
  if (k_ < 2) throw std::invalid_argument("a field set needs k >= 2");
  if (values_.size() != labeling.size())
    throw std::invalid_argument("values and labels differ in size");
  labels_.assign(labeling.labels().begin(), labeling.labels().end());
}

Labeling ProjectedFieldSet::labeling() const {
  return Labeling(domain_, k_, labels_);
}

FieldSet ProjectedFieldSet::expand() const {
  FieldSet fs(domain_, k_);
  for (int l = 0; l < k_; ++l) load_component(l, fs[l].values());
  return fs;
}

void ProjectedFieldSet::load_component(int l, std::span<double> out) const {
  const auto target = static_cast<Label>(l);
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = labels_[i] == target ? values_[i] : 0.0;
}

std::vector<double> ProjectedFieldSet::norms_squared() const {
  std::vector<double> out(static_cast<std::size_t>(k_));
  kernels::parallel::masked_norms(labels_, values_, kernels::Weights::of(*domain_), out);
  return out;
}

double weighted_inner(const ScalarField& a, const ScalarField& b) {
  if (!same_domain(a.domain(), b.domain())) throw DomainMismatch("inner product across domains");
  return kernels::parallel::weighted_dot(a.values(), b.values(), kernels::Weights::of(*a.domain()));
}

std::size_t labeling_distance(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size() || !same_domain(a.domain(), b.domain()))
    throw DomainMismatch("labelings live on different grids");
  if (a.k() != b.k()) throw std::invalid_argument("labelings have different component counts");
  return kernels::parallel::count_differences(a.labels(), b.labels());
}

namespace {

template <class T>
std::vector<T> tile(const TorusDomain& small, const TorusDomain& big, std::span<const T> in) {
  std::vector<T> out(big.size());
  const int n = small.n();
  const auto count = static_cast<std::ptrdiff_t>(big.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto index = big.unravel(static_cast<std::size_t>(i));
    for (int a = 0; a < big.dim(); ++a) index[a] %= n;
    out[i] = in[small.ravel(index)];
  }
  return out;
}

DomainPtr tiled_domain(const Domain& d, int m) {
  if (!d.is_torus()) throw DomainMismatch("periodic extension needs a torus domain");
  if (m < 1) throw std::invalid_argument("extension factor must be >= 1");
  const auto& t = d.torus();
  return make_torus(t.dim(), t.n() * m, t.length() * m);
}

}  // namespace

Labeling periodic_extend(const Labeling& l, int m) {
  auto big = tiled_domain(*l.domain(), m);
  if (m == 1) return l;
  return Labeling(big, l.k(), tile<Label>(l.domain()->torus(), big->torus(), l.labels()));
}

ScalarField periodic_extend(const ScalarField& f, int m) {
  auto big = tiled_domain(*f.domain(), m);
  if (m == 1) return f;
  return ScalarField(big, tile<double>(f.domain()->torus(), big->torus(), f.values()));
}

ProjectedFieldSet indicator_fields(const Labeling& labels) {
  std::vector<double> values(labels.size(), 1.0);
  ProjectedFieldSet fs(labels, std::move(values));
  const auto norms = fs.norms_squared();
  std::vector<double> scale(norms.size());
  for (std::size_t l = 0; l < norms.size(); ++l) {
    if (!(norms[l] > 0.0)) throw EmptyComponent(static_cast<int>(l));
    scale[l] = 1.0 / std::sqrt(norms[l]);
  }
  kernels::parallel::scale_by_label(fs.labels(), fs.values(), scale);
  return fs;
}

}  // namespace dirmbo
