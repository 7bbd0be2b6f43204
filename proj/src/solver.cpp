#include "dirmbo/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dirmbo/kernels.hpp"

namespace dirmbo {

namespace kp = kernels::parallel;

void SolverConfig::validate() const {
  if (k < 2 || k > kMaxComponents) throw std::invalid_argument("k must be in [2, 256]");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NonConvergence: return "non_convergence";
    case SolveStatus::OscillationDetected: return "oscillation_detected";
  }
  return "unknown";
}

double normalized_energy(int k, int dim, double volume, double tau, double overlap_sum) {
  const double d = dim;
  return std::pow(volume, 2.0 / d) / std::pow(static_cast<double>(k), 1.0 + 2.0 / d) *
         (static_cast<double>(k) - overlap_sum) / tau;
}

namespace {

// Component sources for the fused diffuse-and-project pass.
struct DenseSource {
  const FieldSet& fs;
  int k() const { return fs.k(); }
  void load(int l, std::span<double> out) const {
    const auto v = fs[l].values();
    std::copy(v.begin(), v.end(), out.begin());
  }
  double inner(int l, std::span<const double> other, const kernels::Weights& w) const {
    return kp::weighted_dot(fs[l].values(), other, w);
  }
};

struct ProjectedSource {
  const ProjectedFieldSet& fs;
  int k() const { return fs.k(); }
  void load(int l, std::span<double> out) const { fs.load_component(l, out); }
  double inner(int l, std::span<const double> other, const kernels::Weights& w) const {
    return kp::masked_dot(fs.labels(), fs.values(), static_cast<Label>(l), other, w);
  }
};

struct PassResult {
  std::size_t ties = 0;
  double overlap_sum = 0.0;
};

// Diffuses every component of src and folds it into the running argmax held
// by out, so only one full-size work buffer is live at a time. Also returns
// sum_l <u_l, e^{tau Laplacian} u_l> of the input.
template <class Source>
PassResult diffuse_and_project(HeatOperator& heat, const Source& src, ProjectedFieldSet& out,
                               std::vector<double>& work, std::vector<std::uint8_t>& tie) {
  const auto& domain = *heat.domain();
  const auto w = kernels::Weights::of(domain);
  const std::size_t n = domain.size();
  work.resize(n);
  tie.resize(n);
  const kernels::ArgmaxState state{out.values(), out.labels(), tie};
  PassResult r;
  for (int l = 0; l < src.k(); ++l) {
    src.load(l, work);
    heat.apply(work);
    r.overlap_sum += src.inner(l, work, w);
    kp::argmax_update(work, static_cast<Label>(l), state);
  }
  r.ties = kp::count_flags(tie);
  return r;
}

template <class Source>
double overlap_sum(HeatOperator& heat, const Source& src, std::vector<double>& work) {
  const auto w = kernels::Weights::of(*heat.domain());
  work.resize(heat.domain()->size());
  double s = 0.0;
  for (int l = 0; l < src.k(); ++l) {
    src.load(l, work);
    heat.apply(work);
    s += src.inner(l, work, w);
  }
  return s;
}

void renormalize_in_place(ProjectedFieldSet& fs) {
  const auto norms = fs.norms_squared();
  std::vector<double> scale(norms.size());
  for (std::size_t l = 0; l < norms.size(); ++l) {
    if (!(norms[l] > 0.0)) throw EmptyComponent(static_cast<int>(l));
    scale[l] = 1.0 / std::sqrt(norms[l]);
  }
  kp::scale_by_label(fs.labels(), fs.values(), scale);
}

void check_unit_norms(const ProjectedFieldSet& fs) {
  const auto norms = fs.norms_squared();
  for (std::size_t l = 0; l < norms.size(); ++l)
    if (std::abs(norms[l] - 1.0) >= 1e-10)
      throw std::logic_error("component " + std::to_string(l) + " lost unit norm after renormalisation");
}

void require_domain(const HeatOperator& heat, const DomainPtr& d) {
  if (!same_domain(heat.domain(), d)) throw DomainMismatch("fields and heat operator live on different domains");
}

double energy_of(int k, const HeatOperator& heat, double overlap) {
  const auto& d = *heat.domain();
  return normalized_energy(k, d.dim(), d.total_volume(), heat.tau(), overlap);
}

void check_unit_norms(const std::vector<double>& norms2, double tol) {
  for (std::size_t l = 0; l < norms2.size(); ++l)
    if (std::abs(std::sqrt(norms2[l]) - 1.0) > tol)
      throw std::invalid_argument("component " + std::to_string(l) + " is not unit-normalised");
}

std::vector<double> dense_norms(const FieldSet& fs) {
  std::vector<double> out(static_cast<std::size_t>(fs.k()));
  for (int l = 0; l < fs.k(); ++l) out[l] = weighted_inner(fs[l], fs[l]);
  return out;
}

}  // namespace

ProjectResult project(const FieldSet& fs) {
  const std::size_t n = fs.domain()->size();
  std::vector<double> best(n);
  std::vector<Label> arg(n);
  std::vector<std::uint8_t> tie(n);
  const kernels::ArgmaxState state{best, arg, tie};
  for (int l = 0; l < fs.k(); ++l) kp::argmax_update(fs[l].values(), static_cast<Label>(l), state);
  ProjectedFieldSet projected(Labeling(fs.domain(), fs.k(), std::move(arg)), std::move(best));
  return {projected.expand(), kp::count_flags(tie)};
}

FieldSet renormalize(const FieldSet& fs) {
  FieldSet out = fs;
  for (int l = 0; l < out.k(); ++l) {
    const double norm2 = weighted_inner(out[l], out[l]);
    if (!(norm2 > 0.0)) throw EmptyComponent(l);
    const double s = 1.0 / std::sqrt(norm2);
    for (auto& v : out[l].values()) v *= s;
  }
  return out;
}

StepResult step(const FieldSet& fs, HeatOperator& heat) {
  require_domain(heat, fs.domain());
  ProjectedFieldSet next(fs.domain(), fs.k());
  std::vector<double> work;
  std::vector<std::uint8_t> tie;
  const auto pass = diffuse_and_project(heat, DenseSource{fs}, next, work, tie);
  renormalize_in_place(next);
  return {next.expand(), next.labeling(), pass.ties};
}

double energy_tilde(const FieldSet& fs, HeatOperator& heat) {
  require_domain(heat, fs.domain());
  check_unit_norms(dense_norms(fs), 1e-6);
  std::vector<double> work;
  return energy_of(fs.k(), heat, overlap_sum(heat, DenseSource{fs}, work));
}

double energy_tilde(const ProjectedFieldSet& fs, HeatOperator& heat) {
  require_domain(heat, fs.domain());
  check_unit_norms(fs.norms_squared(), 1e-6);
  std::vector<double> work;
  return energy_of(fs.k(), heat, overlap_sum(heat, ProjectedSource{fs}, work));
}

namespace {

template <class Source>
SolveResult run(const SolverConfig& config, const Source& init, std::vector<Label> init_labels,
                HeatOperator& heat) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const DomainPtr& domain = heat.domain();
  const int k = init.k();
  if (k != config.k) throw std::invalid_argument("initial field set has the wrong number of components");

  std::vector<double> work;
  std::vector<std::uint8_t> tie;
  std::vector<double> trace;

  ProjectedFieldSet current(domain, k);
  auto pass = diffuse_and_project(heat, init, current, work, tie);
  std::size_t ties = pass.ties;
  trace.push_back(energy_of(k, heat, pass.overlap_sum));
  renormalize_in_place(current);
  if (config.check_invariants) check_unit_norms(current);

  std::vector<Label> prev_labels = std::move(init_labels);
  std::vector<Label> prev2_labels;
  std::optional<ProjectedFieldSet> previous;
  int iterations = 1;
  SolveStatus status = SolveStatus::NonConvergence;

  auto labels_equal = [](std::span<const Label> a, std::span<const Label> b) {
    return a.size() == b.size() && kp::count_differences(a, b) == 0;
  };

  while (true) {
    if (labels_equal(current.labels(), prev_labels)) {
      status = SolveStatus::Converged;
      break;
    }
    if (!prev2_labels.empty() && labels_equal(current.labels(), prev2_labels)) {
      status = SolveStatus::OscillationDetected;
      break;
    }
    if (iterations >= config.max_iters) break;

    ProjectedFieldSet next(domain, k);
    pass = diffuse_and_project(heat, ProjectedSource{current}, next, work, tie);
    ties += pass.ties;
    trace.push_back(energy_of(k, heat, pass.overlap_sum));
    renormalize_in_place(next);
    if (config.check_invariants) check_unit_norms(next);
    ++iterations;

    prev2_labels = std::move(prev_labels);
    prev_labels.assign(current.labels().begin(), current.labels().end());
    previous = std::move(current);
    current = std::move(next);
  }

  // trace holds energies of iterates 0..iterations-1; add the last one.
  trace.push_back(energy_of(k, heat, overlap_sum(heat, ProjectedSource{current}, work)));

  if (status == SolveStatus::OscillationDetected && previous &&
      trace[trace.size() - 2] < trace.back()) {
    trace.pop_back();
    current = std::move(*previous);
  }

  std::size_t increases = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) increases += trace[i] > trace[i - 1];

  Labeling labeling = current.labeling();
  SolveResult r(std::move(current), std::move(labeling));
  r.energy = trace.back();
  r.initial_energy = trace.front();
  r.iterations = iterations;
  r.status = status;
  r.converged = status == SolveStatus::Converged;
  r.tie_count = ties;
  r.energy_increases = increases;
  if (config.energy_trace) r.energy_trace = std::move(trace);
  else r.energy_trace = {r.energy};
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<Label> argmax_labels(const FieldSet& fs) {
  const std::size_t n = fs.domain()->size();
  std::vector<double> best(n);
  std::vector<Label> arg(n);
  std::vector<std::uint8_t> tie(n);
  const kernels::ArgmaxState state{best, arg, tie};
  for (int l = 0; l < fs.k(); ++l) kp::argmax_update(fs[l].values(), static_cast<Label>(l), state);
  return arg;
}

}  // namespace

SolveResult solve(const SolverConfig& config, const ProjectedFieldSet& init, HeatOperator& heat) {
  require_domain(heat, init.domain());
  ProjectedFieldSet normalized = init;
  renormalize_in_place(normalized);
  std::vector<Label> labels(init.labels().begin(), init.labels().end());
  return run(config, ProjectedSource{normalized}, std::move(labels), heat);
}

SolveResult solve(const SolverConfig& config, const FieldSet& init, HeatOperator& heat) {
  require_domain(heat, init.domain());
  const FieldSet normalized = renormalize(init);
  return run(config, DenseSource{normalized}, argmax_labels(normalized), heat);
}

SolveResult solve(const SolverConfig& config, const FieldSet& init) {
  auto heat = make_heat_operator(init.domain(), config.tau);
  return solve(config, init, *heat);
}

SolveResult solve(const SolverConfig& config, const ProjectedFieldSet& init) {
  auto heat = make_heat_operator(init.domain(), config.tau);
  return solve(config, init, *heat);
}

}  // namespace dirmbo
