#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dirmbo/field.hpp"
#include "dirmbo/heat.hpp"

namespace dirmbo {

struct SolverConfig {
  int k = 2;
  double tau = 0.125;
  int max_iters = 1000;
  /// Recorded for reports; initialisation consumes it.
  std::uint64_t seed = 0;
  bool energy_trace = true;
  /// Re-check the unit-norm and axis-valued invariants after every step.
  bool check_invariants = true;

  void validate() const;
};

enum class SolveStatus {
  Converged,
  /// max_iters reached with the labeling still moving.
  NonConvergence,
  /// The labeling returned to the one from two steps earlier.
  OscillationDetected,
};

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveResult(ProjectedFieldSet f, Labeling l) : fields(std::move(f)), labeling(std::move(l)) {}

  ProjectedFieldSet fields;
  Labeling labeling;
  /// Approximate normalised energy of the returned iterate.
  double energy = 0.0;
  /// Energy of iterates 0, 1, ..., ending with the returned one.
  std::vector<double> energy_trace;
  int iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::NonConvergence;
  std::size_t tie_count = 0;
  /// Number of steps whose energy exceeded the previous iterate's.
  std::size_t energy_increases = 0;
  double initial_energy = 0.0;
  double wall_time = 0.0;
};

struct ProjectResult {
  FieldSet fields;
  std::size_t tie_count = 0;
};

/// Keeps the pointwise largest component and zeroes the rest. Ties go to the
/// lowest component index and are counted.
ProjectResult project(const FieldSet& fs);

/// Scales every component to unit weighted L2 norm. Throws EmptyComponent.
FieldSet renormalize(const FieldSet& fs);

struct StepResult {
  FieldSet fields;
  Labeling labeling;
  std::size_t tie_count = 0;
};

/// One iteration: diffuse every component, project, renormalise.
StepResult step(const FieldSet& fs, HeatOperator& heat);

/// (|U|^{2/d} / k^{1+2/d}) (k - overlap_sum) / tau.
double normalized_energy(int k, int dim, double volume, double tau, double overlap_sum);

/// Approximate normalised energy of unit-norm fields using the heat operator's tau.
double energy_tilde(const FieldSet& fs, HeatOperator& heat);
double energy_tilde(const ProjectedFieldSet& fs, HeatOperator& heat);

/// Iterates step() until the labeling stops changing, cycles with period two,
/// or max_iters is reached. The heat operator's tau is used throughout.
SolveResult solve(const SolverConfig& config, const ProjectedFieldSet& init, HeatOperator& heat);
SolveResult solve(const SolverConfig& config, const FieldSet& init, HeatOperator& heat);
/// Builds the spectral heat operator for init's domain and config.tau.
SolveResult solve(const SolverConfig& config, const FieldSet& init);
SolveResult solve(const SolverConfig& config, const ProjectedFieldSet& init);

}  // namespace dirmbo
