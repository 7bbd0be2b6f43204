#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirmbo/solver.hpp"

namespace dirmbo {

/// How the initial labeling is chosen.
struct InitSpec {
  enum class Kind { Random, SchwarzP, File } kind = Kind::Random;
  std::string path;

  /// Parses "random", "schwarz-p" or "file:<path>".
  static InitSpec parse(const std::string& text);
  std::string describe() const;
};

struct ExperimentConfig {
  /// torus2, torus3, torus4 or sphere.
  std::string domain_kind = "torus2";
  int n = 128;
  int k = 2;
  double tau = 0.125;
  double length = 2.0;
  std::uint64_t seed = 0;
  int trials = 1;
  int max_iters = 1000;
  InitSpec init;
  /// Trials run concurrently on at most this many workers.
  int jobs = 1;
  bool check_invariants = true;
};

/// torus<d> with n points per axis, or the sphere with n_theta = n,
/// n_phi = 2n and lmax = n - 1.
DomainPtr make_domain(const std::string& kind, int n, double length = 2.0);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  /// Component index when the trial failed with EmptyComponent.
  std::optional<int> empty_component;
  double energy = 0.0;
  double initial_energy = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;
  std::size_t tie_count = 0;
  std::size_t energy_increases = 0;
  double wall_time = 0.0;
  std::vector<double> energy_trace;
};

struct ExperimentOutcome {
  DomainPtr domain;
  /// Sorted by trial index (equivalently by seed).
  std::vector<TrialRecord> trials;
  /// Index into trials of the lowest-energy successful trial.
  std::optional<int> best_trial;
  std::optional<SolveResult> best;
};

using ProgressFn = std::function<void(const TrialRecord&)>;

/// Runs config.trials solves with seeds seed, seed + 1, ... and keeps the
/// lowest-energy result; ties go to the lower trial index, so the outcome does
/// not depend on scheduling.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Machine-readable run report (see schemas/report.schema.json).
nlohmann::json make_report(const ExperimentConfig& config, const ExperimentOutcome& outcome);

/// One-line description of the quadrature used on a domain.
std::string quadrature_note(const Domain& domain);

/// Warning text for runs expected to take many minutes or a lot of memory,
/// or empty.
std::string resource_warning(const ExperimentConfig& config);

}  // namespace dirmbo
