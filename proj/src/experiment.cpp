#include "dirmbo/experiment.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "dirmbo/init.hpp"
#include "dirmbo/label_io.hpp"

namespace dirmbo {

InitSpec InitSpec::parse(const std::string& text) {
  if (text == "random") return {Kind::Random, {}};
  if (text == "schwarz-p") return {Kind::SchwarzP, {}};
  if (text.rfind("file:", 0) == 0 && text.size() > 5) return {Kind::File, text.substr(5)};
  throw std::invalid_argument("--init must be random, schwarz-p or file:<path>, got '" + text + "'");
}

std::string InitSpec::describe() const {
  switch (kind) {
    case Kind::Random: return "random";
    case Kind::SchwarzP: return "schwarz-p";
    case Kind::File: return "file:" + path;
  }
  return "unknown";
}

DomainPtr make_domain(const std::string& kind, int n, double length) {
  if (kind == "torus2") return make_torus(2, n, length);
  if (kind == "torus3") return make_torus(3, n, length);
  if (kind == "torus4") return make_torus(4, n, length);
  if (kind == "sphere") return make_sphere(n, 2 * n, n - 1);
  throw std::invalid_argument("unknown domain '" + kind + "' (expected torus2, torus3, torus4 or sphere)");
}

std::string quadrature_note(const Domain& domain) {
  if (domain.is_torus())
    return "periodic trapezoid rule on a node-centred grid x_i = -L/2 + i L/n; FFT heat multiplier";
  const auto& s = domain.sphere();
  return "Gauss-Legendre nodes in cos(theta) (" + std::to_string(s.n_theta()) + ") x uniform azimuth (" +
         std::to_string(s.n_phi()) + "), band limit " + std::to_string(s.lmax()) +
         "; differs from a uniform theta-phi grid";
}

std::string resource_warning(const ExperimentConfig& config) {
  const auto domain = make_domain(config.domain_kind, config.n, config.length);
  const double points = static_cast<double>(domain->size());
  const bool heavy = (domain->is_torus() && domain->dim() == 4) ||
                     (domain->is_torus() && points >= 128.0 * 128 * 128) ||
                     (domain->is_sphere() && config.n >= 256);
  if (!heavy) return {};
  std::ostringstream os;
  os << "large run: " << domain->describe() << " has " << static_cast<std::size_t>(points)
     << " points; each iteration diffuses " << config.k << " fields (" << config.trials
     << " trial(s)); expect minutes to hours and about " << static_cast<int>(points * 33.0 / (1 << 20))
     << " MiB per concurrent trial";
  return os.str();
}

namespace {

Labeling initial_labels(const ExperimentConfig& config, const DomainPtr& domain, std::uint64_t seed) {
  switch (config.init.kind) {
    case InitSpec::Kind::Random: return random_voronoi_labels(domain, config.k, seed);
    case InitSpec::Kind::SchwarzP:
      if (config.k != 2) throw std::invalid_argument("the Schwarz-P initialisation needs k = 2");
      return schwarz_p_labels(domain);
    case InitSpec::Kind::File: {
      auto stored = read_labels(config.init.path);
      if (!same_domain(stored.domain(), domain))
        throw DomainMismatch(config.init.path + " was written for " + stored.domain()->describe() + ", run uses " +
                             domain->describe());
      for (auto l : stored.labels())
        if (l >= config.k) throw std::invalid_argument(config.init.path + ": label >= k");
      return Labeling(domain, config.k, {stored.labels().begin(), stored.labels().end()});
    }
  }
  throw std::logic_error("unhandled init kind");
}

TrialRecord run_trial(const ExperimentConfig& config, const DomainPtr& domain, HeatOperator& heat, int trial,
                      std::optional<SolveResult>& result) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = config.seed + static_cast<std::uint64_t>(trial);
  SolverConfig sc;
  sc.k = config.k;
  sc.tau = config.tau;
  sc.max_iters = config.max_iters;
  sc.seed = rec.seed;
  sc.check_invariants = config.check_invariants;
  try {
    const auto init = indicator_fields(initial_labels(config, domain, rec.seed));
    auto r = solve(sc, init, heat);
    rec.ok = true;
    rec.energy = r.energy;
    rec.initial_energy = r.initial_energy;
    rec.iterations = r.iterations;
    rec.converged = r.converged;
    rec.status = to_string(r.status);
    rec.tie_count = r.tie_count;
    rec.energy_increases = r.energy_increases;
    rec.wall_time = r.wall_time;
    rec.energy_trace = r.energy_trace;
    result = std::move(r);
  } catch (const EmptyComponent& e) {
    rec.error = std::string(e.what()) + " (seed " + std::to_string(rec.seed) + ")";
    rec.empty_component = e.component();
    rec.status = "empty_component";
  } catch (const std::exception& e) {
    rec.error = std::string(e.what()) + " (seed " + std::to_string(rec.seed) + ")";
    rec.status = "error";
  }
  return rec;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, const ProgressFn& progress) {
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  SolverConfig{.k = config.k, .tau = config.tau, .max_iters = config.max_iters}.validate();

  ExperimentOutcome out;
  out.domain = make_domain(config.domain_kind, config.n, config.length);
  out.trials.resize(static_cast<std::size_t>(config.trials));

  std::mutex mu;
  std::atomic<int> next{0};
  auto worker = [&] {
    auto heat = make_heat_operator(out.domain, config.tau);
    for (int t = next++; t < config.trials; t = next++) {
      std::optional<SolveResult> result;
      auto rec = run_trial(config, out.domain, *heat, t, result);
      std::lock_guard lock(mu);
      if (rec.ok) {
        const bool better = !out.best_trial || rec.energy < out.trials[*out.best_trial].energy ||
                            (rec.energy == out.trials[*out.best_trial].energy && t < *out.best_trial);
        if (better) {
          out.best_trial = t;
          out.best = std::move(result);
        }
      }
      if (progress) progress(rec);
      out.trials[static_cast<std::size_t>(t)] = std::move(rec);
    }
  };

  const int workers = std::min(config.jobs, config.trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return out;
}

nlohmann::json make_report(const ExperimentConfig& config, const ExperimentOutcome& outcome) {
  using nlohmann::json;
  json seeds = json::array();
  for (int t = 0; t < config.trials; ++t) seeds.push_back(config.seed + static_cast<std::uint64_t>(t));

  json domain = domain_sidecar(*outcome.domain);
  domain["points"] = outcome.domain->size();
  domain["description"] = outcome.domain->describe();

  json trials = json::array();
  for (const auto& t : outcome.trials) {
    json j{{"trial", t.trial},
           {"seed", t.seed},
           {"ok", t.ok},
           {"status", t.status},
           {"energy", t.ok ? json(t.energy) : json(nullptr)},
           {"initial_energy", t.ok ? json(t.initial_energy) : json(nullptr)},
           {"iterations", t.iterations},
           {"converged", t.converged},
           {"tie_count", t.tie_count},
           {"energy_increases", t.energy_increases},
           {"wall_time", t.wall_time},
           {"energy_trace", t.energy_trace}};
    if (!t.error.empty()) j["error"] = t.error;
    if (t.empty_component) j["empty_component"] = *t.empty_component;
    trials.push_back(std::move(j));
  }

  json warnings = json::array();
  for (const auto& t : outcome.trials) {
    if (t.ok && t.energy_increases > 0)
      warnings.push_back("trial " + std::to_string(t.trial) + ": energy increased on " +
                         std::to_string(t.energy_increases) + " step(s)");
    if (t.ok && t.energy > t.initial_energy)
      warnings.push_back("trial " + std::to_string(t.trial) + ": final energy exceeds the initial energy");
    if (t.ok && !t.converged) warnings.push_back("trial " + std::to_string(t.trial) + ": " + t.status);
  }
  if (const auto w = resource_warning(config); !w.empty()) warnings.push_back(w);

  json report{{"software", {{"name", "dirmbo"}, {"version", DIRMBO_VERSION}}},
              {"config",
               {{"domain", config.domain_kind},
                {"n", config.n},
                {"k", config.k},
                {"tau", config.tau},
                {"length", config.length},
                {"seed", config.seed},
                {"seeds", seeds},
                {"trials", config.trials},
                {"max_iters", config.max_iters},
                {"init", config.init.describe()},
                {"jobs", config.jobs}}},
              {"domain", domain},
              {"quadrature", quadrature_note(*outcome.domain)},
              {"trials", trials},
              {"best_trial", outcome.best_trial ? json(*outcome.best_trial) : json(nullptr)},
              {"best_energy", outcome.best_trial ? json(outcome.trials[*outcome.best_trial].energy) : json(nullptr)},
              {"warnings", warnings}};
  return report;
}

}  // namespace dirmbo
