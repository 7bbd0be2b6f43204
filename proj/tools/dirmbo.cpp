// Command-line driver: single experiments with trial batches, label export,
// rendering, and table reproduction.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirmbo/experiment.hpp"
#include "dirmbo/label_io.hpp"
#include "dirmbo/render.hpp"
#include "dirmbo/tables.hpp"
#include "dirmbo/threads.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string domain;
  int n = 0;
  int k = 0;
  double tau = 0.0;
  double length = 2.0;
  std::uint64_t seed = 0;
  int trials = 1;
  int max_iters = 1000;
  std::string init = "random";
  std::string out = "run";
  std::vector<std::string> render;
  int jobs = 1;
  std::string table;
  std::string scale = "paper";
  std::vector<std::string> only;
  bool csv = false;
  bool check = false;
};

void log(const std::string& s) { std::cerr << s << std::endl; }

json render_outputs(const Options& opt, const dirmbo::Labeling& labels, const fs::path& dir) {
  json renders = json::array();
  const auto& d = *labels.domain();
  for (const auto& r : opt.render) {
    const auto eq = r.find('=');
    const std::string key = r.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : r.substr(eq + 1);
    if (key == "extend") {
      if (!d.is_torus() || d.dim() != 2) throw std::invalid_argument("--render extend=<m> needs --domain torus2");
      const int m = value.empty() ? 1 : std::stoi(value);
      const auto name = "torus2_x" + std::to_string(m) + ".ppm";
      dirmbo::render_torus2(labels, m, m > 1).write_ppm(dir / name);
      renders.push_back({{"kind", "torus2"}, {"extend", m}, {"file", name}});
    } else if (key == "slices") {
      if (!d.is_torus() || d.dim() < 3) throw std::invalid_argument("--render slices=<axis> needs torus3 or torus4");
      const int axis = value.empty() ? 0 : std::stoi(value);
      const auto s = dirmbo::render_slices(labels, axis);
      json files = json::array();
      for (std::size_t i = 0; i < s.images.size(); ++i) {
        const auto name = "slices_axis" + std::to_string(axis) + "_" + std::to_string(i) + ".ppm";
        s.images[i].write_ppm(dir / name);
        files.push_back(name);
      }
      renders.push_back({{"kind", "slices"},
                         {"axis", axis},
                         {"requested", s.requested},
                         {"snapped", s.snapped},
                         {"plane_index", s.plane_index},
                         {"files", files}});
    } else if (key == "sphere") {
      if (!d.is_sphere()) throw std::invalid_argument("--render sphere needs --domain sphere");
      dirmbo::render_sphere(labels).write_ppm(dir / "sphere.ppm");
      const std::pair<dirmbo::SphereView, const char*> views[] = {{dirmbo::SphereView::Vertical, "vertical"},
                                                                  {dirmbo::SphereView::Front, "front"},
                                                                  {dirmbo::SphereView::Side, "side"}};
      json files = {"sphere.ppm"};
      for (const auto& [view, name] : views) {
        const auto file = std::string("sphere_") + name + ".ppm";
        dirmbo::render_sphere_view(labels, view).write_ppm(dir / file);
        files.push_back(file);
      }
      renders.push_back({{"kind", "sphere"}, {"files", files}});
    } else {
      throw std::invalid_argument("--render takes extend=<m>, slices=<axis> or sphere, got '" + r + "'");
    }
  }
  return renders;
}

int run_table(const Options& opt) {
  const auto table = dirmbo::parse_table(opt.table);
  const auto scale = dirmbo::parse_scale(opt.scale);
  dirmbo::TableOptions to;
  to.seed = opt.seed;
  to.jobs = opt.jobs;
  to.only = opt.only;
  to.out = fs::path(opt.out) / (std::string(dirmbo::to_string(table)) + "-" + dirmbo::to_string(scale));
  to.log = log;
  const auto bundle = dirmbo::reproduce_table(table, scale, to);
  fs::create_directories(to.out);
  std::ofstream(to.out / "table.json") << bundle.dump(2) << '\n';
  const auto md = dirmbo::table_markdown(bundle);
  std::ofstream(to.out / "table.md") << md;
  std::cout << md << bundle.at("passed") << "/" << bundle.at("total") << " rows within tolerance\n";
  return 0;
}

int run_single(const Options& opt, const CLI::App& app) {
  for (const char* flag : {"--domain", "--n", "--k", "--tau"})
    if (app.count(flag) == 0) throw std::invalid_argument(std::string(flag) + " is required without --table");

  dirmbo::ExperimentConfig cfg;
  cfg.domain_kind = opt.domain;
  cfg.n = opt.n;
  cfg.k = opt.k;
  cfg.tau = opt.tau;
  cfg.length = opt.length;
  cfg.seed = opt.seed;
  cfg.trials = opt.trials;
  cfg.max_iters = opt.max_iters;
  cfg.init = dirmbo::InitSpec::parse(opt.init);
  cfg.jobs = opt.jobs;
  cfg.check_invariants = opt.check;
  if (const auto w = dirmbo::resource_warning(cfg); !w.empty()) log("warning: " + w);

  const auto outcome = dirmbo::run_experiment(cfg, [](const dirmbo::TrialRecord& t) {
    if (t.ok)
      std::cerr << "trial " << t.trial << " seed " << t.seed << ": E=" << t.energy << " iterations=" << t.iterations
                << " " << t.status << " ties=" << t.tie_count << " (" << t.wall_time << " s)" << std::endl;
    else
      std::cerr << "trial " << t.trial << " failed: " << t.error << std::endl;
  });

  const fs::path dir(opt.out);
  fs::create_directories(dir);
  auto report = dirmbo::make_report(cfg, outcome);
  for (const auto& w : report.at("warnings")) log("warning: " + w.get<std::string>());
  if (outcome.best) {
    const auto& labels = outcome.best->labeling;
    dirmbo::write_labels(labels, dir / "labels.bin");
    if (opt.csv) dirmbo::write_labels_csv(labels, dir / "labels.csv");
    report["renders"] = render_outputs(opt, labels, dir);
  }
  std::ofstream(dir / "report.json") << report.dump(2) << '\n';

  if (!outcome.best_trial) {
    log("error: every trial failed; see " + (dir / "report.json").string());
    return 2;
  }
  const auto& best = outcome.trials[*outcome.best_trial];
  std::cout << "best trial " << best.trial << " (seed " << best.seed << "): E~ = " << best.energy << ", "
            << best.iterations << " iterations, " << best.status << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet partitions of flat tori and the sphere by diffusion-generated projection"};
  Options opt;
  app.add_option("--domain", opt.domain, "torus2, torus3, torus4 or sphere")
      ->check(CLI::IsMember({"torus2", "torus3", "torus4", "sphere"}));
  app.add_option("--n", opt.n, "Grid points per axis (sphere: n_theta = n, n_phi = 2n, lmax = n - 1)");
  app.add_option("--k", opt.k, "Number of partition components");
  app.add_option("--tau", opt.tau, "Diffusion time per step");
  app.add_option("--length", opt.length, "Torus side length")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed of trial 0; trial t uses seed + t")->capture_default_str();
  app.add_option("--trials", opt.trials, "Independent random starts; the lowest energy is kept")->capture_default_str();
  app.add_option("--max-iters", opt.max_iters, "Iteration cap")->capture_default_str();
  app.add_option("--init", opt.init, "random, schwarz-p or file:<labels.bin>")->capture_default_str();
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--render", opt.render, "extend=<m>, slices=<axis> or sphere (repeatable)");
  app.add_option("--jobs", opt.jobs, "Trials run concurrently")->capture_default_str();
  app.add_option("--table", opt.table, "Reproduce a table: t2d, t3d or sphere")
      ->check(CLI::IsMember({"t2d", "t3d", "sphere"}));
  app.add_option("--scale", opt.scale, "Table grid sizes: paper or small")
      ->check(CLI::IsMember({"paper", "small"}))
      ->capture_default_str();
  app.add_option("--rows", opt.only, "With --table: run only these row labels");
  app.add_flag("--csv", opt.csv, "Also write labels.csv");
  app.add_flag("--check-invariants", opt.check, "Re-check unit norms after every step");
  CLI11_PARSE(app, argc, argv);

  dirmbo::configure_threads();
  try {
    return opt.table.empty() ? run_single(opt, app) : run_table(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
