#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirmbo/experiment.hpp"

namespace dirmbo {

enum class TableId { T2d, T3d, Sphere };
enum class Scale { Paper, Small };

TableId parse_table(const std::string& s);
Scale parse_scale(const std::string& s);
const char* to_string(TableId t);
const char* to_string(Scale s);

/// One published energy together with the run that should reproduce it.
struct TableRow {
  std::string label;
  ExperimentConfig config;
  double published = 0.0;
  double tolerance = 0.0;
  /// 3d k = 2 from a random start should settle on a slab: a labeling that is
  /// constant along two axes.
  bool expect_slab = false;
};

/// Paper-scale rows use the published grid sizes; small-scale rows use
/// n = 128 (2d), n = 64 (3d) and 128 x 256 (sphere) with doubled tolerances.
std::vector<TableRow> table_rows(TableId table, Scale scale);

struct TableOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
  /// Overrides every row's trial count.
  std::optional<int> trials;
  /// Restricts the run to rows with these labels.
  std::vector<std::string> only;
  /// Receives per-row results; empty leaves the bundle in memory only.
  std::filesystem::path out;
  std::function<void(const std::string&)> log;
};

/// Runs every row and returns the comparison bundle: {table, scale, rows:
/// [{label, k, n, tau, trials, init, published, computed, tolerance, pass, ...}]}.
nlohmann::json reproduce_table(TableId table, Scale scale, const TableOptions& options);

/// Side-by-side markdown table of a reproduce_table bundle.
std::string table_markdown(const nlohmann::json& bundle);

}  // namespace dirmbo
