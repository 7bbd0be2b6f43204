#pragma once

// Label export format: <name>.bin holds one unsigned byte per grid point in
// the domain's linearisation, and <name>.json beside it describes the grid:
//   torus:  {"domain_kind": "torus", "d", "n", "k", "length"}
//   sphere: {"domain_kind": "sphere", "d": 2, "n_theta", "n_phi", "lmax", "k"}

#include <filesystem>

#include <json.hpp>

#include "dirmbo/field.hpp"

namespace dirmbo {

nlohmann::json domain_sidecar(const Domain& domain);
nlohmann::json label_sidecar(const Labeling& labels);
DomainPtr domain_from_sidecar(const nlohmann::json& sidecar);

/// Sidecar path for a label file: same stem, .json extension.
std::filesystem::path sidecar_path(const std::filesystem::path& bin);

/// Writes the binary labels and the JSON sidecar.
void write_labels(const Labeling& labels, const std::filesystem::path& bin);

/// Reads a label file and its sidecar. Throws std::runtime_error on a
/// malformed or inconsistent pair.
Labeling read_labels(const std::filesystem::path& bin);

/// One row per point: index, coordinates, label.
void write_labels_csv(const Labeling& labels, const std::filesystem::path& csv);

}  // namespace dirmbo
