#pragma once

#include <vector>

#include "dirmbo/field.hpp"

namespace dirmbo {

/// Torus axes along which the labeling does not vary.
std::vector<int> constant_axes(const Labeling& labels);

/// Quadrature-weighted measure of every label's region.
std::vector<double> region_volumes(const Labeling& labels);

/// (max - min) / mean of the nonempty region volumes.
double volume_spread(const Labeling& labels);

/// Relabels every connected piece of every region (face neighbours with
/// periodic wraparound) with its own label, numbered in order of first
/// appearance. Throws when there are more than 256 pieces.
Labeling connected_regions(const Labeling& labels);

}  // namespace dirmbo
