#include "dirmbo/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace dirmbo {

std::vector<int> constant_axes(const Labeling& labels) {
  const auto& d = *labels.domain();
  if (!d.is_torus()) throw DomainMismatch("constant_axes needs a torus labeling");
  const auto& t = d.torus();
  std::vector<int> out;
  for (int a = 0; a < t.dim(); ++a) {
    bool constant = true;
    for (std::size_t i = 0; i < labels.size() && constant; ++i) {
      auto idx = t.unravel(i);
      if (idx[a] == 0) continue;
      idx[a] = 0;
      constant = labels[i] == labels[t.ravel(idx)];
    }
    if (constant) out.push_back(a);
  }
  return out;
}

std::vector<double> region_volumes(const Labeling& labels) {
  const auto& d = *labels.domain();
  std::vector<double> v(static_cast<std::size_t>(labels.k()), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) v[labels[i]] += d.weight(i);
  return v;
}

double volume_spread(const Labeling& labels) {
  std::vector<double> v;
  for (double x : region_volumes(labels))
    if (x > 0.0) v.push_back(x);
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (*hi - *lo) / mean;
}

Labeling connected_regions(const Labeling& labels) {
  const auto& d = *labels.domain();
  if (!d.is_torus()) throw DomainMismatch("connected_regions needs a torus labeling");
  const auto& t = d.torus();
  const std::size_t n = labels.size();
  constexpr int kUnset = -1;
  std::vector<int> piece(n, kUnset);
  std::vector<std::size_t> stack;
  int count = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (piece[seed] != kUnset) continue;
    if (count == kMaxComponents) throw std::runtime_error("more than 256 connected regions");
    piece[seed] = count;
    stack.push_back(seed);
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      const auto idx = t.unravel(i);
      for (int a = 0; a < t.dim(); ++a)
        for (int step : {-1, 1}) {
          auto nb = idx;
          nb[a] = (nb[a] + step + t.n()) % t.n();
          const auto j = t.ravel(nb);
          if (piece[j] == kUnset && labels[j] == labels[i]) {
            piece[j] = count;
            stack.push_back(j);
          }
        }
    }
    ++count;
  }
  std::vector<Label> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Label>(piece[i]);
  return Labeling(labels.domain(), std::max(count, 1), std::move(out));
}

}  // namespace dirmbo
