#include "dirmbo/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace dirmbo {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw std::invalid_argument("negative image size");
  rgb_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < rgb_.size(); i += 3) {
    rgb_[i] = fill.r;
    rgb_[i + 1] = fill.g;
    rgb_[i + 2] = fill.b;
  }
}

Rgb Image::at(int x, int y) const {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  return {rgb_[i], rgb_[i + 1], rgb_[i + 2]};
}

void Image::set(int x, int y, Rgb c) {
  const auto i = (static_cast<std::size_t>(y) * width_ + x) * 3;
  rgb_[i] = c.r;
  rgb_[i + 1] = c.g;
  rgb_[i + 2] = c.b;
}

std::string Image::to_ppm() const {
  std::string out = "P6\n" + std::to_string(width_) + " " + std::to_string(height_) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb_.data()), rgb_.size());
  return out;
}

void Image::write_ppm(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const auto s = to_ppm();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

Image Image::hstack(std::span<const Image> images, int gap) {
  int width = 0, height = 0;
  for (const auto& im : images) {
    width += im.width();
    height = std::max(height, im.height());
  }
  if (!images.empty()) width += gap * static_cast<int>(images.size() - 1);
  Image out(width, height);
  int x0 = 0;
  for (const auto& im : images) {
    for (int y = 0; y < im.height(); ++y)
      for (int x = 0; x < im.width(); ++x) out.set(x0 + x, y, im.at(x, y));
    x0 += im.width() + gap;
  }
  return out;
}

namespace {

const TorusDomain& torus_of(const Labeling& labels, int dim_lo, int dim_hi) {
  const auto& d = *labels.domain();
  if (!d.is_torus() || d.dim() < dim_lo || d.dim() > dim_hi)
    throw DomainMismatch("renderer got a labeling on the wrong kind of domain");
  return d.torus();
}

int snap_plane(const TorusDomain& t, double position) {
  if (!(position >= -0.5 * t.length() && position < 0.5 * t.length()))
    throw std::invalid_argument("slice position outside [-L/2, L/2)");
  const long i = std::lround((position + 0.5 * t.length()) / t.spacing());
  return static_cast<int>(i % t.n());
}

// 2d cut of a torus labeling: index holds the fixed coordinates, axes cols
// and rows vary.
Image cut(const Labeling& labels, std::array<int, TorusDomain::kMaxDim> index, int cols, int rows) {
  const auto& t = labels.domain()->torus();
  const int n = t.n();
  Image im(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      index[cols] = i;
      index[rows] = j;
      im.set(i, n - 1 - j, label_color(labels[t.ravel(index)]));
    }
  return im;
}

}  // namespace

Image render_torus2(const Labeling& labels, int extend, bool draw_box) {
  const auto& t = torus_of(labels, 2, 2);
  if (extend < 1) throw std::invalid_argument("extend must be >= 1");
  const int n = t.n();
  const int size = n * extend;
  Image im(size, size);
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y)
      im.set(x, size - 1 - y, label_color(labels[t.ravel({x % n, y % n, 0, 0})]));
  if (draw_box && extend > 1) {
    const int lo = (extend / 2) * n;
    const int hi = lo + n - 1;
    for (int s = lo; s <= hi; ++s) {
      im.set(s, size - 1 - lo, kBoundary);
      im.set(s, size - 1 - hi, kBoundary);
      im.set(lo, size - 1 - s, kBoundary);
      im.set(hi, size - 1 - s, kBoundary);
    }
  }
  return im;
}

std::vector<double> default_slice_positions(double length) {
  std::vector<double> p(8);
  for (int j = 0; j < 8; ++j) p[j] = -0.5 * length + j * length / 8.0;
  return p;
}

Slices render_slices(const Labeling& labels, int axis, std::span<const double> positions) {
  const auto& t = torus_of(labels, 3, 4);
  if (axis < 0 || axis >= t.dim()) throw std::invalid_argument("slice axis out of range");
  Slices out;
  out.axis = axis;
  out.requested = positions.empty() ? default_slice_positions(t.length())
                                    : std::vector<double>(positions.begin(), positions.end());
  std::vector<int> rest;
  for (int a = 0; a < t.dim(); ++a)
    if (a != axis) rest.push_back(a);

  for (double p : out.requested) {
    const int plane = snap_plane(t, p);
    out.plane_index.push_back(plane);
    out.snapped.push_back(t.coordinate(plane));
    std::array<int, TorusDomain::kMaxDim> index{};
    index[axis] = plane;
    if (t.dim() == 3) {
      out.images.push_back(cut(labels, index, rest[0], rest[1]));
      continue;
    }
    std::vector<Image> row;
    for (double q : out.requested) {
      index[rest[2]] = snap_plane(t, q);
      row.push_back(cut(labels, index, rest[0], rest[1]));
    }
    out.images.push_back(Image::hstack(row));
  }
  return out;
}

Image render_sphere(const Labeling& labels) {
  const auto& d = *labels.domain();
  if (!d.is_sphere()) throw DomainMismatch("render_sphere needs a sphere labeling");
  const auto& s = d.sphere();
  Image im(s.n_phi(), s.n_theta());
  for (int i = 0; i < s.n_theta(); ++i)
    for (int j = 0; j < s.n_phi(); ++j)
      im.set(j, i, label_color(labels[static_cast<std::size_t>(i) * s.n_phi() + j]));
  return im;
}

Image render_sphere_view(const Labeling& labels, SphereView view, int size) {
  const auto& d = *labels.domain();
  if (!d.is_sphere()) throw DomainMismatch("render_sphere_view needs a sphere labeling");
  if (size < 2) throw std::invalid_argument("view size must be >= 2");
  const auto& s = d.sphere();
  const auto nodes = s.theta_nodes();
  Image im(size, size);
  for (int py = 0; py < size; ++py)
    for (int px = 0; px < size; ++px) {
      const double u = 2.0 * (px + 0.5) / size - 1.0;
      const double v = 1.0 - 2.0 * (py + 0.5) / size;
      const double r2 = u * u + v * v;
      if (r2 > 1.0) continue;
      const double w = std::sqrt(1.0 - r2);
      double x, y, z;
      switch (view) {
        case SphereView::Vertical: x = u, y = v, z = w; break;
        case SphereView::Front: x = u, y = w, z = v; break;
        default: x = w, y = u, z = v; break;
      }
      const double theta = std::acos(std::clamp(z, -1.0, 1.0));
      double phi = std::atan2(x, y);
      if (phi < 0.0) phi += 2.0 * std::numbers::pi;
      auto it = std::lower_bound(nodes.begin(), nodes.end(), theta);
      auto i = static_cast<std::size_t>(it - nodes.begin());
      if (i == nodes.size() || (i > 0 && theta - nodes[i - 1] < nodes[i] - theta)) --i;
      const long j = std::lround(phi / (2.0 * std::numbers::pi) * s.n_phi()) % s.n_phi();
      im.set(px, py, label_color(labels[i * static_cast<std::size_t>(s.n_phi()) + static_cast<std::size_t>(j)]));
    }
  return im;
}

}  // namespace dirmbo
