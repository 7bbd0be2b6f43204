#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dirmbo/field.hpp"

namespace dirmbo {

struct Rgb {
  std::uint8_t r, g, b;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Categorical palette; label l is drawn with kPalette[l % 20].
inline constexpr std::array<Rgb, 20> kPalette{{
    {31, 119, 180},  {255, 127, 14},  {44, 160, 44},   {214, 39, 40},   {148, 103, 189},
    {140, 86, 75},   {227, 119, 194}, {127, 127, 127}, {188, 189, 34},  {23, 190, 207},
    {174, 199, 232}, {255, 187, 120}, {152, 223, 138}, {255, 152, 150}, {197, 176, 213},
    {196, 156, 148}, {247, 182, 210}, {199, 199, 199}, {219, 219, 141}, {158, 218, 229},
}};

inline constexpr Rgb kBoundary{0, 0, 0};
inline constexpr Rgb kBackground{255, 255, 255};

inline Rgb label_color(Label l) { return kPalette[l % kPalette.size()]; }

/// 8-bit RGB raster, row 0 at the top.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = kBackground);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int x, int y) const;
  void set(int x, int y, Rgb c);
  std::span<const std::uint8_t> bytes() const { return rgb_; }

  /// Binary PPM (P6).
  std::string to_ppm() const;
  void write_ppm(const std::filesystem::path& path) const;

  /// Places images left to right separated by gap background columns.
  static Image hstack(std::span<const Image> images, int gap = 2);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> rgb_;
};

/// One pixel per grid point; x1 runs left to right, x2 bottom to top. With
/// extend > 1 the labeling is tiled extend times per axis; draw_box outlines
/// the central copy.
Image render_torus2(const Labeling& labels, int extend = 1, bool draw_box = false);

/// Eight evenly spaced positions -L/2, -L/2 + L/8, ..., 3L/8.
std::vector<double> default_slice_positions(double length);

struct Slices {
  int axis = 0;
  std::vector<double> requested;
  /// Coordinates of the grid planes actually drawn.
  std::vector<double> snapped;
  std::vector<int> plane_index;
  std::vector<Image> images;
};

/// Cuts a 3d or 4d torus labeling perpendicular to axis at each position,
/// snapping to the nearest grid plane. For d = 3 each image is the 2d cut;
/// for d = 4 each image is a montage of the 3d cut's own slices along its
/// last remaining axis, taken at the same positions. Empty positions select
/// default_slice_positions.
Slices render_slices(const Labeling& labels, int axis, std::span<const double> positions = {});

/// Equirectangular map, n_phi wide and n_theta tall, theta increasing downward.
Image render_sphere(const Labeling& labels);

enum class SphereView { Vertical, Front, Side };

/// Orthographic disc of the sphere seen from +z (Vertical), +y (Front) or +x (Side).
Image render_sphere_view(const Labeling& labels, SphereView view, int size = 256);

}  // namespace dirmbo
