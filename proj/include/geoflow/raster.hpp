#ifndef GEOFLOW_RASTER_HPP
#define GEOFLOW_RASTER_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace geoflow {

// Row-major so that (row, col) indexing matches the on-disk layout of .flo and PNG.
using Plane = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BinaryPlane = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec2 = Eigen::Vector2d;
using Color = Eigen::Array3d;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// H x W x 3 color raster with channels in [0, 1].
struct Image {
  std::array<Plane, 3> channels;

  Image() = default;
  Image(int height, int width, double fill = 0.0) {
    for (auto& c : channels) c = Plane::Constant(height, width, fill);
  }

  int height() const { return static_cast<int>(channels[0].rows()); }
  int width() const { return static_cast<int>(channels[0].cols()); }

  Color at(int row, int col) const {
    return {channels[0](row, col), channels[1](row, col), channels[2](row, col)};
  }
  void set(int row, int col, const Color& c) {
    for (int k = 0; k < 3; ++k) channels[k](row, col) = c[k];
  }
  Plane gray() const { return (channels[0] + channels[1] + channels[2]) / 3.0; }

  /// Every channel finite and inside [0, 1].
  bool valid() const;
};

/// Per-pixel displacement in pixels. u moves along columns (x), v along rows (y).
struct FlowField {
  Plane u;
  Plane v;

  FlowField() = default;
  FlowField(int height, int width, double fill_u = 0.0, double fill_v = 0.0)
      : u(Plane::Constant(height, width, fill_u)), v(Plane::Constant(height, width, fill_v)) {}

  int height() const { return static_cast<int>(u.rows()); }
  int width() const { return static_cast<int>(u.cols()); }

  Vec2 at(int row, int col) const { return {u(row, col), v(row, col)}; }
  void set(int row, int col, const Vec2& d) {
    u(row, col) = d.x();
    v(row, col) = d.y();
  }

  bool finite() const { return u.allFinite() && v.allFinite(); }

  FlowField& operator+=(const FlowField& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  FlowField& operator*=(double s) {
    u *= s;
    v *= s;
    return *this;
  }
};

/// Continuous target coordinates; x is the column coordinate, y the row coordinate.
/// Values may fall outside the image rectangle.
struct CoordField {
  Plane x;
  Plane y;

  int height() const { return static_cast<int>(x.rows()); }
  int width() const { return static_cast<int>(x.cols()); }
};

/// 1 = occluded, 0 = visible.
struct OcclusionMask {
  BinaryPlane data;

  OcclusionMask() = default;
  OcclusionMask(int height, int width, std::uint8_t fill = 0)
      : data(BinaryPlane::Constant(height, width, fill)) {}

  int height() const { return static_cast<int>(data.rows()); }
  int width() const { return static_cast<int>(data.cols()); }

  bool occluded(int row, int col) const { return data(row, col) != 0; }
  bool visible(int row, int col) const { return data(row, col) == 0; }
  int visible_count() const { return static_cast<int>((data == 0).count()); }
};

inline bool Image::valid() const {
  for (const auto& c : channels) {
    if (!c.allFinite() || (c < 0.0).any() || (c > 1.0).any()) return false;
  }
  return true;
}

template <class A, class B>
void require_same_size(const A& a, const B& b, const char* what) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.height()) + "x" + std::to_string(a.width()) + " vs " +
                         std::to_string(b.height()) + "x" + std::to_string(b.width()) + ")");
  }
}

}  // namespace geoflow

#endif  // GEOFLOW_RASTER_HPP
