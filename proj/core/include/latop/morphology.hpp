#pragma once

// Binary images and the elementary lattice operators on them.
//
// Sign conventions: erode(x, a) at p reads x at p+v for v in a, and so does
// dilate. With this pairing the adjunction reads
//     dilate(x, a) ⊆ y  <=>  x ⊆ erode(y, reflect(a)).

#include <cstdint>
#include <vector>

#include "latop/lattice.hpp"

namespace latop {

class BooleanFunctionTable;

enum class Boundary {
  ZeroPad,   // reads outside the grid return 0
  Toroidal,  // indices wrap; translations form an Abelian group
};

const char* to_string(Boundary b);
Boundary parse_boundary(std::string_view text);

class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int height, int width, Boundary boundary = Boundary::ZeroPad);
  BinaryImage(int height, int width, std::vector<std::uint8_t> pixels,
              Boundary boundary = Boundary::ZeroPad);

  static BinaryImage filled(int height, int width, bool value, Boundary boundary = Boundary::ZeroPad);

  int height() const { return height_; }
  int width() const { return width_; }
  Boundary boundary() const { return boundary_; }
  std::size_t pixel_count() const { return pixels_.size(); }

  bool get(int r, int c) const { return pixels_[index(r, c)] != 0; }
  void set(int r, int c, bool v) { pixels_[index(r, c)] = v ? 1 : 0; }

  /// Read with the boundary policy applied to out-of-range coordinates.
  bool read(int r, int c) const {
    if (boundary_ == Boundary::Toroidal) {
      r %= height_;
      c %= width_;
      if (r < 0) r += height_;
      if (c < 0) c += width_;
      return pixels_[index(r, c)] != 0;
    }
    if (r < 0 || c < 0 || r >= height_ || c >= width_) return false;
    return pixels_[index(r, c)] != 0;
  }

  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::size_t count_ones() const;

  /// Same copy with a different boundary policy attached.
  BinaryImage with_boundary(Boundary b) const;

  bool same_shape(const BinaryImage& other) const {
    return height_ == other.height_ && width_ == other.width_ && boundary_ == other.boundary_;
  }

  /// Pointwise inclusion; shapes must match.
  bool subset_of(const BinaryImage& other) const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c);
  }

  int height_ = 0;
  int width_ = 0;
  Boundary boundary_ = Boundary::ZeroPad;
  std::vector<std::uint8_t> pixels_;
};

/// Mask of window offsets that read 1 around pixel (r, c).
Mask patch_at(const BinaryImage& x, const Window& w, int r, int c);

/// Patch masks of every pixel in row-major order.
std::vector<Mask> patches(const BinaryImage& x, const Window& w);

/// The structuring element with every offset negated.
Subset reflect(const Subset& a);

BinaryImage erode(const BinaryImage& x, const Subset& a);
BinaryImage dilate(const BinaryImage& x, const Subset& a);

enum class PointwiseOp { Complement, Union, Intersection };

/// Complement ignores `y`. Union and intersection need identical shape and
/// boundary policy (input error otherwise).
BinaryImage pointwise(PointwiseOp op, const BinaryImage& x, const BinaryImage* y = nullptr);
BinaryImage complement(const BinaryImage& x);
BinaryImage image_union(const BinaryImage& x, const BinaryImage& y);
BinaryImage image_intersection(const BinaryImage& x, const BinaryImage& y);

/// Output is 1 where lower ⊆ patch ⊆ upper.
BinaryImage interval_operator(const BinaryImage& x, const Interval& i);

/// Output pixel = f(patch of x over w). The table must be tabulated on `w`.
BinaryImage apply_table(const BinaryImage& x, const Window& w, const BooleanFunctionTable& f);

/// Output at p = input at p - v. Only defined for toroidal images.
BinaryImage shift(const BinaryImage& x, Offset v);

}  // namespace latop
