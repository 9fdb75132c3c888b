#include "latop/morphology.hpp"

#include <algorithm>

#include "latop/repr.hpp"

namespace latop {

const char* to_string(Boundary b) {
  return b == Boundary::Toroidal ? "toroidal" : "zero-pad";
}

Boundary parse_boundary(std::string_view text) {
  if (text == "toroidal") return Boundary::Toroidal;
  if (text == "zero-pad" || text == "zeropad") return Boundary::ZeroPad;
  fail(ErrorKind::Parse, "unknown boundary policy '" + std::string(text) + "'");
}

BinaryImage::BinaryImage(int height, int width, Boundary boundary)
    : BinaryImage(height, width, std::vector<std::uint8_t>(
                                     static_cast<std::size_t>(std::max(height, 0)) *
                                     static_cast<std::size_t>(std::max(width, 0))),
                  boundary) {}

BinaryImage::BinaryImage(int height, int width, std::vector<std::uint8_t> pixels, Boundary boundary)
    : height_(height), width_(width), boundary_(boundary), pixels_(std::move(pixels)) {
  if (height <= 0 || width <= 0) fail(ErrorKind::Input, "image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
    fail(ErrorKind::Input, "pixel buffer does not match image dimensions");
  }
  for (auto& p : pixels_) p = p != 0 ? 1 : 0;
}

BinaryImage BinaryImage::filled(int height, int width, bool value, Boundary boundary) {
  BinaryImage img(height, width, boundary);
  std::fill(img.pixels_.begin(), img.pixels_.end(), value ? 1 : 0);
  return img;
}

std::size_t BinaryImage::count_ones() const {
  return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

BinaryImage BinaryImage::with_boundary(Boundary b) const {
  BinaryImage copy = *this;
  copy.boundary_ = b;
  return copy;
}

bool BinaryImage::subset_of(const BinaryImage& other) const {
  if (!same_shape(other)) fail(ErrorKind::Input, "image shapes differ");
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    if (pixels_[i] > other.pixels_[i]) return false;
  }
  return true;
}

Mask patch_at(const BinaryImage& x, const Window& w, int r, int c) {
  Mask m = 0;
  const auto offs = w.offsets();
  for (std::size_t j = 0; j < offs.size(); ++j) {
    if (x.read(r + offs[j].row, c + offs[j].col)) m |= Mask{1} << j;
  }
  return m;
}

std::vector<Mask> patches(const BinaryImage& x, const Window& w) {
  std::vector<Mask> out(x.pixel_count(), 0);
  const auto offs = w.offsets();
  const int h = x.height();
  const int wd = x.width();
  // One pass per offset keeps the inner loop branch-light.
  for (std::size_t j = 0; j < offs.size(); ++j) {
    const Mask bit = Mask{1} << j;
    std::size_t k = 0;
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < wd; ++c, ++k) {
        if (x.read(r + offs[j].row, c + offs[j].col)) out[k] |= bit;
      }
    }
  }
  return out;
}

Subset reflect(const Subset& a) {
  std::vector<Offset> reflected_window;
  for (const auto& o : a.window().offsets()) reflected_window.push_back(-o);
  Window w(std::move(reflected_window), kMaxWindowBits);
  std::vector<Offset> members;
  for (const auto& o : a.members()) members.push_back(-o);
  return Subset::of(w, members);
}

namespace {

template <typename PixelFn>
BinaryImage map_pixels(const BinaryImage& x, PixelFn&& fn) {
  std::vector<std::uint8_t> out(x.pixel_count());
  std::size_t k = 0;
  for (int r = 0; r < x.height(); ++r) {
    for (int c = 0; c < x.width(); ++c, ++k) out[k] = fn(r, c) ? 1 : 0;
  }
  return BinaryImage(x.height(), x.width(), std::move(out), x.boundary());
}

}  // namespace

BinaryImage erode(const BinaryImage& x, const Subset& a) {
  const auto members = a.members();
  return map_pixels(x, [&](int r, int c) {
    return std::all_of(members.begin(), members.end(),
                       [&](const Offset& v) { return x.read(r + v.row, c + v.col); });
  });
}

BinaryImage dilate(const BinaryImage& x, const Subset& a) {
  const auto members = a.members();
  return map_pixels(x, [&](int r, int c) {
    return std::any_of(members.begin(), members.end(),
                       [&](const Offset& v) { return x.read(r + v.row, c + v.col); });
  });
}

BinaryImage pointwise(PointwiseOp op, const BinaryImage& x, const BinaryImage* y) {
  if (op == PointwiseOp::Complement) {
    return map_pixels(x, [&](int r, int c) { return !x.get(r, c); });
  }
  if (y == nullptr) fail(ErrorKind::Input, "binary pointwise operation needs two images");
  if (!x.same_shape(*y)) fail(ErrorKind::Input, "pointwise operands differ in shape or boundary policy");
  if (op == PointwiseOp::Union) {
    return map_pixels(x, [&](int r, int c) { return x.get(r, c) || y->get(r, c); });
  }
  return map_pixels(x, [&](int r, int c) { return x.get(r, c) && y->get(r, c); });
}

BinaryImage complement(const BinaryImage& x) { return pointwise(PointwiseOp::Complement, x); }
BinaryImage image_union(const BinaryImage& x, const BinaryImage& y) {
  return pointwise(PointwiseOp::Union, x, &y);
}
BinaryImage image_intersection(const BinaryImage& x, const BinaryImage& y) {
  return pointwise(PointwiseOp::Intersection, x, &y);
}

BinaryImage interval_operator(const BinaryImage& x, const Interval& i) {
  const auto p = patches(x, i.window());
  std::vector<std::uint8_t> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = i.contains(p[k]) ? 1 : 0;
  return BinaryImage(x.height(), x.width(), std::move(out), x.boundary());
}

BinaryImage apply_table(const BinaryImage& x, const Window& w, const BooleanFunctionTable& f) {
  if (!(f.window() == w) || f.size() != (std::size_t{1} << w.size())) {
    fail(ErrorKind::Input, "table is tabulated on " + to_string(f.window()) + ", not on " + to_string(w));
  }
  const auto p = patches(x, w);
  std::vector<std::uint8_t> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = f[p[k]] ? 1 : 0;
  return BinaryImage(x.height(), x.width(), std::move(out), x.boundary());
}

BinaryImage shift(const BinaryImage& x, Offset v) {
  if (x.boundary() != Boundary::Toroidal) {
    fail(ErrorKind::Unsupported, "shift is only defined for toroidal images");
  }
  return map_pixels(x, [&](int r, int c) { return x.read(r - v.row, c - v.col); });
}

}  // namespace latop
