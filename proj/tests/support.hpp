#pragma once

// Test helpers: random generators and independent oracles. Nothing here calls
// the code paths it is used to check.

#include <cstdint>
#include <vector>

#include "latop/latop.hpp"

namespace latop::testing {

inline BinaryImage random_image(Rng& rng, int h, int w, double density, Boundary b) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * static_cast<std::size_t>(w));
  for (auto& p : px) p = rng.bernoulli(density) ? 1 : 0;
  return BinaryImage(h, w, std::move(px), b);
}

inline BinaryImage image_with_ones(int h, int w, std::initializer_list<Offset> ones,
                                   Boundary b = Boundary::ZeroPad) {
  BinaryImage img(h, w, b);
  for (const auto& o : ones) img.set(o.row, o.col, true);
  return img;
}

inline Window line_window(std::size_t n) {
  std::vector<Offset> offs;
  for (std::size_t i = 0; i < n; ++i) offs.push_back({0, static_cast<int>(i)});
  return Window(std::move(offs));
}

inline BooleanFunctionTable random_table(Rng& rng, const Window& w) {
  BooleanFunctionTable t(w);
  for (std::size_t m = 0; m < t.size(); ++m) t.set(static_cast<Mask>(m), rng.next() >> 63);
  return t;
}

inline Mask random_mask(Rng& rng, const Window& w) {
  return static_cast<Mask>(rng.next()) & w.full_mask();
}

/// Every interval [A,B] with A ⊆ B ⊆ W whose members all map to 1, reduced
/// to its maximal elements. 3^|W| candidates.
inline std::vector<Interval> brute_force_basis(const BooleanFunctionTable& f) {
  const Window& w = f.window();
  const Mask full = w.full_mask();
  std::vector<Interval> inside;
  for (std::uint64_t upper = 0; upper <= full; ++upper) {
    for (std::uint64_t lower = 0; lower <= full; ++lower) {
      if (lower & ~upper) continue;
      bool all = true;
      for (std::uint64_t x = 0; x <= full && all; ++x) {
        if ((x & lower) == lower && (x & ~upper) == 0) all = f[static_cast<Mask>(x)];
      }
      if (all) inside.emplace_back(w, static_cast<Mask>(lower), static_cast<Mask>(upper));
    }
  }
  return max_antichain(inside);
}

/// Definitional erosion: scans every offset of the element for each pixel.
inline bool erosion_pixel(const BinaryImage& x, const std::vector<Offset>& a, int r, int c) {
  for (const auto& v : a) {
    int rr = r + v.row, cc = c + v.col;
    if (x.boundary() == Boundary::Toroidal) {
      rr = ((rr % x.height()) + x.height()) % x.height();
      cc = ((cc % x.width()) + x.width()) % x.width();
    } else if (rr < 0 || cc < 0 || rr >= x.height() || cc >= x.width()) {
      return false;
    }
    if (!x.get(rr, cc)) return false;
  }
  return true;
}

}  // namespace latop::testing
