#pragma once

// Windows of pixel offsets and the Boolean lattice of their subsets. Subsets
// are bit masks, and intervals of subsets carry their own partial order.
//
// Encoding contract used by every other module: bit j of a subset mask is the
// membership of window.offsets()[j], and offsets are kept in row-major order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latop/error.hpp"

namespace latop {

using Mask = std::uint32_t;

/// Hard upper bound on window sizes, imposed by the mask width.
inline constexpr std::size_t kMaxWindowBits = 30;
/// Default cap for windows that get tabulated (2^20 table entries).
inline constexpr std::size_t kDefaultWindowCap = 20;
/// Default cap for basis extraction (3^16 candidate intervals).
inline constexpr std::size_t kDefaultBasisCap = 16;

struct Offset {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Offset&, const Offset&) = default;
  friend constexpr Offset operator+(Offset a, Offset b) { return {a.row + b.row, a.col + b.col}; }
  friend constexpr Offset operator-(Offset a) { return {-a.row, -a.col}; }
};

inline constexpr Offset kOrigin{0, 0};

/// A finite set of distinct offsets in canonical row-major order. Cheap to copy:
/// the offset list is shared and immutable.
class Window {
 public:
  /// The empty window.
  Window();

  /// Sorts and validates. Duplicates are an input error; more than `cap`
  /// offsets is a size error.
  explicit Window(std::vector<Offset> offsets, std::size_t cap = kDefaultWindowCap);

  /// Centered rectangle of `rows` x `cols` offsets (both odd).
  static Window rectangle(int rows, int cols, std::size_t cap = kDefaultWindowCap);

  std::span<const Offset> offsets() const { return *offsets_; }
  std::size_t size() const { return offsets_->size(); }
  bool empty() const { return offsets_->empty(); }
  const Offset& operator[](std::size_t j) const { return (*offsets_)[j]; }

  /// Mask with every bit of the window set.
  Mask full_mask() const { return size() == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << size()) - 1); }

  /// Bit index of `o`, or -1 when `o` is not in the window.
  int index_of(Offset o) const;
  bool contains(Offset o) const { return index_of(o) >= 0; }

  /// Smallest non-negative r with |row| <= r for every offset (same for cols).
  int row_radius() const;
  int col_radius() const;

  friend bool operator==(const Window& a, const Window& b);
  friend bool operator<(const Window& a, const Window& b);

 private:
  std::shared_ptr<const std::vector<Offset>> offsets_;
};

/// A subset of a window, stored as a bit mask over window indices.
class Subset {
 public:
  Subset() = default;
  Subset(Window window, Mask bits);

  static Subset empty(Window window) { return Subset(std::move(window), 0); }
  static Subset full(const Window& window) { return Subset(window, window.full_mask()); }
  static Subset of(const Window& window, std::span<const Offset> members);

  const Window& window() const { return window_; }
  Mask bits() const { return bits_; }
  bool contains(Offset o) const;
  std::size_t count() const;
  std::vector<Offset> members() const;

  /// Inclusion order.
  bool subset_of(const Subset& other) const;

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.bits_ == b.bits_ && a.window_ == b.window_;
  }

 private:
  Window window_;
  Mask bits_ = 0;
};

/// Interval [lower, upper] = { X : lower ⊆ X ⊆ upper } in P(W).
class Interval {
 public:
  Interval() = default;
  /// Requires lower ⊆ upper and a shared window (input error otherwise).
  Interval(Subset lower, Subset upper);
  Interval(const Window& window, Mask lower, Mask upper);

  const Window& window() const { return lower_.window(); }
  const Subset& lower() const { return lower_; }
  const Subset& upper() const { return upper_; }

  /// Whether X (a mask over the same window) lies in the interval.
  bool contains(Mask x) const {
    return (x & lower_.bits()) == lower_.bits() && (x & ~upper_.bits()) == 0;
  }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  Subset lower_;
  Subset upper_;
};

/// Inclusion order on subsets. Mismatched windows raise an input error.
bool leq(const Subset& a, const Subset& b);
/// Interval order: [a,b] <= [a',b'] iff a' ⊆ a and b ⊆ b'.
bool leq(const Interval& a, const Interval& b);

/// Canonical (lower bits, upper bits) ordering used for all interval listings.
bool canonical_less(const Interval& a, const Interval& b);

/// The maximal elements of `items` under interval order, deduplicated and in
/// canonical order. Pairwise O(m^2) filtering.
std::vector<Interval> max_antichain(std::span<const Interval> items);

/// The |W| subsets at Hamming distance one from `s`, by flipped bit index.
std::vector<Subset> hamming_neighbors(const Subset& s);

/// All 2^|W| subsets of `w` in increasing mask order, as a lazy view.
/// Refuses windows larger than `cap`.
inline auto enumerate_subsets(const Window& w, std::size_t cap = kDefaultWindowCap) {
  if (w.size() > cap) {
    fail(ErrorKind::Size, "cannot enumerate P(W) for |W| = " + std::to_string(w.size()) +
                              " (cap " + std::to_string(cap) + ")");
  }
  const std::uint64_t count = std::uint64_t{1} << w.size();
  return std::views::iota(std::uint64_t{0}, count) |
         std::views::transform([w](std::uint64_t m) { return Subset(w, static_cast<Mask>(m)); });
}

// Text renderings: "(r,c)", "{(0,0),(0,1)}", "[{...},{...}]".
std::string to_string(Offset o);
std::string to_string(const Window& w);
std::string to_string(const Subset& s);
std::string to_string(const Interval& i);
std::string render_mask(const Window& w, Mask bits);

/// Parses "{(r,c),...}" into a list of offsets (no window validation).
std::vector<Offset> parse_offset_set(std::string_view text);
Window parse_window(std::string_view text, std::size_t cap = kDefaultWindowCap);
/// Parses "{...}" as a subset of `w`; offsets outside the window are an error.
Subset parse_subset(const Window& w, std::string_view text);
/// Parses "[{...},{...}]".
Interval parse_interval(const Window& w, std::string_view text);

/// Mask of the offsets of `sub` inside `w`; every offset must belong to `w`.
Mask mask_of(const Window& w, std::span<const Offset> sub);

}  // namespace latop
