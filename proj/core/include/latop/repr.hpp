#pragma once

// A W-operator is fixed by its characteristic Boolean function on P(W). The
// basis (maximal intervals inside the kernel) is the compact form of that
// function, and reconstruct() takes the union of its intervals back.

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "latop/lattice.hpp"
#include "latop/morphology.hpp"

namespace latop {

/// Image-to-image map; realizations of parameters are of this type.
using Operator = std::function<BinaryImage(const BinaryImage&)>;

/// f : P(W) -> {0,1}, indexed by subset mask.
class BooleanFunctionTable {
 public:
  BooleanFunctionTable() = default;
  explicit BooleanFunctionTable(Window window, bool fill = false,
                                std::size_t cap = kDefaultWindowCap);
  BooleanFunctionTable(Window window, std::vector<bool> values);

  /// Tabulates `predicate(mask)` for every subset of `window`.
  template <typename Pred>
  static BooleanFunctionTable from_predicate(const Window& window, Pred&& predicate,
                                             std::size_t cap = kDefaultWindowCap) {
    BooleanFunctionTable t(window, false, cap);
    for (std::size_t m = 0; m < t.values_.size(); ++m) t.values_[m] = predicate(static_cast<Mask>(m));
    return t;
  }

  const Window& window() const { return window_; }
  std::size_t size() const { return values_.size(); }
  bool operator[](Mask x) const { return values_[x]; }
  bool at(Mask x) const { return values_[x]; }
  void set(Mask x, bool v) { values_[x] = v; }
  void flip(Mask x) { values_[x] = !values_[x]; }
  std::size_t count_ones() const;
  const std::vector<bool>& values() const { return values_; }

  friend bool operator==(const BooleanFunctionTable&, const BooleanFunctionTable&) = default;

 private:
  Window window_;
  std::vector<bool> values_;
};

struct KernelSet {
  Window window;
  std::vector<Subset> members;  // increasing mask order
};

struct Basis {
  Window window;
  std::vector<Interval> intervals;  // canonical order, an antichain

  friend bool operator==(const Basis&, const Basis&) = default;
};

struct PropertyReport {
  bool is_increasing = false;                       // every upper endpoint is W
  bool contains_full_interval_from_origin = false;  // [{o}, W] is in the basis
  bool origin_in_all_lower_endpoints = false;       // o ∈ A for every [A, ·]

  friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

/// Tabulates a locally defined operator: each X ⊆ W is drawn around the origin
/// of a toroidal canvas wide enough that W does not wrap onto itself, the
/// operator is applied, and the origin pixel is read.
BooleanFunctionTable characteristic_of(const Operator& realizer, const Window& w,
                                       std::size_t cap = kDefaultWindowCap);

KernelSet kernel_of(const BooleanFunctionTable& f);

/// Maximal intervals contained in the kernel of `f` (the prime implicants of
/// f read as intervals), found by merging adjacent intervals level by level.
Basis basis_of(const BooleanFunctionTable& f, std::size_t cap = kDefaultBasisCap);

/// f(X) = 1 iff some basis interval contains X.
BooleanFunctionTable reconstruct(const Basis& b);

PropertyReport property_report(const Basis& b);

// Text formats.
//
// Basis: one interval per line, "[{...},{...}]".
// Table: "window: {...}" on the first line, then the 2^|W| values packed into
// bytes (entry m at bit m%8 of byte m/8) written as lowercase hex, byte 0 first.
std::string serialize_basis(const Basis& b);
Basis parse_basis(const Window& w, std::string_view text);
std::string table_hex(const BooleanFunctionTable& f);
BooleanFunctionTable table_from_hex(const Window& w, std::string_view hex);
std::string serialize_table(const BooleanFunctionTable& f);
BooleanFunctionTable parse_table(std::string_view text, std::size_t cap = kDefaultWindowCap);

}  // namespace latop
