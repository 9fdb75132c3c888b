#pragma once

// Lattice overparametrizations of constrained operator classes.
//
//   ErosionSup   θ = (A_1..A_k) ∈ P(W)^k,          ψ_θ = ⋃ erode(·, A_i)
//   IntervalSup  θ = ([A_i,B_i])_i, A_i ⊆ B_i ⊆ W,   ψ_θ = ⋃ interval_operator(·, [A_i,B_i])
//   SeqTables    θ = (f_1..f_d), f_j on W_j,        ψ_θ = apply f_d ∘ ... ∘ apply f_1
//
// Θ is a product of Boolean (or interval) lattices; neighbours are the points
// at distance one, i.e. a single payload bit flipped.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latop/lattice.hpp"
#include "latop/repr.hpp"
#include "latop/rng.hpp"

namespace latop {

enum class ClassKind { ErosionSup, IntervalSup, SeqTables };

const char* to_string(ClassKind kind);
ClassKind parse_class_kind(std::string_view text);

struct ClassSpec {
  ClassKind kind = ClassKind::ErosionSup;
  Window window;               // ErosionSup, IntervalSup
  std::size_t count = 1;       // ErosionSup, IntervalSup
  std::vector<Window> layers;  // SeqTables

  static ClassSpec erosion_sup(Window w, std::size_t k);
  static ClassSpec interval_sup(Window w, std::size_t k);
  static ClassSpec seq_tables(std::vector<Window> layers);

  /// Throws on k = 0, d = 0 or windows above `cap`.
  void validate(std::size_t cap = kDefaultWindowCap) const;

  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

struct IntervalBits {
  Mask lower = 0;
  Mask upper = 0;

  friend auto operator<=>(const IntervalBits&, const IntervalBits&) = default;
};

/// One payload coordinate flip. For IntervalSup `upper` selects the endpoint;
/// for SeqTables `bit` is the table row.
struct Move {
  std::size_t coordinate = 0;
  std::size_t bit = 0;
  bool upper = false;

  friend bool operator==(const Move&, const Move&) = default;
};

class ParamPoint {
 public:
  using Payload = std::variant<std::vector<Mask>, std::vector<IntervalBits>,
                               std::vector<BooleanFunctionTable>>;

  ParamPoint(ClassSpec spec, Payload payload);

  static ParamPoint erosion_sup(const Window& w, std::vector<Mask> elements);
  static ParamPoint interval_sup(const Window& w, std::vector<IntervalBits> intervals);
  static ParamPoint seq_tables(std::vector<BooleanFunctionTable> tables);

  const ClassSpec& spec() const { return spec_; }
  ClassKind kind() const { return spec_.kind; }
  const Payload& payload() const { return payload_; }

  const std::vector<Mask>& elements() const { return std::get<0>(payload_); }
  const std::vector<IntervalBits>& intervals() const { return std::get<1>(payload_); }
  const std::vector<BooleanFunctionTable>& tables() const { return std::get<2>(payload_); }

  Subset element(std::size_t i) const { return Subset(spec_.window, elements()[i]); }
  Interval interval(std::size_t i) const {
    return Interval(spec_.window, intervals()[i].lower, intervals()[i].upper);
  }

  /// Applies a move. The move must be valid for this point.
  ParamPoint moved(const Move& m) const;

  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;

 private:
  ClassSpec spec_;
  Payload payload_;
};

Operator realize(const ParamPoint& theta);

/// Valid single-bit moves in canonical order: coordinate, then bit, then
/// (IntervalSup) lower before upper.
std::vector<Move> neighbor_moves(const ParamPoint& theta);
std::size_t neighborhood_size(const ParamPoint& theta);
std::vector<ParamPoint> all_neighbors(const ParamPoint& theta);

/// Indices into neighbor_moves(theta) of min(n, |N(θ)|) distinct neighbours,
/// drawn uniformly without replacement (in draw order). When n ≥ |N(θ)| every
/// index is returned in canonical order and no randomness is consumed.
std::vector<std::size_t> sample_neighbor_indices(const ParamPoint& theta, std::size_t n, Rng& rng);
std::vector<ParamPoint> sample_neighbors(const ParamPoint& theta, std::size_t n, Rng& rng);

ParamPoint random_init(const ClassSpec& spec, Rng& rng);

/// Window the realized operator is locally defined in: the spec window, or the
/// Minkowski sum of the layer windows for SeqTables.
Window effective_window(const ClassSpec& spec, std::size_t cap = kDefaultWindowCap);
inline Window effective_window(const ParamPoint& theta, std::size_t cap = kDefaultWindowCap) {
  return effective_window(theta.spec(), cap);
}
Window minkowski_sum(const Window& a, const Window& b, std::size_t cap = kMaxWindowBits);

/// basis_of(characteristic_of(realize(θ), effective_window(θ))).
Basis basis_of_param(const ParamPoint& theta, std::size_t window_cap = kDefaultWindowCap,
                     std::size_t basis_cap = kDefaultBasisCap);

/// Number of payload bits in which two points of the same class differ.
std::size_t payload_distance(const ParamPoint& a, const ParamPoint& b);

// Text format (line oriented, "key: value"):
//
//   class: erosion-sup | interval-sup
//   window: {(r,c),...}
//   count: k
//   element: {...}             (k lines, erosion-sup)
//   interval: [{...},{...}]    (k lines, interval-sup)
//
//   class: seq-tables
//   depth: d
//   layer: {...}               (then)  table: <hex>     (d pairs)
//
// Blank lines and lines starting with '#' are ignored.
std::string serialize(const ParamPoint& theta);
ParamPoint parse_param(std::string_view text, std::size_t cap = kDefaultWindowCap);

}  // namespace latop
