#pragma once

// Hierarchical lattice descent: an outer descent over sequences of layer
// windows (each a subset of a maximal window) that minimizes validation
// error, with a fresh inner fit of the SeqTables class at every node.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latop/learn.hpp"

namespace latop {

struct WindowLatticeSpec {
  Window max_window;
  std::size_t depth = 1;
  std::size_t min_size = 1;
  /// Keep the origin in every layer window.
  bool origin_pinned = true;

  void validate() const;
};

/// A node: one mask over max_window per layer. Canonical node order is the
/// lexicographic order of these masks.
using WindowSeq = std::vector<Mask>;

std::vector<Window> windows_of(const WindowSeq& node, const WindowLatticeSpec& spec);
WindowSeq node_of(const std::vector<Window>& windows, const WindowLatticeSpec& spec);
std::string render_node(const WindowSeq& node, const WindowLatticeSpec& spec);

/// Single add/remove moves, layer by layer, then by max_window bit index.
std::vector<WindowSeq> window_neighbors(const WindowSeq& node, const WindowLatticeSpec& spec);
std::vector<std::vector<Window>> window_neighbors(const std::vector<Window>& ws, const WindowLatticeSpec& spec);

/// The starting node: {o} per layer when pinned, else the first min_size points.
WindowSeq default_initial_node(const WindowLatticeSpec& spec);

struct OuterConfig {
  std::size_t neighbors = 4;  // m, nodes sampled per outer step
  std::size_t epochs = 10;    // outer steps
  SLDAConfig inner;
  /// Use exhaustive deterministic descent (lda) with inner.epochs for the
  /// inner fit instead of slda.
  bool inner_lda = false;
  std::uint64_t seed = 0;
  double validation_fraction = 0.25;
  std::optional<Dataset> validation;  // overrides the fractional split
  std::optional<WindowSeq> initial;

  void validate() const;
};

struct NodeVisit {
  std::size_t outer_step = 0;  // 0 for the initial node
  WindowSeq node;
  double validation_error = 0.0;
  bool cached = false;
};

struct HierarchicalResult {
  std::vector<Window> best_windows;
  WindowSeq best_node;
  TrainResult fit;
  double validation_error = 0.0;
  double initial_validation_error = 0.0;
  std::vector<NodeVisit> visits;
  std::vector<WindowSeq> path;  // current node after each outer step
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
};

HierarchicalResult hierarchical_slda(const WindowLatticeSpec& spec, const Dataset& train, const OuterConfig& cfg);

/// Plain-text report: every visited node with its validation error, then the winner.
std::string model_selection_report(const HierarchicalResult& r, const WindowLatticeSpec& spec);

}  // namespace latop
