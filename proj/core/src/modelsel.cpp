#include "latop/modelsel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace latop {

void WindowLatticeSpec::validate() const {
  if (depth < 1) fail(ErrorKind::Config, "depth must be at least 1");
  if (max_window.empty()) fail(ErrorKind::Config, "max_window must not be empty");
  if (origin_pinned && !max_window.contains(kOrigin)) {
    fail(ErrorKind::Config, "origin pinning needs the origin inside max_window");
  }
  if (min_size > max_window.size()) fail(ErrorKind::Config, "min_size exceeds |max_window|");
}

void OuterConfig::validate() const {
  if (neighbors < 1) fail(ErrorKind::Config, "outer neighbors must be at least 1");
  if (epochs < 1) fail(ErrorKind::Config, "outer epochs must be at least 1");
  if (!validation && !(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    fail(ErrorKind::Config, "validation fraction must lie in (0, 1)");
  }
}

std::vector<Window> windows_of(const WindowSeq& node, const WindowLatticeSpec& spec) {
  std::vector<Window> out;
  for (Mask m : node) out.emplace_back(Subset(spec.max_window, m).members(), kMaxWindowBits);
  return out;
}

WindowSeq node_of(const std::vector<Window>& windows, const WindowLatticeSpec& spec) {
  WindowSeq node;
  for (const auto& w : windows) node.push_back(mask_of(spec.max_window, w.offsets()));
  return node;
}

std::string render_node(const WindowSeq& node, const WindowLatticeSpec& spec) {
  std::string out;
  for (std::size_t j = 0; j < node.size(); ++j) {
    if (j) out += ';';
    out += render_mask(spec.max_window, node[j]);
  }
  return out;
}

WindowSeq default_initial_node(const WindowLatticeSpec& spec) {
  Mask layer = 0;
  if (spec.origin_pinned) {
    layer = Mask{1} << spec.max_window.index_of(kOrigin);
  }
  for (std::size_t j = 0; j < spec.max_window.size() && static_cast<std::size_t>(std::popcount(layer)) < spec.min_size; ++j) {
    layer |= Mask{1} << j;
  }
  return WindowSeq(spec.depth, layer);
}

std::vector<WindowSeq> window_neighbors(const WindowSeq& node, const WindowLatticeSpec& spec) {
  const int origin = spec.max_window.index_of(kOrigin);
  std::vector<WindowSeq> out;
  for (std::size_t layer = 0; layer < node.size(); ++layer) {
    const Mask m = node[layer];
    const auto size = static_cast<std::size_t>(std::popcount(m));
    for (std::size_t j = 0; j < spec.max_window.size(); ++j) {
      const Mask bit = Mask{1} << j;
      if (m & bit) {
        if (size <= spec.min_size) continue;
        if (spec.origin_pinned && static_cast<int>(j) == origin) continue;
      }
      WindowSeq next = node;
      next[layer] ^= bit;
      out.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<std::vector<Window>> window_neighbors(const std::vector<Window>& ws, const WindowLatticeSpec& spec) {
  std::vector<std::vector<Window>> out;
  for (const auto& n : window_neighbors(node_of(ws, spec), spec)) out.push_back(windows_of(n, spec));
  return out;
}

namespace {

struct NodeFit {
  TrainResult fit;
  double validation_error;
};

class NodeEvaluator {
 public:
  NodeEvaluator(const WindowLatticeSpec& spec, const OuterConfig& cfg, Dataset fit_data, Dataset validation)
      : spec_(spec), cfg_(cfg), fit_data_(std::move(fit_data)), validation_(std::move(validation)) {}

  /// Returns the cached entry and whether it was already present.
  std::pair<const NodeFit*, bool> evaluate(const WindowSeq& node) {
    if (auto it = cache_.find(node); it != cache_.end()) return {&it->second, true};

    const ClassSpec cls = ClassSpec::seq_tables(windows_of(node, spec_));
    const std::uint64_t node_seed = derive_seed(cfg_.seed, render_node(node, spec_));
    Rng init_rng(node_seed);
    const ParamPoint theta0 = random_init(cls, init_rng);

    SLDAConfig inner = cfg_.inner;
    inner.seed = node_seed;
    // 0 means "all" for both batch size and neighbour count.
    if (inner.batch_size == 0 || inner.batch_size > fit_data_.size()) inner.batch_size = fit_data_.size();
    if (inner.neighbors == 0) inner.neighbors = neighborhood_size(theta0);
    TrainResult fit = cfg_.inner_lda ? lda(theta0, fit_data_, inner.epochs) : slda(theta0, fit_data_, inner);
    const double err = holdout_error(fit.best_param, validation_);
    auto [it, _] = cache_.emplace(node, NodeFit{std::move(fit), err});
    return {&it->second, false};
  }

 private:
  const WindowLatticeSpec& spec_;
  const OuterConfig& cfg_;
  Dataset fit_data_;
  Dataset validation_;
  std::map<WindowSeq, NodeFit> cache_;
};

}  // namespace

HierarchicalResult hierarchical_slda(const WindowLatticeSpec& spec, const Dataset& train, const OuterConfig& cfg) {
  spec.validate();
  cfg.validate();

  std::vector<std::size_t> fit_idx;
  std::vector<std::size_t> val_idx;
  Dataset validation;
  if (cfg.validation) {
    fit_idx.resize(train.size());
    std::iota(fit_idx.begin(), fit_idx.end(), std::size_t{0});
    validation = *cfg.validation;
  } else {
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng split_rng(derive_seed(cfg.seed, "validation-split"));
    split_rng.shuffle(order);
    const auto n_val = static_cast<std::size_t>(
        std::llround(cfg.validation_fraction * static_cast<double>(train.size())));
    if (n_val == 0 || n_val >= train.size()) {
      fail(ErrorKind::Input, "validation split of " + std::to_string(train.size()) + " pairs at fraction " +
                                 format_double(cfg.validation_fraction) + " leaves an empty part");
    }
    fit_idx.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val));
    val_idx.assign(order.end() - static_cast<std::ptrdiff_t>(n_val), order.end());
    validation = train.select(val_idx);
  }
  NodeEvaluator evaluator(spec, cfg, train.select(fit_idx), validation);

  WindowSeq current = cfg.initial ? *cfg.initial : default_initial_node(spec);
  if (current.size() != spec.depth) fail(ErrorKind::Input, "initial node depth differs from spec depth");
  for (Mask m : current) {
    if (m & ~spec.max_window.full_mask()) fail(ErrorKind::Input, "initial layer window leaves max_window");
  }

  std::vector<NodeVisit> visits;
  std::vector<WindowSeq> path;
  auto [first, _] = evaluator.evaluate(current);
  visits.push_back({0, current, first->validation_error, false});
  const double initial_error = first->validation_error;
  WindowSeq best = current;
  double best_error = initial_error;

  Rng rng(cfg.seed);
  for (std::size_t step = 1; step <= cfg.epochs; ++step) {
    const auto nbrs = window_neighbors(current, spec);
    if (nbrs.empty()) break;
    std::vector<std::size_t> idx(nbrs.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (cfg.neighbors < nbrs.size()) {
      for (std::size_t i = 0; i < cfg.neighbors; ++i) {
        std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(nbrs.size() - i))]);
      }
      idx.resize(cfg.neighbors);
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return nbrs[a] < nbrs[b]; });

    const WindowSeq* chosen = nullptr;
    double chosen_error = 0.0;
    for (std::size_t i : idx) {
      auto [fit, cached] = evaluator.evaluate(nbrs[i]);
      visits.push_back({step, nbrs[i], fit->validation_error, cached});
      if (!chosen || fit->validation_error < chosen_error) {
        chosen = &nbrs[i];
        chosen_error = fit->validation_error;
      }
    }
    current = *chosen;
    path.push_back(current);
    if (chosen_error < best_error) {
      best_error = chosen_error;
      best = current;
    }
  }

  const NodeFit* winner = evaluator.evaluate(best).first;
  HierarchicalResult result{windows_of(best, spec),
                            best,
                            winner->fit,
                            winner->validation_error,
                            initial_error,
                            std::move(visits),
                            std::move(path),
                            std::move(fit_idx),
                            std::move(val_idx)};
  return result;
}

std::string model_selection_report(const HierarchicalResult& r, const WindowLatticeSpec& spec) {
  std::ostringstream out;
  out << "max_window: " << to_string(spec.max_window) << "\n";
  out << "depth: " << spec.depth << "\n";
  out << "origin_pinned: " << (spec.origin_pinned ? "true" : "false") << "\n";
  out << "validation_pairs:";
  for (std::size_t i : r.validation_indices) out << ' ' << i;
  out << "\n";
  out << "visits:\n";
  for (const auto& v : r.visits) {
    out << "  step " << v.outer_step << "\t" << render_node(v.node, spec) << "\t"
        << format_double(v.validation_error) << (v.cached ? "\tcached" : "") << "\n";
  }
  out << "initial_validation_error: " << format_double(r.initial_validation_error) << "\n";
  out << "winner: " << render_node(r.best_node, spec) << "\n";
  out << "validation_error: " << format_double(r.validation_error) << "\n";
  out << "train_error: " << format_double(r.fit.best_error) << "\n";
  return out.str();
}

}  // namespace latop
