#include "latop/params.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <sstream>

namespace latop {

const char* to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::ErosionSup: return "erosion-sup";
    case ClassKind::IntervalSup: return "interval-sup";
    case ClassKind::SeqTables: return "seq-tables";
  }
  return "?";
}

ClassKind parse_class_kind(std::string_view text) {
  if (text == "erosion-sup") return ClassKind::ErosionSup;
  if (text == "interval-sup") return ClassKind::IntervalSup;
  if (text == "seq-tables") return ClassKind::SeqTables;
  fail(ErrorKind::Parse, "unknown class '" + std::string(text) + "'");
}

ClassSpec ClassSpec::erosion_sup(Window w, std::size_t k) {
  ClassSpec s{ClassKind::ErosionSup, std::move(w), k, {}};
  s.validate(kMaxWindowBits);
  return s;
}

ClassSpec ClassSpec::interval_sup(Window w, std::size_t k) {
  ClassSpec s{ClassKind::IntervalSup, std::move(w), k, {}};
  s.validate(kMaxWindowBits);
  return s;
}

ClassSpec ClassSpec::seq_tables(std::vector<Window> layers) {
  ClassSpec s{ClassKind::SeqTables, Window(), 0, std::move(layers)};
  s.validate(kDefaultWindowCap);
  return s;
}

void ClassSpec::validate(std::size_t cap) const {
  if (kind == ClassKind::SeqTables) {
    if (layers.empty()) fail(ErrorKind::Input, "seq-tables needs at least one layer");
    for (const auto& w : layers) {
      if (w.size() > cap) {
        fail(ErrorKind::Size, "layer window " + to_string(w) + " exceeds cap " + std::to_string(cap));
      }
    }
    return;
  }
  if (count == 0) fail(ErrorKind::Input, std::string(to_string(kind)) + " needs count >= 1");
  if (window.size() > cap) {
    fail(ErrorKind::Size, "window " + to_string(window) + " exceeds cap " + std::to_string(cap));
  }
}

ParamPoint::ParamPoint(ClassSpec spec, Payload payload)
    : spec_(std::move(spec)), payload_(std::move(payload)) {
  const Mask full = spec_.window.full_mask();
  switch (spec_.kind) {
    case ClassKind::ErosionSup: {
      if (payload_.index() != 0) fail(ErrorKind::Input, "erosion-sup payload must be structuring elements");
      const auto& e = elements();
      if (e.size() != spec_.count) fail(ErrorKind::Input, "payload size differs from class count");
      for (Mask m : e) {
        if (m & ~full) fail(ErrorKind::Input, "structuring element outside the window");
      }
      break;
    }
    case ClassKind::IntervalSup: {
      if (payload_.index() != 1) fail(ErrorKind::Input, "interval-sup payload must be intervals");
      const auto& iv = intervals();
      if (iv.size() != spec_.count) fail(ErrorKind::Input, "payload size differs from class count");
      for (const auto& i : iv) {
        if ((i.lower | i.upper) & ~full) fail(ErrorKind::Input, "interval endpoint outside the window");
        if (i.lower & ~i.upper) fail(ErrorKind::Input, "interval lower endpoint not contained in upper");
      }
      break;
    }
    case ClassKind::SeqTables: {
      if (payload_.index() != 2) fail(ErrorKind::Input, "seq-tables payload must be tables");
      const auto& t = tables();
      if (t.size() != spec_.layers.size()) fail(ErrorKind::Input, "table count differs from depth");
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (!(t[j].window() == spec_.layers[j])) {
          fail(ErrorKind::Input, "table " + std::to_string(j) + " is not tabulated on its layer window");
        }
      }
      break;
    }
  }
}

ParamPoint ParamPoint::erosion_sup(const Window& w, std::vector<Mask> elements) {
  const std::size_t k = elements.size();
  return ParamPoint(ClassSpec::erosion_sup(w, k), std::move(elements));
}

ParamPoint ParamPoint::interval_sup(const Window& w, std::vector<IntervalBits> intervals) {
  const std::size_t k = intervals.size();
  return ParamPoint(ClassSpec::interval_sup(w, k), std::move(intervals));
}

ParamPoint ParamPoint::seq_tables(std::vector<BooleanFunctionTable> tables) {
  std::vector<Window> layers;
  for (const auto& t : tables) layers.push_back(t.window());
  return ParamPoint(ClassSpec::seq_tables(std::move(layers)), std::move(tables));
}

ParamPoint ParamPoint::moved(const Move& m) const {
  ParamPoint out = *this;
  switch (spec_.kind) {
    case ClassKind::ErosionSup:
      std::get<0>(out.payload_).at(m.coordinate) ^= Mask{1} << m.bit;
      break;
    case ClassKind::IntervalSup: {
      auto& i = std::get<1>(out.payload_).at(m.coordinate);
      (m.upper ? i.upper : i.lower) ^= Mask{1} << m.bit;
      if (i.lower & ~i.upper) fail(ErrorKind::Input, "move breaks lower ⊆ upper");
      break;
    }
    case ClassKind::SeqTables:
      std::get<2>(out.payload_).at(m.coordinate).flip(static_cast<Mask>(m.bit));
      break;
  }
  return out;
}

Operator realize(const ParamPoint& theta) {
  switch (theta.kind()) {
    case ClassKind::ErosionSup: {
      std::vector<Subset> elems;
      for (std::size_t i = 0; i < theta.elements().size(); ++i) elems.push_back(theta.element(i));
      return [elems = std::move(elems)](const BinaryImage& x) {
        BinaryImage out = erode(x, elems.front());
        for (std::size_t i = 1; i < elems.size(); ++i) out = image_union(out, erode(x, elems[i]));
        return out;
      };
    }
    case ClassKind::IntervalSup: {
      std::vector<Interval> ivs;
      for (std::size_t i = 0; i < theta.intervals().size(); ++i) ivs.push_back(theta.interval(i));
      return [ivs = std::move(ivs)](const BinaryImage& x) {
        BinaryImage out = interval_operator(x, ivs.front());
        for (std::size_t i = 1; i < ivs.size(); ++i) out = image_union(out, interval_operator(x, ivs[i]));
        return out;
      };
    }
    case ClassKind::SeqTables:
      return [tables = theta.tables()](const BinaryImage& x) {
        BinaryImage out = x;
        for (const auto& t : tables) out = apply_table(out, t.window(), t);
        return out;
      };
  }
  fail(ErrorKind::Input, "unknown class kind");
}

std::vector<Move> neighbor_moves(const ParamPoint& theta) {
  std::vector<Move> moves;
  switch (theta.kind()) {
    case ClassKind::ErosionSup: {
      const std::size_t n = theta.spec().window.size();
      for (std::size_t i = 0; i < theta.elements().size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) moves.push_back({i, j, false});
      }
      break;
    }
    case ClassKind::IntervalSup: {
      const std::size_t n = theta.spec().window.size();
      for (std::size_t i = 0; i < theta.intervals().size(); ++i) {
        const auto [lo, hi] = theta.intervals()[i];
        for (std::size_t j = 0; j < n; ++j) {
          const bool in_lo = (lo >> j) & 1U;
          const bool in_hi = (hi >> j) & 1U;
          // Adding to lower needs j ∈ upper; removing from upper needs j ∉ lower.
          if (in_lo || in_hi) moves.push_back({i, j, false});
          if (!in_lo) moves.push_back({i, j, true});
        }
      }
      break;
    }
    case ClassKind::SeqTables:
      for (std::size_t l = 0; l < theta.tables().size(); ++l) {
        for (std::size_t m = 0; m < theta.tables()[l].size(); ++m) moves.push_back({l, m, false});
      }
      break;
  }
  return moves;
}

std::size_t neighborhood_size(const ParamPoint& theta) {
  switch (theta.kind()) {
    case ClassKind::ErosionSup:
      return theta.elements().size() * theta.spec().window.size();
    case ClassKind::IntervalSup: {
      // Per bit: (0,0) -> 1 move, (0,1) -> 2 moves, (1,1) -> 1 move.
      std::size_t total = 0;
      const std::size_t n = theta.spec().window.size();
      for (const auto& i : theta.intervals()) {
        total += n + static_cast<std::size_t>(std::popcount(i.upper & ~i.lower));
      }
      return total;
    }
    case ClassKind::SeqTables: {
      std::size_t total = 0;
      for (const auto& t : theta.tables()) total += t.size();
      return total;
    }
  }
  return 0;
}

std::vector<ParamPoint> all_neighbors(const ParamPoint& theta) {
  std::vector<ParamPoint> out;
  for (const auto& m : neighbor_moves(theta)) out.push_back(theta.moved(m));
  return out;
}

std::vector<std::size_t> sample_neighbor_indices(const ParamPoint& theta, std::size_t n, Rng& rng) {
  const std::size_t size = neighborhood_size(theta);
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (n >= size) return idx;
  // Partial Fisher-Yates: the first n slots become a uniform n-subset.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  return idx;
}

std::vector<ParamPoint> sample_neighbors(const ParamPoint& theta, std::size_t n, Rng& rng) {
  const auto moves = neighbor_moves(theta);
  std::vector<ParamPoint> out;
  for (std::size_t i : sample_neighbor_indices(theta, n, rng)) out.push_back(theta.moved(moves[i]));
  return out;
}

ParamPoint random_init(const ClassSpec& spec, Rng& rng) {
  auto uniform_subset = [&rng](Mask of) {
    Mask m = 0;
    for (std::size_t j = 0; j < kMaxWindowBits + 2; ++j) {
      if (((of >> j) & 1U) && (rng.next() >> 63)) m |= Mask{1} << j;
    }
    return m;
  };
  switch (spec.kind) {
    case ClassKind::ErosionSup: {
      std::vector<Mask> e(spec.count);
      for (auto& m : e) m = uniform_subset(spec.window.full_mask());
      return ParamPoint(spec, std::move(e));
    }
    case ClassKind::IntervalSup: {
      std::vector<IntervalBits> iv(spec.count);
      for (auto& i : iv) {
        i.upper = uniform_subset(spec.window.full_mask());
        i.lower = uniform_subset(i.upper);
      }
      return ParamPoint(spec, std::move(iv));
    }
    case ClassKind::SeqTables: {
      std::vector<BooleanFunctionTable> tables;
      for (const auto& w : spec.layers) {
        BooleanFunctionTable t(w);
        for (std::size_t m = 0; m < t.size(); ++m) t.set(static_cast<Mask>(m), rng.next() >> 63);
        tables.push_back(std::move(t));
      }
      return ParamPoint(spec, std::move(tables));
    }
  }
  fail(ErrorKind::Input, "unknown class kind");
}

Window minkowski_sum(const Window& a, const Window& b, std::size_t cap) {
  std::vector<Offset> sums;
  for (const auto& p : a.offsets()) {
    for (const auto& q : b.offsets()) sums.push_back(p + q);
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  if (sums.size() > cap) {
    fail(ErrorKind::Size, "Minkowski sum has " + std::to_string(sums.size()) + " points (cap " +
                              std::to_string(cap) + ")");
  }
  return Window(std::move(sums), cap);
}

Window effective_window(const ClassSpec& spec, std::size_t cap) {
  if (spec.kind != ClassKind::SeqTables) {
    if (spec.window.size() > cap) {
      fail(ErrorKind::Size, "effective window " + to_string(spec.window) + " exceeds cap " + std::to_string(cap));
    }
    return spec.window;
  }
  Window acc = spec.layers.front();
  for (std::size_t j = 1; j < spec.layers.size(); ++j) acc = minkowski_sum(acc, spec.layers[j], kMaxWindowBits);
  if (acc.size() > cap) {
    fail(ErrorKind::Size, "effective window " + to_string(acc) + " has " + std::to_string(acc.size()) +
                              " points (cap " + std::to_string(cap) + ")");
  }
  return acc;
}

Basis basis_of_param(const ParamPoint& theta, std::size_t window_cap, std::size_t basis_cap) {
  const Window w = effective_window(theta, window_cap);
  if (w.size() > basis_cap) {
    fail(ErrorKind::Size, "effective window " + to_string(w) + " has " + std::to_string(w.size()) +
                              " points, above the basis cap " + std::to_string(basis_cap));
  }
  return basis_of(characteristic_of(realize(theta), w, window_cap), basis_cap);
}

std::size_t payload_distance(const ParamPoint& a, const ParamPoint& b) {
  if (!(a.spec() == b.spec())) fail(ErrorKind::Input, "payload_distance needs points of one class");
  std::size_t d = 0;
  switch (a.kind()) {
    case ClassKind::ErosionSup:
      for (std::size_t i = 0; i < a.elements().size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(a.elements()[i] ^ b.elements()[i]));
      }
      break;
    case ClassKind::IntervalSup:
      for (std::size_t i = 0; i < a.intervals().size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(a.intervals()[i].lower ^ b.intervals()[i].lower));
        d += static_cast<std::size_t>(std::popcount(a.intervals()[i].upper ^ b.intervals()[i].upper));
      }
      break;
    case ClassKind::SeqTables:
      for (std::size_t l = 0; l < a.tables().size(); ++l) {
        const auto& x = a.tables()[l];
        const auto& y = b.tables()[l];
        for (std::size_t m = 0; m < x.size(); ++m) d += x[static_cast<Mask>(m)] != y[static_cast<Mask>(m)];
      }
      break;
  }
  return d;
}

std::string serialize(const ParamPoint& theta) {
  std::string out = "class: " + std::string(to_string(theta.kind())) + "\n";
  const auto& spec = theta.spec();
  switch (theta.kind()) {
    case ClassKind::ErosionSup:
      out += "window: " + to_string(spec.window) + "\n";
      out += "count: " + std::to_string(spec.count) + "\n";
      for (Mask m : theta.elements()) out += "element: " + render_mask(spec.window, m) + "\n";
      break;
    case ClassKind::IntervalSup:
      out += "window: " + to_string(spec.window) + "\n";
      out += "count: " + std::to_string(spec.count) + "\n";
      for (std::size_t i = 0; i < spec.count; ++i) out += "interval: " + to_string(theta.interval(i)) + "\n";
      break;
    case ClassKind::SeqTables:
      out += "depth: " + std::to_string(spec.layers.size()) + "\n";
      for (const auto& t : theta.tables()) {
        out += "layer: " + to_string(t.window()) + "\n";
        out += "table: " + table_hex(t) + "\n";
      }
      break;
  }
  return out;
}

namespace {

struct KeyValueLine {
  std::size_t line_no;
  std::string key;
  std::string value;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<KeyValueLine> key_value_lines(std::string_view text) {
  std::vector<KeyValueLine> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      fail(ErrorKind::Parse, "line " + std::to_string(no) + ": expected 'key: value'");
    }
    out.push_back({no, trim(std::string_view(t).substr(0, colon)), trim(std::string_view(t).substr(colon + 1))});
  }
  return out;
}

std::size_t parse_count(const KeyValueLine& kv) {
  std::size_t v = 0;
  try {
    std::size_t used = 0;
    v = std::stoul(kv.value, &used);
    if (used != kv.value.size()) throw std::invalid_argument(kv.value);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "line " + std::to_string(kv.line_no) + ": '" + kv.key + "' needs a count");
  }
  return v;
}

}  // namespace

ParamPoint parse_param(std::string_view text, std::size_t cap) {
  const auto lines = key_value_lines(text);
  std::size_t pos = 0;
  auto next = [&](std::string_view key) -> const KeyValueLine& {
    if (pos >= lines.size()) fail(ErrorKind::Parse, "missing '" + std::string(key) + ":' line");
    const auto& kv = lines[pos++];
    if (kv.key != key) {
      fail(ErrorKind::Parse, "line " + std::to_string(kv.line_no) + ": expected '" + std::string(key) +
                                 ":' but found '" + kv.key + ":'");
    }
    return kv;
  };
  auto located = [](const KeyValueLine& kv, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      fail(e.kind() == ErrorKind::Size ? ErrorKind::Size : ErrorKind::Parse, "line " + std::to_string(kv.line_no) + ": " + e.what());
    }
  };

  const ClassKind kind = located(lines.empty() ? KeyValueLine{0, "", ""} : lines.front(),
                                 [&] { return parse_class_kind(next("class").value); });
  std::optional<ParamPoint> result;
  if (kind == ClassKind::SeqTables) {
    const std::size_t depth = parse_count(next("depth"));
    std::vector<BooleanFunctionTable> tables;
    for (std::size_t j = 0; j < depth; ++j) {
      const auto& lk = next("layer");
      const Window w = located(lk, [&] { return parse_window(lk.value, cap); });
      const auto& tk = next("table");
      tables.push_back(located(tk, [&] { return table_from_hex(w, tk.value); }));
    }
    result = ParamPoint::seq_tables(std::move(tables));
  } else {
    const auto& wk = next("window");
    const Window w = located(wk, [&] { return parse_window(wk.value, cap); });
    const std::size_t k = parse_count(next("count"));
    if (kind == ClassKind::ErosionSup) {
      std::vector<Mask> elems;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& ek = next("element");
        elems.push_back(located(ek, [&] { return parse_subset(w, ek.value).bits(); }));
      }
      result = located(wk, [&] { return ParamPoint::erosion_sup(w, std::move(elems)); });
    } else {
      std::vector<IntervalBits> ivs;
      for (std::size_t i = 0; i < k; ++i) {
        const auto& ik = next("interval");
        const Interval iv = located(ik, [&] { return parse_interval(w, ik.value); });
        ivs.push_back({iv.lower().bits(), iv.upper().bits()});
      }
      result = located(wk, [&] { return ParamPoint::interval_sup(w, std::move(ivs)); });
    }
  }
  if (pos != lines.size()) {
    fail(ErrorKind::Parse, "line " + std::to_string(lines[pos].line_no) + ": unexpected '" + lines[pos].key + ":'");
  }
  return *result;
}

}  // namespace latop
