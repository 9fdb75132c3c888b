#include "latop/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace latop::cli {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"class", "erosion-sup", "parameter class: erosion-sup | interval-sup | seq-tables"},
      {"window", "3x3", "window for erosion-sup / interval-sup: RxC or {(r,c),...}"},
      {"count", "1", "number of structuring elements or intervals"},
      {"layers", nullptr, "seq-tables layer windows separated by ';'"},
      {"init", nullptr, "file holding the initial parameter point (default: random)"},
      {"batch_size", "0", "pairs per batch; 0 = whole sample"},
      {"neighbors", "0", "neighbours sampled per step; 0 = whole neighbourhood"},
      {"epochs", "10", "training epochs"},
      {"seed", "0", "seed for every random draw of the run"},
      {"require_improvement", "false", "stay put when no sampled neighbour beats the current point"},
      {"boundary", "zero-pad", "image boundary policy: zero-pad | toroidal"},
      {"window_cap", "20", "largest window that may be tabulated"},
      {"basis_cap", "16", "largest window for basis extraction"},
      {"output", "out", "output directory"},
      {"manifest", nullptr, "training manifest (TSV)"},
      {"max_window", nullptr, "enables window selection over subsets of this window"},
      {"depth", "1", "number of layers in window selection"},
      {"min_size", "1", "smallest layer window in window selection"},
      {"origin_pinned", "true", "keep the origin in every layer window"},
      {"outer_neighbors", "4", "window sequences sampled per outer step"},
      {"outer_epochs", "10", "outer steps of window selection"},
      {"validation_fraction", "0.25", "share of pairs held out for validation"},
      {"inner_lda", "false", "fit each node with deterministic full descent"},
  };
  return keys;
}

namespace {

const ConfigKey* find_key(std::string_view name) {
  const auto& keys = config_keys();
  auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey& k) { return name == k.name; });
  return it == keys.end() ? nullptr : &*it;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t as_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    fail(ErrorKind::Config, "'" + key + "' needs a non-negative integer, got '" + v + "'");
  }
  return out;
}

double as_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::Config, "'" + key + "' needs a number, got '" + v + "'");
}

bool as_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::Config, "'" + key + "' needs true or false, got '" + v + "'");
}

template <typename Fn>
auto for_key(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(ErrorKind::Config, "'" + key + "': " + e.what());
  }
}

}  // namespace

Settings Settings::parse(std::string_view text) {
  Settings s;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Config, "config line " + std::to_string(no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    try {
      s.set(key, value);
    } catch (const Error& e) {
      fail(ErrorKind::Config, "config line " + std::to_string(no) + ": " + e.what());
    }
  }
  return s;
}

void Settings::set(const std::string& key, const std::string& value) {
  if (!find_key(key)) fail(ErrorKind::Config, "unknown config key '" + key + "'");
  values_[key] = value;
}

std::optional<std::string> Settings::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  const ConfigKey* k = find_key(key);
  if (k && k->default_value) return std::string(k->default_value);
  return std::nullopt;
}

Window parse_window_spec(std::string_view text, std::size_t cap) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_window(t, cap);
  const auto x = t.find('x');
  if (x == std::string::npos) fail(ErrorKind::Parse, "window '" + t + "' is neither RxC nor {(r,c),...}");
  int rows = 0;
  int cols = 0;
  auto r1 = std::from_chars(t.data(), t.data() + x, rows);
  auto r2 = std::from_chars(t.data() + x + 1, t.data() + t.size(), cols);
  if (r1.ec != std::errc{} || r1.ptr != t.data() + x || r2.ec != std::errc{} || r2.ptr != t.data() + t.size()) {
    fail(ErrorKind::Parse, "window '" + t + "' is neither RxC nor {(r,c),...}");
  }
  return Window::rectangle(rows, cols, cap);
}

RunConfig build_run_config(const Settings& s) {
  RunConfig c;
  c.settings = s;
  auto str = [&](const char* key) { return *s.get(key); };
  auto uint = [&](const char* key) { return as_uint(key, str(key)); };

  c.window_cap = static_cast<std::size_t>(uint("window_cap"));
  c.basis_cap = static_cast<std::size_t>(uint("basis_cap"));
  if (c.window_cap > kMaxWindowBits) fail(ErrorKind::Config, "'window_cap' may not exceed 30");

  const ClassKind kind = for_key("class", [&] { return parse_class_kind(str("class")); });
  if (kind == ClassKind::SeqTables) {
    if (!s.has("layers") && !s.has("max_window")) fail(ErrorKind::Config, "seq-tables needs 'layers'");
    if (s.has("layers")) {
      std::vector<Window> layers;
      std::string rest = str("layers");
      std::size_t start = 0;
      while (start <= rest.size()) {
        const auto semi = rest.find(';', start);
        const std::string part = rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
        layers.push_back(for_key("layers", [&] { return parse_window_spec(part, c.window_cap); }));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      c.class_spec = for_key("layers", [&] { return ClassSpec::seq_tables(std::move(layers)); });
    } else {
      c.class_spec.kind = ClassKind::SeqTables;
    }
  } else {
    const Window w = for_key("window", [&] { return parse_window_spec(str("window"), c.window_cap); });
    const auto k = static_cast<std::size_t>(uint("count"));
    c.class_spec = for_key("count", [&] {
      return kind == ClassKind::ErosionSup ? ClassSpec::erosion_sup(w, k) : ClassSpec::interval_sup(w, k);
    });
  }

  if (auto v = s.get("init")) c.init = *v;
  if (auto v = s.get("manifest")) c.manifest = *v;
  c.output = str("output");
  c.boundary = for_key("boundary", [&] { return parse_boundary(str("boundary")); });

  c.slda.batch_size = static_cast<std::size_t>(uint("batch_size"));
  c.slda.neighbors = static_cast<std::size_t>(uint("neighbors"));
  c.slda.epochs = static_cast<std::size_t>(uint("epochs"));
  c.slda.seed = uint("seed");
  c.slda.require_improvement = as_bool("require_improvement", str("require_improvement"));
  if (c.slda.epochs < 1) fail(ErrorKind::Config, "'epochs' must be at least 1");

  if (auto mw = s.get("max_window")) {
    if (kind != ClassKind::SeqTables) fail(ErrorKind::Config, "'max_window' requires class = seq-tables");
    WindowLatticeSpec ls;
    ls.max_window = for_key("max_window", [&] { return parse_window_spec(*mw, c.window_cap); });
    ls.depth = static_cast<std::size_t>(uint("depth"));
    ls.min_size = static_cast<std::size_t>(uint("min_size"));
    ls.origin_pinned = as_bool("origin_pinned", str("origin_pinned"));
    ls.validate();
    c.lattice = ls;
    c.outer.neighbors = static_cast<std::size_t>(uint("outer_neighbors"));
    c.outer.epochs = static_cast<std::size_t>(uint("outer_epochs"));
    c.outer.validation_fraction = as_double("validation_fraction", str("validation_fraction"));
    c.outer.inner_lda = as_bool("inner_lda", str("inner_lda"));
    c.outer.seed = c.slda.seed;
    c.outer.inner = c.slda;
    c.outer.validate();
  }
  return c;
}

std::string RunConfig::render() const {
  std::string out;
  for (const auto& k : config_keys()) {
    if (auto v = settings.get(k.name)) out += std::string(k.name) + " = " + *v + "\n";
  }
  return out;
}

}  // namespace latop::cli
