#pragma once

// Run configuration: a flat "key = value" document. Every key is listed in
// config_keys(); anything else is rejected before work starts.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latop/modelsel.hpp"
#include "latop/params.hpp"

namespace latop::cli {

struct ConfigKey {
  const char* name;
  const char* default_value;  // nullptr: no default (optional key)
  const char* help;
};

/// Documented keys in rendering order.
const std::vector<ConfigKey>& config_keys();

/// Raw key/value settings; later assignments override earlier ones.
class Settings {
 public:
  /// Parses "key = value" lines; '#' starts a comment line.
  static Settings parse(std::string_view text);

  /// Unknown keys are config errors.
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Windows accept "RxC" (centered, odd sides) or an explicit "{(r,c),...}".
Window parse_window_spec(std::string_view text, std::size_t cap);

struct RunConfig {
  ClassSpec class_spec;
  std::optional<std::filesystem::path> init;
  SLDAConfig slda;           // batch_size / neighbors of 0 mean "all"
  Boundary boundary = Boundary::ZeroPad;
  std::size_t window_cap = kDefaultWindowCap;
  std::size_t basis_cap = kDefaultBasisCap;
  std::filesystem::path output = "out";
  std::optional<std::filesystem::path> manifest;

  // Present when max_window is set: train runs the hierarchical search.
  std::optional<WindowLatticeSpec> lattice;
  OuterConfig outer;

  /// Canonical "key = value" rendering of every effective setting.
  std::string render() const;
  /// Settings the run was built from, in canonical order.
  Settings settings;
};

/// Builds and validates a RunConfig. Throws Config errors with the key name.
RunConfig build_run_config(const Settings& s);

}  // namespace latop::cli
