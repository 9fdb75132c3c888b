#pragma once

// The CLI subcommands as library calls. Each one is a thin adapter over the
// core library: every number it prints can be recomputed by direct calls.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latop/cli/config.hpp"
#include "latop/cli/io.hpp"
#include "latop/learn.hpp"
#include "latop/modelsel.hpp"
#include "latop/params.hpp"

namespace latop::cli {

struct GenOptions {
  std::size_t count = 10;
  int height = 32;
  int width = 32;
  double density = 0.5;
  double noise_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Bernoulli(density) toroidal inputs; targets are realize(target)(input) with
/// each pixel flipped independently with probability noise_rate.
Dataset gen_dataset(const ParamPoint& target, const GenOptions& opt);

/// Writes pair_NNN_input.pbm / pair_NNN_target.pbm, manifest.tsv and
/// provenance.txt into `dir`. Returns the manifest.
Manifest write_generated(const Dataset& data, const ParamPoint& target, const GenOptions& opt,
                         const std::filesystem::path& dir);

struct TrainOutcome {
  std::optional<TrainResult> result;
  std::optional<HierarchicalResult> selection;
  std::filesystem::path output;
};

/// Trains per `cfg` on the pairs of `manifest` and writes theta.txt,
/// trace.csv, trace_steps.jsonl and result.txt (plus modelsel.txt when window
/// selection is configured) into cfg.output.
TrainOutcome cmd_train(const RunConfig& cfg, const Manifest& manifest, std::ostream& log);

struct BasisOutcome {
  Basis basis;
  PropertyReport report;
};

/// Prints the basis of θ (canonical order) and its property flags.
BasisOutcome cmd_basis(const ParamPoint& theta, std::ostream& out, std::size_t window_cap = kDefaultWindowCap,
                       std::size_t basis_cap = kDefaultBasisCap);

struct EvalOutcome {
  double pixel_error = 0.0;
  double iou = 0.0;
  std::size_t pairs = 0;
};

EvalOutcome cmd_eval(const ParamPoint& theta, const Manifest& manifest, Boundary boundary, std::ostream& out);

struct TraceSummary {
  std::size_t steps = 0;
  std::size_t epochs = 0;
  double initial_error = 0.0;
  double best_error = 0.0;
  std::size_t best_epoch = 0;  // 0: the initial point
  std::vector<double> epoch_errors;
  bool consistent = true;
  std::vector<std::string> problems;
};

/// Recomputes the best epoch-end error of a trace CSV while checking step
/// numbering and that each epoch reports exactly one full error.
TraceSummary inspect_trace(std::string_view csv);
TraceSummary cmd_inspect_trace(const std::filesystem::path& csv, std::ostream& out);

std::string basis_listing(const Basis& b, const PropertyReport& r);

}  // namespace latop::cli
