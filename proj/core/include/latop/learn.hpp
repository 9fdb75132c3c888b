#pragma once

// Empirical risk and stochastic lattice descent.
//
// Loss is the pooled pixel mismatch fraction: total mismatched pixels over
// total pixels across the pairs considered.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "latop/morphology.hpp"
#include "latop/params.hpp"
#include "latop/rng.hpp"

namespace latop {

struct SamplePair {
  BinaryImage input;
  BinaryImage target;

  /// Shapes (and boundary policies) must agree.
  SamplePair(BinaryImage in, BinaryImage out);
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<SamplePair> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const SamplePair& operator[](std::size_t i) const { return pairs_[i]; }
  const std::vector<SamplePair>& pairs() const { return pairs_; }

  Dataset select(std::span<const std::size_t> indices) const;
  std::uint64_t pixel_count() const;

 private:
  std::vector<SamplePair> pairs_;
};

struct SLDAConfig {
  std::size_t batch_size = 1;
  std::size_t neighbors = 1;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;
  /// Keep θ when it beats every sampled neighbour on the batch. Off by
  /// default; the plain algorithm always moves.
  bool require_improvement = false;

  void validate(std::size_t n_pairs) const;
};

struct StepRecord {
  std::size_t epoch = 0;
  std::size_t batch = 0;  // 1-based within the epoch
  std::size_t step = 0;   // 1-based over the whole run
  std::vector<double> candidate_errors;  // canonical neighbour order
  std::string theta;                     // serialization after the move
  double batch_error = 0.0;              // chosen θ on this batch

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EpochRecord {
  std::size_t epoch = 0;
  double full_error = 0.0;
  bool best_updated = false;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainTrace {
  double initial_error = 0.0;
  std::string initial_theta;
  std::vector<StepRecord> steps;
  std::vector<EpochRecord> epochs;

  friend bool operator==(const TrainTrace&, const TrainTrace&) = default;
};

struct TrainResult {
  ParamPoint best_param;
  double best_error = 0.0;
  TrainTrace trace;
};

/// Counts mismatches of realized parameters against the targets of a dataset.
/// Patch masks of the inputs are cached per window, so repeated evaluations
/// of points in one class touch each pixel once.
class ErrorEvaluator {
 public:
  explicit ErrorEvaluator(const Dataset& data);

  std::uint64_t mismatches(const ParamPoint& theta, std::span<const std::size_t> pairs) const;
  std::uint64_t mismatches(const ParamPoint& theta) const { return mismatches(theta, all_); }
  std::uint64_t pixels(std::span<const std::size_t> pairs) const;
  std::uint64_t pixels() const { return total_pixels_; }

  double error(const ParamPoint& theta, std::span<const std::size_t> pairs) const;
  double error(const ParamPoint& theta) const { return error(theta, all_); }

  /// Predicted image for one pair.
  std::vector<std::uint8_t> predict(const ParamPoint& theta, std::size_t pair) const;

 private:
  const std::vector<Mask>& patches_for(const Window& w, std::size_t pair) const;

  const Dataset* data_;
  std::vector<std::size_t> all_;
  std::uint64_t total_pixels_ = 0;
  mutable std::map<Window, std::vector<std::vector<Mask>>> cache_;
};

/// Reference route: realize θ and compare images pixel by pixel.
double empirical_error(const ParamPoint& theta, const Dataset& data);
double empirical_error(const ParamPoint& theta, const Dataset& data, std::span<const std::size_t> batch);

/// Pooled intersection over union of predictions and targets (1 when both
/// are empty). Reporting metric only.
double intersection_over_union(const ParamPoint& theta, const Dataset& data);

/// Random permutation of 0..N-1 cut into ⌈N/b⌉ consecutive batches.
std::vector<std::vector<std::size_t>> partition_batches(std::size_t n_pairs, std::size_t b, Rng& rng);
inline std::vector<std::vector<std::size_t>> partition_batches(const Dataset& data, std::size_t b, Rng& rng) {
  return partition_batches(data.size(), b, rng);
}

/// Stochastic lattice descent. Each batch moves θ to the sampled neighbour
/// with the least batch error (ties: smallest serialization); the best point
/// seen at epoch ends, by strict improvement of the full-sample error, is
/// returned.
TrainResult slda(const ParamPoint& theta0, const Dataset& data, const SLDAConfig& cfg);

/// Deterministic lattice descent: full batch and the whole neighbourhood.
TrainResult lda(const ParamPoint& theta0, const Dataset& data, std::size_t epochs);

double holdout_error(const ParamPoint& theta, const Dataset& test);

/// Hex FNV-1a digest of a serialization.
std::string theta_digest(const std::string& serialization);

/// Exact shortest round-trip decimal form used in every text artifact.
std::string format_double(double v);

// Trace export. CSV columns:
//   epoch,batch,step,batch_error,full_error_if_epoch_end,theta_digest
// The first data row (epoch 0, step 0) holds the initial point's full error.
void write_trace_csv(std::ostream& out, const TrainTrace& trace);
/// One JSON object per step with candidate errors and the θ serialization.
void write_trace_steps_jsonl(std::ostream& out, const TrainTrace& trace);

}  // namespace latop
