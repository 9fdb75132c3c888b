#include "latop/learn.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

namespace latop {

SamplePair::SamplePair(BinaryImage in, BinaryImage out) : input(std::move(in)), target(std::move(out)) {
  if (!input.same_shape(target)) {
    fail(ErrorKind::Input, "sample pair input and target differ in shape or boundary policy");
  }
}

Dataset::Dataset(std::vector<SamplePair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) fail(ErrorKind::Input, "a dataset needs at least one pair");
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  std::vector<SamplePair> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(pairs_.at(i));
  return Dataset(std::move(out));
}

std::uint64_t Dataset::pixel_count() const {
  std::uint64_t n = 0;
  for (const auto& p : pairs_) n += p.input.pixel_count();
  return n;
}

void SLDAConfig::validate(std::size_t n_pairs) const {
  if (batch_size < 1 || batch_size > n_pairs) {
    fail(ErrorKind::Config, "batch_size must lie in [1, N] (N = " + std::to_string(n_pairs) + ")");
  }
  if (neighbors < 1) fail(ErrorKind::Config, "neighbors must be at least 1");
  if (epochs < 1) fail(ErrorKind::Config, "epochs must be at least 1");
}

ErrorEvaluator::ErrorEvaluator(const Dataset& data) : data_(&data), all_(data.size()) {
  std::iota(all_.begin(), all_.end(), std::size_t{0});
  total_pixels_ = data.pixel_count();
}

const std::vector<Mask>& ErrorEvaluator::patches_for(const Window& w, std::size_t pair) const {
  auto it = cache_.find(w);
  if (it == cache_.end()) {
    std::vector<std::vector<Mask>> per_pair;
    per_pair.reserve(data_->size());
    for (const auto& p : data_->pairs()) per_pair.push_back(patches(p.input, w));
    it = cache_.emplace(w, std::move(per_pair)).first;
  }
  return it->second[pair];
}

std::vector<std::uint8_t> ErrorEvaluator::predict(const ParamPoint& theta, std::size_t pair) const {
  const auto& in = (*data_)[pair].input;
  switch (theta.kind()) {
    case ClassKind::ErosionSup: {
      const auto& p = patches_for(theta.spec().window, pair);
      const auto& elems = theta.elements();
      std::vector<std::uint8_t> out(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Mask x = p[k];
        out[k] = std::any_of(elems.begin(), elems.end(), [x](Mask a) { return (x & a) == a; }) ? 1 : 0;
      }
      return out;
    }
    case ClassKind::IntervalSup: {
      const auto& p = patches_for(theta.spec().window, pair);
      const auto& ivs = theta.intervals();
      std::vector<std::uint8_t> out(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        const Mask x = p[k];
        out[k] = std::any_of(ivs.begin(), ivs.end(),
                             [x](const IntervalBits& i) {
                               return (x & i.lower) == i.lower && (x & ~i.upper) == 0;
                             })
                     ? 1
                     : 0;
      }
      return out;
    }
    case ClassKind::SeqTables: {
      const auto& tables = theta.tables();
      const auto& p = patches_for(tables.front().window(), pair);
      std::vector<std::uint8_t> out(p.size());
      for (std::size_t k = 0; k < p.size(); ++k) out[k] = tables.front()[p[k]] ? 1 : 0;
      if (tables.size() == 1) return out;
      BinaryImage img(in.height(), in.width(), std::move(out), in.boundary());
      for (std::size_t l = 1; l < tables.size(); ++l) img = apply_table(img, tables[l].window(), tables[l]);
      return img.pixels();
    }
  }
  return {};
}

std::uint64_t ErrorEvaluator::mismatches(const ParamPoint& theta, std::span<const std::size_t> pairs) const {
  std::uint64_t n = 0;
  for (std::size_t i : pairs) {
    const auto out = predict(theta, i);
    const auto& target = (*data_)[i].target.pixels();
    for (std::size_t k = 0; k < out.size(); ++k) n += out[k] != target[k];
  }
  return n;
}

std::uint64_t ErrorEvaluator::pixels(std::span<const std::size_t> pairs) const {
  std::uint64_t n = 0;
  for (std::size_t i : pairs) n += (*data_)[i].input.pixel_count();
  return n;
}

double ErrorEvaluator::error(const ParamPoint& theta, std::span<const std::size_t> pairs) const {
  const std::uint64_t total = pixels(pairs);
  return total == 0 ? 0.0 : static_cast<double>(mismatches(theta, pairs)) / static_cast<double>(total);
}

double empirical_error(const ParamPoint& theta, const Dataset& data, std::span<const std::size_t> batch) {
  const Operator op = realize(theta);
  std::uint64_t wrong = 0;
  std::uint64_t total = 0;
  for (std::size_t i : batch) {
    const auto& pair = data[i];
    const BinaryImage out = op(pair.input);
    for (std::size_t k = 0; k < out.pixel_count(); ++k) wrong += out.pixels()[k] != pair.target.pixels()[k];
    total += out.pixel_count();
  }
  return total == 0 ? 0.0 : static_cast<double>(wrong) / static_cast<double>(total);
}

double empirical_error(const ParamPoint& theta, const Dataset& data) {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return empirical_error(theta, data, all);
}

double intersection_over_union(const ParamPoint& theta, const Dataset& data) {
  const Operator op = realize(theta);
  std::uint64_t inter = 0;
  std::uint64_t uni = 0;
  for (const auto& pair : data.pairs()) {
    const BinaryImage out = op(pair.input);
    for (std::size_t k = 0; k < out.pixel_count(); ++k) {
      const bool a = out.pixels()[k] != 0;
      const bool b = pair.target.pixels()[k] != 0;
      inter += a && b;
      uni += a || b;
    }
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::vector<std::size_t>> partition_batches(std::size_t n_pairs, std::size_t b, Rng& rng) {
  if (b < 1 || b > n_pairs) fail(ErrorKind::Input, "batch size must lie in [1, N]");
  std::vector<std::size_t> order(n_pairs);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < n_pairs; start += b) {
    const std::size_t end = std::min(n_pairs, start + b);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

TrainResult descend(const ParamPoint& theta0, const Dataset& data, const SLDAConfig& cfg, bool exhaustive) {
  cfg.validate(data.size());
  const ErrorEvaluator eval(data);
  Rng rng(cfg.seed);

  ParamPoint theta = theta0;
  std::uint64_t best_count = eval.mismatches(theta);
  ParamPoint best = theta0;

  TrainTrace trace;
  trace.initial_error = ratio(best_count, eval.pixels());
  trace.initial_theta = serialize(theta0);

  std::size_t step = 0;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto batches = partition_batches(data.size(), cfg.batch_size, rng);
    for (std::size_t j = 0; j < batches.size(); ++j) {
      const auto& batch = batches[j];
      const std::uint64_t batch_pixels = eval.pixels(batch);
      const auto moves = neighbor_moves(theta);
      const std::size_t n = exhaustive ? moves.size() : cfg.neighbors;
      auto picked = sample_neighbor_indices(theta, n, rng);
      std::sort(picked.begin(), picked.end());

      StepRecord rec;
      rec.epoch = epoch;
      rec.batch = j + 1;
      rec.step = ++step;

      std::optional<ParamPoint> chosen;
      std::uint64_t chosen_count = 0;
      std::string chosen_text;
      for (std::size_t idx : picked) {
        ParamPoint cand = theta.moved(moves[idx]);
        const std::uint64_t c = eval.mismatches(cand, batch);
        rec.candidate_errors.push_back(ratio(c, batch_pixels));
        if (!chosen || c < chosen_count) {
          chosen = std::move(cand);
          chosen_count = c;
          chosen_text.clear();
        } else if (c == chosen_count) {
          if (chosen_text.empty()) chosen_text = serialize(*chosen);
          std::string text = serialize(cand);
          if (text < chosen_text) {
            chosen = std::move(cand);
            chosen_text = std::move(text);
          }
        }
      }

      if (chosen && cfg.require_improvement) {
        const std::uint64_t current = eval.mismatches(theta, batch);
        if (current < chosen_count) {
          chosen = theta;
          chosen_count = current;
        }
      }
      if (chosen) {
        theta = std::move(*chosen);
      } else {
        chosen_count = eval.mismatches(theta, batch);
      }
      rec.batch_error = ratio(chosen_count, batch_pixels);
      rec.theta = serialize(theta);
      trace.steps.push_back(std::move(rec));
    }

    const std::uint64_t full = eval.mismatches(theta);
    EpochRecord er{epoch, ratio(full, eval.pixels()), false};
    if (full < best_count) {
      best_count = full;
      best = theta;
      er.best_updated = true;
    }
    trace.epochs.push_back(er);
  }

  return TrainResult{std::move(best), ratio(best_count, eval.pixels()), std::move(trace)};
}

}  // namespace

TrainResult slda(const ParamPoint& theta0, const Dataset& data, const SLDAConfig& cfg) {
  return descend(theta0, data, cfg, false);
}

TrainResult lda(const ParamPoint& theta0, const Dataset& data, std::size_t epochs) {
  SLDAConfig cfg;
  cfg.batch_size = data.size();
  cfg.neighbors = std::max<std::size_t>(1, neighborhood_size(theta0));
  cfg.epochs = epochs;
  cfg.seed = 0;
  return descend(theta0, data, cfg, true);
}

double holdout_error(const ParamPoint& theta, const Dataset& test) { return ErrorEvaluator(test).error(theta); }

std::string theta_digest(const std::string& serialization) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(serialization)));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
  out << "epoch,batch,step,batch_error,full_error_if_epoch_end,theta_digest\n";
  out << "0,0,0,," << format_double(trace.initial_error) << ',' << theta_digest(trace.initial_theta) << '\n';
  std::size_t e = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const bool epoch_end = i + 1 == trace.steps.size() || trace.steps[i + 1].epoch != s.epoch;
    out << s.epoch << ',' << s.batch << ',' << s.step << ',' << format_double(s.batch_error) << ',';
    if (epoch_end && e < trace.epochs.size()) out << format_double(trace.epochs[e++].full_error);
    out << ',' << theta_digest(s.theta) << '\n';
  }
}

void write_trace_steps_jsonl(std::ostream& out, const TrainTrace& trace) {
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json j;
    j["epoch"] = s.epoch;
    j["batch"] = s.batch;
    j["step"] = s.step;
    j["batch_error"] = s.batch_error;
    j["candidate_errors"] = s.candidate_errors;
    j["theta"] = s.theta;
    out << j.dump() << '\n';
  }
}

}  // namespace latop
