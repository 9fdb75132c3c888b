#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "latop/latop.hpp"
#include "support.hpp"

namespace latop {
namespace {

using testing::random_image;

const Window kW3x3 = Window::rectangle(3, 3);

Dataset planted(const ParamPoint& target, std::size_t n, int side, double density, std::uint64_t seed) {
  Rng rng(seed);
  const Operator op = realize(target);
  std::vector<SamplePair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    BinaryImage x = random_image(rng, side, side, density, Boundary::Toroidal);
    BinaryImage y = op(x);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  return Dataset(std::move(pairs));
}

Mask bits_of(const Window& w, std::initializer_list<Offset> members) {
  std::vector<Offset> m(members);
  return mask_of(w, m);
}

ParamPoint planted_pair() {
  return ParamPoint::erosion_sup(kW3x3, {bits_of(kW3x3, {kOrigin, {0, 1}}), bits_of(kW3x3, {{-1, 0}, {1, 0}})});
}

TEST(EmpiricalError, Examples) {
  Rng rng(1);
  const auto id = ParamPoint::erosion_sup(kW3x3, {bits_of(kW3x3, {kOrigin})});
  std::vector<SamplePair> same, flipped;
  for (int i = 0; i < 3; ++i) {
    const BinaryImage x = random_image(rng, 6, 6, 0.5, Boundary::ZeroPad);
    same.emplace_back(x, x);
    flipped.emplace_back(x, complement(x));
  }
  EXPECT_EQ(empirical_error(id, Dataset(same)), 0.0);
  EXPECT_EQ(empirical_error(id, Dataset(flipped)), 1.0);
  EXPECT_EQ(holdout_error(id, Dataset(flipped)), 1.0);

  const BinaryImage x = testing::image_with_ones(2, 2, {{0, 0}});
  const BinaryImage y = testing::image_with_ones(2, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(empirical_error(id, Dataset({SamplePair(x, y)})), 0.25);
}

TEST(EmpiricalError, EvaluatorAgreesWithRealizeRoute) {
  Rng rng(2);
  std::vector<SamplePair> pairs;
  for (int i = 0; i < 4; ++i) {
    pairs.emplace_back(random_image(rng, 9, 7, 0.5, Boundary::Toroidal), random_image(rng, 9, 7, 0.5, Boundary::Toroidal));
  }
  const Dataset data(std::move(pairs));
  const ErrorEvaluator eval(data);
  const std::vector<ClassSpec> specs{
      ClassSpec::erosion_sup(kW3x3, 2),
      ClassSpec::interval_sup(kW3x3, 2),
      ClassSpec::seq_tables({Window({kOrigin, {0, 1}, {1, 0}}), Window({kOrigin, {-1, -1}})}),
  };
  const std::vector<std::size_t> batch{3, 1};
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto theta = random_init(spec, rng);
      EXPECT_EQ(eval.error(theta), empirical_error(theta, data));
      EXPECT_EQ(eval.error(theta, batch), empirical_error(theta, data, batch));
    }
  }
}

TEST(SamplePair, ShapeMismatchIsAnError) {
  EXPECT_THROW(SamplePair(BinaryImage(2, 2), BinaryImage(2, 3)), Error);
  EXPECT_THROW(Dataset(std::vector<SamplePair>{}), Error);
}

TEST(PartitionBatches, Examples) {
  Rng rng(3);
  const auto parts = partition_batches(5, 2, rng);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].size(), 2u);
  EXPECT_EQ(parts[1].size(), 2u);
  EXPECT_EQ(parts[2].size(), 1u);

  Rng a(4), b(4);
  EXPECT_EQ(partition_batches(17, 4, a), partition_batches(17, 4, b));

  Rng c(5);
  const auto whole = partition_batches(6, 6, c);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(std::set<std::size_t>(whole[0].begin(), whole[0].end()).size(), 6u);
}

TEST(PartitionBatches, EveryPairOncePerEpoch) {
  Rng rng(6);
  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t b = 1; b <= n; ++b) {
      const auto parts = partition_batches(n, b, rng);
      EXPECT_EQ(parts.size(), (n + b - 1) / b);
      std::vector<std::size_t> all;
      for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> expect(n);
      std::iota(expect.begin(), expect.end(), std::size_t{0});
      EXPECT_EQ(all, expect);
    }
  }
}

TEST(SLDAConfig, Validation) {
  EXPECT_THROW((SLDAConfig{0, 1, 1, 0, false}.validate(5)), Error);
  EXPECT_THROW((SLDAConfig{6, 1, 1, 0, false}.validate(5)), Error);
  EXPECT_THROW((SLDAConfig{1, 0, 1, 0, false}.validate(5)), Error);
  EXPECT_NO_THROW((SLDAConfig{5, 1, 1, 0, false}.validate(5)));
}

TEST(Slda, ZeroErrorStartIsKept) {
  const auto target = planted_pair();
  const Dataset data = planted(target, 4, 12, 0.5, 7);
  const auto r = slda(target, data, SLDAConfig{2, 3, 5, 11, false});
  EXPECT_EQ(r.best_param, target);
  EXPECT_EQ(r.best_error, 0.0);
  EXPECT_EQ(r.trace.steps.size(), 10u);
}

TEST(Slda, OneExhaustiveEpochFindsTheZeroErrorNeighbour) {
  const auto target = planted_pair();
  const Dataset data = planted(target, 6, 16, 0.5, 8);
  // θ0 differs from the target in one bit.
  auto elems = target.elements();
  elems[1] ^= Mask{1} << 8;
  const auto theta0 = ParamPoint::erosion_sup(kW3x3, elems);

  const auto nbrs = all_neighbors(theta0);
  std::vector<double> errs;
  for (const auto& n : nbrs) errs.push_back(empirical_error(n, data));
  const auto best = std::min_element(errs.begin(), errs.end()) - errs.begin();
  ASSERT_EQ(errs[static_cast<std::size_t>(best)], 0.0);

  const auto r = slda(theta0, data, SLDAConfig{data.size(), neighborhood_size(theta0), 1, 3, false});
  EXPECT_EQ(r.best_param, nbrs[static_cast<std::size_t>(best)]);
  EXPECT_EQ(r.best_error, 0.0);
  ASSERT_EQ(r.trace.steps.size(), 1u);
  EXPECT_EQ(r.trace.steps[0].candidate_errors, errs);
}

TEST(Slda, Deterministic) {
  const Dataset data = planted(planted_pair(), 10, 12, 0.4, 9);
  Rng init(1);
  const auto theta0 = random_init(ClassSpec::erosion_sup(kW3x3, 2), init);
  const SLDAConfig cfg{3, 4, 6, 21, false};
  const auto a = slda(theta0, data, cfg);
  const auto b = slda(theta0, data, cfg);
  EXPECT_EQ(a.best_param, b.best_param);
  EXPECT_EQ(a.best_error, b.best_error);
  EXPECT_EQ(a.trace, b.trace);
  std::ostringstream ca, cb;
  write_trace_csv(ca, a.trace);
  write_trace_csv(cb, b.trace);
  EXPECT_EQ(ca.str(), cb.str());
}

// Re-derives the trace invariants from the recorded θ serializations.
void check_trace(const ParamPoint& theta0, const Dataset& data, const SLDAConfig& cfg, const TrainResult& r) {
  const std::size_t batches = (data.size() + cfg.batch_size - 1) / cfg.batch_size;
  ASSERT_EQ(r.trace.steps.size(), cfg.epochs * batches);
  ASSERT_EQ(r.trace.epochs.size(), cfg.epochs);
  EXPECT_EQ(r.trace.initial_error, empirical_error(theta0, data));
  EXPECT_LE(r.best_error, r.trace.initial_error);

  ParamPoint prev = theta0;
  double running = r.trace.initial_error;
  ParamPoint running_best = theta0;
  for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
    const auto& s = r.trace.steps[i];
    EXPECT_EQ(s.step, i + 1);
    EXPECT_EQ(s.epoch, i / batches + 1);
    EXPECT_EQ(s.batch, i % batches + 1);
    const ParamPoint cur = parse_param(s.theta);
    EXPECT_EQ(payload_distance(prev, cur), 1u);
    EXPECT_EQ(*std::min_element(s.candidate_errors.begin(), s.candidate_errors.end()), s.batch_error);
    if (s.batch == batches) {
      const auto& e = r.trace.epochs[s.epoch - 1];
      const double full = empirical_error(cur, data);
      EXPECT_EQ(e.full_error, full);
      EXPECT_EQ(e.best_updated, full < running);
      if (full < running) {
        running = full;
        running_best = cur;
      }
    }
    prev = cur;
  }
  EXPECT_EQ(r.best_error, running);
  EXPECT_EQ(r.best_param, running_best);
}

TEST(Slda, TraceInvariants) {
  const Dataset data = planted(planted_pair(), 7, 10, 0.4, 10);
  Rng rng(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto theta0 = random_init(ClassSpec::erosion_sup(kW3x3, 2), rng);
    const SLDAConfig cfg{3, 5, 4, seed, false};
    check_trace(theta0, data, cfg, slda(theta0, data, cfg));
  }
  const auto theta0 = random_init(ClassSpec::interval_sup(kW3x3, 1), rng);
  const SLDAConfig cfg{2, 6, 3, 99, false};
  check_trace(theta0, data, cfg, slda(theta0, data, cfg));
}

TEST(Slda, RequireImprovementNeverRaisesBatchError) {
  const Dataset data = planted(planted_pair(), 8, 10, 0.4, 12);
  Rng rng(3);
  const auto theta0 = random_init(ClassSpec::erosion_sup(kW3x3, 2), rng);
  const auto r = slda(theta0, data, SLDAConfig{data.size(), 4, 10, 5, true});
  double prev = r.trace.initial_error;
  for (const auto& s : r.trace.steps) {
    EXPECT_LE(s.batch_error, prev);
    prev = s.batch_error;
  }
  EXPECT_LE(r.best_error, r.trace.initial_error);
}

TEST(Lda, OneBitClassReturnsTheBetterPoint) {
  const Window w({kOrigin});
  Rng rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<SamplePair> pairs;
    for (int i = 0; i < 3; ++i) {
      pairs.emplace_back(random_image(rng, 5, 5, 0.5, Boundary::ZeroPad), random_image(rng, 5, 5, 0.5, Boundary::ZeroPad));
    }
    const Dataset data(std::move(pairs));
    const auto empty = ParamPoint::erosion_sup(w, {0});
    const auto origin = ParamPoint::erosion_sup(w, {1});
    const double e0 = empirical_error(empty, data);
    const double e1 = empirical_error(origin, data);
    for (const auto& start : {empty, origin}) {
      const auto r = lda(start, data, 1);
      EXPECT_EQ(r.best_error, std::min(e0, e1));
      if (e0 != e1) EXPECT_EQ(r.best_param, e0 < e1 ? empty : origin);
      else EXPECT_EQ(r.best_param, start);
    }
  }
}

TEST(Lda, ExhaustiveSldaMatchesAcrossSeeds) {
  const Dataset data = planted(planted_pair(), 6, 10, 0.4, 13);
  Rng rng(5);
  const auto theta0 = random_init(ClassSpec::erosion_sup(kW3x3, 2), rng);
  const auto ref = lda(theta0, data, 3);
  for (std::uint64_t seed : {1u, 2u, 77u}) {
    const auto r = slda(theta0, data, SLDAConfig{data.size(), neighborhood_size(theta0), 3, seed, false});
    EXPECT_EQ(r.trace, ref.trace);
    EXPECT_EQ(r.best_param, ref.best_param);
  }
  EXPECT_EQ(lda(theta0, data, 3).trace, ref.trace);
}

TEST(Metrics, IntersectionOverUnion) {
  const Window w({kOrigin});
  const auto id = ParamPoint::erosion_sup(w, {1});
  const BinaryImage x = testing::image_with_ones(2, 2, {{0, 0}});
  const BinaryImage y = testing::image_with_ones(2, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(intersection_over_union(id, Dataset({SamplePair(x, y)})), 0.5);
  const BinaryImage z(2, 2);
  EXPECT_EQ(intersection_over_union(id, Dataset({SamplePair(z, z)})), 1.0);
}

TEST(TraceExport, CsvShape) {
  const Dataset data = planted(planted_pair(), 5, 8, 0.4, 14);
  Rng rng(6);
  const auto theta0 = random_init(ClassSpec::erosion_sup(kW3x3, 2), rng);
  const auto r = slda(theta0, data, SLDAConfig{2, 3, 2, 1, false});
  std::ostringstream csv;
  write_trace_csv(csv, r.trace);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epoch,batch,step,batch_error,full_error_if_epoch_end,theta_digest");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0,0,0,,", 0), 0u);
  std::size_t rows = 0, closing = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto fields = std::count(line.begin(), line.end(), ',');
    EXPECT_EQ(fields, 5);
    if (line.find(",,") == std::string::npos) ++closing;
  }
  EXPECT_EQ(rows, r.trace.steps.size());
  EXPECT_EQ(closing, 2u);

  std::ostringstream jsonl;
  write_trace_steps_jsonl(jsonl, r.trace);
  const std::string steps = jsonl.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(steps.begin(), steps.end(), '\n')), r.trace.steps.size());
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

}  // namespace
}  // namespace latop
