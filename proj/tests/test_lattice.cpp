#include <gtest/gtest.h>

#include <set>

#include "latop/lattice.hpp"
#include "support.hpp"

namespace latop {
namespace {

const Window kW3x3 = Window::rectangle(3, 3);
const Offset kRight{0, 1};

Subset sub(const Window& w, std::initializer_list<Offset> members) {
  std::vector<Offset> m(members);
  return Subset::of(w, m);
}

TEST(Window, SortsIntoRowMajorOrder) {
  Window w({{1, 0}, {0, 0}, {-1, 1}, {0, -1}});
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(w[0], (Offset{-1, 1}));
  EXPECT_EQ(w[1], (Offset{0, -1}));
  EXPECT_EQ(w[2], (Offset{0, 0}));
  EXPECT_EQ(w[3], (Offset{1, 0}));
  EXPECT_EQ(w.index_of({1, 0}), 3);
  EXPECT_EQ(w.index_of({5, 5}), -1);
  EXPECT_EQ(w.row_radius(), 1);
  EXPECT_EQ(w.col_radius(), 1);
}

TEST(Window, RejectsDuplicatesAndOversize) {
  try {
    Window({{0, 0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Input);
  }
  try {
    Window::rectangle(5, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Size);
  }
  EXPECT_EQ(Window::rectangle(5, 5, 25).size(), 25u);
}

TEST(Leq, SubsetExamples) {
  EXPECT_TRUE(leq(Subset::empty(kW3x3), sub(kW3x3, {kOrigin})));
  EXPECT_FALSE(leq(sub(kW3x3, {kOrigin}), Subset::empty(kW3x3)));
}

TEST(Leq, IntervalExamples) {
  const Interval narrow(sub(kW3x3, {kOrigin}), sub(kW3x3, {kOrigin, kRight}));
  const Interval whole(Subset::empty(kW3x3), Subset::full(kW3x3));
  EXPECT_TRUE(leq(narrow, whole));
  EXPECT_FALSE(leq(whole, narrow));

  const Interval a(sub(kW3x3, {kOrigin}), Subset::full(kW3x3));
  const Interval b(sub(kW3x3, {kRight}), Subset::full(kW3x3));
  EXPECT_FALSE(leq(a, b));
  EXPECT_FALSE(leq(b, a));
}

TEST(Leq, MismatchedWindowsAreInputErrors) {
  const Window other = testing::line_window(2);
  EXPECT_THROW(leq(Subset::empty(kW3x3), Subset::empty(other)), Error);
}

// Enumerates every subset (and every interval) of a small window and checks
// the partial-order axioms against the set-inclusion definition.
class LeqOrderAxioms : public ::testing::TestWithParam<std::size_t> {};

TEST_P(LeqOrderAxioms, SubsetOrderIsAPartialOrder) {
  const Window w = testing::line_window(GetParam());
  const Mask full = w.full_mask();
  for (Mask a = 0; a <= full; ++a) {
    const Subset sa(w, a);
    EXPECT_TRUE(leq(sa, sa));
    for (Mask b = 0; b <= full; ++b) {
      const Subset sb(w, b);
      EXPECT_EQ(leq(sa, sb), (a & ~b) == 0);
      if (leq(sa, sb) && leq(sb, sa)) EXPECT_EQ(a, b);
      for (Mask c = 0; c <= full; ++c) {
        const Subset sc(w, c);
        if (leq(sa, sb) && leq(sb, sc)) EXPECT_TRUE(leq(sa, sc));
      }
    }
  }
}

TEST_P(LeqOrderAxioms, IntervalOrderIsAPartialOrderMatchingContainment) {
  const Window w = testing::line_window(GetParam());
  const Mask full = w.full_mask();
  std::vector<Interval> all;
  for (Mask hi = 0; hi <= full; ++hi) {
    for (Mask lo = 0; lo <= full; ++lo) {
      if ((lo & ~hi) == 0) all.emplace_back(w, lo, hi);
    }
  }
  auto members = [&](const Interval& i) {
    std::set<Mask> s;
    for (Mask x = 0; x <= full; ++x) {
      if (i.contains(x)) s.insert(x);
    }
    return s;
  };
  for (const auto& a : all) {
    EXPECT_TRUE(leq(a, a));
    const auto ma = members(a);
    for (const auto& b : all) {
      const auto mb = members(b);
      const bool contained = std::includes(mb.begin(), mb.end(), ma.begin(), ma.end());
      EXPECT_EQ(leq(a, b), contained);
      if (leq(a, b) && leq(b, a)) EXPECT_EQ(a, b);
    }
  }
  if (GetParam() <= 3) {
    for (const auto& a : all) {
      for (const auto& b : all) {
        if (!leq(a, b)) continue;
        for (const auto& c : all) {
          if (leq(b, c)) EXPECT_TRUE(leq(a, c));
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallWindows, LeqOrderAxioms, ::testing::Values(0u, 1u, 2u, 3u, 4u));

TEST(MaxAntichain, Examples) {
  const Interval whole(kW3x3, 0, kW3x3.full_mask());
  const Interval from_origin(sub(kW3x3, {kOrigin}), Subset::full(kW3x3));
  const std::vector<Interval> in1{whole, from_origin};
  EXPECT_EQ(max_antichain(in1), std::vector<Interval>{whole});

  EXPECT_TRUE(max_antichain(std::vector<Interval>{}).empty());

  const Interval o(sub(kW3x3, {kOrigin}), sub(kW3x3, {kOrigin}));
  const Interval r(sub(kW3x3, {kRight}), sub(kW3x3, {kRight}));
  const std::vector<Interval> in3{o, r};
  const auto out3 = max_antichain(in3);
  ASSERT_EQ(out3.size(), 2u);
  EXPECT_NE(std::find(out3.begin(), out3.end(), o), out3.end());
  EXPECT_NE(std::find(out3.begin(), out3.end(), r), out3.end());
}

TEST(MaxAntichain, RandomFamiliesSatisfyAntichainIdempotenceAndCover) {
  Rng rng(11);
  const Window w = testing::line_window(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Interval> items;
    const auto n = rng.below(12);
    for (std::uint64_t i = 0; i < n; ++i) {
      const Mask hi = testing::random_mask(rng, w);
      const Mask lo = testing::random_mask(rng, w) & hi;
      items.emplace_back(w, lo, hi);
    }
    const auto out = max_antichain(items);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (i != j) EXPECT_FALSE(leq(out[i], out[j]));
      }
      if (i > 0) EXPECT_TRUE(canonical_less(out[i - 1], out[i]));
    }
    EXPECT_EQ(max_antichain(out), out);
    for (const auto& item : items) {
      EXPECT_TRUE(std::any_of(out.begin(), out.end(), [&](const Interval& o) { return leq(item, o); }));
    }
    for (const auto& o : out) {
      EXPECT_NE(std::find(items.begin(), items.end(), o), items.end());
    }
  }
}

TEST(HammingNeighbors, Examples) {
  const Window w = testing::line_window(3);
  const auto from_empty = hamming_neighbors(Subset::empty(w));
  ASSERT_EQ(from_empty.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(from_empty[j].bits(), Mask{1} << j);

  const auto from_full = hamming_neighbors(Subset::full(w));
  ASSERT_EQ(from_full.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(from_full[j].bits(), w.full_mask() & ~(Mask{1} << j));
}

TEST(HammingNeighbors, SizeAndSymmetry) {
  const Window w = testing::line_window(4);
  for (Mask a = 0; a <= w.full_mask(); ++a) {
    const auto na = hamming_neighbors(Subset(w, a));
    EXPECT_EQ(na.size(), w.size());
    for (Mask b = 0; b <= w.full_mask(); ++b) {
      const auto nb = hamming_neighbors(Subset(w, b));
      const bool ab = std::find(na.begin(), na.end(), Subset(w, b)) != na.end();
      const bool ba = std::find(nb.begin(), nb.end(), Subset(w, a)) != nb.end();
      EXPECT_EQ(ab, ba);
    }
  }
}

TEST(EnumerateSubsets, OrderCountAndCap) {
  std::size_t n = 0;
  for (const auto& s : enumerate_subsets(Window())) {
    EXPECT_EQ(s.bits(), 0u);
    ++n;
  }
  EXPECT_EQ(n, 1u);

  const Window w2 = testing::line_window(2);
  std::vector<Mask> order;
  for (const auto& s : enumerate_subsets(w2)) order.push_back(s.bits());
  EXPECT_EQ(order, (std::vector<Mask>{0b00, 0b01, 0b10, 0b11}));

  std::set<Mask> seen;
  for (const auto& s : enumerate_subsets(testing::line_window(5))) seen.insert(s.bits());
  EXPECT_EQ(seen.size(), 32u);

  try {
    (void)enumerate_subsets(testing::line_window(5), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Size);
  }
}

TEST(TextForms, RenderAndParseRoundTrip) {
  EXPECT_EQ(to_string(sub(kW3x3, {kOrigin, kRight})), "{(0,0),(0,1)}");
  const Interval i(sub(kW3x3, {kOrigin}), Subset::full(kW3x3));
  EXPECT_EQ(parse_interval(kW3x3, to_string(i)), i);
  EXPECT_EQ(parse_window(to_string(kW3x3)), kW3x3);
  EXPECT_EQ(parse_subset(kW3x3, " { (0,0) , (-1,1) } "), sub(kW3x3, {kOrigin, {-1, 1}}));
  EXPECT_THROW(parse_subset(kW3x3, "{(2,2)}"), Error);
  EXPECT_THROW(parse_interval(kW3x3, "[{(0,0)},{(0,1)}]"), Error);
  EXPECT_THROW(parse_window("{(0,0),"), Error);
}

}  // namespace
}  // namespace latop
