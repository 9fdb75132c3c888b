#include <gtest/gtest.h>

#include "latop/latop.hpp"
#include "support.hpp"

namespace latop {
namespace {

const Window kW3x3 = Window::rectangle(3, 3);

Mask origin_bit(const Window& w) { return Mask{1} << w.index_of(kOrigin); }

Window window_with_origin(std::size_t n) {
  std::vector<Offset> offs{kOrigin};
  for (std::size_t i = 1; i < n; ++i) offs.push_back({0, static_cast<int>(i)});
  return Window(std::move(offs));
}

TEST(CharacteristicOf, Examples) {
  const Window w = window_with_origin(4);
  const Mask o = origin_bit(w);
  const auto id = characteristic_of([](const BinaryImage& x) { return x; }, w);
  for (Mask m = 0; m <= w.full_mask(); ++m) EXPECT_EQ(id[m], (m & o) != 0);

  const auto ones = characteristic_of(
      [](const BinaryImage& x) { return BinaryImage::filled(x.height(), x.width(), true, x.boundary()); }, w);
  EXPECT_EQ(ones.count_ones(), ones.size());
}

TEST(CharacteristicOf, ErosionGivesInclusionPredicate) {
  Rng rng(1);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Window w = window_with_origin(n);
    for (int trial = 0; trial < 10; ++trial) {
      const Mask a = testing::random_mask(rng, w);
      const auto f = characteristic_of([&](const BinaryImage& x) { return erode(x, Subset(w, a)); }, w);
      for (Mask m = 0; m <= w.full_mask(); ++m) EXPECT_EQ(f[m], (m & a) == a);
    }
  }
}

TEST(CharacteristicOf, RecoversApplyTable) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = testing::random_table(rng, kW3x3);
    EXPECT_EQ(characteristic_of([&](const BinaryImage& x) { return apply_table(x, kW3x3, f); }, kW3x3), f);
  }
}

TEST(KernelOf, Examples) {
  const Window w = window_with_origin(2);
  EXPECT_EQ(kernel_of(BooleanFunctionTable(w, true)).members.size(), 4u);
  EXPECT_TRUE(kernel_of(BooleanFunctionTable(w, false)).members.empty());
  const Mask o = origin_bit(w);
  const auto k = kernel_of(BooleanFunctionTable::from_predicate(w, [o](Mask m) { return (m & o) != 0; }));
  ASSERT_EQ(k.members.size(), 2u);
  EXPECT_EQ(k.members[0].bits(), o);
  EXPECT_EQ(k.members[1].bits(), w.full_mask());
}

TEST(BasisOf, Examples) {
  const Window w = window_with_origin(2);
  const Basis all = basis_of(BooleanFunctionTable(w, true));
  EXPECT_EQ(all.intervals, std::vector<Interval>{Interval(w, 0, w.full_mask())});
  EXPECT_TRUE(basis_of(BooleanFunctionTable(w, false)).intervals.empty());

  const Mask o = origin_bit(w);
  const auto f = BooleanFunctionTable::from_predicate(w, [o](Mask m) { return (m & o) != 0; });
  EXPECT_EQ(basis_of(f).intervals, std::vector<Interval>{Interval(w, o, w.full_mask())});
  EXPECT_EQ(basis_of(f).intervals, testing::brute_force_basis(f));
}

TEST(BasisOf, EmptyWindow) {
  const Window w;
  EXPECT_EQ(basis_of(BooleanFunctionTable(w, true)).intervals.size(), 1u);
  EXPECT_TRUE(basis_of(BooleanFunctionTable(w, false)).intervals.empty());
}

TEST(BasisOf, CapIsASizeError) {
  const Window w = testing::line_window(5);
  try {
    basis_of(BooleanFunctionTable(w, true), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Size);
  }
}

// Every function on 0..3 points, and random ones on 4..5 points, against the
// 3^|W| enumeration oracle.
TEST(BasisOf, MatchesBruteForceOracle) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const Window w = testing::line_window(n);
    const std::size_t rows = std::size_t{1} << n;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << rows); ++code) {
      const auto f = BooleanFunctionTable::from_predicate(w, [code](Mask m) { return (code >> m) & 1; });
      ASSERT_EQ(basis_of(f).intervals, testing::brute_force_basis(f)) << "n=" << n << " code=" << code;
    }
  }
  Rng rng(3);
  for (std::size_t n = 4; n <= 5; ++n) {
    const Window w = testing::line_window(n);
    for (int trial = 0; trial < 60; ++trial) {
      const auto f = testing::random_table(rng, w);
      ASSERT_EQ(basis_of(f).intervals, testing::brute_force_basis(f));
    }
  }
}

TEST(BasisOf, AntichainAndKernelCover) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 7; ++n) {
    const Window w = testing::line_window(n);
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = testing::random_table(rng, w);
      const auto b = basis_of(f).intervals;
      for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (i != j) EXPECT_FALSE(leq(b[i], b[j]));
        }
        if (i > 0) EXPECT_TRUE(canonical_less(b[i - 1], b[i]));
      }
      for (Mask x = 0; x <= w.full_mask(); ++x) {
        const bool covered = std::any_of(b.begin(), b.end(), [x](const Interval& i) { return i.contains(x); });
        EXPECT_EQ(covered, f[x]);
      }
    }
  }
}

TEST(BasisOf, IncreasingFunctionsHaveUpperEndpointW) {
  Rng rng(5);
  const Window w = testing::line_window(6);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Mask> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(testing::random_mask(rng, w));
    const auto f = BooleanFunctionTable::from_predicate(w, [&](Mask m) {
      return std::any_of(gens.begin(), gens.end(), [m](Mask a) { return (m & a) == a; });
    });
    const Basis b = basis_of(f);
    for (const auto& i : b.intervals) EXPECT_EQ(i.upper().bits(), w.full_mask());
    EXPECT_TRUE(property_report(b).is_increasing);
  }
}

TEST(Reconstruct, Examples) {
  const Window w = window_with_origin(3);
  EXPECT_EQ(reconstruct(Basis{w, {Interval(w, 0, w.full_mask())}}), BooleanFunctionTable(w, true));
  EXPECT_EQ(reconstruct(Basis{w, {}}), BooleanFunctionTable(w, false));
  const Mask o = origin_bit(w);
  const auto f = reconstruct(Basis{w, {Interval(w, o, w.full_mask())}});
  for (Mask m = 0; m <= w.full_mask(); ++m) EXPECT_EQ(f[m], (m & o) != 0);
}

TEST(Reconstruct, RoundTripOnRandomFunctions) {
  Rng rng(6);
  for (std::size_t n = 4; n <= 8; ++n) {
    const Window w = testing::line_window(n);
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = testing::random_table(rng, w);
      EXPECT_EQ(reconstruct(basis_of(f)), f);
    }
  }
}

TEST(Reconstruct, BasisOfIsIdempotentOnCanonicalBases) {
  Rng rng(7);
  const Window w = testing::line_window(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Basis b = basis_of(testing::random_table(rng, w));
    EXPECT_EQ(basis_of(reconstruct(b)), b);
  }
}

TEST(PropertyReport, Examples) {
  const Window w = window_with_origin(3);
  const Mask o = origin_bit(w);
  const Mask a = 0b010;
  const Mask b = 0b100;
  const auto inc = property_report(Basis{w, {Interval(w, a, w.full_mask()), Interval(w, b, w.full_mask())}});
  EXPECT_TRUE(inc.is_increasing);
  EXPECT_FALSE(inc.contains_full_interval_from_origin);
  EXPECT_FALSE(inc.origin_in_all_lower_endpoints);

  const auto full = property_report(Basis{w, {Interval(w, o, w.full_mask())}});
  EXPECT_TRUE(full.contains_full_interval_from_origin);
  EXPECT_TRUE(full.origin_in_all_lower_endpoints);

  const auto point = property_report(Basis{w, {Interval(w, o, o)}});
  EXPECT_TRUE(point.origin_in_all_lower_endpoints);
  EXPECT_FALSE(point.is_increasing);
}

TEST(TableText, HexLayoutAndRoundTrip) {
  const Window w = testing::line_window(3);
  auto f = BooleanFunctionTable(w, false);
  f.set(0, true);
  f.set(7, true);
  EXPECT_EQ(table_hex(f), "81");
  EXPECT_EQ(table_from_hex(w, "81"), f);

  const Window w1 = testing::line_window(1);
  auto g = BooleanFunctionTable(w1, false);
  g.set(1, true);
  EXPECT_EQ(table_hex(g), "02");
  EXPECT_THROW(table_from_hex(w1, "04"), Error);
  EXPECT_THROW(table_from_hex(w, "8"), Error);

  Rng rng(8);
  const auto h = testing::random_table(rng, kW3x3);
  EXPECT_EQ(parse_table(serialize_table(h)), h);
}

TEST(BasisText, RoundTrip) {
  Rng rng(9);
  const Window w = testing::line_window(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Basis b = basis_of(testing::random_table(rng, w));
    EXPECT_EQ(parse_basis(w, serialize_basis(b)), b);
  }
}

}  // namespace
}  // namespace latop
