#include "surj/omega.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surj;

namespace {

const SemilinearSet kA = SemilinearSet::all("a");

PAMap half() {
  return map_union_disjoint(PAMap::from_piece({{"a", 0, 2, 0}, "a", 0, 1}),
                            PAMap::from_piece({{"a", 1, 2, 0}, "a", 0, 1}));
}

PAMap shift(Index by) { return PAMap::from_piece({{"a", 0, 1, 0}, "a", by, 1}); }

/// Closure by explicit iteration over elements below the bound.
std::set<Element> brute_closure(const std::set<Element> &seed, const PAMap &f,
                                Index bound) {
  std::set<Element> out = seed;
  std::vector<Element> work(seed.begin(), seed.end());
  while (!work.empty()) {
    Element x = work.back();
    work.pop_back();
    auto y = f.apply(x);
    if (y && y->index < bound && out.insert(*y).second)
      work.push_back(*y);
  }
  return out;
}

} // namespace

TEST(CantorTest, PairAndUnpair) {
  EXPECT_EQ(cantor_pair(0, 0), 0);
  EXPECT_EQ(cantor_pair(0, 1), 1);
  EXPECT_EQ(cantor_pair(1, 0), 2);
  for (Index m = 0; m < 100; ++m)
    for (Index n = 0; n < 100; ++n)
      ASSERT_EQ(cantor_unpair(cantor_pair(m, n)), std::make_pair(m, n));
}

TEST(OmegaUnionTest, IdentityIsImmediate) {
  EXPECT_EQ(omega_union(kA, PAMap::identity(kA), Budget{}), kA);
}

TEST(OmegaUnionTest, HalvingFillsDownward) {
  SemilinearSet seed = SemilinearSet::of(Progression{"a", 0, 1, 8});
  EXPECT_EQ(omega_union(seed, half(), Budget{}), kA);
}

TEST(OmegaUnionTest, AccelerationClosesTranslates) {
  SemilinearSet seed = SemilinearSet::of({{"a", 0}});
  EXPECT_EQ(omega_union(seed, shift(2), Budget{}),
            SemilinearSet::of(Progression{"a", 0, 2, 0}));
  EXPECT_THROW(omega_union(seed, shift(2), Budget{64, false}), NonStabilizing);
}

TEST(OmegaUnionTest, BackwardStep) {
  // preimages of {10} under n -> n+1 reach every index below 10
  SemilinearSet got = omega_union(SemilinearSet::of({{"a", 10}}), shift(1),
                                  Budget{}, Direction::Backward);
  EXPECT_EQ(got, SemilinearSet::of(Progression{"a", 0, 1, 0}) -
                     SemilinearSet::of(Progression{"a", 0, 1, 11}));
}

TEST(OmegaUnionTest, MultiTagCycleAccelerates) {
  // a:n -> b:n+1, b:n -> a:n+2 from a:0
  PAMap f = map_union_disjoint(PAMap::from_piece({{"a", 0, 1, 0}, "b", 1, 1}),
                               PAMap::from_piece({{"b", 0, 1, 0}, "a", 2, 1}));
  SemilinearSet got = omega_union(SemilinearSet::of({{"a", 0}}), f, Budget{});
  auto want = brute_closure({{"a", 0}}, f, 512);
  for (auto &e : got.members_below(512))
    EXPECT_TRUE(want.count(e)) << e;
  EXPECT_EQ(got.members_below(512).size(), want.size());
}

TEST(OmegaUnionTest, MatchesBruteClosureOnRandomShifts) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(0, 5), s(1, 4);
  for (int it = 0; it < 100; ++it) {
    Index m = 1 + d(rng) % 3;
    PAMap f;
    for (Index r = 0; r < m; ++r)
      f = map_union_disjoint(
          f, PAMap::from_piece({{"a", r, m, 0}, "a", r + s(rng), 1}));
    std::set<Element> seed{{"a", d(rng)}, {"a", d(rng) + 3}};
    SemilinearSet got = omega_union(
        SemilinearSet::of(std::vector<Element>(seed.begin(), seed.end())), f,
        Budget{});
    auto want = brute_closure(seed, f, 512);
    auto have = got.members_below(512);
    ASSERT_EQ(std::set<Element>(have.begin(), have.end()), want);
  }
}

TEST(OmegaIntersectionTest, Policies) {
  SemilinearSet s = SemilinearSet::of({{"a", 1}, {"b", 2}});
  EXPECT_EQ(omega_intersection(
                DescendingChain::recurrence(
                    s, [](const SemilinearSet &d) { return d; }),
                Budget{}),
            s);
  auto tail = [](Index k) {
    return k >= 5 ? SemilinearSet{}
                  : SemilinearSet::of(Progression{"a", 0, 1, k}) -
                        SemilinearSet::of(Progression{"a", 0, 1, 5});
  };
  EXPECT_TRUE(omega_intersection(DescendingChain::indexed(tail, std::nullopt),
                                 Budget{})
                  .empty());
  EXPECT_EQ(omega_intersection(DescendingChain::indexed(
                                   [&](Index) { return s; }, Index{0}),
                               Budget{}),
            s);
  auto growing = [](Index k) {
    return SemilinearSet::of(Progression{"a", 0, 1, 5 - std::min<Index>(k, 5)});
  };
  EXPECT_THROW(omega_intersection(DescendingChain::indexed(growing, 9),
                                  Budget{}),
               NotDescending);
  auto forever = [](Index k) { return SemilinearSet::of(Progression{"a", 0, 1, k}); };
  EXPECT_THROW(omega_intersection(DescendingChain::indexed(forever, std::nullopt),
                                  Budget{}),
               NonStabilizing);
}

TEST(GfpTest, BasicExpressions) {
  SemilinearSet s = SemilinearSet::of({{"a", 2}, {"a", 5}});
  auto x = IsotoneExpr::var();
  EXPECT_EQ(gfp_isotone(IsotoneExpr::intersect(x, IsotoneExpr::constant(s)), kA,
                        Budget{}),
            s);
  EXPECT_TRUE(gfp_isotone(IsotoneExpr::constant({}), kA, Budget{}).empty());
}

TEST(GfpTest, AcceleratedShiftIsEmpty) {
  // D -> (D+1): every point eventually lacks a predecessor
  auto e = IsotoneExpr::image(shift(1), IsotoneExpr::var());
  EXPECT_TRUE(gfp_isotone(e, kA, Budget{}).empty());
  EXPECT_THROW(gfp_isotone(e, kA, Budget{64, false}), NonStabilizing);
  // D -> floor(D/2) keeps everything
  EXPECT_EQ(gfp_isotone(IsotoneExpr::image(half(), IsotoneExpr::var()), kA,
                        Budget{}),
            kA);
}

TEST(GfpTest, PostFixpointsBelowResult) {
  // i(D) = A ∩ T[D] with T(n) = n-1 above 0 and T(2k+1 at b) ...
  PAMap down = PAMap::from_piece({{"a", 0, 1, 1}, "a", 0, 1});
  auto e = IsotoneExpr::unite(IsotoneExpr::image(down, IsotoneExpr::var()),
                              IsotoneExpr::constant(SemilinearSet::of({{"a", 7}})));
  SemilinearSet x = gfp_isotone(e, kA, Budget{});
  EXPECT_EQ(e.eval(x) & kA, x);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(0, 20);
  for (int it = 0; it < 200; ++it) {
    SemilinearSet cand = SemilinearSet::of({{"a", d(rng)}, {"a", d(rng)}});
    if (cand.subset_of(e.eval(cand)))
      EXPECT_TRUE(cand.subset_of(x));
  }
}

TEST(StratifyTest, IdentityStepKeepsTarget) {
  SemilinearSet t = SemilinearSet::of(Progression{"a", 1, 3, 0});
  PAMap got = least_index_stratify(kA, PAMap::identity(kA), t, Budget{});
  EXPECT_EQ(got, PAMap::identity(t));
}

TEST(StratifyTest, NextMultipleOfThree) {
  SemilinearSet t = SemilinearSet::of(Progression{"a", 0, 3, 0});
  PAMap got = least_index_stratify(kA, shift(1), t, Budget{});
  for (Index n = 0; n < 300; ++n)
    ASSERT_EQ(got.apply({"a", n}), (Element{"a", (n + 2) / 3 * 3}));
}

TEST(StratifyTest, CycleWithoutTargetIsEmpty) {
  PAMap cyc = PAMap::from_pairs({{{"a", 0}, {"a", 1}}, {{"a", 1}, {"a", 0}}});
  SemilinearSet dom = SemilinearSet::of({{"a", 0}, {"a", 1}});
  EXPECT_TRUE(least_index_stratify(dom, cyc, {}, Budget{}).empty());
}

TEST(StratifyTest, MinimumStepsSkipsStartingPoint) {
  PAMap cyc = PAMap::from_pairs({{{"a", 0}, {"a", 1}}, {{"a", 1}, {"a", 2}},
                                 {{"a", 2}, {"a", 0}}});
  SemilinearSet dom = SemilinearSet::of({{"a", 0}, {"a", 1}, {"a", 2}});
  SemilinearSet t = SemilinearSet::of({{"a", 0}});
  PAMap got = least_index_stratify(dom, cyc, t, Budget{}, 1);
  EXPECT_EQ(got.apply({"a", 0}), (Element{"a", 0}));
  EXPECT_EQ(got.apply({"a", 2}), (Element{"a", 0}));
}

TEST(OmegaEquivarianceTest, RenameCommutes) {
  TagPermutation pi({{"a", "b"}, {"b", "a"}});
  SemilinearSet seed = SemilinearSet::of({{"a", 0}});
  EXPECT_EQ(rename(pi, omega_union(seed, shift(2), Budget{})),
            omega_union(rename(pi, seed), rename(pi, shift(2)), Budget{}));
  SemilinearSet t = SemilinearSet::of(Progression{"a", 0, 3, 0});
  EXPECT_EQ(rename(pi, least_index_stratify(kA, shift(1), t, Budget{})),
            least_index_stratify(rename(pi, kA), rename(pi, shift(1)),
                                 rename(pi, t), Budget{}));
}
