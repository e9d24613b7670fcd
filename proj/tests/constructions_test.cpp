#include "surj/constructions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace surj;

namespace {

SemilinearSet points(const Tag &t, std::vector<Index> idx) {
  std::vector<Element> es;
  for (Index i : idx)
    es.push_back({t, i});
  return SemilinearSet::of(es);
}

/// Random bijection pair between two finite sets of equal size.
SurjectionPair random_bijection(const SemilinearSet &l, const SemilinearSet &r,
                                std::mt19937_64 &rng) {
  auto ls = l.members();
  auto rs = r.members();
  std::shuffle(rs.begin(), rs.end(), rng);
  std::vector<std::pair<Element, Element>> fw, bw;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    fw.push_back({ls[i], rs[i]});
    bw.push_back({rs[i], ls[i]});
  }
  return {PAMap::from_pairs(fw), PAMap::from_pairs(bw), l, r};
}

SemilinearSet random_points(const Tag &t, std::size_t n, std::mt19937_64 &rng) {
  std::vector<Index> idx(20);
  for (Index i = 0; i < 20; ++i)
    idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(n);
  return points(t, idx);
}

void expect_refinement(const RefinementWitness &w) {
  EXPECT_TRUE(w.p.subset_of(w.a));
  EXPECT_TRUE(w.q.subset_of(w.b));
  EXPECT_TRUE(w.a_tilde.disjoint_from(w.b_tilde));
  EXPECT_EQ(w.a_tilde | w.b_tilde, w.c);
  EXPECT_TRUE(w.pair_atilde_aprime.valid());
  EXPECT_TRUE(w.pair_btilde_bprime.valid());
  EXPECT_TRUE(is_partial_surjection(w.surj_aprime_onto_aprime_q, w.a_prime,
                                    w.a_prime | w.q));
  EXPECT_TRUE(is_partial_surjection(w.surj_bprime_onto_bprime_p, w.b_prime,
                                    w.b_prime | w.p));
}

const SemilinearSet kA = SemilinearSet::all("a");
const SemilinearSet kB = SemilinearSet::all("b");
const SemilinearSet kC = SemilinearSet::all("c");

/// a:n -> c:2n, b:n -> c:2n+1 and back.
SurjectionPair interleave_pair() {
  PAMap f = map_union_disjoint(PAMap::from_piece({{"a", 0, 1, 0}, "c", 0, 2}),
                               PAMap::from_piece({{"b", 0, 1, 0}, "c", 1, 2}));
  PAMap g = map_union_disjoint(
      PAMap::from_piece({{"c", 0, 2, 0}, "a", 0, 1}),
      PAMap::from_piece({{"c", 1, 2, 0}, "b", 0, 1}));
  return {f, g, kA | kB, kC};
}

} // namespace

TEST(UnionTest, CountableUnionOfShifts) {
  // f_n : a -> a ∪ {b:n}, a:0 -> b:n, a:k+1 -> a:k
  TailedFamily fam;
  for (Index n = 0; n < 3; ++n) {
    SemilinearSet b = points("b", {n});
    PAMap f = map_union_disjoint(
        PAMap::from_pairs({{{"a", 0}, {"b", n}}}),
        PAMap::from_piece({{"a", 0, 1, 1}, "a", 0, 1}));
    fam.members.push_back({b, f});
  }
  auto w = countable_union_surjection(kA, fam, Budget{});
  EXPECT_EQ(w.target, kA | points("b", {0, 1, 2}));
  EXPECT_TRUE(is_partial_surjection(w.g, kA, w.target));
  EXPECT_EQ(w.partial.size(), 4u);
  EXPECT_FALSE(w.strata.empty());
}

TEST(UnionTest, RejectsOverlap) {
  TailedFamily fam{{{kA, PAMap::identity(kA)}}};
  EXPECT_THROW(countable_union_surjection(kA, fam, Budget{}),
               DisjointnessViolation);
}

TEST(IteratedImageTest, HalvingOntoEverything) {
  PAMap half = map_union_disjoint(
      PAMap::from_piece({{"a", 0, 2, 0}, "a", 0, 1}),
      PAMap::from_piece({{"a", 1, 2, 0}, "a", 0, 1}));
  EXPECT_THROW(iterated_image_surjection(points("a", {5}), half, Budget{}),
               ExpansivityRequired);
  auto w = iterated_image_surjection(kA, half, Budget{});
  EXPECT_EQ(w.target, kA);
  EXPECT_TRUE(is_partial_surjection(w.g, kA, kA));
}

TEST(RefinementTest, RandomFiniteBijections) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    std::size_t na = rng() % 6, nb = rng() % 6;
    SemilinearSet a = random_points("a", na, rng);
    SemilinearSet b = random_points("b", nb, rng);
    SemilinearSet c = random_points("c", na + nb, rng);
    auto pair = random_bijection(a | b, c, rng);
    auto w = key_refinement(a, b, c, pair, Budget{});
    SCOPED_TRACE(it);
    expect_refinement(w);
  }
}

TEST(RefinementTest, InterleavedInfinite) {
  auto w = key_refinement(kA, kB, kC, interleave_pair(), Budget{});
  expect_refinement(w);
}

TEST(RefinementTest, RejectsBadInput) {
  auto pair = interleave_pair();
  EXPECT_THROW(key_refinement(kA, kA, kC, pair, Budget{}),
               DisjointnessViolation);
  pair.forward = PAMap{};
  EXPECT_THROW(key_refinement(kA, kB, kC, pair, Budget{}), NotSurjectionPair);
}

TEST(FiniteRefinementTest, RandomFiniteBijections) {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    std::size_t n1 = rng() % 5, n2 = rng() % 5, m1 = rng() % 5;
    std::size_t m2 = n1 + n2 >= m1 ? n1 + n2 - m1 : 0;
    if (m1 > n1 + n2)
      m1 = n1 + n2;
    SemilinearSet a1 = random_points("a", n1, rng);
    SemilinearSet a2 = random_points("b", n2, rng);
    SemilinearSet b1 = random_points("c", m1, rng);
    SemilinearSet b2 = random_points("d", m2, rng);
    auto pair = random_bijection(a1 | a2, b1 | b2, rng);
    auto w = finite_refinement(a1, a2, b1, b2, pair, Budget{});
    SCOPED_TRACE(it);
    EXPECT_TRUE(w.pair_a1.valid());
    EXPECT_TRUE(w.pair_a2.valid());
    EXPECT_TRUE(w.pair_b1.valid());
    EXPECT_TRUE(w.pair_b2.valid());
  }
}

TEST(FiniteRefinementTest, InterleavedInfinite) {
  SemilinearSet even = SemilinearSet::of(Progression{"c", 0, 2, 0});
  auto w = finite_refinement(kA, kB, even, kC - even, interleave_pair(),
                             Budget{});
  EXPECT_TRUE(w.pair_a1.valid());
  EXPECT_TRUE(w.pair_a2.valid());
  EXPECT_TRUE(w.pair_b1.valid());
  EXPECT_TRUE(w.pair_b2.valid());
}

namespace {

void expect_remainder(const RemainderWitness &w) {
  EXPECT_TRUE(w.c.empty());
  ASSERT_EQ(w.levels.size(), w.chain.size());
  for (std::size_t m = 0; m < w.levels.size(); ++m) {
    SCOPED_TRACE(m);
    SemilinearSet rest;
    for (std::size_t k = m; k < w.chain.size(); ++k)
      rest = rest | w.chain[k].b;
    EXPECT_EQ(w.levels[m].pair.left, w.chain[m].a);
    EXPECT_EQ(w.levels[m].pair.right, rest);
    EXPECT_TRUE(w.levels[m].pair.valid());
  }
}

Tag indexed_tag(const char *base, std::size_t n) {
  return std::string(base) + std::to_string(n);
}

} // namespace

TEST(RemainderTest, RandomFiniteChains) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 60; ++it) {
    std::size_t levels = 1 + rng() % 3;
    std::vector<std::size_t> bs(levels);
    for (auto &b : bs)
      b = rng() % 3;
    ChainFamily chain;
    std::size_t size = 0;
    for (std::size_t b : bs)
      size += b;
    std::vector<SemilinearSet> as;
    for (std::size_t n = 0; n < levels; ++n) {
      as.push_back(random_points(indexed_tag("a", n), size, rng));
      size -= bs[n];
    }
    for (std::size_t n = 0; n < levels; ++n) {
      SemilinearSet b = random_points(indexed_tag("b", n), bs[n], rng);
      SemilinearSet next = n + 1 < levels ? as[n + 1] : SemilinearSet{};
      chain.entries.push_back({as[n], b, random_bijection(as[n], next | b, rng)});
    }
    SCOPED_TRACE(it);
    expect_remainder(remainder_chain(chain, Budget{}));
  }
}

TEST(RemainderTest, InterleavedInfiniteChain) {
  SemilinearSet a0 = SemilinearSet::all("a0"), a1 = SemilinearSet::all("a1");
  SemilinearSet b0 = SemilinearSet::all("b0"), b1 = SemilinearSet::all("b1");
  SurjectionPair p0{
      map_union_disjoint(PAMap::from_piece({{"a0", 0, 2, 0}, "a1", 0, 1}),
                         PAMap::from_piece({{"a0", 1, 2, 0}, "b0", 0, 1})),
      map_union_disjoint(PAMap::from_piece({{"a1", 0, 1, 0}, "a0", 0, 2}),
                         PAMap::from_piece({{"b0", 0, 1, 0}, "a0", 1, 2})),
      a0, a1 | b0};
  SurjectionPair p1{PAMap::from_piece({{"a1", 0, 1, 0}, "b1", 0, 1}),
                    PAMap::from_piece({{"b1", 0, 1, 0}, "a1", 0, 1}), a1, b1};
  ChainFamily chain{{{a0, b0, p0}, {a1, b1, p1}}};
  expect_remainder(remainder_chain(chain, Budget{}));
  EXPECT_THROW(remainder_chain(ChainFamily{{{a0, a0, p0}}}, Budget{}),
               InvalidChain);
}

TEST(RepresentabilityTest, ContractingStrataAreReportedNotGuessed) {
  // least m with ⌊n/2^m⌋ ≡ 1 (mod 3) depends on the binary digits of n, so
  // the stratified map is not eventually periodic
  PAMap half = map_union_disjoint(
      PAMap::from_piece({{"a", 0, 2, 0}, "a", 0, 1}),
      PAMap::from_piece({{"a", 1, 2, 0}, "a", 0, 1}));
  SemilinearSet t = SemilinearSet::of(Progression{"a", 1, 3, 0});
  EXPECT_THROW(least_index_stratify(kA, half, t, Budget{16, true}),
               ConstructionError);
}
