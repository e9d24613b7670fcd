#include "surj/semiset.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace surj;

namespace {

constexpr Index kPrefix = 512;

/// A set given by its defining points and progressions, checked by
/// definition rather than through the normal form.
struct RefSet {
  std::vector<Element> points;
  std::vector<Progression> blocks;

  bool has(const Element &e) const {
    for (auto &p : points)
      if (p == e)
        return true;
    for (auto &b : blocks) {
      if (b.tag != e.tag || e.index < b.low)
        continue;
      if (b.modulus == 0 ? e.index == b.low
                         : (e.index - b.residue) % b.modulus == 0)
        return true;
    }
    return false;
  }

  SemilinearSet build() const {
    SemilinearSet s = SemilinearSet::of(points);
    for (auto &b : blocks)
      s = s | SemilinearSet::of(b);
    return s;
  }
};

const std::vector<Tag> kTags = {"a", "b", "c"};

RefSet random_set(std::mt19937_64 &rng) {
  RefSet r;
  std::uniform_int_distribution<int> ntag(0, 2), npts(0, 6), nblk(0, 3),
      idx(0, 40), mod(1, 6);
  for (int i = npts(rng); i > 0; --i)
    r.points.push_back({kTags[ntag(rng)], idx(rng)});
  for (int i = nblk(rng); i > 0; --i) {
    Index m = mod(rng);
    r.blocks.push_back({kTags[ntag(rng)], idx(rng) % m, m, idx(rng)});
  }
  return r;
}

/// A map given by disjoint affine pieces plus a finite graph.
struct RefMap {
  std::vector<std::pair<Element, Element>> graph;
  std::vector<AffinePiece> pieces;

  std::optional<Element> at(const Element &x) const {
    for (auto &[a, b] : graph)
      if (a == x)
        return b;
    for (auto &p : pieces) {
      const Progression &g = p.guard;
      if (g.tag != x.tag || x.index < g.low ||
          (x.index - g.residue) % g.modulus != 0)
        continue;
      Index first = g.low + ((g.residue - g.low) % g.modulus + g.modulus) %
                                g.modulus;
      Index k = (x.index - first) / g.modulus;
      return Element{p.target_tag, p.base + p.step * k};
    }
    return std::nullopt;
  }

  PAMap build() const {
    PAMap f = PAMap::from_pairs(graph);
    for (auto &p : pieces)
      f = map_union_disjoint(f, PAMap::from_piece(p));
    return f;
  }
};

/// Pieces live above index 100 on distinct residues, the graph below it.
RefMap random_map(std::mt19937_64 &rng) {
  RefMap r;
  std::uniform_int_distribution<int> ntag(0, 2), idx(0, 60), mod(1, 4),
      step(0, 3), coin(0, 1);
  for (const Tag &t : kTags) {
    if (coin(rng))
      continue;
    Index m = mod(rng);
    for (Index res = 0; res < m; ++res)
      if (coin(rng))
        r.pieces.push_back(
            {{t, res, m, 100 + idx(rng)}, kTags[ntag(rng)], idx(rng), step(rng)});
  }
  std::set<Element> used;
  for (int i = 0; i < 8; ++i) {
    Element x{kTags[ntag(rng)], idx(rng)};
    if (used.insert(x).second)
      r.graph.push_back({x, {kTags[ntag(rng)], idx(rng)}});
  }
  return r;
}

} // namespace

TEST(TrackTest, NormalFormIsMinimal) {
  Track t(4, {true, false, true, false}, {true, false, true, false});
  EXPECT_EQ(t.period(), 2);
  EXPECT_EQ(t.threshold(), 0);
  EXPECT_EQ(t, Track::ray(0, 2));
  EXPECT_TRUE(Track().empty());
  EXPECT_TRUE(Track::point(3).finite());
  EXPECT_FALSE(Track::ray(3, 5).finite());
}

TEST(TrackTest, NthAndRank) {
  Track t = Track::ray(3, 4) | Track::point(1);
  EXPECT_EQ(t.nth(0), 1);
  EXPECT_EQ(t.nth(1), 3);
  EXPECT_EQ(t.nth(3), 11);
  EXPECT_EQ(t.rank(11), 3);
  EXPECT_EQ(Track::point(5).nth(1), std::nullopt);
}

TEST(TrackTest, ShiftAndPullback) {
  Track t = Track::ray(2, 3);
  EXPECT_EQ(t.shifted(-4), Track::ray(1, 3));
  EXPECT_EQ(t.shifted(1), Track::ray(3, 3));
  EXPECT_EQ(Track::all().pullback(5, 2), Track::all());
  EXPECT_EQ(Track::ray(0, 2).pullback(1, 1), Track::ray(0, 2).pullback(3, 1));
}

TEST(SemilinearSetTest, BooleanOpsMatchPrefixEnumeration) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    RefSet x = random_set(rng), y = random_set(rng);
    SemilinearSet a = x.build(), b = y.build();
    SemilinearSet u = a | b, i = a & b, d = a - b;
    for (const Tag &t : kTags)
      for (Index n = 0; n < kPrefix; ++n) {
        Element e{t, n};
        bool in_a = x.has(e), in_b = y.has(e);
        ASSERT_EQ(a.contains(e), in_a);
        ASSERT_EQ(u.contains(e), in_a || in_b);
        ASSERT_EQ(i.contains(e), in_a && in_b);
        ASSERT_EQ(d.contains(e), in_a && !in_b);
      }
    EXPECT_EQ(a.subset_of(b), (a - b).empty());
    EXPECT_EQ((a | b), (b | a));
    EXPECT_EQ((a - b) | (a & b), a);
  }
}

TEST(SemilinearSetTest, DecomposeRoundTrips) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 100; ++it) {
    SemilinearSet a = random_set(rng).build();
    std::vector<Element> pts;
    std::vector<Progression> blocks;
    a.decompose(pts, blocks);
    SemilinearSet back = SemilinearSet::of(pts);
    for (auto &b : blocks)
      back = back | SemilinearSet::of(b);
    EXPECT_EQ(back, a);
  }
}

TEST(PAMapTest, ApplyMatchesDefinition) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    RefMap r = random_map(rng);
    PAMap f = r.build();
    for (const Tag &t : kTags)
      for (Index n = 0; n < kPrefix; ++n)
        ASSERT_EQ(f.apply({t, n}), r.at({t, n}));
  }
}

TEST(PAMapTest, ImagePreimageComposeMatchEnumeration) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    RefMap rf = random_map(rng), rg = random_map(rng);
    RefSet rs = random_set(rng);
    PAMap f = rf.build(), g = rg.build();
    SemilinearSet s = rs.build();
    SemilinearSet img = map_image(f, s), pre = map_preimage(f, s);
    PAMap fg = map_compose(f, g);
    // every piece has step >= 0 over guards of modulus <= 4 starting below
    // 161, so sources past this bound only reach indices >= kPrefix
    constexpr Index kSources = 161 + 4 * kPrefix;
    std::set<Element> want_img;
    for (const Tag &t : kTags)
      for (Index n = 0; n < kSources; ++n)
        if (rs.has({t, n}))
          if (auto y = rf.at({t, n}); y && y->index < kPrefix)
            want_img.insert(*y);
    std::set<Element> got_img;
    for (auto &e : img.members_below(kPrefix))
      got_img.insert(e);
    for (auto &e : want_img)
      ASSERT_TRUE(got_img.count(e)) << "missing " << e;
    for (auto &e : got_img)
      ASSERT_TRUE(want_img.count(e)) << "extra " << e;
    for (const Tag &t : kTags)
      for (Index n = 0; n < kPrefix; ++n) {
        auto y = rf.at({t, n});
        ASSERT_EQ(pre.contains({t, n}), y && rs.has(*y));
        auto mid = rg.at({t, n});
        std::optional<Element> want = mid ? rf.at(*mid) : std::nullopt;
        ASSERT_EQ(fg.apply({t, n}), want);
      }
  }
}

TEST(PAMapTest, ConflictingUnionThrows) {
  PAMap f = PAMap::identity(SemilinearSet::all("a"));
  PAMap g = PAMap::from_pairs({{{"a", 3}, {"b", 0}}});
  EXPECT_THROW(map_union_disjoint(f, g), ConflictingUnion);
}

TEST(PAMapTest, InterleaveIsPartialSurjection) {
  SemilinearSet a = SemilinearSet::all("a");
  SemilinearSet b = SemilinearSet::all("b");
  PAMap f = map_union_disjoint(
      PAMap::from_piece({{"a", 0, 2, 0}, "a", 0, 1}),
      PAMap::from_piece({{"a", 1, 2, 0}, "b", 0, 1}));
  EXPECT_TRUE(is_partial_surjection(f, a, a | b));
  EXPECT_FALSE(is_partial_surjection(f, a, a));
  EXPECT_EQ(map_preimage(f, b), SemilinearSet::of({"a", 1, 2, 0}));
  // n -> floor(n/2) composed with itself is n -> floor(n/4)
  PAMap half = map_union_disjoint(PAMap::from_piece({{"a", 0, 2, 0}, "a", 0, 1}),
                                  PAMap::from_piece({{"a", 1, 2, 0}, "a", 0, 1}));
  PAMap quarter = map_compose(half, half);
  for (Index n = 0; n < 100; ++n)
    EXPECT_EQ(quarter.apply({"a", n}), (Element{"a", n / 4}));
  EXPECT_EQ(quarter.tables().at("a").period(), 4);
}

TEST(PAMapTest, IterateAndRestrict) {
  PAMap shift = PAMap::from_piece({{"a", 0, 1, 0}, "a", 1, 1});
  PAMap s3 = map_iterate(shift, 3);
  EXPECT_EQ(s3.apply({"a", 4}), (Element{"a", 7}));
  PAMap r = map_restrict(shift, SemilinearSet::of({{"a", 2}, {"a", 5}}));
  EXPECT_EQ(r.domain(), SemilinearSet::of({{"a", 2}, {"a", 5}}));
  EXPECT_EQ(map_erase(shift, r.domain()).domain(),
            SemilinearSet::all("a") - r.domain());
}

TEST(RenameTest, PermutationActsOnSetsAndMaps) {
  TagPermutation pi({{"a", "b"}, {"b", "a"}});
  SemilinearSet s = SemilinearSet::all("a") | SemilinearSet::of({{"b", 2}});
  SemilinearSet t = rename(pi, s);
  EXPECT_TRUE(t.contains({"b", 40}));
  EXPECT_TRUE(t.contains({"a", 2}));
  EXPECT_EQ(rename(pi.inverse(), t), s);
  PAMap f = PAMap::from_piece({{"a", 0, 1, 0}, "b", 0, 2});
  EXPECT_EQ(rename(pi, f).apply({"b", 3}), (Element{"a", 6}));
  EXPECT_THROW(TagPermutation(std::map<Tag, Tag>{{"a", "b"}}), InvalidAction);
  EXPECT_THROW(TagPermutation({{"a", "c"}, {"b", "c"}, {"c", "a"}}),
               InvalidAction);
}

TEST(RenameTest, ProductTags) {
  SemilinearSet a = SemilinearSet::of({{"a", 0}, {"a", 1}});
  SemilinearSet two = tag_product(2, a);
  EXPECT_EQ(two.size(), 4);
  EXPECT_TRUE(two.contains({product_tag("a", 1), 1}));
  EXPECT_THROW(tag_product(2, a, {product_tag("a", 0)}), TagCollision);
  TagPermutation pi({{"a", "b"}, {"b", "a"}});
  EXPECT_EQ(rename(pi, two), tag_product(2, rename(pi, a)));
  auto split = split_product_tag(product_tag("x", 12));
  ASSERT_TRUE(split);
  EXPECT_EQ(split->first, Tag("x"));
  EXPECT_EQ(split->second, 12);
}
