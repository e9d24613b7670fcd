#include "surj/generators.hpp"

#include <algorithm>
#include <numeric>

namespace surj::gen {

namespace {

PAMap unite(const PAMap &f, const PAMap &g) { return map_union_disjoint(f, g); }

PAMap piece(const Tag &from, Index residue, Index modulus, Index low,
            const Tag &to, Index base, Index step) {
  return PAMap::from_piece({{from, residue, modulus, low}, to, base, step});
}

Index pick(Rng &rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

bool coin(Rng &rng, double p = 0.5) {
  return std::bernoulli_distribution(p)(rng);
}

SemilinearSet first_points(const Tag &t, Index k) {
  return SemilinearSet::from_track(
      t, k == 0 ? Track{} : Track(k, std::vector<bool>(k, true), {false}));
}

/// Carrier state during random pair generation: -1 marks all of a tag,
/// k >= 0 marks tag:0..k-1.
using Carrier = std::map<Tag, Index>;

SemilinearSet carrier_set(const Carrier &c) {
  SemilinearSet s;
  for (auto &[t, k] : c)
    s = s | (k < 0 ? SemilinearSet::all(t) : first_points(t, k));
  return s;
}

} // namespace

SurjectionPair then(const SurjectionPair &first, const SurjectionPair &second) {
  return {map_compose(second.forward, first.forward),
          map_compose(first.backward, second.backward), first.left,
          second.right};
}

SurjectionPair enumerate(const Tag &tag, const Track &track, const Tag &target) {
  std::vector<std::pair<Element, Element>> fw, bw;
  Index t = track.threshold();
  for (Index n = 0; n < t; ++n)
    if (track.prefix()[n]) {
      Index r = track.rank(n);
      fw.push_back({{tag, n}, {target, r}});
      bw.push_back({{target, r}, {tag, n}});
    }
  PAMap f = PAMap::from_pairs(fw), g = PAMap::from_pairs(bw);
  Index p = track.period();
  Index per = std::count(track.cycle().begin(), track.cycle().end(), true);
  if (per > 0)
    for (Index n0 = t; n0 < t + p; ++n0) {
      if (!track.cycle()[n0 % p])
        continue;
      Index base = track.rank(n0);
      f = unite(f, piece(tag, n0 % p, p, t, target, base, per));
      g = unite(g, piece(target, base % per, per, base, tag, n0, p));
    }
  SemilinearSet left = SemilinearSet::from_track(tag, track);
  SemilinearSet right = track.finite() ? first_points(target, track.count())
                                       : SemilinearSet::all(target);
  return {f, g, left, right};
}

SurjectionPair to_single(const SemilinearSet &s, const Tag &target) {
  if (s.finite())
    throw InputError("to_single needs an infinite set");
  SurjectionPair p{{}, {}, s, {}};
  std::vector<Tag> infinite;
  std::vector<std::pair<Tag, Index>> finite;
  Index i = 0;
  for (auto &[tag, tr] : s.tracks()) {
    Tag tmp = target.name + "~" + std::to_string(i++);
    SurjectionPair e = enumerate(tag, tr, tmp);
    p.forward = unite(p.forward, e.forward);
    p.backward = unite(p.backward, e.backward);
    p.right = p.right | e.right;
    if (tr.finite())
      finite.push_back({tmp, tr.count()});
    else
      infinite.push_back(tmp);
  }
  SurjectionPair merge{{}, {}, p.right, SemilinearSet::all(target)};
  Index k = 0;
  for (auto &[tmp, count] : finite)
    for (Index j = 0; j < count; ++j, ++k) {
      merge.forward = unite(merge.forward,
                            PAMap::from_pairs({{{tmp, j}, {target, k}}}));
      merge.backward = unite(merge.backward,
                             PAMap::from_pairs({{{target, k}, {tmp, j}}}));
    }
  Index m = static_cast<Index>(infinite.size());
  for (Index j = 0; j < m; ++j) {
    merge.forward =
        unite(merge.forward, piece(infinite[j], 0, 1, 0, target, k + j, m));
    merge.backward = unite(merge.backward, piece(target, (k + j) % m, m, k + j,
                                                 infinite[j], 0, 1));
  }
  return then(p, merge);
}

SemilinearSet random_track_set(Rng &rng, const Tag &tag, bool infinite,
                               const Shape &shape) {
  SemilinearSet s;
  int blocks = static_cast<int>(pick(rng, 1, std::max(1, shape.max_blocks)));
  Index budget = shape.max_points;
  for (int i = 0; i < blocks; ++i) {
    if ((i == 0 && infinite) || (infinite && coin(rng, 0.3))) {
      Index m = pick(rng, 1, 4);
      s = s | SemilinearSet::of(Progression{tag, pick(rng, 0, m - 1), m,
                                            pick(rng, 0, 10)});
    } else if (budget > 0) {
      Index n = std::min<Index>(budget, pick(rng, 1, 6));
      budget -= n;
      std::vector<Element> pts;
      for (Index j = 0; j < n; ++j)
        pts.push_back({tag, pick(rng, 0, 29)});
      s = s | SemilinearSet::of(pts);
    }
  }
  return s;
}

SemilinearSet random_subset(Rng &rng, const SemilinearSet &s) {
  SemilinearSet out;
  for (auto &[tag, tr] : s.tracks()) {
    SemilinearSet one = SemilinearSet::from_track(tag, tr);
    switch (pick(rng, 0, 4)) {
    case 0:
      out = out | one;
      break;
    case 1:
      break;
    case 2: {
      Index m = pick(rng, 2, 3);
      out = out | (one & SemilinearSet::of(Progression{tag, pick(rng, 0, m - 1),
                                                       m, 0}));
      break;
    }
    case 3:
      out = out | (one & SemilinearSet::of(Progression{tag, 0, 1,
                                                       pick(rng, 0, 12)}));
      break;
    default:
      for (Index n : tr.members_below(30))
        if (coin(rng))
          out = out | SemilinearSet::of({{tag, n}});
    }
  }
  return out;
}

SurjectionPair random_pair_from(Rng &rng, const SemilinearSet &x,
                                const std::string &prefix, const Shape &shape) {
  Index counter = 0;
  auto fresh = [&] { return Tag(prefix + std::to_string(counter++)); };
  SurjectionPair p{{}, {}, x, {}};
  Carrier y;
  for (auto &[tag, tr] : x.tracks()) {
    Tag t = fresh();
    SurjectionPair e = enumerate(tag, tr, t);
    p.forward = unite(p.forward, e.forward);
    p.backward = unite(p.backward, e.backward);
    p.right = p.right | e.right;
    y[t] = tr.finite() ? tr.count() : -1;
  }

  for (int step = 0; step < shape.moves; ++step) {
    std::vector<Tag> inf, fin;
    for (auto &[t, k] : y)
      (k < 0 ? inf : fin).push_back(t);
    if (inf.empty() && fin.empty())
      break;
    Carrier next = y;
    PAMap f, g;
    auto take = [&](std::vector<Tag> &from) {
      std::size_t i = static_cast<std::size_t>(pick(rng, 0, from.size() - 1));
      Tag t = from[i];
      from.erase(from.begin() + i);
      next.erase(t);
      return t;
    };
    Index move = inf.empty() ? 6 : pick(rng, 0, fin.empty() ? 3 : 6);
    if (move == 0) { // split by parity
      Tag t = take(inf), u = fresh(), v = fresh();
      f = unite(piece(t, 0, 2, 0, u, 0, 1), piece(t, 1, 2, 0, v, 0, 1));
      g = unite(piece(u, 0, 1, 0, t, 0, 2), piece(v, 0, 1, 0, t, 1, 2));
      next[u] = next[v] = -1;
    } else if (move == 1 && inf.size() >= 2) { // interleave two tags
      Tag t = take(inf), u = take(inf), v = fresh();
      f = unite(piece(t, 0, 1, 0, v, 0, 2), piece(u, 0, 1, 0, v, 1, 2));
      g = unite(piece(v, 0, 2, 0, t, 0, 1), piece(v, 1, 2, 0, u, 0, 1));
      next[v] = -1;
    } else if (move <= 2 && !shape.halving) {
      continue;
    } else if (move <= 2) { // halve: two-to-one forward
      Tag t = take(inf), v = fresh();
      f = unite(piece(t, 0, 2, 0, v, 0, 1), piece(t, 1, 2, 0, v, 0, 1));
      g = coin(rng) ? piece(v, 0, 1, 0, t, 0, 1)
                    : unite(piece(v, 0, 2, 0, t, 0, 1), piece(v, 1, 2, 0, t, 0, 1));
      next[v] = -1;
    } else if (move == 3) { // emit leading points
      Tag t = take(inf), s = fresh(), v = fresh();
      Index k = pick(rng, 1, 3);
      for (Index i = 0; i < k; ++i) {
        f = unite(f, PAMap::from_pairs({{{t, i}, {s, i}}}));
        g = unite(g, PAMap::from_pairs({{{s, i}, {t, i}}}));
      }
      f = unite(f, piece(t, 0, 1, k, v, 0, 1));
      g = unite(g, piece(v, 0, 1, 0, t, k, 1));
      next[s] = k;
      next[v] = -1;
    } else if (move <= 5) { // absorb a finite tag, bijectively or not
      Tag s = take(fin), t = take(inf), v = fresh();
      Index k = y[s];
      bool overlap = move == 5;
      for (Index i = 0; i < k; ++i) {
        f = unite(f, PAMap::from_pairs({{{s, i}, {v, i}}}));
        g = unite(g, PAMap::from_pairs({{{v, i}, {s, i}}}));
      }
      f = unite(f, piece(t, 0, 1, 0, v, overlap ? 0 : k, 1));
      g = unite(g, piece(v, 0, 1, k, t, 0, 1));
      next[v] = -1;
    } else { // permute a finite tag
      if (fin.empty())
        continue;
      Tag s = take(fin), v = fresh();
      Index k = y[s];
      std::vector<Index> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (Index i = 0; i < k; ++i) {
        f = unite(f, PAMap::from_pairs({{{s, i}, {v, perm[i]}}}));
        g = unite(g, PAMap::from_pairs({{{v, perm[i]}, {s, i}}}));
      }
      next[v] = k;
    }
    // untouched carriers ride along by identity
    SemilinearSet kept;
    for (auto &[t, k] : next)
      if (y.count(t))
        kept = kept | (k < 0 ? SemilinearSet::all(t) : first_points(t, k));
    f = unite(f, PAMap::identity(kept));
    g = unite(g, PAMap::identity(kept));
    p = then(p, {f, g, carrier_set(y), carrier_set(next)});
    y = std::move(next);
  }

  // land on general sets rather than whole tags
  SurjectionPair land{{}, {}, carrier_set(y), {}};
  for (auto &[t, k] : y) {
    Tag v = fresh();
    SemilinearSet target =
        k < 0 ? random_track_set(rng, v, true, shape)
              : [&] {
                  std::vector<Index> idx(40);
                  std::iota(idx.begin(), idx.end(), 0);
                  std::shuffle(idx.begin(), idx.end(), rng);
                  std::vector<Element> es;
                  for (Index i = 0; i < k; ++i)
                    es.push_back({v, idx[i]});
                  return SemilinearSet::of(es);
                }();
    SurjectionPair e = enumerate(v, *target.track(v), t).flipped();
    land.forward = unite(land.forward, e.forward);
    land.backward = unite(land.backward, e.backward);
    land.right = land.right | target;
  }
  return then(p, land);
}

PAMap random_onto_with(Rng &rng, const SemilinearSet &from,
                       const SemilinearSet &extra, const std::string &scratch,
                       const Shape &shape) {
  if (from.finite()) {
    if (!extra.empty())
      throw InputError("finite carrier cannot absorb extra elements");
    auto xs = from.members();
    auto ys = xs;
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<std::pair<Element, Element>> pairs;
    for (std::size_t i = 0; i < xs.size(); ++i)
      pairs.push_back({xs[i], ys[i]});
    return PAMap::from_pairs(pairs);
  }
  SurjectionPair in = to_single(from, scratch + "u");
  SurjectionPair mid = random_pair_from(rng, in.right, scratch + "m", shape);
  SurjectionPair out = to_single(mid.right, scratch + "w");
  SurjectionPair land = to_single(from | extra, scratch + "w").flipped();
  return then(then(then(in, mid), out), land).forward;
}

namespace {

SemilinearSet random_carrier(Rng &rng, const Tag &tag, const Shape &shape,
                             bool infinite) {
  if (coin(rng, 0.1))
    return {};
  return random_track_set(rng, tag, infinite, shape);
}

/// Whole tags of `s`, each kept with probability one half.
SemilinearSet tag_split(Rng &rng, const SemilinearSet &s) {
  SemilinearSet out;
  for (auto &[tag, tr] : s.tracks())
    if (coin(rng))
      out = out | SemilinearSet::from_track(tag, tr);
  return out;
}

bool want_infinite(Rng &rng, const Shape &shape) {
  return shape.allow_infinite && coin(rng, 0.6);
}

} // namespace

UnionInstance union_instance(Rng &rng, const Shape &shape) {
  UnionInstance in;
  bool infinite = want_infinite(rng, shape);
  in.a = random_track_set(rng, "a", infinite, shape);
  Index n = pick(rng, 0, std::min(4, shape.max_length));
  for (Index i = 0; i < n; ++i) {
    Tag b = "b" + std::to_string(i);
    SemilinearSet bs =
        infinite ? random_carrier(rng, b, shape, coin(rng)) : SemilinearSet{};
    in.family.members.push_back(
        {bs, random_onto_with(rng, in.a, bs, "s" + std::to_string(i), shape)});
  }
  return in;
}

ImageInstance image_instance(Rng &rng, const Shape &shape) {
  ImageInstance in;
  bool infinite = want_infinite(rng, shape);
  in.a = random_track_set(rng, "a", infinite, shape);
  SemilinearSet e =
      infinite ? random_carrier(rng, "e", shape, coin(rng)) : SemilinearSet{};
  in.f = random_onto_with(rng, in.a, e, "s", shape);
  // e's own elements step somewhere inside a ∪ e, or nowhere
  auto pool = (in.a | e).members_below(30);
  for (const Element &x : e.members_below(30))
    if (!pool.empty() && coin(rng))
      in.f = unite(in.f, PAMap::from_pairs(
                             {{x, pool[pick(rng, 0, pool.size() - 1)]}}));
  return in;
}

RefinementInstance refinement_instance(Rng &rng, const Shape &shape) {
  RefinementInstance in;
  in.a = random_carrier(rng, "a", shape, want_infinite(rng, shape));
  in.b = random_carrier(rng, "b", shape, want_infinite(rng, shape));
  in.pair = random_pair_from(rng, in.a | in.b, "c", shape);
  in.c = in.pair.right;
  return in;
}

AbsorptionInstance absorption_instance(Rng &rng, const Shape &shape) {
  AbsorptionInstance in;
  bool infinite = want_infinite(rng, shape);
  in.d1 = random_carrier(rng, "d", shape, infinite);
  in.d2 = random_carrier(rng, "e", shape, infinite && coin(rng));
  // each side either stays put or absorbs its own part of Q through the
  // rank-order interleave with that part
  auto side = [&](const SemilinearSet &d, const Tag &qtag) {
    if (d.finite() || coin(rng, 0.25)) {
      in.f = unite(in.f, random_onto_with(rng, d, {}, "s", shape));
      return;
    }
    SemilinearSet part = random_carrier(rng, qtag, shape, coin(rng));
    in.q = in.q | part;
    SurjectionPair to = to_single(d, "u");
    SurjectionPair back = to_single(d | part, "u").flipped();
    in.f = unite(in.f, then(to, back).forward);
  };
  side(in.d1, "q");
  side(in.d2, "r");
  return in;
}

QuadInstance quad_instance(Rng &rng, const Shape &shape) {
  QuadInstance in;
  in.a1 = random_carrier(rng, "a", shape, want_infinite(rng, shape));
  in.a2 = random_carrier(rng, "b", shape, want_infinite(rng, shape));
  in.pair = random_pair_from(rng, in.a1 | in.a2, "c", shape);
  in.b1 = tag_split(rng, in.pair.right);
  in.b2 = in.pair.right - in.b1;
  return in;
}

ChainFamily chain_instance(Rng &rng, const Shape &shape) {
  Index n = pick(rng, 1, std::max(1, shape.max_length));
  std::vector<ChainEntry> rev;
  SemilinearSet next;
  for (Index i = n - 1; i >= 0; --i) {
    std::string idx = std::to_string(i);
    SemilinearSet b =
        random_carrier(rng, "b" + idx, shape, want_infinite(rng, shape));
    SurjectionPair p = random_pair_from(rng, next | b, "a" + idx + "_", shape);
    rev.push_back({p.right, b, p.flipped()});
    next = p.right;
  }
  std::reverse(rev.begin(), rev.end());
  return {rev};
}

TagPermutation random_permutation(Rng &rng, const std::set<Tag> &tags) {
  std::vector<Tag> from(tags.begin(), tags.end()), to = from;
  std::shuffle(to.begin(), to.end(), rng);
  std::map<Tag, Tag> m;
  for (std::size_t i = 0; i < from.size(); ++i)
    m[from[i]] = to[i];
  return TagPermutation(m);
}

} // namespace surj::gen
