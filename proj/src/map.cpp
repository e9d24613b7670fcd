#include "surj/detail.hpp"
#include "surj/semiset.hpp"

#include <algorithm>
#include <numeric>

namespace surj {

using detail::floor_mod;

namespace {

Index narrow(__int128 v) {
  if (v > detail::kMaxValue || v < -detail::kMaxValue)
    throw RepresentationLimit("coefficient overflow");
  return static_cast<Index>(v);
}

ClassFn make_fn(const Tag &target, __int128 num, __int128 off, __int128 den) {
  if (den < 0) {
    num = -num;
    off = -off;
    den = -den;
  }
  auto g = std::gcd(std::gcd(narrow(num < 0 ? -num : num),
                             narrow(off < 0 ? -off : off)),
                    narrow(den));
  if (g > 1) {
    num /= g;
    off /= g;
    den /= g;
  }
  return ClassFn{target, narrow(num), narrow(off), narrow(den)};
}

/// First n >= t with n ≡ r (mod p).
Index first_at_or_after(Index t, Index r, Index p) {
  return t + floor_mod(r - t, p);
}

/// Value and per-period increment of a class function at its first member.
std::pair<Index, Index> class_ray(const ClassFn &fn, Index n0, Index p) {
  auto v0 = fn.eval(n0);
  auto v1 = fn.eval(n0 + p);
  if (!v0 || !v1 || *v1 < *v0)
    throw InputError("malformed affine class");
  return {*v0, *v1 - *v0};
}

/// Adds {a + b*k : k in K} to the builder, b > 0.
void push_track(TrackBuilder &out, const Track &k, Index a, Index b) {
  for (Index i : k.members_below(k.threshold()))
    out.add_point(detail::checked_affine(a, b, i));
  if (k.finite())
    return;
  Index pk = k.period();
  for (Index c = 0; c < pk; ++c) {
    if (!k.cycle()[c])
      continue;
    Index k0 = first_at_or_after(k.threshold(), c, pk);
    out.add_ray(detail::checked_affine(a, b, k0), detail::checked_affine(0, b, pk));
  }
}

} // namespace

std::optional<Index> ClassFn::eval(Index n) const {
  __int128 v = static_cast<__int128>(num) * n + off;
  if (v % den != 0)
    return std::nullopt;
  v /= den;
  if (v < 0 || v > detail::kMaxValue)
    return std::nullopt;
  return static_cast<Index>(v);
}

std::optional<Element> TagMap::apply(Index n) const {
  if (n < 0)
    return std::nullopt;
  if (n < threshold)
    return prefix[n];
  const auto &fn = cycle[n % period()];
  if (!fn)
    return std::nullopt;
  auto v = fn->eval(n);
  if (!v)
    return std::nullopt;
  return Element{fn->target, *v};
}

TagMap TagMap::lifted(Index t, Index p) const {
  detail::check_extent(t);
  detail::check_extent(p);
  TagMap m;
  m.threshold = t;
  m.prefix.resize(t);
  for (Index n = 0; n < t; ++n)
    m.prefix[n] = apply(n);
  m.cycle.resize(p);
  for (Index r = 0; r < p; ++r)
    m.cycle[r] = cycle[r % period()];
  return m;
}

void TagMap::normalize() {
  Index p = period();
  bool changed = true;
  while (changed && p > 1) {
    changed = false;
    for (Index q = 2; q <= p; ++q) {
      if (p % q != 0)
        continue;
      bool prime = true;
      for (Index d = 2; d * d <= q; ++d)
        if (q % d == 0) {
          prime = false;
          break;
        }
      if (!prime)
        continue;
      Index sub = p / q;
      bool ok = true;
      for (Index i = sub; i < p && ok; ++i)
        ok = cycle[i] == cycle[i - sub];
      if (ok) {
        p = sub;
        cycle.resize(p);
        changed = true;
        break;
      }
    }
  }
  auto agrees = [&](Index n) {
    const auto &e = prefix[n];
    const auto &fn = cycle[n % p];
    if (!e || !fn)
      return !e && !fn;
    return fn->target == e->tag && fn->eval(n) == e->index;
  };
  while (threshold > 0 && agrees(threshold - 1))
    --threshold;
  prefix.resize(threshold);
}

Track TagMap::domain() const {
  std::vector<bool> pre(threshold), cyc(period());
  for (Index n = 0; n < threshold; ++n)
    pre[n] = prefix[n].has_value();
  for (Index r = 0; r < period(); ++r)
    cyc[r] = cycle[r].has_value();
  return Track(threshold, std::move(pre), std::move(cyc));
}

void PAMap::set_table(const Tag &tag, TagMap t) {
  t.normalize();
  if (t.domain().empty())
    by_tag_.erase(tag);
  else
    by_tag_[tag] = std::move(t);
}

PAMap PAMap::from_pairs(const std::vector<std::pair<Element, Element>> &g) {
  std::map<Tag, std::map<Index, Element>> by;
  for (const auto &[x, y] : g) {
    if (x.index < 0 || y.index < 0)
      throw InputError("negative index");
    auto [it, fresh] = by[x.tag].emplace(x.index, y);
    if (!fresh && it->second != y)
      throw ConflictingUnion("finite graph is not a function");
  }
  PAMap f;
  for (auto &[tag, pts] : by) {
    TagMap t;
    t.threshold = pts.rbegin()->first + 1;
    detail::check_extent(t.threshold);
    t.prefix.resize(t.threshold);
    for (auto &[n, y] : pts)
      t.prefix[n] = y;
    f.set_table(tag, std::move(t));
  }
  return f;
}

PAMap PAMap::from_piece(const AffinePiece &p) {
  const Progression &g = p.guard;
  if (p.base < 0 || p.step < 0 || g.low < 0 || g.modulus < 0 || g.residue < 0)
    throw InputError("negative affine piece field");
  if (g.modulus == 0)
    return from_pairs({{{g.tag, g.low}, {p.target_tag, p.base}}});
  Index n0 = first_at_or_after(g.low, g.residue, g.modulus);
  TagMap t;
  t.threshold = n0;
  detail::check_extent(n0);
  t.prefix.resize(n0);
  t.cycle.assign(g.modulus, std::nullopt);
  __int128 off = static_cast<__int128>(p.base) * g.modulus -
                 static_cast<__int128>(p.step) * n0;
  t.cycle[n0 % g.modulus] = make_fn(p.target_tag, p.step, off, g.modulus);
  PAMap f;
  f.set_table(g.tag, std::move(t));
  return f;
}

PAMap PAMap::retag(const SemilinearSet &s,
                   const std::function<Tag(const Tag &)> &to) {
  PAMap f;
  for (auto &[tag, tr] : s.tracks()) {
    Tag dst = to(tag);
    TagMap t;
    t.threshold = tr.threshold();
    t.prefix.resize(t.threshold);
    for (Index n = 0; n < t.threshold; ++n)
      if (tr.prefix()[n])
        t.prefix[n] = Element{dst, n};
    t.cycle.assign(tr.period(), std::nullopt);
    for (Index r = 0; r < tr.period(); ++r)
      if (tr.cycle()[r])
        t.cycle[r] = ClassFn{dst, 1, 0, 1};
    f.set_table(tag, std::move(t));
  }
  return f;
}

PAMap PAMap::identity(const SemilinearSet &s) {
  return retag(s, [](const Tag &t) { return t; });
}

PAMap PAMap::constant(const SemilinearSet &s, const Element &c) {
  PAMap f;
  for (auto &[tag, tr] : s.tracks()) {
    TagMap t;
    t.threshold = tr.threshold();
    t.prefix.resize(t.threshold);
    for (Index n = 0; n < t.threshold; ++n)
      if (tr.prefix()[n])
        t.prefix[n] = c;
    t.cycle.assign(tr.period(), std::nullopt);
    for (Index r = 0; r < tr.period(); ++r)
      if (tr.cycle()[r])
        t.cycle[r] = ClassFn{c.tag, 0, c.index, 1};
    f.set_table(tag, std::move(t));
  }
  return f;
}

std::optional<Element> PAMap::apply(const Element &e) const {
  auto it = by_tag_.find(e.tag);
  if (it == by_tag_.end())
    return std::nullopt;
  return it->second.apply(e.index);
}

SemilinearSet PAMap::domain() const {
  SemilinearSet s;
  for (auto &[tag, t] : by_tag_)
    s.set_track(tag, t.domain());
  return s;
}

void PAMap::finite_part(std::vector<std::pair<Element, Element>> &graph,
                        std::vector<AffinePiece> &pieces) const {
  for (auto &[tag, t] : by_tag_) {
    for (Index n = 0; n < t.threshold; ++n)
      if (t.prefix[n])
        graph.push_back({{tag, n}, *t.prefix[n]});
    Index p = t.period();
    for (Index r = 0; r < p; ++r) {
      if (!t.cycle[r])
        continue;
      Index n0 = first_at_or_after(t.threshold, r, p);
      auto [v0, step] = class_ray(*t.cycle[r], n0, p);
      pieces.push_back({{tag, r, p, n0}, t.cycle[r]->target, v0, step});
    }
  }
}

SemilinearSet map_image(const PAMap &f, const SemilinearSet &s) {
  std::map<Tag, TrackBuilder> out;
  for (auto &[tag, tm] : f.tables()) {
    const Track *tr = s.track(tag);
    if (!tr)
      continue;
    Index t = std::max(tm.threshold, tr->threshold());
    Index p = detail::checked_lcm(tm.period(), tr->period());
    TagMap m = tm.lifted(t, p);
    for (Index n = 0; n < t; ++n)
      if (m.prefix[n] && tr->contains(n))
        out[m.prefix[n]->tag].add_point(m.prefix[n]->index);
    for (Index r = 0; r < p; ++r) {
      if (!m.cycle[r] || !tr->cycle()[r % tr->period()])
        continue;
      Index n0 = first_at_or_after(t, r, p);
      auto [v0, step] = class_ray(*m.cycle[r], n0, p);
      out[m.cycle[r]->target].add_ray(v0, step);
    }
  }
  SemilinearSet img;
  for (auto &[tag, b] : out)
    img.set_track(tag, b.build());
  return img;
}

SemilinearSet map_image(const PAMap &f) { return map_image(f, f.domain()); }

SemilinearSet map_preimage(const PAMap &f, const SemilinearSet &s) {
  SemilinearSet pre;
  for (auto &[tag, tm] : f.tables()) {
    TrackBuilder b;
    for (Index n = 0; n < tm.threshold; ++n)
      if (tm.prefix[n] && s.contains(*tm.prefix[n]))
        b.add_point(n);
    Index p = tm.period();
    for (Index r = 0; r < p; ++r) {
      if (!tm.cycle[r])
        continue;
      const Track *tt = s.track(tm.cycle[r]->target);
      if (!tt)
        continue;
      Index n0 = first_at_or_after(tm.threshold, r, p);
      auto [v0, step] = class_ray(*tm.cycle[r], n0, p);
      push_track(b, tt->pullback(v0, step), n0, p);
    }
    pre.set_track(tag, b.build());
  }
  return pre;
}

PAMap map_compose(const PAMap &outer, const PAMap &inner) {
  PAMap h;
  for (auto &[tag, tm] : inner.tables()) {
    Index p = tm.period();
    Index tnew = tm.threshold, pnew = p;
    for (Index r = 0; r < p; ++r) {
      if (!tm.cycle[r])
        continue;
      auto ot = outer.tables().find(tm.cycle[r]->target);
      if (ot == outer.tables().end())
        continue;
      Index n0 = first_at_or_after(tm.threshold, r, p);
      auto [v0, step] = class_ray(*tm.cycle[r], n0, p);
      if (step == 0)
        continue;
      Index po = ot->second.period(), to = ot->second.threshold;
      Index q = po / std::gcd(step, po);
      pnew = detail::checked_lcm(pnew, detail::checked_affine(0, p, q));
      Index k1 = v0 >= to ? 0 : (to - v0 + step - 1) / step;
      tnew = std::max(tnew, detail::checked_affine(n0, p, k1));
    }
    detail::check_extent(tnew);
    TagMap res;
    res.threshold = tnew;
    res.prefix.resize(tnew);
    for (Index n = 0; n < tnew; ++n)
      if (auto mid = tm.apply(n))
        res.prefix[n] = outer.apply(*mid);
    res.cycle.assign(pnew, std::nullopt);
    for (Index c = 0; c < pnew; ++c) {
      Index n = first_at_or_after(tnew, c, pnew);
      const auto &fn = tm.cycle[n % p];
      if (!fn)
        continue;
      auto ot = outer.tables().find(fn->target);
      if (ot == outer.tables().end())
        continue;
      Index v = *fn->eval(n);
      if (fn->num == 0) {
        if (auto e = ot->second.apply(v))
          res.cycle[c] = ClassFn{e->tag, 0, e->index, 1};
        continue;
      }
      const auto &ofn = ot->second.cycle[v % ot->second.period()];
      if (!ofn)
        continue;
      __int128 a1 = fn->num, b1 = fn->off, d1 = fn->den;
      __int128 a2 = ofn->num, b2 = ofn->off, d2 = ofn->den;
      res.cycle[c] = make_fn(ofn->target, a2 * a1, a2 * b1 + b2 * d1, d2 * d1);
    }
    h.set_table(tag, std::move(res));
  }
  return h;
}

namespace {

template <typename Keep>
PAMap mask(const PAMap &f, const SemilinearSet &s, Keep keep) {
  PAMap g;
  Track none;
  for (auto &[tag, tm] : f.tables()) {
    const Track *tr = s.track(tag);
    const Track &x = tr ? *tr : none;
    Index t = std::max(tm.threshold, x.threshold());
    Index p = detail::checked_lcm(tm.period(), x.period());
    TagMap m = tm.lifted(t, p);
    for (Index n = 0; n < t; ++n)
      if (!keep(x.contains(n)))
        m.prefix[n].reset();
    for (Index r = 0; r < p; ++r)
      if (!keep(x.cycle()[r % x.period()]))
        m.cycle[r].reset();
    g.set_table(tag, std::move(m));
  }
  return g;
}

} // namespace

PAMap map_restrict(const PAMap &f, const SemilinearSet &s) {
  return mask(f, s, [](bool in) { return in; });
}

PAMap map_erase(const PAMap &f, const SemilinearSet &s) {
  return mask(f, s, [](bool in) { return !in; });
}

PAMap map_union_disjoint(const PAMap &f, const PAMap &g) {
  PAMap h = f;
  for (auto &[tag, gm] : g.tables()) {
    auto it = f.tables().find(tag);
    if (it == f.tables().end()) {
      h.set_table(tag, gm);
      continue;
    }
    const TagMap &fm = it->second;
    Index t = std::max(fm.threshold, gm.threshold);
    Index p = detail::checked_lcm(fm.period(), gm.period());
    TagMap a = fm.lifted(t, p), b = gm.lifted(t, p);
    for (Index n = 0; n < t; ++n) {
      if (a.prefix[n] && b.prefix[n])
        throw ConflictingUnion("map domains overlap");
      if (!a.prefix[n])
        a.prefix[n] = b.prefix[n];
    }
    for (Index r = 0; r < p; ++r) {
      if (a.cycle[r] && b.cycle[r])
        throw ConflictingUnion("map domains overlap");
      if (!a.cycle[r])
        a.cycle[r] = b.cycle[r];
    }
    h.set_table(tag, std::move(a));
  }
  return h;
}

PAMap map_identity(const SemilinearSet &s) { return PAMap::identity(s); }

PAMap map_iterate(const PAMap &f, Index n) {
  if (n < 0)
    throw InputError("negative iteration count");
  PAMap r = PAMap::identity(f.domain() | map_image(f));
  for (Index i = 0; i < n; ++i)
    r = map_compose(f, r);
  return r;
}

bool is_partial_surjection(const PAMap &f, const SemilinearSet &from,
                           const SemilinearSet &onto) {
  return f.domain().subset_of(from) && map_image(f) == onto;
}

bool SurjectionPair::valid() const {
  return is_partial_surjection(forward, left, right) &&
         is_partial_surjection(backward, right, left);
}

} // namespace surj
