#include "surj/omega.hpp"
#include "surj/detail.hpp"

#include <cmath>
#include <cstdlib>

namespace surj {

Budget default_budget() {
  Budget b;
  if (const char *env = std::getenv("SURJ_BUDGET")) {
    char *end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      b.max_steps = v;
  }
  return b;
}

Index cantor_pair(Index m, Index n) {
  if (m < 0 || n < 0)
    throw InputError("cantor_pair of a negative number");
  __int128 s = static_cast<__int128>(m) + n;
  __int128 v = s * (s + 1) / 2 + m;
  if (v > detail::kMaxValue)
    throw RepresentationLimit("cantor_pair overflow");
  return static_cast<Index>(v);
}

std::pair<Index, Index> cantor_unpair(Index k) {
  if (k < 0)
    throw InputError("cantor_unpair of a negative number");
  auto w = static_cast<Index>((std::sqrt(8.0L * k + 1) - 1) / 2);
  while (w * (w + 1) / 2 > k)
    --w;
  while ((w + 1) * (w + 2) / 2 <= k)
    ++w;
  Index m = k - w * (w + 1) / 2;
  return {m, w - m};
}

struct IsotoneExpr::Node {
  Kind kind;
  SemilinearSet set;
  PAMap map;
  std::optional<IsotoneExpr> lhs, rhs;
};

IsotoneExpr IsotoneExpr::var() {
  return IsotoneExpr(std::make_shared<Node>(Node{Kind::Var, {}, {}, {}, {}}));
}
IsotoneExpr IsotoneExpr::constant(SemilinearSet s) {
  return IsotoneExpr(
      std::make_shared<Node>(Node{Kind::Const, std::move(s), {}, {}, {}}));
}
IsotoneExpr IsotoneExpr::intersect(IsotoneExpr a, IsotoneExpr b) {
  return IsotoneExpr(std::make_shared<Node>(
      Node{Kind::Intersect, {}, {}, std::move(a), std::move(b)}));
}
IsotoneExpr IsotoneExpr::unite(IsotoneExpr a, IsotoneExpr b) {
  return IsotoneExpr(std::make_shared<Node>(
      Node{Kind::Union, {}, {}, std::move(a), std::move(b)}));
}
IsotoneExpr IsotoneExpr::image(PAMap f, IsotoneExpr a) {
  return IsotoneExpr(std::make_shared<Node>(
      Node{Kind::Image, {}, std::move(f), std::move(a), {}}));
}
IsotoneExpr IsotoneExpr::preimage(PAMap f, IsotoneExpr a) {
  return IsotoneExpr(std::make_shared<Node>(
      Node{Kind::Preimage, {}, std::move(f), std::move(a), {}}));
}

IsotoneExpr::Kind IsotoneExpr::kind() const { return node_->kind; }
const SemilinearSet &IsotoneExpr::set() const { return node_->set; }
const PAMap &IsotoneExpr::map() const { return node_->map; }
const IsotoneExpr &IsotoneExpr::lhs() const { return *node_->lhs; }
const IsotoneExpr &IsotoneExpr::rhs() const { return *node_->rhs; }

Index IsotoneExpr::depth() const {
  switch (kind()) {
  case Kind::Var:
  case Kind::Const:
    return 0;
  case Kind::Image:
  case Kind::Preimage:
    return 1 + lhs().depth();
  default:
    return 1 + std::max(lhs().depth(), rhs().depth());
  }
}

SemilinearSet IsotoneExpr::eval(const SemilinearSet &d) const {
  switch (kind()) {
  case Kind::Var:
    return d;
  case Kind::Const:
    return set();
  case Kind::Intersect:
    return lhs().eval(d) & rhs().eval(d);
  case Kind::Union:
    return lhs().eval(d) | rhs().eval(d);
  case Kind::Image:
    return map_image(map(), lhs().eval(d));
  case Kind::Preimage:
    return map_preimage(map(), lhs().eval(d));
  }
  return {};
}

std::optional<PAMap>
IsotoneExpr::as_single_image(const SemilinearSet &ambient) const {
  switch (kind()) {
  case Kind::Var:
    return PAMap::identity(ambient);
  case Kind::Image:
    if (auto h = lhs().as_single_image(ambient))
      return map_compose(map(), *h);
    return std::nullopt;
  case Kind::Intersect: {
    const IsotoneExpr *side = nullptr;
    const IsotoneExpr *cst = nullptr;
    if (rhs().kind() == Kind::Const) {
      side = &lhs();
      cst = &rhs();
    } else if (lhs().kind() == Kind::Const) {
      side = &rhs();
      cst = &lhs();
    }
    if (!side)
      return std::nullopt;
    if (auto h = side->as_single_image(ambient))
      return map_restrict(*h, map_preimage(*h, cst->set()));
    return std::nullopt;
  }
  default:
    return std::nullopt;
  }
}

SemilinearSet index_comparison(const PAMap &f, int sign) {
  SemilinearSet out;
  for (auto &[tag, tm] : f.tables()) {
    TrackBuilder b;
    auto want = [sign](__int128 d) {
      return sign > 0 ? d > 0 : sign < 0 ? d < 0 : d == 0;
    };
    for (Index n = 0; n < tm.threshold; ++n)
      if (tm.prefix[n] && want(static_cast<__int128>(tm.prefix[n]->index) - n))
        b.add_point(n);
    Index p = tm.period();
    for (Index r = 0; r < p; ++r) {
      if (!tm.cycle[r])
        continue;
      const ClassFn &fn = *tm.cycle[r];
      Index n0 = tm.threshold + detail::floor_mod(r - tm.threshold, p);
      // den * (f(n) - n) at n = n0 + p*k is c0 + c1*k
      __int128 c1 = static_cast<__int128>(fn.num - fn.den) * p;
      __int128 c0 = static_cast<__int128>(fn.num - fn.den) * n0 + fn.off;
      if (c1 == 0) {
        if (want(c0))
          b.add_ray(n0, p);
        continue;
      }
      // g(k) = c0 + c1*k changes sign once; scan the finite side explicitly
      __int128 cross = c1 > 0 ? (-c0) / c1 + 1 : c0 / (-c1) + 1;
      if (cross < 0)
        cross = 0;
      if (cross > detail::kMaxExtent)
        throw RepresentationLimit("index comparison range too large");
      Index kc = static_cast<Index>(cross);
      for (Index k = 0; k < kc; ++k)
        if (want(c0 + c1 * k))
          b.add_point(detail::checked_affine(n0, p, k));
      if (want(c0 + c1 * kc))
        b.add_ray(detail::checked_affine(n0, p, kc), p);
      else
        for (Index k = kc; k < kc + 2; ++k)
          if (want(c0 + c1 * k))
            b.add_point(detail::checked_affine(n0, p, k));
    }
    out.set_track(tag, b.build());
  }
  return out;
}

Track translate_closure(const Track &s, Index shift) {
  Index pp = detail::checked_lcm(s.period(), shift);
  Index t = s.threshold() + pp;
  detail::check_extent(t + pp);
  std::vector<bool> c(t + pp);
  for (Index n = 0; n < t + pp; ++n)
    c[n] = s.contains(n) || (n >= shift && c[n - shift]);
  std::vector<bool> pre(c.begin(), c.begin() + t), cyc(pp);
  for (Index n = t; n < t + pp; ++n)
    cyc[n % pp] = c[n];
  return Track(t, std::move(pre), std::move(cyc));
}

namespace {

constexpr Index kMaxLag = 8;

/// Union of deltas[last-(j+1)*lag+1 .. last-j*lag].
SemilinearSet window(const std::vector<SemilinearSet> &deltas, Index lag,
                     Index j) {
  Index hi = static_cast<Index>(deltas.size()) - 1 - j * lag;
  SemilinearSet w;
  for (Index i = hi; i > hi - lag; --i)
    w = w | deltas[i];
  return w;
}

/// Per-tag positive shifts under which the last three windows of `lag`
/// consecutive deltas are translates of one another.
std::optional<std::map<Tag, Index>>
detect_translation(const std::vector<SemilinearSet> &deltas, Index lag) {
  if (static_cast<Index>(deltas.size()) < 3 * lag)
    return std::nullopt;
  SemilinearSet d0 = window(deltas, lag, 0), d1 = window(deltas, lag, 1),
                d2 = window(deltas, lag, 2);
  if (d0.tags() != d1.tags() || d1.tags() != d2.tags() || d0.empty())
    return std::nullopt;
  std::map<Tag, Index> shifts;
  for (const Tag &t : d0.tags()) {
    const Track *a = d0.track(t), *b = d1.track(t), *c = d2.track(t);
    Index s = *a->nth(0) - *b->nth(0);
    if (s <= 0 || *b->nth(0) - *c->nth(0) != s)
      return std::nullopt;
    if (b->shifted(s) != *a || c->shifted(s) != *b)
      return std::nullopt;
    shifts[t] = s;
  }
  return shifts;
}

/// Translate closure of the most recent window.
SemilinearSet closure_of_tail(const std::vector<SemilinearSet> &deltas,
                              Index lag, const std::map<Tag, Index> &shifts) {
  SemilinearSet out, last = window(deltas, lag, 0);
  for (auto &[tag, tr] : last.tracks())
    out.set_track(tag, translate_closure(tr, shifts.at(tag)));
  return out;
}

} // namespace

SemilinearSet omega_union(const SemilinearSet &seed, const PAMap &f,
                          const Budget &budget, Direction dir) {
  auto step = [&](const SemilinearSet &s) {
    return dir == Direction::Forward ? map_image(f, s) : map_preimage(f, s);
  };
  std::optional<SemilinearSet> ordered;
  auto well_ordered = [&]() -> const SemilinearSet & {
    if (!ordered)
      ordered = index_comparison(f, dir == Direction::Forward ? 1 : -1);
    return *ordered;
  };
  SemilinearSet u = seed, delta = seed;
  std::vector<SemilinearSet> deltas{seed};
  for (Index k = 0; k < budget.max_steps; ++k) {
    SemilinearSet fresh = step(delta) - u;
    if (fresh.empty())
      return u;
    u = u | fresh;
    delta = fresh;
    deltas.push_back(fresh);
    if (!budget.acceleration)
      continue;
    for (Index lag = 1; lag <= kMaxLag; ++lag) {
      auto shifts = detect_translation(deltas, lag);
      if (!shifts)
        continue;
      SemilinearSet cand = u | closure_of_tail(deltas, lag, *shifts);
      if ((seed | step(cand)) != cand)
        continue;
      // every new point needs a derivation from a lower index
      SemilinearSet grounded = seed | step(u);
      grounded = grounded | (dir == Direction::Forward
                                 ? map_image(f, cand & well_ordered())
                                 : map_preimage(f, cand) & well_ordered());
      if ((cand - u).subset_of(grounded))
        return cand;
    }
  }
  throw NonStabilizing("omega_union did not stabilize", budget.max_steps,
                       delta);
}

SemilinearSet omega_union(const SemilinearSet &seed, const IsotoneExpr &step,
                          const Budget &budget) {
  SemilinearSet u = seed;
  for (Index k = 0; k < budget.max_steps; ++k) {
    SemilinearSet next = u | seed | step.eval(u);
    if (next == u)
      return u;
    SemilinearSet delta = next - u;
    u = std::move(next);
    if (k + 1 == budget.max_steps)
      throw NonStabilizing("omega_union did not stabilize", budget.max_steps,
                           delta);
  }
  throw NonStabilizing("omega_union did not stabilize", budget.max_steps, {});
}

DescendingChain DescendingChain::recurrence(
    SemilinearSet d0, std::function<SemilinearSet(const SemilinearSet &)> next) {
  DescendingChain c;
  c.at = [d0 = std::move(d0)](Index) { return d0; };
  c.next = std::move(next);
  return c;
}

DescendingChain
DescendingChain::indexed(std::function<SemilinearSet(Index)> at,
                         std::optional<Index> constant_from) {
  DescendingChain c;
  c.at = std::move(at);
  c.constant_from = constant_from;
  return c;
}

SemilinearSet omega_intersection(const DescendingChain &chain,
                                 const Budget &budget) {
  SemilinearSet d = chain.at(0);
  SemilinearSet last_delta;
  for (Index k = 1; k <= budget.max_steps; ++k) {
    if (!chain.next && chain.constant_from && k > *chain.constant_from)
      return d;
    SemilinearSet n = chain.next ? chain.next(d) : chain.at(k);
    if (!n.subset_of(d))
      throw NotDescending("chain is not descending at step " +
                          std::to_string(k));
    if (n.empty() || (chain.next && n == d))
      return n;
    last_delta = d - n;
    d = std::move(n);
  }
  throw NonStabilizing("omega_intersection did not stabilize",
                       budget.max_steps, last_delta);
}

SemilinearSet gfp_isotone(const IsotoneExpr &i, const SemilinearSet &ambient,
                          const Budget &budget) {
  std::optional<PAMap> h;
  if (budget.acceleration)
    h = i.as_single_image(ambient);
  std::optional<SemilinearSet> non_increasing;
  SemilinearSet d = ambient;
  std::vector<SemilinearSet> removed;
  for (Index k = 0; k < budget.max_steps; ++k) {
    SemilinearSet n = ambient & i.eval(d);
    if (!n.subset_of(d))
      throw NotDescending("expression is not isotone below its ambient");
    if (n == d)
      return d;
    removed.push_back(d - n);
    d = std::move(n);
    if (!h)
      continue;
    for (Index lag = 1; lag <= kMaxLag; ++lag) {
      auto shifts = detect_translation(removed, lag);
      if (!shifts)
        continue;
      SemilinearSet gone = closure_of_tail(removed, lag, *shifts) & d;
      SemilinearSet cand = d - gone;
      if ((ambient & map_image(*h, cand)) != cand)
        continue;
      if (!non_increasing)
        non_increasing = index_comparison(*h, -1) | index_comparison(*h, 0);
      SemilinearSet sources = cand | (gone & *non_increasing);
      if ((gone & map_image(*h, sources)).empty())
        return cand;
    }
  }
  throw NonStabilizing("gfp iteration did not stabilize", budget.max_steps,
                       removed.empty() ? SemilinearSet{} : removed.back());
}

PAMap least_index_stratify(const SemilinearSet &domain, const PAMap &step,
                           const SemilinearSet &target, const Budget &budget,
                           Index min_steps) {
  PAMap current = PAMap::identity(domain);
  for (Index m = 0; m < min_steps; ++m)
    current = map_compose(step, current);
  PAMap result;
  for (Index m = 0;; ++m) {
    SemilinearSet hit = map_preimage(current, target);
    if (!hit.empty()) {
      result = map_union_disjoint(result, map_restrict(current, hit));
      current = map_erase(current, hit);
    }
    if (current.empty())
      return result;
    // the rest stays out if nothing it can still reach lies in the target
    try {
      SemilinearSet reach = omega_union(map_image(current), step, budget);
      if ((reach & target).empty())
        return result;
    } catch (const NonStabilizing &) {
    }
    if (m + 1 >= budget.max_steps)
      throw NonStabilizing("stratification did not terminate", m + 1,
                           current.domain());
    current = map_compose(step, current);
  }
}

} // namespace surj
