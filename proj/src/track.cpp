#include "surj/semiset.hpp"
#include "surj/detail.hpp"

#include <algorithm>
#include <numeric>

namespace surj {

namespace detail {

Index floor_mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

Index checked_lcm(Index a, Index b) {
  __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > kMaxExtent)
    throw RepresentationLimit("period exceeds representation limit");
  return static_cast<Index>(l);
}

void check_extent(Index n) {
  if (n > kMaxExtent)
    throw RepresentationLimit("threshold exceeds representation limit");
}

Index checked_affine(Index a, Index b, Index k) {
  __int128 v = static_cast<__int128>(b) * k + a;
  if (v > kMaxValue || v < -kMaxValue)
    throw RepresentationLimit("index overflow");
  return static_cast<Index>(v);
}

} // namespace detail

using detail::floor_mod;

Track::Track(Index threshold, std::vector<bool> prefix, std::vector<bool> cycle)
    : threshold_(threshold), prefix_(std::move(prefix)),
      cycle_(std::move(cycle)) {
  prefix_.resize(threshold_, false);
  if (cycle_.empty())
    cycle_.assign(1, false);
  normalize();
}

Track Track::point(Index n) {
  std::vector<bool> p(n + 1, false);
  p[n] = true;
  return Track(n + 1, std::move(p), {false});
}

Track Track::ray(Index start, Index step) {
  if (step == 0)
    return point(start);
  detail::check_extent(start + step);
  std::vector<bool> c(step, false);
  c[start % step] = true;
  return Track(start, std::vector<bool>(start, false), std::move(c));
}

Track Track::all() { return Track(0, {}, {true}); }

bool Track::contains(Index n) const {
  if (n < 0)
    return false;
  if (n < threshold_)
    return prefix_[n];
  return cycle_[n % period()];
}

bool Track::empty() const { return threshold_ == 0 && !cycle_[0] && period() == 1; }

bool Track::finite() const { return period() == 1 && !cycle_[0]; }

Index Track::count() const {
  return std::count(prefix_.begin(), prefix_.end(), true);
}

void Track::normalize() {
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
        ok = cycle_[i] == cycle_[i - sub];
      if (ok) {
        p = sub;
        cycle_.resize(p);
        changed = true;
        break;
      }
    }
  }
  while (threshold_ > 0 &&
         prefix_[threshold_ - 1] == cycle_[(threshold_ - 1) % p]) {
    --threshold_;
  }
  prefix_.resize(threshold_);
}

Track Track::lifted(Index threshold, Index period) const {
  detail::check_extent(threshold);
  detail::check_extent(period);
  Track t;
  t.threshold_ = threshold;
  t.prefix_.resize(threshold);
  for (Index n = 0; n < threshold; ++n)
    t.prefix_[n] = contains(n);
  t.cycle_.resize(period);
  for (Index r = 0; r < period; ++r)
    t.cycle_[r] = cycle_[r % this->period()];
  return t;
}

Track Track::pullback(Index a, Index b) const {
  if (b == 0)
    return contains(a) ? all() : Track();
  Index tk = a >= threshold_ ? 0 : (threshold_ - a + b - 1) / b;
  Index q = period() / std::gcd(b, period());
  std::vector<bool> pre(tk), cyc(q);
  for (Index k = 0; k < tk; ++k)
    pre[k] = contains(detail::checked_affine(a, b, k));
  for (Index r = 0; r < q; ++r) {
    Index k = tk + floor_mod(r - tk, q);
    cyc[r] = contains(detail::checked_affine(a, b, k));
  }
  return Track(tk, std::move(pre), std::move(cyc));
}

std::vector<Index> Track::members_below(Index bound) const {
  std::vector<Index> out;
  for (Index n = 0; n < bound; ++n)
    if (contains(n))
      out.push_back(n);
  return out;
}

std::optional<Index> Track::nth(Index k) const {
  for (Index n = 0; n < threshold_; ++n)
    if (prefix_[n] && k-- == 0)
      return n;
  Index per = std::count(cycle_.begin(), cycle_.end(), true);
  if (per == 0)
    return std::nullopt;
  Index base = threshold_ + (k / per) * period();
  Index within = k % per;
  for (Index n = base;; ++n)
    if (cycle_[n % period()] && within-- == 0)
      return n;
}

Index Track::rank(Index n) const {
  Index r = 0;
  Index lim = std::min(n, threshold_);
  for (Index i = 0; i < lim; ++i)
    r += prefix_[i];
  if (n <= threshold_)
    return r;
  Index per = std::count(cycle_.begin(), cycle_.end(), true);
  Index full = (n - threshold_) / period();
  r += full * per;
  for (Index i = threshold_ + full * period(); i < n; ++i)
    r += cycle_[i % period()];
  return r;
}

namespace {

template <typename Op>
Track combine(const Track &x, const Track &y, Op op) {
  Index t = std::max(x.threshold(), y.threshold());
  Index p = detail::checked_lcm(x.period(), y.period());
  Track a = x.lifted(t, p), b = y.lifted(t, p);
  std::vector<bool> pre(t), cyc(p);
  for (Index n = 0; n < t; ++n)
    pre[n] = op(a.prefix()[n], b.prefix()[n]);
  for (Index r = 0; r < p; ++r)
    cyc[r] = op(a.cycle()[r], b.cycle()[r]);
  return Track(t, std::move(pre), std::move(cyc));
}

} // namespace

Track Track::operator|(const Track &o) const {
  return combine(*this, o, [](bool a, bool b) { return a || b; });
}
Track Track::operator&(const Track &o) const {
  return combine(*this, o, [](bool a, bool b) { return a && b; });
}
Track Track::operator-(const Track &o) const {
  return combine(*this, o, [](bool a, bool b) { return a && !b; });
}
bool Track::subset_of(const Track &o) const { return (*this - o).empty(); }

Track Track::shifted(Index shift) const {
  Index p = period();
  if (shift >= 0) {
    detail::check_extent(threshold_ + shift);
    std::vector<bool> pre(threshold_ + shift, false), cyc(p);
    for (Index n = 0; n < threshold_; ++n)
      pre[n + shift] = prefix_[n];
    for (Index i = 0; i < p; ++i)
      cyc[i] = cycle_[floor_mod(i - shift, p)];
    return Track(threshold_ + shift, std::move(pre), std::move(cyc));
  }
  Index s = -shift;
  Track l = lifted(std::max(threshold_, s), p);
  Index t = l.threshold_ - s;
  std::vector<bool> pre(t), cyc(p);
  for (Index m = 0; m < t; ++m)
    pre[m] = l.prefix_[m + s];
  for (Index i = 0; i < p; ++i)
    cyc[i] = cycle_[(i + s) % p];
  return Track(t, std::move(pre), std::move(cyc));
}

void TrackBuilder::add(const Track &t) {
  if (!t.empty())
    tracks_.push_back(t);
}

Track TrackBuilder::build() const {
  Index t = 0, p = 1;
  for (auto [start, step] : rays_) {
    t = std::max(t, step == 0 ? start + 1 : start);
    if (step > 0)
      p = detail::checked_lcm(p, step);
  }
  for (const Track &tr : tracks_) {
    t = std::max(t, tr.threshold());
    p = detail::checked_lcm(p, tr.period());
  }
  detail::check_extent(t);
  auto member = [&](Index n) {
    for (auto [start, step] : rays_) {
      if (n == start || (step > 0 && n > start && (n - start) % step == 0))
        return true;
    }
    for (const Track &tr : tracks_)
      if (tr.contains(n))
        return true;
    return false;
  };
  std::vector<bool> pre(t), cyc(p);
  for (Index n = 0; n < t; ++n)
    pre[n] = member(n);
  for (Index r = 0; r < p; ++r)
    cyc[r] = member(t + floor_mod(r - t, p));
  return Track(t, std::move(pre), std::move(cyc));
}

} // namespace surj
