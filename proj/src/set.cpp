#include "surj/detail.hpp"
#include "surj/semiset.hpp"

namespace surj {

std::ostream &operator<<(std::ostream &os, const Tag &t) { return os << t.name; }
std::ostream &operator<<(std::ostream &os, const Element &e) {
  return os << '(' << e.tag << ',' << e.index << ')';
}

SemilinearSet SemilinearSet::of(std::initializer_list<Element> elems) {
  return of(std::vector<Element>(elems));
}

SemilinearSet SemilinearSet::of(const std::vector<Element> &elems) {
  std::map<Tag, TrackBuilder> b;
  for (const Element &e : elems) {
    if (e.index < 0)
      throw InputError("negative index");
    b[e.tag].add_point(e.index);
  }
  SemilinearSet s;
  for (auto &[tag, tb] : b)
    s.set_track(tag, tb.build());
  return s;
}

SemilinearSet SemilinearSet::of(const Progression &p) {
  if (p.low < 0 || p.modulus < 0 || p.residue < 0)
    throw InputError("negative progression field");
  if (p.modulus == 0)
    return of({Element{p.tag, p.low}});
  Index start = p.low + detail::floor_mod(p.residue - p.low, p.modulus);
  return from_track(p.tag, Track::ray(start, p.modulus));
}

SemilinearSet SemilinearSet::all(const Tag &tag) {
  return from_track(tag, Track::all());
}

SemilinearSet SemilinearSet::from_track(const Tag &tag, Track t) {
  SemilinearSet s;
  s.set_track(tag, std::move(t));
  return s;
}

void SemilinearSet::set_track(const Tag &tag, Track t) {
  if (t.empty())
    tracks_.erase(tag);
  else
    tracks_[tag] = std::move(t);
}

bool SemilinearSet::contains(const Element &e) const {
  auto it = tracks_.find(e.tag);
  return it != tracks_.end() && it->second.contains(e.index);
}

bool SemilinearSet::finite() const {
  for (auto &[_, t] : tracks_)
    if (!t.finite())
      return false;
  return true;
}

Index SemilinearSet::size() const {
  if (!finite())
    throw InputError("size of an infinite set");
  Index n = 0;
  for (auto &[_, t] : tracks_)
    n += t.count();
  return n;
}

std::set<Tag> SemilinearSet::tags() const {
  std::set<Tag> out;
  for (auto &[tag, _] : tracks_)
    out.insert(tag);
  return out;
}

const Track *SemilinearSet::track(const Tag &tag) const {
  auto it = tracks_.find(tag);
  return it == tracks_.end() ? nullptr : &it->second;
}

std::vector<Element> SemilinearSet::members_below(Index bound) const {
  std::vector<Element> out;
  for (auto &[tag, t] : tracks_)
    for (Index n : t.members_below(bound))
      out.push_back({tag, n});
  return out;
}

std::vector<Element> SemilinearSet::members() const {
  if (!finite())
    throw InputError("enumerating an infinite set");
  std::vector<Element> out;
  for (auto &[tag, t] : tracks_)
    for (Index n : t.members_below(t.threshold()))
      out.push_back({tag, n});
  return out;
}

void SemilinearSet::decompose(std::vector<Element> &points,
                              std::vector<Progression> &blocks) const {
  for (auto &[tag, t] : tracks_) {
    for (Index n : t.members_below(t.threshold()))
      points.push_back({tag, n});
    if (t.finite())
      continue;
    Index p = t.period();
    for (Index r = 0; r < p; ++r) {
      if (!t.cycle()[r])
        continue;
      Index low = t.threshold() + detail::floor_mod(r - t.threshold(), p);
      blocks.push_back({tag, r, p, low});
    }
  }
}

namespace {

template <typename Op>
SemilinearSet zip(const SemilinearSet &a, const SemilinearSet &b, Op op) {
  SemilinearSet out;
  std::set<Tag> tags = a.tags();
  for (const Tag &t : b.tags())
    tags.insert(t);
  Track none;
  for (const Tag &t : tags) {
    const Track *x = a.track(t);
    const Track *y = b.track(t);
    out.set_track(t, op(x ? *x : none, y ? *y : none));
  }
  return out;
}

} // namespace

SemilinearSet SemilinearSet::operator|(const SemilinearSet &o) const {
  return zip(*this, o, [](const Track &x, const Track &y) { return x | y; });
}
SemilinearSet SemilinearSet::operator&(const SemilinearSet &o) const {
  return zip(*this, o, [](const Track &x, const Track &y) { return x & y; });
}
SemilinearSet SemilinearSet::operator-(const SemilinearSet &o) const {
  return zip(*this, o, [](const Track &x, const Track &y) { return x - y; });
}
bool SemilinearSet::subset_of(const SemilinearSet &o) const {
  return (*this - o).empty();
}
bool SemilinearSet::disjoint_from(const SemilinearSet &o) const {
  return (*this & o).empty();
}

bool set_equals(const SemilinearSet &a, const SemilinearSet &b) { return a == b; }
bool set_subset(const SemilinearSet &a, const SemilinearSet &b) {
  return a.subset_of(b);
}
bool set_member(const Element &e, const SemilinearSet &a) { return a.contains(e); }
SemilinearSet set_union(const SemilinearSet &a, const SemilinearSet &b) {
  return a | b;
}
SemilinearSet set_intersect(const SemilinearSet &a, const SemilinearSet &b) {
  return a & b;
}
SemilinearSet set_difference(const SemilinearSet &a, const SemilinearSet &b) {
  return a - b;
}
bool set_is_empty(const SemilinearSet &a) { return a.empty(); }

} // namespace surj
