#include "surj/semiset.hpp"

#include <cctype>

namespace surj {

namespace {
constexpr const char *kProductSep = "\xC2\xB7";
} // namespace

TagPermutation::TagPermutation(std::map<Tag, Tag> m) : map_(std::move(m)) {
  std::set<Tag> values;
  for (auto &[k, v] : map_) {
    if (!map_.count(v))
      throw InvalidAction("permutation leaves its universe: " + v.name);
    if (!values.insert(v).second)
      throw InvalidAction("permutation is not injective at " + v.name);
  }
}

Tag TagPermutation::operator()(const Tag &t) const {
  if (auto it = map_.find(t); it != map_.end())
    return it->second;
  if (auto split = split_product_tag(t)) {
    Tag base = (*this)(split->first);
    if (base != split->first)
      return product_tag(base, split->second);
  }
  return t;
}

TagPermutation TagPermutation::inverse() const {
  std::map<Tag, Tag> inv;
  for (auto &[k, v] : map_)
    inv[v] = k;
  return TagPermutation(std::move(inv));
}

Element rename(const TagPermutation &pi, const Element &e) {
  return {pi(e.tag), e.index};
}

SemilinearSet rename(const TagPermutation &pi, const SemilinearSet &s) {
  SemilinearSet out;
  for (auto &[tag, t] : s.tracks())
    out.set_track(pi(tag), t);
  return out;
}

PAMap rename(const TagPermutation &pi, const PAMap &f) {
  PAMap out;
  for (auto &[tag, tm] : f.tables()) {
    TagMap t = tm;
    for (auto &e : t.prefix)
      if (e)
        e->tag = pi(e->tag);
    for (auto &fn : t.cycle)
      if (fn)
        fn->target = pi(fn->target);
    out.set_table(pi(tag), std::move(t));
  }
  return out;
}

SurjectionPair rename(const TagPermutation &pi, const SurjectionPair &p) {
  return {rename(pi, p.forward), rename(pi, p.backward), rename(pi, p.left),
          rename(pi, p.right)};
}

Tag product_tag(const Tag &base, Index copy) {
  return Tag(base.name + kProductSep + std::to_string(copy));
}

std::optional<std::pair<Tag, Index>> split_product_tag(const Tag &t) {
  auto pos = t.name.rfind(kProductSep);
  if (pos == std::string::npos)
    return std::nullopt;
  std::string digits = t.name.substr(pos + 2);
  if (digits.empty() || digits.size() > 9)
    return std::nullopt;
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return std::nullopt;
  return std::make_pair(Tag(t.name.substr(0, pos)), Index(std::stoll(digits)));
}

PAMap copy_injection(Index copy, const SemilinearSet &a) {
  return PAMap::retag(a, [copy](const Tag &t) { return product_tag(t, copy); });
}

SemilinearSet tag_product(Index m, const SemilinearSet &a,
                          const std::set<Tag> &universe) {
  if (m < 1)
    throw InputError("product multiplicity must be positive");
  SemilinearSet out;
  for (Index i = 0; i < m; ++i) {
    for (auto &[tag, t] : a.tracks()) {
      Tag d = product_tag(tag, i);
      if (a.track(d) || universe.count(d))
        throw TagCollision("derived tag already in use: " + d.name);
      out.set_track(d, t);
    }
  }
  return out;
}

void collect_tags(const SemilinearSet &s, std::set<Tag> &out) {
  for (auto &[tag, _] : s.tracks())
    out.insert(tag);
}

void collect_tags(const PAMap &f, std::set<Tag> &out) {
  for (auto &[tag, tm] : f.tables()) {
    out.insert(tag);
    for (auto &e : tm.prefix)
      if (e)
        out.insert(e->tag);
    for (auto &fn : tm.cycle)
      if (fn)
        out.insert(fn->target);
  }
}

} // namespace surj
