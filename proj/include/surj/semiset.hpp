#pragma once

#include "surj/core.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace surj {

/// An eventually periodic subset of the naturals: bit n is prefix[n] below
/// threshold and cycle[n % period] from there on. Always kept minimal, so two
/// tracks describe the same set iff they compare equal.
class Track {
public:
  Track() = default;
  Track(Index threshold, std::vector<bool> prefix, std::vector<bool> cycle);

  static Track point(Index n);
  /// {start + step*k : k >= 0}; step == 0 is the single point.
  static Track ray(Index start, Index step);
  static Track all();

  bool contains(Index n) const;
  bool empty() const;
  bool finite() const;
  /// Number of members; only meaningful when finite().
  Index count() const;

  Index threshold() const { return threshold_; }
  Index period() const { return static_cast<Index>(cycle_.size()); }
  const std::vector<bool> &prefix() const { return prefix_; }
  const std::vector<bool> &cycle() const { return cycle_; }

  /// Same set over a longer threshold / multiple period (not minimal).
  Track lifted(Index threshold, Index period) const;

  /// {k : a + b*k in this}, b >= 0.
  Track pullback(Index a, Index b) const;
  /// Members below bound, ascending.
  std::vector<Index> members_below(Index bound) const;
  /// The k-th smallest member, or nullopt.
  std::optional<Index> nth(Index k) const;
  /// Position of n among the members (n must be a member).
  Index rank(Index n) const;

  Track operator|(const Track &o) const;
  Track operator&(const Track &o) const;
  Track operator-(const Track &o) const;
  bool subset_of(const Track &o) const;
  /// {n + shift : n in this}, shift may be negative (members below 0 drop).
  Track shifted(Index shift) const;

  bool operator==(const Track &) const = default;

private:
  void normalize();

  Index threshold_ = 0;
  std::vector<bool> prefix_;
  std::vector<bool> cycle_{false};
};

/// Accumulates points and rays into a Track.
class TrackBuilder {
public:
  void add_point(Index n) { rays_.push_back({n, 0}); }
  void add_ray(Index start, Index step) { rays_.push_back({start, step}); }
  void add(const Track &t);
  Track build() const;

private:
  std::vector<std::pair<Index, Index>> rays_;
  std::vector<Track> tracks_;
};

/// A finite union of progressions over tags, in normal form.
class SemilinearSet {
public:
  SemilinearSet() = default;

  static SemilinearSet of(std::initializer_list<Element> elems);
  static SemilinearSet of(const std::vector<Element> &elems);
  static SemilinearSet of(const Progression &p);
  static SemilinearSet all(const Tag &tag);
  static SemilinearSet from_track(const Tag &tag, Track t);

  bool contains(const Element &e) const;
  bool empty() const { return tracks_.empty(); }
  bool finite() const;
  Index size() const;
  std::set<Tag> tags() const;
  const Track *track(const Tag &tag) const;
  const std::map<Tag, Track> &tracks() const { return tracks_; }

  /// Members with index below bound, ordered by (tag, index).
  std::vector<Element> members_below(Index bound) const;
  /// All members; throws InputError on an infinite set.
  std::vector<Element> members() const;
  /// Finite points plus one progression per live residue class.
  void decompose(std::vector<Element> &points,
                 std::vector<Progression> &blocks) const;

  SemilinearSet operator|(const SemilinearSet &o) const;
  SemilinearSet operator&(const SemilinearSet &o) const;
  SemilinearSet operator-(const SemilinearSet &o) const;
  bool subset_of(const SemilinearSet &o) const;
  bool disjoint_from(const SemilinearSet &o) const;

  bool operator==(const SemilinearSet &) const = default;

  void set_track(const Tag &tag, Track t);

private:
  std::map<Tag, Track> tracks_;
};

bool set_equals(const SemilinearSet &a, const SemilinearSet &b);
bool set_subset(const SemilinearSet &a, const SemilinearSet &b);
bool set_member(const Element &e, const SemilinearSet &a);
SemilinearSet set_union(const SemilinearSet &a, const SemilinearSet &b);
SemilinearSet set_intersect(const SemilinearSet &a, const SemilinearSet &b);
SemilinearSet set_difference(const SemilinearSet &a, const SemilinearSet &b);
bool set_is_empty(const SemilinearSet &a);

/// n -> (num*n + off)/den on one residue class of a source tag.
struct ClassFn {
  Tag target;
  Index num = 0;
  Index off = 0;
  Index den = 1;

  std::optional<Index> eval(Index n) const;
  bool operator==(const ClassFn &) const = default;
};

/// The k-th element of guard maps to (target_tag, base + k*step).
struct AffinePiece {
  Progression guard;
  Tag target_tag;
  Index base = 0;
  Index step = 0;

  bool operator==(const AffinePiece &) const = default;
};

/// Per-source-tag table of a partial map, eventually periodic in the source
/// index.
struct TagMap {
  Index threshold = 0;
  std::vector<std::optional<Element>> prefix;
  std::vector<std::optional<ClassFn>> cycle{std::nullopt};

  Index period() const { return static_cast<Index>(cycle.size()); }
  std::optional<Element> apply(Index n) const;
  TagMap lifted(Index threshold, Index period) const;
  void normalize();
  Track domain() const;

  bool operator==(const TagMap &) const = default;
};

/// A partial map between tagged naturals, finite graph plus affine pieces, in
/// normal form.
class PAMap {
public:
  PAMap() = default;

  static PAMap from_pairs(const std::vector<std::pair<Element, Element>> &g);
  static PAMap from_piece(const AffinePiece &p);
  static PAMap identity(const SemilinearSet &s);
  /// Every element of s to the fixed element c.
  static PAMap constant(const SemilinearSet &s, const Element &c);
  /// Copies each member of s to the same index under tag `to`.
  static PAMap retag(const SemilinearSet &s,
                     const std::function<Tag(const Tag &)> &to);

  std::optional<Element> apply(const Element &e) const;
  SemilinearSet domain() const;
  bool empty() const { return by_tag_.empty(); }
  const std::map<Tag, TagMap> &tables() const { return by_tag_; }

  void finite_part(std::vector<std::pair<Element, Element>> &graph,
                   std::vector<AffinePiece> &pieces) const;

  bool operator==(const PAMap &) const = default;

  void set_table(const Tag &tag, TagMap t);

private:
  std::map<Tag, TagMap> by_tag_;
};

SemilinearSet map_image(const PAMap &f, const SemilinearSet &s);
SemilinearSet map_image(const PAMap &f);
SemilinearSet map_preimage(const PAMap &f, const SemilinearSet &s);
/// outer ∘ inner.
PAMap map_compose(const PAMap &outer, const PAMap &inner);
PAMap map_restrict(const PAMap &f, const SemilinearSet &s);
PAMap map_erase(const PAMap &f, const SemilinearSet &s);
/// Throws ConflictingUnion when the domains overlap.
PAMap map_union_disjoint(const PAMap &f, const PAMap &g);
PAMap map_identity(const SemilinearSet &s);
PAMap map_iterate(const PAMap &f, Index n);

bool is_partial_surjection(const PAMap &f, const SemilinearSet &from,
                           const SemilinearSet &onto);

/// forward: left -> right, backward: right -> left, both partial surjections.
struct SurjectionPair {
  PAMap forward;
  PAMap backward;
  SemilinearSet left;
  SemilinearSet right;

  bool valid() const;
  SurjectionPair flipped() const { return {backward, forward, right, left}; }
  bool operator==(const SurjectionPair &) const = default;
};

/// A permutation of tags; product tags t·i follow their base tag.
class TagPermutation {
public:
  TagPermutation() = default;
  /// Throws InvalidAction unless the mapping is a bijection of its keys.
  explicit TagPermutation(std::map<Tag, Tag> m);

  Tag operator()(const Tag &t) const;
  TagPermutation inverse() const;
  const std::map<Tag, Tag> &mapping() const { return map_; }

private:
  std::map<Tag, Tag> map_;
};

SemilinearSet rename(const TagPermutation &pi, const SemilinearSet &s);
PAMap rename(const TagPermutation &pi, const PAMap &f);
SurjectionPair rename(const TagPermutation &pi, const SurjectionPair &p);
Element rename(const TagPermutation &pi, const Element &e);

Tag product_tag(const Tag &base, Index copy);
/// Splits a product tag into (base, copy); nullopt for plain tags.
std::optional<std::pair<Tag, Index>> split_product_tag(const Tag &t);

/// m·a as m disjoint retagged copies. Throws TagCollision if a derived tag
/// already occurs in a or in the given universe.
SemilinearSet tag_product(Index m, const SemilinearSet &a,
                          const std::set<Tag> &universe = {});
/// The retag a -> copy `copy` of m·a.
PAMap copy_injection(Index copy, const SemilinearSet &a);

/// Collects tags mentioned by sets and maps (sources and targets).
void collect_tags(const SemilinearSet &s, std::set<Tag> &out);
void collect_tags(const PAMap &f, std::set<Tag> &out);

} // namespace surj
