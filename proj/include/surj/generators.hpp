#pragma once

#include "surj/constructions.hpp"

#include <random>
#include <string>

namespace surj::gen {

using Rng = std::mt19937_64;

struct Shape {
  /// Bound on finite atoms per generated set.
  Index max_points = 30;
  /// Bound on blocks (points or progressions) per generated track.
  int max_blocks = 4;
  /// Chain and family length bound.
  int max_length = 5;
  /// Elementary moves per generated pair.
  int moves = 3;
  bool allow_infinite = true;
  /// Allow the two-to-one halving move. Loops through it contract, and
  /// least-index strata under contraction are generally not eventually
  /// periodic, so constructions may hit RepresentationLimit.
  bool halving = false;
};

/// Pair composition: first between X and Y, second between Y and Z.
SurjectionPair then(const SurjectionPair &first, const SurjectionPair &second);

/// Bijection between a one-tag set and all of `target` (or target:0..k-1
/// when finite), ordered by index.
SurjectionPair enumerate(const Tag &tag, const Track &track, const Tag &target);

/// Bijection between an infinite set and all of `target`.
SurjectionPair to_single(const SemilinearSet &s, const Tag &target);

SemilinearSet random_track_set(Rng &rng, const Tag &tag, bool infinite,
                               const Shape &shape);

/// Random surjection pair between `x` and a fresh set on tags named
/// prefix0, prefix1, ...
SurjectionPair random_pair_from(Rng &rng, const SemilinearSet &x,
                                const std::string &prefix, const Shape &shape);

/// Random subset of `s` (per tag: a residue class, a ray, or some points).
SemilinearSet random_subset(Rng &rng, const SemilinearSet &s);

/// Random partial surjection from `from` onto `from ∪ extra`; extra must be
/// empty when `from` is finite.
PAMap random_onto_with(Rng &rng, const SemilinearSet &from,
                       const SemilinearSet &extra, const std::string &scratch,
                       const Shape &shape);

struct RefinementInstance {
  SemilinearSet a, b, c;
  SurjectionPair pair;
};
struct AbsorptionInstance {
  SemilinearSet d1, d2, q;
  PAMap f;
};
struct QuadInstance {
  SemilinearSet a1, a2, b1, b2;
  SurjectionPair pair;
};
struct UnionInstance {
  SemilinearSet a;
  TailedFamily family;
};
struct ImageInstance {
  SemilinearSet a;
  PAMap f;
};

UnionInstance union_instance(Rng &rng, const Shape &shape);
ImageInstance image_instance(Rng &rng, const Shape &shape);
RefinementInstance refinement_instance(Rng &rng, const Shape &shape);
AbsorptionInstance absorption_instance(Rng &rng, const Shape &shape);
QuadInstance quad_instance(Rng &rng, const Shape &shape);
ChainFamily chain_instance(Rng &rng, const Shape &shape);

/// Random permutation of the given tags, identity elsewhere.
TagPermutation random_permutation(Rng &rng, const std::set<Tag> &tags);

} // namespace surj::gen
