#pragma once

#include "surj/omega.hpp"

#include <vector>

namespace surj {

/// One member of a tailed family: B_n with f_n : A -> A ∪ B_n onto.
struct FamilyMember {
  SemilinearSet b;
  PAMap f;

  bool operator==(const FamilyMember &) const = default;
};

/// B_n, f_n for n below the support; empty from there on.
struct TailedFamily {
  std::vector<FamilyMember> members;
};

/// A_n with a pair between A_n and A_{n+1} ∪ B_n; A_N = ∅ after the last.
struct ChainEntry {
  SemilinearSet a;
  SemilinearSet b;
  SurjectionPair pair;

  bool operator==(const ChainEntry &) const = default;
};

struct ChainFamily {
  std::vector<ChainEntry> entries;
};

struct Stratum {
  Index m = 0;
  Index n = 0;
  SemilinearSet set;

  bool operator==(const Stratum &) const = default;
};

struct CountableUnionWitness {
  SemilinearSet a;
  std::vector<FamilyMember> family;
  SemilinearSet target;
  PAMap g;
  /// g_k onto A ∪ B_0 ∪ ... ∪ B_{k-1}.
  std::vector<PAMap> partial;
  /// Strata C_{m,n} of the pairing recursion, for small pairing index.
  std::vector<Stratum> strata;
  Budget budget;

  bool operator==(const CountableUnionWitness &) const = default;
};

struct IteratedImageWitness {
  SemilinearSet a;
  PAMap f;
  /// f^n[A], ascending until it stabilizes.
  std::vector<SemilinearSet> images;
  SemilinearSet target;
  PAMap g;
  Budget budget;

  bool operator==(const IteratedImageWitness &) const = default;
};

struct RefinementWitness {
  SemilinearSet a, b, c;
  SurjectionPair input;

  PAMap f_wlog;
  SemilinearSet x, y;
  PAMap f_prime, g_prime, f_tilde, g_tilde;
  SemilinearSet orbit_x, orbit_y;

  SemilinearSet p, q, a_prime, b_prime, a_tilde, b_tilde;
  PAMap surj_aprime_onto_aprime_q;
  PAMap surj_bprime_onto_bprime_p;
  /// forward: Ã -> A', backward: A' -> Ã.
  SurjectionPair pair_atilde_aprime;
  SurjectionPair pair_btilde_bprime;
  Budget budget;

  bool operator==(const RefinementWitness &) const = default;
};

struct AbsorptionWitness {
  SemilinearSet d1, d2, q;
  PAMap f;
  SemilinearSet c1, c2, q1, q2;
  PAMap g1, g2;
  Budget budget;

  bool operator==(const AbsorptionWitness &) const = default;
};

struct QuadWitness {
  SemilinearSet a1, a2, b1, b2;
  SurjectionPair input;

  RefinementWitness refinement;
  SemilinearSet d1, d2, d3, d4;
  AbsorptionWitness absorb_q, absorb_p;

  SemilinearSet c1, c2, c3, c4;
  SurjectionPair pair_a1, pair_a2, pair_b1, pair_b2;
  Budget budget;

  bool operator==(const QuadWitness &) const = default;
};

/// Per-m pair between A_m and C ∪ ⋃_n B_{m+n} (pair.left = A_m).
struct RemainderLevel {
  SemilinearSet a_tilde, a_prime, p, b_tilde, b_prime, q;
  SemilinearSet d;
  SurjectionPair pair;

  bool operator==(const RemainderLevel &) const = default;
};

struct RemainderWitness {
  std::vector<ChainEntry> chain;
  std::vector<RefinementWitness> steps;
  std::vector<RemainderLevel> levels;
  SemilinearSet c;
  Budget budget;

  bool operator==(const RemainderWitness &) const = default;
};

CountableUnionWitness countable_union_surjection(const SemilinearSet &a,
                                                 const TailedFamily &family,
                                                 const Budget &budget);
IteratedImageWitness iterated_image_surjection(const SemilinearSet &a,
                                               const PAMap &f,
                                               const Budget &budget);
RefinementWitness key_refinement(const SemilinearSet &a, const SemilinearSet &b,
                                 const SemilinearSet &c,
                                 const SurjectionPair &pair,
                                 const Budget &budget);
AbsorptionWitness absorption_split(const SemilinearSet &d1,
                                   const SemilinearSet &d2,
                                   const SemilinearSet &q, const PAMap &f,
                                   const Budget &budget);
QuadWitness finite_refinement(const SemilinearSet &a1, const SemilinearSet &a2,
                              const SemilinearSet &b1, const SemilinearSet &b2,
                              const SurjectionPair &pair, const Budget &budget);
RemainderWitness remainder_chain(const ChainFamily &chain,
                                 const Budget &budget);

/// Partial surjection A -> A ∪ ⋃ B_k built by successive composition.
PAMap union_surjection(const SemilinearSet &a,
                       const std::vector<FamilyMember> &family,
                       std::vector<PAMap> *partial = nullptr);

CountableUnionWitness rename(const TagPermutation &pi,
                             const CountableUnionWitness &w);
IteratedImageWitness rename(const TagPermutation &pi,
                            const IteratedImageWitness &w);
RefinementWitness rename(const TagPermutation &pi, const RefinementWitness &w);
AbsorptionWitness rename(const TagPermutation &pi, const AbsorptionWitness &w);
QuadWitness rename(const TagPermutation &pi, const QuadWitness &w);
RemainderWitness rename(const TagPermutation &pi, const RemainderWitness &w);
ChainEntry rename(const TagPermutation &pi, const ChainEntry &e);
FamilyMember rename(const TagPermutation &pi, const FamilyMember &m);
Stratum rename(const TagPermutation &pi, const Stratum &s);
RemainderLevel rename(const TagPermutation &pi, const RemainderLevel &l);

} // namespace surj
