#pragma once

#include "surj/constructions.hpp"
#include "surj/generators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace surj {

/// Outcome of an exact re-check; empty `failures` means pass.
struct Verdict {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) { failures.push_back(std::move(what)); }
  void merge(const Verdict &inner, const std::string &prefix);
};

/// Elements below this index are cross-checked pointwise.
inline constexpr Index kPrefixCheck = 512;

Verdict validate_pair(const SurjectionPair &p, const SemilinearSet &left,
                      const SemilinearSet &right, const std::string &name);
Verdict validate_partial_surjection(const PAMap &f, const SemilinearSet &from,
                                    const SemilinearSet &onto,
                                    const std::string &name);

Verdict validate_witness(const CountableUnionWitness &w);
Verdict validate_witness(const IteratedImageWitness &w);
Verdict validate_witness(const RefinementWitness &w);
Verdict validate_witness(const AbsorptionWitness &w);
Verdict validate_witness(const QuadWitness &w);
Verdict validate_witness(const RemainderWitness &w);

enum class Equivalence { Equivalent, NotEquivalent, Unknown };

struct EquivResult {
  Equivalence verdict = Equivalence::Unknown;
  std::optional<SurjectionPair> witness;
};

/// Decides whether surjection pairs between a and b exist, with a witness.
EquivResult equiv_oracle(const SemilinearSet &a, const SemilinearSet &b);

/// Exhaustive search for a surjection pair between finite sets of at most
/// kSearchLimit atoms each; throws SizeGuard beyond that.
inline constexpr Index kSearchLimit = 8;
std::optional<SurjectionPair> finite_pair_search(const SemilinearSet &a,
                                                 const SemilinearSet &b);

enum class PostulateStatus { Holds, Fails, NotCheckable };

struct PostulateVerdict {
  std::string name;
  PostulateStatus status = PostulateStatus::Holds;
  int instances = 0;
  int holds = 0;
  /// One line per failing instance, with the seed that reproduces it.
  std::vector<std::string> counterexamples;
};

struct PostulateReport {
  std::vector<PostulateVerdict> postulates;
  std::vector<std::string> notes;

  bool all_hold() const;
};

/// Checks postulates I–V, VI′ and VII over `count` generated instances;
/// instance i uses seed + i.
PostulateReport check_postulates(std::uint64_t seed, int count,
                                 const gen::Shape &shape, const Budget &budget);

/// From a pair between m·a and m·b, a pair between a and b.
SurjectionPair cancellation(Index m, const SemilinearSet &a,
                            const SemilinearSet &b, const SurjectionPair &pair,
                            const Budget &budget);

} // namespace surj
