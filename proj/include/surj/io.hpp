#pragma once

#include "surj/algebra.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>

namespace surj::io {

using Json = nlohmann::json;

inline constexpr const char *kVersion = "0.1.0";

/// Malformed document: wrong shape, unknown field, undefined name.
class SchemaError : public InputError {
public:
  using InputError::InputError;
};

/// Naturals beyond 2^53 - 1 are written as decimal strings.
Json encode(Index n);
Json encode(bool b);
Json encode(const Tag &t);
Json encode(const Element &e);
Json encode(const Progression &p);
Json encode(const SemilinearSet &s);
Json encode(const PAMap &f);
Json encode(const SurjectionPair &p);
Json encode(const Budget &b);
Json encode(const FamilyMember &m);
Json encode(const ChainEntry &e);
Json encode(const Stratum &s);
Json encode(const RemainderLevel &l);
Json encode(const CountableUnionWitness &w);
Json encode(const IteratedImageWitness &w);
Json encode(const RefinementWitness &w);
Json encode(const AbsorptionWitness &w);
Json encode(const QuadWitness &w);
Json encode(const RemainderWitness &w);

void decode(const Json &j, Index &n);
void decode(const Json &j, bool &b);
void decode(const Json &j, Tag &t);
void decode(const Json &j, Element &e);
void decode(const Json &j, Progression &p);
void decode(const Json &j, SemilinearSet &s);
void decode(const Json &j, PAMap &f);
void decode(const Json &j, SurjectionPair &p);
void decode(const Json &j, Budget &b);
void decode(const Json &j, FamilyMember &m);
void decode(const Json &j, ChainEntry &e);
void decode(const Json &j, Stratum &s);
void decode(const Json &j, RemainderLevel &l);
void decode(const Json &j, CountableUnionWitness &w);
void decode(const Json &j, IteratedImageWitness &w);
void decode(const Json &j, RefinementWitness &w);
void decode(const Json &j, AbsorptionWitness &w);
void decode(const Json &j, QuadWitness &w);
void decode(const Json &j, RemainderWitness &w);

/// A parsed instance file: named sets and maps plus the construction to run.
struct Instance {
  std::set<Tag> tags;
  std::map<std::string, SemilinearSet> sets;
  std::map<std::string, PAMap> maps;
  std::string op;
  Json args;
  std::optional<Budget> budget;
};

Instance parse_instance(const Json &doc);

struct RunResult {
  Json document;
  Verdict verdict;
};

/// Runs the instance's construction and validates the witness.
RunResult run(const Instance &inst, const Budget &budget);

/// Brute-force oracles, selected by the instance's op: "equiv" (sets a, b),
/// "gfp" (ambient set, expr) or "prefix" (set, optional bound). Ambients
/// for gfp are capped at kGfpAtoms; prefixes at kPrefixCheck.
inline constexpr Index kGfpAtoms = 12;
Json oracle(const Instance &inst, const Budget &budget);

/// Re-validates a witness document from scratch.
Verdict verify(const Json &doc);

} // namespace surj::io
