#include "surj/constructions.hpp"

namespace surj {

namespace {

/// Pairing indices below this are materialized as witness strata.
constexpr Index kStrataIndices = 10;
/// Strata stop once a recursion map carries this many table entries.
constexpr std::size_t kStrataTableLimit = 1 << 14;

std::size_t table_size(const PAMap &f) {
  std::size_t n = 0;
  for (auto &[_, t] : f.tables())
    n += t.prefix.size() + t.cycle.size();
  return n;
}

std::vector<Stratum> pairing_strata(const SemilinearSet &a,
                                    const std::vector<FamilyMember> &family) {
  Index n_members = static_cast<Index>(family.size());
  std::vector<PAMap> h{PAMap::identity(a)};
  std::vector<Stratum> strata;
  try {
    for (Index k = 1; k <= kStrataIndices; ++k) {
      auto [m, n] = cantor_unpair(k - 1);
      if (m == 0) {
        PAMap fn = n < n_members ? family[n].f : PAMap{};
        h.push_back(map_compose(fn, h[cantor_pair(0, n)]));
      } else {
        h.push_back(map_compose(h[cantor_pair(m - 1, n) + 1], h[k - 1]));
      }
      if (table_size(h[k]) > kStrataTableLimit)
        break;
      if (n < n_members)
        strata.push_back({m, n, map_preimage(h[k], family[n].b)});
    }
  } catch (const RepresentationLimit &) {
    // deeper strata are not representable; keep the ones computed so far
  }
  return strata;
}

void check_family(const SemilinearSet &a,
                  const std::vector<FamilyMember> &family) {
  for (std::size_t n = 0; n < family.size(); ++n) {
    if (!a.disjoint_from(family[n].b))
      throw DisjointnessViolation("A meets B_" + std::to_string(n));
    if (!is_partial_surjection(family[n].f, a, a | family[n].b))
      throw InvalidFamily("f_" + std::to_string(n) +
                          " is not a partial surjection onto A ∪ B_n");
  }
}

} // namespace

PAMap union_surjection(const SemilinearSet &a,
                       const std::vector<FamilyMember> &family,
                       std::vector<PAMap> *partial) {
  PAMap g = PAMap::identity(a);
  if (partial)
    partial->push_back(g);
  for (const FamilyMember &m : family) {
    g = map_compose(map_union_disjoint(g, PAMap::identity(m.b)), m.f);
    if (partial)
      partial->push_back(g);
  }
  return g;
}

CountableUnionWitness countable_union_surjection(const SemilinearSet &a,
                                                 const TailedFamily &family,
                                                 const Budget &budget) {
  check_family(a, family.members);
  CountableUnionWitness w;
  w.a = a;
  w.family = family.members;
  w.budget = budget;
  w.target = a;
  for (const FamilyMember &m : family.members)
    w.target = w.target | m.b;
  w.g = union_surjection(a, family.members, &w.partial);
  w.strata = pairing_strata(a, family.members);
  return w;
}

IteratedImageWitness iterated_image_surjection(const SemilinearSet &a,
                                               const PAMap &f,
                                               const Budget &budget) {
  if (!a.subset_of(map_image(f, a)))
    throw ExpansivityRequired("A is not contained in f[A]");
  IteratedImageWitness w;
  w.a = a;
  w.f = f;
  w.budget = budget;
  w.images.push_back(a);
  PAMap g = PAMap::identity(a);
  for (Index k = 0;; ++k) {
    SemilinearSet next = map_image(f, w.images.back());
    if (next == w.images.back())
      break;
    if (k + 1 >= budget.max_steps)
      throw NonStabilizing("iterated images did not stabilize", k + 1,
                           next - w.images.back());
    w.images.push_back(std::move(next));
    g = map_compose(f, g);
  }
  w.target = w.images.back();
  w.g = g;
  return w;
}

} // namespace surj
