#include "surj/constructions.hpp"

namespace surj {

namespace {

PAMap unite(const PAMap &f, const PAMap &g) { return map_union_disjoint(f, g); }
PAMap id(const SemilinearSet &s) { return PAMap::identity(s); }

PAMap corestrict(const PAMap &f, const SemilinearSet &s) {
  return map_restrict(f, map_preimage(f, s));
}

void check_chain(const ChainFamily &chain) {
  const auto &es = chain.entries;
  std::vector<const SemilinearSet *> parts;
  for (const ChainEntry &e : es) {
    parts.push_back(&e.a);
    parts.push_back(&e.b);
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i]->disjoint_from(*parts[j]))
        throw InvalidChain("chain sets are not pairwise disjoint");
  for (std::size_t n = 0; n < es.size(); ++n) {
    SurjectionPair p = es[n].pair;
    p.left = es[n].a;
    p.right = (n + 1 < es.size() ? es[n + 1].a : SemilinearSet{}) | es[n].b;
    if (!p.valid())
      throw InvalidChain("pair " + std::to_string(n) +
                         " is not a surjection pair onto A_{n+1} ∪ B_n");
  }
}

/// Surjection A_m -> A_m ∪ E from the telescoped chain maps F, G and a
/// surjection s : S -> S ∪ E inside the codomain of F.
PAMap telescope(const PAMap &big_f, const PAMap &big_g, const PAMap &s,
                const SemilinearSet &small_s, const SemilinearSet &e) {
  PAMap sf = map_compose(s, big_f);
  PAMap out = corestrict(sf, e);
  out = unite(out, map_compose(big_g, corestrict(sf, small_s)));
  PAMap rest = map_erase(big_f, map_preimage(big_f, small_s));
  return unite(out, map_compose(big_g, rest));
}

} // namespace

RemainderWitness remainder_chain(const ChainFamily &chain,
                                 const Budget &budget) {
  check_chain(chain);
  const auto &es = chain.entries;
  const std::size_t n_levels = es.size();
  RemainderWitness w;
  w.chain = es;
  w.budget = budget;

  // per level: Ã, A', P, and the pair Ã <-> A'; per index: B̃, B', Q, pairs
  std::vector<SemilinearSet> a_tilde{es.empty() ? SemilinearSet{} : es[0].a};
  std::vector<SemilinearSet> a_prime = a_tilde;
  std::vector<SemilinearSet> p{SemilinearSet{}};
  std::vector<SurjectionPair> tilde{{id(a_tilde[0]), id(a_tilde[0]),
                                     a_tilde[0], a_tilde[0]}};
  std::vector<SemilinearSet> b_tilde, b_prime, q;
  std::vector<SurjectionPair> prime;
  std::vector<PAMap> surj_q, surj_p;

  for (std::size_t n = 0; n < n_levels; ++n) {
    const SemilinearSet next_a =
        n + 1 < n_levels ? es[n + 1].a : SemilinearSet{};
    SurjectionPair in;
    in.forward = map_compose(unite(tilde[n].backward, id(p[n])),
                             es[n].pair.backward);
    in.backward = map_compose(es[n].pair.forward,
                              unite(tilde[n].forward, id(p[n])));
    RefinementWitness r =
        key_refinement(next_a, es[n].b, a_tilde[n] | p[n], in, budget);
    a_tilde.push_back(r.a_tilde);
    a_prime.push_back(r.a_prime);
    p.push_back(r.p);
    tilde.push_back(r.pair_atilde_aprime);
    b_tilde.push_back(r.b_tilde);
    b_prime.push_back(r.b_prime);
    q.push_back(r.q);
    prime.push_back(r.pair_btilde_bprime);
    surj_q.push_back(r.surj_aprime_onto_aprime_q);
    surj_p.push_back(r.surj_bprime_onto_bprime_p);
    w.steps.push_back(std::move(r));
  }

  auto d_at = [&](Index m) {
    SemilinearSet d;
    if (m >= static_cast<Index>(n_levels))
      return d;
    d = a_tilde[m];
    for (std::size_t k = m; k <= n_levels; ++k)
      d = d | p[k];
    return d;
  };
  w.c = omega_intersection(
      DescendingChain::indexed(d_at, static_cast<Index>(n_levels)), budget);

  for (std::size_t m = 0; m < n_levels; ++m) {
    const SemilinearSet &am = es[m].a;
    std::vector<FamilyMember> family;
    SemilinearSet extra;
    PAMap big_f = id(am), big_g = id(am);
    SemilinearSet seen_b;
    for (std::size_t k = m; k < n_levels; ++k) {
      big_f = map_compose(unite(es[k].pair.forward, id(seen_b)), big_f);
      big_g = map_compose(big_g, unite(es[k].pair.backward, id(seen_b)));
      seen_b = seen_b | es[k].b;
      family.push_back(
          {q[k], telescope(big_f, big_g, surj_q[k], a_prime[k + 1], q[k])});
      family.push_back(
          {p[k + 1], telescope(big_f, big_g, surj_p[k], b_prime[k], p[k + 1])});
      extra = extra | q[k] | p[k + 1];
    }
    PAMap xi = union_surjection(am, family);

    PAMap outer = id(w.c);
    PAMap back = id(w.c);
    SemilinearSet target = w.c;
    SemilinearSet qs;
    for (std::size_t k = m; k < n_levels; ++k) {
      outer = unite(outer, prime[k].forward);
      back = unite(back, prime[k].backward);
      target = target | es[k].b;
      qs = qs | q[k];
    }
    outer = unite(outer, id(qs));
    PAMap middle = unite(tilde[m].backward, id(p[m] | extra));

    RemainderLevel lv;
    lv.a_tilde = a_tilde[m];
    lv.a_prime = a_prime[m];
    lv.p = p[m];
    lv.b_tilde = b_tilde[m];
    lv.b_prime = b_prime[m];
    lv.q = q[m];
    lv.d = d_at(static_cast<Index>(m));
    lv.pair.left = am;
    lv.pair.right = target;
    lv.pair.forward = map_compose(outer, map_compose(middle, xi));
    lv.pair.backward =
        map_compose(unite(tilde[m].forward, id(p[m])), back);
    w.levels.push_back(std::move(lv));
  }
  return w;
}

} // namespace surj
