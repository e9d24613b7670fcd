#include "surj/constructions.hpp"

namespace surj {

namespace {

template <class T>
std::vector<T> rename_all(const TagPermutation &pi, const std::vector<T> &xs) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (const T &x : xs)
    out.push_back(rename(pi, x));
  return out;
}

} // namespace

FamilyMember rename(const TagPermutation &pi, const FamilyMember &m) {
  return {rename(pi, m.b), rename(pi, m.f)};
}

ChainEntry rename(const TagPermutation &pi, const ChainEntry &e) {
  return {rename(pi, e.a), rename(pi, e.b), rename(pi, e.pair)};
}

Stratum rename(const TagPermutation &pi, const Stratum &s) {
  return {s.m, s.n, rename(pi, s.set)};
}

CountableUnionWitness rename(const TagPermutation &pi,
                             const CountableUnionWitness &w) {
  return {rename(pi, w.a),      rename_all(pi, w.family), rename(pi, w.target),
          rename(pi, w.g),      rename_all(pi, w.partial), rename_all(pi, w.strata),
          w.budget};
}

IteratedImageWitness rename(const TagPermutation &pi,
                            const IteratedImageWitness &w) {
  return {rename(pi, w.a),      rename(pi, w.f), rename_all(pi, w.images),
          rename(pi, w.target), rename(pi, w.g), w.budget};
}

RefinementWitness rename(const TagPermutation &pi, const RefinementWitness &w) {
  RefinementWitness r;
  r.a = rename(pi, w.a);
  r.b = rename(pi, w.b);
  r.c = rename(pi, w.c);
  r.input = rename(pi, w.input);
  r.f_wlog = rename(pi, w.f_wlog);
  r.x = rename(pi, w.x);
  r.y = rename(pi, w.y);
  r.f_prime = rename(pi, w.f_prime);
  r.g_prime = rename(pi, w.g_prime);
  r.f_tilde = rename(pi, w.f_tilde);
  r.g_tilde = rename(pi, w.g_tilde);
  r.orbit_x = rename(pi, w.orbit_x);
  r.orbit_y = rename(pi, w.orbit_y);
  r.p = rename(pi, w.p);
  r.q = rename(pi, w.q);
  r.a_prime = rename(pi, w.a_prime);
  r.b_prime = rename(pi, w.b_prime);
  r.a_tilde = rename(pi, w.a_tilde);
  r.b_tilde = rename(pi, w.b_tilde);
  r.surj_aprime_onto_aprime_q = rename(pi, w.surj_aprime_onto_aprime_q);
  r.surj_bprime_onto_bprime_p = rename(pi, w.surj_bprime_onto_bprime_p);
  r.pair_atilde_aprime = rename(pi, w.pair_atilde_aprime);
  r.pair_btilde_bprime = rename(pi, w.pair_btilde_bprime);
  r.budget = w.budget;
  return r;
}

AbsorptionWitness rename(const TagPermutation &pi, const AbsorptionWitness &w) {
  return {rename(pi, w.d1), rename(pi, w.d2), rename(pi, w.q),
          rename(pi, w.f),  rename(pi, w.c1), rename(pi, w.c2),
          rename(pi, w.q1), rename(pi, w.q2), rename(pi, w.g1),
          rename(pi, w.g2), w.budget};
}

QuadWitness rename(const TagPermutation &pi, const QuadWitness &w) {
  QuadWitness r;
  r.a1 = rename(pi, w.a1);
  r.a2 = rename(pi, w.a2);
  r.b1 = rename(pi, w.b1);
  r.b2 = rename(pi, w.b2);
  r.input = rename(pi, w.input);
  r.refinement = rename(pi, w.refinement);
  r.d1 = rename(pi, w.d1);
  r.d2 = rename(pi, w.d2);
  r.d3 = rename(pi, w.d3);
  r.d4 = rename(pi, w.d4);
  r.absorb_q = rename(pi, w.absorb_q);
  r.absorb_p = rename(pi, w.absorb_p);
  r.c1 = rename(pi, w.c1);
  r.c2 = rename(pi, w.c2);
  r.c3 = rename(pi, w.c3);
  r.c4 = rename(pi, w.c4);
  r.pair_a1 = rename(pi, w.pair_a1);
  r.pair_a2 = rename(pi, w.pair_a2);
  r.pair_b1 = rename(pi, w.pair_b1);
  r.pair_b2 = rename(pi, w.pair_b2);
  r.budget = w.budget;
  return r;
}

RemainderLevel rename(const TagPermutation &pi, const RemainderLevel &l) {
  return {rename(pi, l.a_tilde), rename(pi, l.a_prime), rename(pi, l.p),
          rename(pi, l.b_tilde), rename(pi, l.b_prime), rename(pi, l.q),
          rename(pi, l.d),       rename(pi, l.pair)};
}

RemainderWitness rename(const TagPermutation &pi, const RemainderWitness &w) {
  return {rename_all(pi, w.chain), rename_all(pi, w.steps),
          rename_all(pi, w.levels), rename(pi, w.c), w.budget};
}

} // namespace surj
