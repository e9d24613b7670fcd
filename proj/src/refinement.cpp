#include "surj/constructions.hpp"

namespace surj {

namespace {

PAMap unite(const PAMap &f, const PAMap &g) { return map_union_disjoint(f, g); }
PAMap id(const SemilinearSet &s) { return PAMap::identity(s); }

/// f ↾ f⁻¹[s]: same map, values kept only inside s.
PAMap corestrict(const PAMap &f, const SemilinearSet &s) {
  return map_restrict(f, map_preimage(f, s));
}

/// Partial surjection from `own_prime` onto the tilde side of `own`: the
/// least-index map h into Z ∪ W followed by the iterated-image surjection of
/// Z onto Z ∪ O_fix.
PAMap onto_tilde(const PAMap &ft, const PAMap &gt, const PAMap &cycle,
                 const SemilinearSet &own, const SemilinearSet &own_prime,
                 const SemilinearSet &own_fix, const SemilinearSet &other_orbit,
                 const SemilinearSet &tilde, const Budget &budget) {
  SemilinearSet z = map_preimage(gt, own) - map_image(ft, other_orbit);
  SemilinearSet w = map_image(ft, own_prime) - gt.domain();
  PAMap reach = least_index_stratify(own_prime, cycle, map_preimage(ft, z), budget);
  PAMap h = map_compose(ft, reach);
  PAMap escape = map_restrict(ft, own_prime & map_preimage(ft, w));
  h = unite(h, map_erase(escape, h.domain()));

  SemilinearSet seed = map_preimage(gt, own_fix);
  PAMap back = map_compose(ft, gt);
  PAMap s = iterated_image_surjection(seed, back, budget).g;
  PAMap sigma = unite(unite(s, id(z - seed)), id(w));
  return corestrict(map_compose(sigma, h), tilde);
}

} // namespace

RefinementWitness key_refinement(const SemilinearSet &a, const SemilinearSet &b,
                                 const SemilinearSet &c,
                                 const SurjectionPair &pair,
                                 const Budget &budget) {
  if (!a.disjoint_from(b))
    throw DisjointnessViolation("A and B overlap");
  SurjectionPair expected = pair;
  expected.left = a | b;
  expected.right = c;
  if (!expected.valid())
    throw NotSurjectionPair("input is not a surjection pair between A ∪ B and C");

  RefinementWitness w;
  w.a = a;
  w.b = b;
  w.c = c;
  w.input = expected;
  w.budget = budget;
  const PAMap &f = pair.forward;
  const PAMap &g = pair.backward;

  // B-side assignments whose values A already reaches are dropped, so that
  // f[A] and f[B] are disjoint
  w.f_wlog = map_erase(f, b & map_preimage(f, map_image(f, a)));
  PAMap gf = map_compose(g, w.f_wlog);
  w.x = gfp_isotone(IsotoneExpr::image(gf, IsotoneExpr::var()), a, budget);
  w.y = gfp_isotone(IsotoneExpr::image(gf, IsotoneExpr::var()), b, budget);

  SemilinearSet fx = map_image(w.f_wlog, w.x);
  w.f_prime = map_erase(w.f_wlog, map_preimage(w.f_wlog, fx) - w.x);
  w.g_prime = map_erase(g, map_preimage(g, w.x) - fx);
  SemilinearSet fy = map_image(w.f_prime, w.y);
  w.f_tilde = map_erase(w.f_prime, map_preimage(w.f_prime, fy) - w.y);
  w.g_tilde = map_erase(w.g_prime, map_preimage(w.g_prime, w.y) - fy);

  PAMap cycle = map_compose(w.g_tilde, w.f_tilde);
  w.orbit_x = omega_union(w.x, cycle, budget);
  w.orbit_y = omega_union(w.y, cycle, budget);
  w.p = a & w.orbit_y;
  w.q = b & w.orbit_x;
  w.a_prime = a - w.p;
  w.b_prime = b - w.q;

  SemilinearSet ox = map_image(w.f_tilde, w.orbit_x);
  SemilinearSet oy = map_image(w.f_tilde, w.orbit_y);
  w.a_tilde = (map_preimage(w.g_tilde, a) - oy) | ox |
              (map_image(w.f_tilde, w.a_prime) - w.g_tilde.domain());
  w.b_tilde = c - w.a_tilde;

  // A' onto A' ∪ Q through the orbit of X, identity elsewhere
  PAMap from_x = iterated_image_surjection(w.x, cycle, budget).g;
  w.surj_aprime_onto_aprime_q =
      unite(corestrict(from_x, w.x | w.q), id(w.a_prime - w.x));
  PAMap from_y = iterated_image_surjection(w.y, cycle, budget).g;
  w.surj_bprime_onto_bprime_p =
      unite(corestrict(from_y, w.y | w.p), id(w.b_prime - w.y));

  w.pair_atilde_aprime.left = w.a_tilde;
  w.pair_atilde_aprime.right = w.a_prime;
  w.pair_atilde_aprime.forward = corestrict(w.g_tilde, w.a_prime);
  w.pair_atilde_aprime.backward =
      onto_tilde(w.f_tilde, w.g_tilde, cycle, a, w.a_prime, w.x, w.orbit_y,
                 w.a_tilde, budget);

  w.pair_btilde_bprime.left = w.b_tilde;
  w.pair_btilde_bprime.right = w.b_prime;
  w.pair_btilde_bprime.forward = corestrict(w.g_tilde, w.b_prime);
  w.pair_btilde_bprime.backward =
      onto_tilde(w.f_tilde, w.g_tilde, cycle, b, w.b_prime, w.y, w.orbit_x,
                 w.b_tilde, budget);
  return w;
}

AbsorptionWitness absorption_split(const SemilinearSet &d1,
                                   const SemilinearSet &d2,
                                   const SemilinearSet &q, const PAMap &f,
                                   const Budget &budget) {
  if (!d1.disjoint_from(d2) || !d1.disjoint_from(q) || !d2.disjoint_from(q))
    throw DisjointnessViolation("D1, D2, Q are not pairwise disjoint");
  if (!is_partial_surjection(f, d1 | d2, d1 | d2 | q))
    throw NotPartialSurjection("f is not a partial surjection onto D1 ∪ D2 ∪ Q");

  AbsorptionWitness w;
  w.d1 = d1;
  w.d2 = d2;
  w.q = q;
  w.f = f;
  w.budget = budget;
  w.c1 = d1 - omega_union(map_image(f, d2), f, budget);
  w.c2 = d2 - omega_union(w.c1, f, budget);

  PAMap stay = map_restrict(f, w.c1 & map_preimage(f, w.c1));
  PAMap leave = least_index_stratify(w.c1 - stay.domain(), f, q, budget, 1);
  PAMap g1 = unite(stay, leave);
  w.g1 = unite(g1, id(d1 - g1.domain()));
  w.q1 = q & map_image(w.g1);
  w.q2 = q - w.q1;

  PAMap back = least_index_stratify(w.c2, f, w.c2, budget, 1);
  PAMap out = least_index_stratify(w.c2 - back.domain(), f, q, budget, 1);
  PAMap g2 = unite(back, out);
  g2 = unite(g2, id(d2 - g2.domain()));
  w.g2 = corestrict(g2, d2 | w.q2);
  return w;
}

QuadWitness finite_refinement(const SemilinearSet &a1, const SemilinearSet &a2,
                              const SemilinearSet &b1, const SemilinearSet &b2,
                              const SurjectionPair &pair, const Budget &budget) {
  std::vector<const SemilinearSet *> parts{&a1, &a2, &b1, &b2};
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i]->disjoint_from(*parts[j]))
        throw DisjointnessViolation("A1, A2, B1, B2 are not pairwise disjoint");

  QuadWitness w;
  w.a1 = a1;
  w.a2 = a2;
  w.b1 = b1;
  w.b2 = b2;
  w.budget = budget;
  w.refinement = key_refinement(a1, a2, b1 | b2, pair, budget);
  w.input = w.refinement.input;
  const RefinementWitness &r = w.refinement;

  const PAMap &f1 = r.pair_atilde_aprime.forward;
  const PAMap &g1 = r.pair_atilde_aprime.backward;
  const PAMap &f2 = r.pair_btilde_bprime.forward;
  const PAMap &g2 = r.pair_btilde_bprime.backward;
  w.d1 = r.a_tilde & b1;
  w.d2 = r.a_tilde & b2;
  w.d3 = r.b_tilde & b1;
  w.d4 = r.b_tilde & b2;

  PAMap loop1 = map_compose(unite(g1, id(r.q)),
                            map_compose(r.surj_aprime_onto_aprime_q, f1));
  PAMap loop2 = map_compose(unite(g2, id(r.p)),
                            map_compose(r.surj_bprime_onto_bprime_p, f2));
  w.absorb_q = absorption_split(w.d1, w.d2, r.q, loop1, budget);
  w.absorb_p = absorption_split(w.d3, w.d4, r.p, loop2, budget);

  w.c1 = w.d1 | w.absorb_p.q1;
  w.c2 = w.d2 | w.absorb_p.q2;
  w.c3 = w.d3 | w.absorb_q.q1;
  w.c4 = w.d4 | w.absorb_q.q2;

  w.pair_a1 = {unite(g1, id(r.p)), unite(f1, id(r.p)), a1, w.c1 | w.c2};
  w.pair_a2 = {unite(g2, id(r.q)), unite(f2, id(r.q)), a2, w.c3 | w.c4};
  w.pair_b1 = {unite(w.absorb_q.g1, w.absorb_p.g1), id(w.d1 | w.d3), b1,
               w.c1 | w.c3};
  w.pair_b2 = {unite(w.absorb_q.g2, w.absorb_p.g2), id(w.d2 | w.d4), b2,
               w.c2 | w.c4};
  return w;
}

} // namespace surj
