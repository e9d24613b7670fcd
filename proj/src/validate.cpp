#include "surj/algebra.hpp"

#include <set>
#include <sstream>

namespace surj {

namespace {

std::string show(const Element &e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

void expect_disjoint(Verdict &v, const SemilinearSet &x, const SemilinearSet &y,
                     const std::string &what) {
  if (!x.disjoint_from(y))
    v.fail(what + ": not disjoint");
}

void expect_equal(Verdict &v, const SemilinearSet &x, const SemilinearSet &y,
                  const std::string &what) {
  if (!(x == y))
    v.fail(what + ": mismatch");
}

void expect_subset(Verdict &v, const SemilinearSet &x, const SemilinearSet &y,
                   const std::string &what) {
  if (!x.subset_of(y))
    v.fail(what + ": not contained");
}

/// whole == parts[0] ∪ parts[1] ∪ ... with the parts pairwise disjoint.
void expect_partition(Verdict &v, const SemilinearSet &whole,
                      const std::vector<SemilinearSet> &parts,
                      const std::string &what) {
  SemilinearSet u;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!parts[i].disjoint_from(parts[j]))
        v.fail(what + ": parts " + std::to_string(i) + " and " +
               std::to_string(j) + " overlap");
    u = u | parts[i];
  }
  if (!(u == whole))
    v.fail(what + ": parts do not cover exactly");
}

} // namespace

void Verdict::merge(const Verdict &inner, const std::string &prefix) {
  for (const std::string &f : inner.failures)
    failures.push_back(prefix + "." + f);
}

Verdict validate_partial_surjection(const PAMap &f, const SemilinearSet &from,
                                    const SemilinearSet &onto,
                                    const std::string &name) {
  Verdict v;
  if (!f.domain().subset_of(from))
    v.fail(name + ": domain outside source");
  if (!(map_image(f) == onto))
    v.fail(name + ": image mismatch");
  if (!v.ok())
    return v;
  // pointwise: values land in the target, and preimages really map back
  for (const Element &x : from.members_below(kPrefixCheck))
    if (auto y = f.apply(x); y && !onto.contains(*y)) {
      v.fail(name + ": " + show(x) + " maps outside the target");
      return v;
    }
  // every target element below the prefix bound is hit by some source point
  std::vector<Element> ys = onto.members_below(kPrefixCheck);
  std::set<Element> missing(ys.begin(), ys.end());
  SemilinearSet pre = map_preimage(f, SemilinearSet::of(ys));
  for (Index bound = kPrefixCheck; !missing.empty() && bound <= (Index{1} << 20);
       bound *= 4)
    for (const Element &x : pre.members_below(bound))
      if (auto y = f.apply(x))
        missing.erase(*y);
  if (!missing.empty())
    v.fail(name + ": " + show(*missing.begin()) + " has no verified preimage");
  return v;
}

Verdict validate_pair(const SurjectionPair &p, const SemilinearSet &left,
                      const SemilinearSet &right, const std::string &name) {
  Verdict v;
  v.merge(validate_partial_surjection(p.forward, left, right, "forward"), name);
  v.merge(validate_partial_surjection(p.backward, right, left, "backward"), name);
  if (!v.ok()) {
    // report at pair level too, so corrupted partitions read naturally
    bool image = false;
    for (auto &f : v.failures)
      image = image || f.find("image mismatch") != std::string::npos;
    if (image)
      v.failures.insert(v.failures.begin(), name + ": image mismatch");
  }
  return v;
}

Verdict validate_witness(const CountableUnionWitness &w) {
  Verdict v;
  SemilinearSet target = w.a;
  for (std::size_t n = 0; n < w.family.size(); ++n) {
    std::string tag = "B_" + std::to_string(n);
    expect_disjoint(v, w.a, w.family[n].b, "A and " + tag);
    v.merge(validate_partial_surjection(w.family[n].f, w.a, w.a | w.family[n].b,
                                        "f_" + std::to_string(n)),
            "family");
    target = target | w.family[n].b;
  }
  expect_equal(v, w.target, target, "target");
  v.merge(validate_partial_surjection(w.g, w.a, target, "g"), "union");
  SemilinearSet reached = w.a;
  for (std::size_t k = 0; k < w.partial.size(); ++k) {
    if (k > 0)
      reached = reached | w.family[k - 1].b;
    v.merge(validate_partial_surjection(w.partial[k], w.a, reached,
                                        "g_" + std::to_string(k)),
            "partial");
  }
  if (w.partial.size() != w.family.size() + 1)
    v.fail("partial: expected one map per prefix of the family");
  for (std::size_t i = 0; i < w.strata.size(); ++i) {
    expect_subset(v, w.strata[i].set, w.a, "stratum");
    for (std::size_t j = i + 1; j < w.strata.size(); ++j)
      expect_disjoint(v, w.strata[i].set, w.strata[j].set, "strata");
  }
  return v;
}

Verdict validate_witness(const IteratedImageWitness &w) {
  Verdict v;
  expect_subset(v, w.a, map_image(w.f, w.a), "A in f[A]");
  if (w.images.empty() || !(w.images.front() == w.a)) {
    v.fail("images: must start at A");
    return v;
  }
  for (std::size_t k = 0; k + 1 < w.images.size(); ++k)
    expect_equal(v, w.images[k + 1], map_image(w.f, w.images[k]), "images");
  expect_equal(v, map_image(w.f, w.images.back()), w.images.back(),
               "images: last is stable");
  expect_equal(v, w.target, w.images.back(), "target");
  v.merge(validate_partial_surjection(w.g, w.a, w.target, "g"), "iterated");
  return v;
}

Verdict validate_witness(const RefinementWitness &w) {
  Verdict v;
  expect_disjoint(v, w.a, w.b, "A and B");
  v.merge(validate_pair(w.input, w.a | w.b, w.c, "input"), "refinement");
  expect_partition(v, w.a, {w.a_prime, w.p}, "A = A' ∪ P");
  expect_partition(v, w.b, {w.b_prime, w.q}, "B = B' ∪ Q");
  expect_partition(v, w.c, {w.a_tilde, w.b_tilde}, "C = Ã ∪ B̃");
  v.merge(validate_partial_surjection(w.surj_aprime_onto_aprime_q, w.a_prime,
                                      w.a_prime | w.q, "surj_Aprime_onto_AprimeQ"),
          "refinement");
  v.merge(validate_partial_surjection(w.surj_bprime_onto_bprime_p, w.b_prime,
                                      w.b_prime | w.p, "surj_Bprime_onto_BprimeP"),
          "refinement");
  Verdict pa = validate_pair(w.pair_atilde_aprime, w.a_tilde, w.a_prime,
                             "pair_Atilde_Aprime");
  Verdict pb = validate_pair(w.pair_btilde_bprime, w.b_tilde, w.b_prime,
                             "pair_Btilde_Bprime");
  v.failures.insert(v.failures.end(), pa.failures.begin(), pa.failures.end());
  v.failures.insert(v.failures.end(), pb.failures.begin(), pb.failures.end());

  // internal claims of the construction
  SurjectionPair pruned{w.f_tilde, w.g_tilde, w.a | w.b, w.c};
  v.merge(validate_pair(pruned, w.a | w.b, w.c, "pruned"), "refinement");
  PAMap loop = map_compose(w.g_tilde, w.f_tilde);
  expect_subset(v, w.x, map_image(loop, w.x), "X in g̃f̃[X]");
  expect_subset(v, w.y, map_image(loop, w.y), "Y in g̃f̃[Y]");
  expect_subset(v, map_preimage(loop, w.x), w.x, "f̃⁻¹g̃⁻¹[X] in X");
  expect_subset(v, map_preimage(loop, w.y), w.y, "f̃⁻¹g̃⁻¹[Y] in Y");
  expect_subset(v, w.x, w.a, "X in A");
  expect_subset(v, w.y, w.b, "Y in B");
  try {
    Budget b = w.budget;
    expect_subset(v, w.c, map_image(w.f_tilde, omega_union(w.a | w.y, loop, b)),
                  "every c has an orbit preimage in A ∪ Y");
    expect_subset(v, w.c, map_image(w.f_tilde, omega_union(w.b | w.x, loop, b)),
                  "every c has an orbit preimage in B ∪ X");
  } catch (const ConstructionError &e) {
    v.fail(std::string("orbit claims: ") + e.what());
  }
  return v;
}

Verdict validate_witness(const AbsorptionWitness &w) {
  Verdict v;
  SemilinearSet d = w.d1 | w.d2;
  expect_disjoint(v, w.d1, w.d2, "D1 and D2");
  expect_disjoint(v, d, w.q, "D and Q");
  v.merge(validate_partial_surjection(w.f, d, d | w.q, "f"), "absorption");
  expect_partition(v, w.q, {w.q1, w.q2}, "Q = Q1 ∪ Q2");
  expect_equal(v, w.q1, w.q & map_image(w.g1), "Q1 = Q ∩ ran g1");
  v.merge(validate_partial_surjection(w.g1, w.d1, w.d1 | w.q1, "g1"),
          "absorption");
  v.merge(validate_partial_surjection(w.g2, w.d2, w.d2 | w.q2, "g2"),
          "absorption");
  expect_subset(v, w.c1, w.d1, "C1 in D1");
  expect_subset(v, w.c2, w.d2, "C2 in D2");
  return v;
}

Verdict validate_witness(const QuadWitness &w) {
  Verdict v;
  std::vector<SemilinearSet> ins{w.a1, w.a2, w.b1, w.b2};
  for (std::size_t i = 0; i < ins.size(); ++i)
    for (std::size_t j = i + 1; j < ins.size(); ++j)
      expect_disjoint(v, ins[i], ins[j], "inputs");
  v.merge(validate_pair(w.input, w.a1 | w.a2, w.b1 | w.b2, "input"), "quad");
  v.merge(validate_witness(w.refinement), "refinement");
  v.merge(validate_witness(w.absorb_q), "absorb_q");
  v.merge(validate_witness(w.absorb_p), "absorb_p");
  std::vector<SemilinearSet> cs{w.c1, w.c2, w.c3, w.c4};
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      expect_disjoint(v, cs[i], cs[j], "C" + std::to_string(i + 1) + " and C" +
                                           std::to_string(j + 1));
  v.merge(validate_pair(w.pair_a1, w.a1, w.c1 | w.c2, "A1~C1∪C2"), "quad");
  v.merge(validate_pair(w.pair_a2, w.a2, w.c3 | w.c4, "A2~C3∪C4"), "quad");
  v.merge(validate_pair(w.pair_b1, w.b1, w.c1 | w.c3, "B1~C1∪C3"), "quad");
  v.merge(validate_pair(w.pair_b2, w.b2, w.c2 | w.c4, "B2~C2∪C4"), "quad");
  return v;
}

Verdict validate_witness(const RemainderWitness &w) {
  Verdict v;
  const auto &es = w.chain;
  SemilinearSet all_b;
  for (std::size_t n = 0; n < es.size(); ++n) {
    SemilinearSet next = n + 1 < es.size() ? es[n + 1].a : SemilinearSet{};
    expect_disjoint(v, next, es[n].b, "A_{n+1} and B_n");
    v.merge(validate_pair(es[n].pair, es[n].a, next | es[n].b,
                          "pair_" + std::to_string(n)),
            "chain");
    all_b = all_b | es[n].b;
  }
  expect_disjoint(v, w.c, all_b, "C and ⋃B_n");
  if (w.levels.size() != es.size())
    v.fail("levels: expected one pair per chain index");
  for (std::size_t m = 0; m < w.levels.size() && m < es.size(); ++m) {
    SemilinearSet rest = w.c;
    for (std::size_t k = m; k < es.size(); ++k)
      rest = rest | es[k].b;
    v.merge(validate_pair(w.levels[m].pair, es[m].a, rest,
                          "per_" + std::to_string(m)),
            "remainder");
  }
  for (std::size_t n = 0; n < w.steps.size(); ++n)
    v.merge(validate_witness(w.steps[n]), "step_" + std::to_string(n));
  return v;
}

} // namespace surj
