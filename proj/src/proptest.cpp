#include "surj/proptest.hpp"

#include <algorithm>
#include <functional>

namespace surj::prop {

namespace {

TailedFamily rename(const TagPermutation &pi, const TailedFamily &f) {
  TailedFamily out;
  for (const auto &m : f.members)
    out.members.push_back(surj::rename(pi, m));
  return out;
}

ChainFamily rename(const TagPermutation &pi, const ChainFamily &c) {
  ChainFamily out;
  for (const auto &e : c.entries)
    out.entries.push_back(surj::rename(pi, e));
  return out;
}

std::set<Tag> tags_of(std::initializer_list<SemilinearSet> sets) {
  std::set<Tag> out;
  for (const auto &s : sets)
    collect_tags(s, out);
  return out;
}

struct CancellationInstance {
  Index m = 2;
  SemilinearSet a, b;
  SurjectionPair pair;
};

/// Finite m·A ~ m·B with |A| = |B| <= 8 and a shuffled bijection.
CancellationInstance cancellation_instance(gen::Rng &rng, const gen::Shape &shape) {
  CancellationInstance in;
  in.m = 2 + static_cast<Index>(rng() % 2);
  std::size_t n = rng() % static_cast<std::size_t>(std::min<Index>(8, shape.max_points) + 1);
  auto points = [&](const char *t1, const char *t2) {
    std::set<Index> idx;
    while (idx.size() < n)
      idx.insert(static_cast<Index>(rng() % 20));
    std::vector<Element> es;
    for (Index k : idx)
      es.push_back({rng() % 2 ? t1 : t2, k});
    return SemilinearSet::of(es);
  };
  in.a = points("a", "x");
  in.b = points("b", "y");
  SemilinearSet ma = tag_product(in.m, in.a), mb = tag_product(in.m, in.b);
  auto ls = ma.members(), rs = mb.members();
  std::shuffle(rs.begin(), rs.end(), rng);
  std::vector<std::pair<Element, Element>> fw, bw;
  for (std::size_t k = 0; k < ls.size(); ++k) {
    fw.push_back({ls[k], rs[k]});
    bw.push_back({rs[k], ls[k]});
  }
  in.pair = {PAMap::from_pairs(fw), PAMap::from_pairs(bw), ma, mb};
  return in;
}

/// One construction under test.
template <class Inst, class W> struct Case {
  std::function<Inst(gen::Rng &, const gen::Shape &)> make;
  std::function<W(const Inst &, const Budget &)> build;
  std::function<Inst(const TagPermutation &, const Inst &)> rename;
  std::function<std::set<Tag>(const Inst &)> tags;
  std::function<Verdict(const Inst &, const W &)> validate;
  std::function<W(const TagPermutation &, const W &)> rename_out;
};

template <class Inst, class W>
Stats drive(const std::string &name, const Case<Inst, W> &c, std::uint64_t seed,
            int iters, const gen::Shape &shape, const Budget &budget,
            Checks checks) {
  Stats st;
  st.op = name;
  for (int i = 0; i < iters; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    gen::Rng rng(s);
    ++st.iters;
    auto fail = [&](const std::string &what) {
      st.failures.push_back("seed " + std::to_string(s) + ": " + what);
    };
    try {
      Inst in = c.make(rng, shape);
      W w = c.build(in, budget);
      if (checks.validity) {
        Verdict v = c.validate(in, w);
        if (v.ok())
          ++st.valid;
        else
          fail(v.failures.front());
      }
      if (checks.equivariance) {
        TagPermutation pi = gen::random_permutation(rng, c.tags(in));
        if (c.build(c.rename(pi, in), budget) == c.rename_out(pi, w))
          ++st.equivariant;
        else
          fail("construct and rename do not commute");
      }
    } catch (const Error &e) {
      fail(e.what());
    }
  }
  return st;
}

template <class I, class W> Verdict witness_ok(const I &, const W &w) {
  return validate_witness(w);
}

template <class W> W rename_witness(const TagPermutation &pi, const W &w) {
  return surj::rename(pi, w);
}

} // namespace

const std::vector<std::string> &op_names() {
  static const std::vector<std::string> names{
      "countable_union",   "iterated_image",  "key_refinement", "absorption_split",
      "finite_refinement", "remainder_chain", "cancellation"};
  return names;
}

Stats run(const std::string &op_in, std::uint64_t seed, int iters,
          const gen::Shape &shape, const Budget &budget, Checks checks) {
  std::string op = op_in;
  std::replace(op.begin(), op.end(), '-', '_');
  auto go = [&](const auto &c) { return drive(op, c, seed, iters, shape, budget, checks); };

  if (op == "countable_union") {
    using I = gen::UnionInstance;
    using W = CountableUnionWitness;
    return go(Case<I, W>{
        gen::union_instance,
        [](const I &in, const Budget &b) { return countable_union_surjection(in.a, in.family, b); },
        [](const TagPermutation &pi, const I &in) { return I{surj::rename(pi, in.a), rename(pi, in.family)}; },
        [](const I &in) {
          std::set<Tag> t = tags_of({in.a});
          for (auto &m : in.family.members)
            collect_tags(m.b, t);
          return t;
        },
        witness_ok<I, W>, rename_witness<W>});
  }
  if (op == "iterated_image") {
    using I = gen::ImageInstance;
    using W = IteratedImageWitness;
    return go(Case<I, W>{
        gen::image_instance,
        [](const I &in, const Budget &b) { return iterated_image_surjection(in.a, in.f, b); },
        [](const TagPermutation &pi, const I &in) { return I{surj::rename(pi, in.a), surj::rename(pi, in.f)}; },
        [](const I &in) {
          std::set<Tag> t = tags_of({in.a});
          collect_tags(in.f, t);
          return t;
        },
        witness_ok<I, W>, rename_witness<W>});
  }
  if (op == "key_refinement") {
    using I = gen::RefinementInstance;
    using W = RefinementWitness;
    return go(Case<I, W>{
        gen::refinement_instance,
        [](const I &in, const Budget &b) { return key_refinement(in.a, in.b, in.c, in.pair, b); },
        [](const TagPermutation &pi, const I &in) {
          return I{surj::rename(pi, in.a), surj::rename(pi, in.b), surj::rename(pi, in.c),
                   surj::rename(pi, in.pair)};
        },
        [](const I &in) { return tags_of({in.a, in.b, in.c}); }, witness_ok<I, W>,
        rename_witness<W>});
  }
  if (op == "absorption_split") {
    using I = gen::AbsorptionInstance;
    using W = AbsorptionWitness;
    return go(Case<I, W>{
        gen::absorption_instance,
        [](const I &in, const Budget &b) { return absorption_split(in.d1, in.d2, in.q, in.f, b); },
        [](const TagPermutation &pi, const I &in) {
          return I{surj::rename(pi, in.d1), surj::rename(pi, in.d2), surj::rename(pi, in.q),
                   surj::rename(pi, in.f)};
        },
        [](const I &in) { return tags_of({in.d1, in.d2, in.q}); }, witness_ok<I, W>,
        rename_witness<W>});
  }
  if (op == "finite_refinement") {
    using I = gen::QuadInstance;
    using W = QuadWitness;
    return go(Case<I, W>{
        gen::quad_instance,
        [](const I &in, const Budget &b) {
          return finite_refinement(in.a1, in.a2, in.b1, in.b2, in.pair, b);
        },
        [](const TagPermutation &pi, const I &in) {
          return I{surj::rename(pi, in.a1), surj::rename(pi, in.a2), surj::rename(pi, in.b1),
                   surj::rename(pi, in.b2), surj::rename(pi, in.pair)};
        },
        [](const I &in) { return tags_of({in.a1, in.a2, in.b1, in.b2}); }, witness_ok<I, W>,
        rename_witness<W>});
  }
  if (op == "remainder_chain") {
    using I = ChainFamily;
    using W = RemainderWitness;
    return go(Case<I, W>{
        gen::chain_instance,
        [](const I &in, const Budget &b) { return remainder_chain(in, b); },
        [](const TagPermutation &pi, const I &in) { return rename(pi, in); },
        [](const I &in) {
          std::set<Tag> t;
          for (auto &e : in.entries) {
            collect_tags(e.a, t);
            collect_tags(e.b, t);
          }
          return t;
        },
        witness_ok<I, W>, rename_witness<W>});
  }
  if (op == "cancellation") {
    using I = CancellationInstance;
    using W = SurjectionPair;
    return go(Case<I, W>{
        cancellation_instance,
        [](const I &in, const Budget &b) { return cancellation(in.m, in.a, in.b, in.pair, b); },
        [](const TagPermutation &pi, const I &in) {
          return I{in.m, surj::rename(pi, in.a), surj::rename(pi, in.b), surj::rename(pi, in.pair)};
        },
        [](const I &in) { return tags_of({in.a, in.b}); },
        [](const I &in, const W &w) {
          Verdict v = validate_pair(w, in.a, in.b, "output");
          if (equiv_oracle(in.a, in.b).verdict != Equivalence::Equivalent)
            v.fail("oracle disagrees");
          return v;
        },
        [](const TagPermutation &pi, const W &w) { return surj::rename(pi, w); }});
  }
  throw InputError("unknown op \"" + op_in + "\"");
}

} // namespace surj::prop
