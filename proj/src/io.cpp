#include "surj/io.hpp"

#include <charconv>

namespace surj::io {

/// Document shapes of sets and maps.
struct SetParts {
  std::vector<Element> finite;
  std::vector<Progression> blocks;
};

struct PieceDoc {
  Progression guard;
  Tag target_tag;
  Index base = 0;
  Index step = 0;
};

struct MapParts {
  std::vector<std::pair<Element, Element>> finite;
  std::vector<PieceDoc> pieces;
};

Json encode(const SetParts &x);
Json encode(const PieceDoc &x);
Json encode(const MapParts &x);
Json encode(const std::pair<Element, Element> &p);
void decode(const Json &j, SetParts &x);
void decode(const Json &j, PieceDoc &x);
void decode(const Json &j, MapParts &x);
void decode(const Json &j, std::pair<Element, Element> &p);

namespace {

constexpr Index kMaxExact = (Index{1} << 53) - 1;

void expect(bool ok, const std::string &what) {
  if (!ok)
    throw SchemaError(what);
}

void check(const Progression &p) {
  expect(p.low >= 0 && p.modulus >= 0 && p.residue >= 0 &&
             (p.modulus == 0 || p.residue < p.modulus),
         "progression needs low >= 0 and 0 <= residue < modulus");
}

} // namespace

template <class T> Json encode(const std::vector<T> &xs) {
  Json j = Json::array();
  for (const T &x : xs)
    j.push_back(encode(x));
  return j;
}

template <class T> void decode(const Json &j, std::vector<T> &xs) {
  expect(j.is_array(), "expected an array");
  xs.clear();
  for (const Json &e : j) {
    T x;
    decode(e, x);
    xs.push_back(std::move(x));
  }
}

namespace {

struct Writer {
  Json &j;
  template <class T> void operator()(const char *key, T &value) {
    j[key] = encode(value);
  }
};

/// Reads declared fields and rejects anything undeclared.
struct Reader {
  const Json &j;
  std::set<std::string> seen;

  template <class T> void operator()(const char *key, T &value) {
    expect(j.contains(key), std::string("missing field \"") + key + "\"");
    try {
      decode(j.at(key), value);
    } catch (const SchemaError &e) {
      throw SchemaError(std::string(key) + ": " + e.what());
    }
    seen.insert(key);
  }
  void finish() const {
    for (auto &[key, _] : j.items())
      expect(seen.count(key) > 0, "unknown field \"" + key + "\"");
  }
};

} // namespace

#define SURJ_FIELDS(Type, ...)                                                 \
  namespace {                                                                  \
  template <class V> void visit(Type &x, V &v) { __VA_ARGS__ }                 \
  }                                                                            \
  Json encode(const Type &x) {                                                 \
    Json j = Json::object();                                                   \
    Writer w{j};                                                               \
    visit(const_cast<Type &>(x), w);                                           \
    return j;                                                                  \
  }                                                                            \
  void decode(const Json &j, Type &x) {                                        \
    expect(j.is_object(), "expected an object");                               \
    Reader r{j, {}};                                                           \
    visit(x, r);                                                               \
    r.finish();                                                                \
  }

Json encode(Index n) {
  if (n > kMaxExact || n < -kMaxExact)
    return std::to_string(n);
  return n;
}

void decode(const Json &j, Index &n) {
  if (j.is_number_integer()) {
    n = j.get<Index>();
    return;
  }
  expect(j.is_string(), "expected an integer");
  const std::string &s = j.get_ref<const std::string &>();
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  expect(ec == std::errc{} && end == s.data() + s.size(),
         "expected a decimal integer, got \"" + s + "\"");
}

Json encode(bool b) { return Json(b); }

void decode(const Json &j, bool &b) {
  expect(j.is_boolean(), "expected a boolean");
  b = j.get<bool>();
}

Json encode(const Tag &t) { return t.name; }

void decode(const Json &j, Tag &t) {
  expect(j.is_string() && !j.get_ref<const std::string &>().empty(),
         "expected a tag name");
  t.name = j.get<std::string>();
}

Json encode(const Element &e) { return Json::array({encode(e.tag), encode(e.index)}); }

void decode(const Json &j, Element &e) {
  expect(j.is_array() && j.size() == 2, "expected [tag, index]");
  decode(j[0], e.tag);
  decode(j[1], e.index);
  expect(e.index >= 0, "negative index");
}

SURJ_FIELDS(Progression, v("tag", x.tag); v("residue", x.residue);
            v("modulus", x.modulus); v("low", x.low);)

SURJ_FIELDS(SetParts, v("finite", x.finite); v("blocks", x.blocks);)
SURJ_FIELDS(PieceDoc, v("guard", x.guard); v("target_tag", x.target_tag);
            v("base", x.base); v("step", x.step);)

Json encode(const std::pair<Element, Element> &p) {
  return Json::array({encode(p.first), encode(p.second)});
}

void decode(const Json &j, std::pair<Element, Element> &p) {
  expect(j.is_array() && j.size() == 2, "expected [source, target]");
  decode(j[0], p.first);
  decode(j[1], p.second);
}

SURJ_FIELDS(MapParts, v("finite", x.finite); v("pieces", x.pieces);)

Json encode(const SemilinearSet &s) {
  SetParts parts;
  s.decompose(parts.finite, parts.blocks);
  return encode(parts);
}

void decode(const Json &j, SemilinearSet &s) {
  SetParts parts;
  decode(j, parts);
  s = SemilinearSet::of(parts.finite);
  for (const Progression &p : parts.blocks) {
    check(p);
    s = s | SemilinearSet::of(p);
  }
}

Json encode(const PAMap &f) {
  MapParts parts;
  std::vector<AffinePiece> pieces;
  f.finite_part(parts.finite, pieces);
  for (const AffinePiece &p : pieces)
    parts.pieces.push_back({p.guard, p.target_tag, p.base, p.step});
  return encode(parts);
}

void decode(const Json &j, PAMap &f) {
  MapParts parts;
  decode(j, parts);
  try {
    f = PAMap::from_pairs(parts.finite);
    for (const PieceDoc &p : parts.pieces) {
      check(p.guard);
      expect(p.base >= 0 && p.step >= 0, "piece needs base, step >= 0");
      f = map_union_disjoint(
          f, PAMap::from_piece({p.guard, p.target_tag, p.base, p.step}));
    }
  } catch (const SchemaError &) {
    throw;
  } catch (const Error &e) {
    throw SchemaError(e.what());
  }
}

SURJ_FIELDS(SurjectionPair, v("forward", x.forward); v("backward", x.backward);
            v("left", x.left); v("right", x.right);)
SURJ_FIELDS(Budget, v("max_steps", x.max_steps);
            v("acceleration", x.acceleration);)
SURJ_FIELDS(FamilyMember, v("b", x.b); v("f", x.f);)
SURJ_FIELDS(ChainEntry, v("a", x.a); v("b", x.b); v("pair", x.pair);)
SURJ_FIELDS(Stratum, v("m", x.m); v("n", x.n); v("set", x.set);)
SURJ_FIELDS(RemainderLevel, v("a_tilde", x.a_tilde); v("a_prime", x.a_prime);
            v("p", x.p); v("b_tilde", x.b_tilde); v("b_prime", x.b_prime);
            v("q", x.q); v("d", x.d); v("pair", x.pair);)
SURJ_FIELDS(CountableUnionWitness, v("a", x.a); v("family", x.family);
            v("target", x.target); v("g", x.g); v("partial", x.partial);
            v("strata", x.strata); v("budget", x.budget);)
SURJ_FIELDS(IteratedImageWitness, v("a", x.a); v("f", x.f);
            v("images", x.images); v("target", x.target); v("g", x.g);
            v("budget", x.budget);)
SURJ_FIELDS(RefinementWitness, v("a", x.a); v("b", x.b); v("c", x.c);
            v("input", x.input); v("f_wlog", x.f_wlog); v("x", x.x);
            v("y", x.y); v("f_prime", x.f_prime); v("g_prime", x.g_prime);
            v("f_tilde", x.f_tilde); v("g_tilde", x.g_tilde);
            v("orbit_x", x.orbit_x); v("orbit_y", x.orbit_y); v("p", x.p);
            v("q", x.q); v("a_prime", x.a_prime); v("b_prime", x.b_prime);
            v("a_tilde", x.a_tilde); v("b_tilde", x.b_tilde);
            v("surj_aprime_onto_aprime_q", x.surj_aprime_onto_aprime_q);
            v("surj_bprime_onto_bprime_p", x.surj_bprime_onto_bprime_p);
            v("pair_atilde_aprime", x.pair_atilde_aprime);
            v("pair_btilde_bprime", x.pair_btilde_bprime);
            v("budget", x.budget);)
SURJ_FIELDS(AbsorptionWitness, v("d1", x.d1); v("d2", x.d2); v("q", x.q);
            v("f", x.f); v("c1", x.c1); v("c2", x.c2); v("q1", x.q1);
            v("q2", x.q2); v("g1", x.g1); v("g2", x.g2);
            v("budget", x.budget);)
SURJ_FIELDS(QuadWitness, v("a1", x.a1); v("a2", x.a2); v("b1", x.b1);
            v("b2", x.b2); v("input", x.input); v("refinement", x.refinement);
            v("d1", x.d1); v("d2", x.d2); v("d3", x.d3); v("d4", x.d4);
            v("absorb_q", x.absorb_q); v("absorb_p", x.absorb_p);
            v("c1", x.c1); v("c2", x.c2); v("c3", x.c3); v("c4", x.c4);
            v("pair_a1", x.pair_a1); v("pair_a2", x.pair_a2);
            v("pair_b1", x.pair_b1); v("pair_b2", x.pair_b2);
            v("budget", x.budget);)
SURJ_FIELDS(RemainderWitness, v("chain", x.chain); v("steps", x.steps);
            v("levels", x.levels); v("c", x.c); v("budget", x.budget);)


/// Input and output of a cancellation run.
struct CancellationDoc {
  Index m = 1;
  SemilinearSet a, b;
  SurjectionPair input, output;
};

Json encode(const CancellationDoc &x);
void decode(const Json &j, CancellationDoc &x);

SURJ_FIELDS(CancellationDoc, v("m", x.m); v("a", x.a); v("b", x.b);
            v("input", x.input); v("output", x.output);)

#undef SURJ_FIELDS

Verdict validate_witness(const CancellationDoc &d) {
  Verdict v;
  if (d.m < 1) {
    v.fail("m must be positive");
    return v;
  }
  v.merge(validate_pair(d.input, tag_product(d.m, d.a), tag_product(d.m, d.b),
                        "input"),
          "cancellation");
  v.merge(validate_pair(d.output, d.a, d.b, "output"), "cancellation");
  return v;
}

namespace {

void require_keys(const Json &j, std::initializer_list<const char *> allowed,
                  const std::string &where) {
  expect(j.is_object(), where + ": expected an object");
  for (auto &[key, _] : j.items()) {
    bool ok = false;
    for (const char *a : allowed)
      ok = ok || key == a;
    expect(ok, where + ": unknown field \"" + key + "\"");
  }
}

bool declared(const std::set<Tag> &tags, const Tag &t) {
  if (tags.count(t))
    return true;
  auto split = split_product_tag(t);
  return split && declared(tags, split->first);
}

/// Named arguments of a run, resolved against the instance.
class Args {
public:
  Args(const Instance &in, const Json &j, std::string where)
      : in_(in), j_(j), where_(std::move(where)) {
    expect(j.is_object(), where_ + ": expected an object");
  }

  const Json &raw(const char *key) {
    expect(j_.contains(key), where_ + ": missing argument \"" + key + "\"");
    seen_.insert(key);
    return j_.at(key);
  }
  std::string name(const char *key) {
    const Json &n = raw(key);
    expect(n.is_string(), where_ + "." + key + ": expected a name");
    return n.get<std::string>();
  }
  SemilinearSet set(const char *key) {
    std::string n = name(key);
    auto it = in_.sets.find(n);
    expect(it != in_.sets.end(), where_ + ": undefined set \"" + n + "\"");
    return it->second;
  }
  PAMap map(const char *key) {
    std::string n = name(key);
    auto it = in_.maps.find(n);
    expect(it != in_.maps.end(), where_ + ": undefined map \"" + n + "\"");
    return it->second;
  }
  SurjectionPair pair(const SemilinearSet &left, const SemilinearSet &right) {
    return {map("forward"), map("backward"), left, right};
  }
  std::vector<Args> list(const char *key) {
    const Json &xs = raw(key);
    expect(xs.is_array(), where_ + "." + key + ": expected an array");
    std::vector<Args> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
      out.emplace_back(in_, xs[i], where_ + "." + key + "[" + std::to_string(i) + "]");
    return out;
  }
  void finish() const {
    for (auto &[key, _] : j_.items())
      expect(seen_.count(key) > 0, where_ + ": unknown argument \"" + key + "\"");
  }

private:
  const Instance &in_;
  const Json &j_;
  std::string where_;
  std::set<std::string> seen_;
};

Json document(const std::string &op, Json witness, const Budget &budget) {
  return Json{{"tool", "surj"},
              {"version", kVersion},
              {"op", op},
              {"budget", encode(budget)},
              {"witness", std::move(witness)}};
}

template <class W>
RunResult finish(const std::string &op, const W &w, const Budget &budget) {
  return {document(op, encode(w), budget), validate_witness(w)};
}

template <class W> Verdict check(const Json &j) {
  W w;
  decode(j, w);
  return validate_witness(w);
}

} // namespace

Instance parse_instance(const Json &doc) {
  require_keys(doc, {"tags", "sets", "maps", "run"}, "instance");
  Instance in;
  expect(doc.contains("run"), "instance: missing \"run\"");
  if (doc.contains("tags")) {
    std::vector<Tag> tags;
    decode(doc["tags"], tags);
    in.tags = {tags.begin(), tags.end()};
  }
  auto names = [&](const char *key, auto &out) {
    if (!doc.contains(key))
      return;
    expect(doc[key].is_object(), std::string(key) + ": expected an object");
    for (auto &[name, value] : doc[key].items()) {
      try {
        decode(value, out[name]);
      } catch (const SchemaError &e) {
        throw SchemaError(std::string(key) + "." + name + ": " + e.what());
      }
    }
  };
  names("sets", in.sets);
  names("maps", in.maps);

  std::set<Tag> used;
  for (auto &[_, s] : in.sets)
    collect_tags(s, used);
  for (auto &[_, f] : in.maps)
    collect_tags(f, used);
  for (const Tag &t : used)
    expect(declared(in.tags, t), "undeclared tag \"" + t.name + "\"");

  const Json &run = doc["run"];
  require_keys(run, {"op", "args", "budget"}, "run");
  expect(run.contains("op") && run["op"].is_string(), "run: missing \"op\"");
  expect(run.contains("args"), "run: missing \"args\"");
  in.op = run["op"].get<std::string>();
  in.args = run["args"];
  if (run.contains("budget")) {
    Budget b;
    decode(run["budget"], b);
    in.budget = b;
  }
  return in;
}

RunResult run(const Instance &inst, const Budget &budget) {
  Args args(inst, inst.args, "args");
  const std::string &op = inst.op;
  RunResult r;
  if (op == "countable_union") {
    SemilinearSet a = args.set("a");
    TailedFamily fam;
    for (Args &m : args.list("family")) {
      fam.members.push_back({m.set("b"), m.map("f")});
      m.finish();
    }
    args.finish();
    return finish(op, countable_union_surjection(a, fam, budget), budget);
  }
  if (op == "iterated_image") {
    SemilinearSet a = args.set("a");
    PAMap f = args.map("f");
    args.finish();
    return finish(op, iterated_image_surjection(a, f, budget), budget);
  }
  if (op == "key_refinement") {
    SemilinearSet a = args.set("a"), b = args.set("b"), c = args.set("c");
    SurjectionPair p = args.pair(a | b, c);
    args.finish();
    return finish(op, key_refinement(a, b, c, p, budget), budget);
  }
  if (op == "absorption_split") {
    SemilinearSet d1 = args.set("d1"), d2 = args.set("d2"), q = args.set("q");
    PAMap f = args.map("f");
    args.finish();
    return finish(op, absorption_split(d1, d2, q, f, budget), budget);
  }
  if (op == "finite_refinement") {
    SemilinearSet a1 = args.set("a1"), a2 = args.set("a2"), b1 = args.set("b1"),
                  b2 = args.set("b2");
    SurjectionPair p = args.pair(a1 | a2, b1 | b2);
    args.finish();
    return finish(op, finite_refinement(a1, a2, b1, b2, p, budget), budget);
  }
  if (op == "remainder_chain") {
    auto links = args.list("chain");
    args.finish();
    ChainFamily chain;
    std::vector<SemilinearSet> as, bs;
    for (Args &l : links) {
      as.push_back(l.set("a"));
      bs.push_back(l.set("b"));
    }
    for (std::size_t n = 0; n < links.size(); ++n) {
      SemilinearSet next = n + 1 < as.size() ? as[n + 1] : SemilinearSet{};
      chain.entries.push_back({as[n], bs[n], links[n].pair(as[n], next | bs[n])});
      links[n].finish();
    }
    return finish(op, remainder_chain(chain, budget), budget);
  }
  if (op == "cancellation") {
    CancellationDoc d;
    decode(args.raw("m"), d.m);
    expect(d.m >= 1, "args.m: must be positive");
    d.a = args.set("a");
    d.b = args.set("b");
    d.input = args.pair(tag_product(d.m, d.a), tag_product(d.m, d.b));
    args.finish();
    d.output = cancellation(d.m, d.a, d.b, d.input, budget);
    return finish(op, d, budget);
  }
  throw SchemaError("unknown op \"" + op + "\"");
}

namespace {

/// "var" | {"const": set} | {"and": [e, e]} | {"or": [e, e]} |
/// {"image": [map, e]} | {"preimage": [map, e]}
IsotoneExpr parse_expr(const Instance &in, const Json &j) {
  if (j == "var")
    return IsotoneExpr::var();
  expect(j.is_object() && j.size() == 1, "expr: expected \"var\" or a one-key object");
  const auto &[key, body] = *j.items().begin();
  auto named = [&](const Json &n, const auto &table, const char *what) {
    expect(n.is_string(), std::string("expr: expected a ") + what + " name");
    auto it = table.find(n.template get<std::string>());
    expect(it != table.end(), std::string("expr: undefined ") + what + " " + n.dump());
    return it->second;
  };
  if (key == "const")
    return IsotoneExpr::constant(named(body, in.sets, "set"));
  expect(body.is_array() && body.size() == 2, "expr." + key + ": expected two entries");
  if (key == "and")
    return IsotoneExpr::intersect(parse_expr(in, body[0]), parse_expr(in, body[1]));
  if (key == "or")
    return IsotoneExpr::unite(parse_expr(in, body[0]), parse_expr(in, body[1]));
  if (key == "image")
    return IsotoneExpr::image(named(body[0], in.maps, "map"), parse_expr(in, body[1]));
  if (key == "preimage")
    return IsotoneExpr::preimage(named(body[0], in.maps, "map"), parse_expr(in, body[1]));
  throw SchemaError("expr: unknown operator \"" + key + "\"");
}

const char *verdict_name(Equivalence e) {
  switch (e) {
  case Equivalence::Equivalent:
    return "equivalent";
  case Equivalence::NotEquivalent:
    return "not_equivalent";
  default:
    return "unknown";
  }
}

} // namespace

Json oracle(const Instance &inst, const Budget &budget) {
  Args args(inst, inst.args, "args");
  if (inst.op == "equiv") {
    SemilinearSet a = args.set("a"), b = args.set("b");
    args.finish();
    EquivResult fast = equiv_oracle(a, b);
    Json out{{"oracle", "equiv"}};
    if (a.finite() && b.finite()) {
      auto found = finite_pair_search(a, b);
      out["method"] = "exhaustive";
      out["verdict"] = found ? "equivalent" : "not_equivalent";
      if (found)
        out["witness"] = encode(*found);
      out["agrees_with_equiv_oracle"] =
          (fast.verdict == Equivalence::Equivalent) == found.has_value();
      return out;
    }
    out["method"] = "reindexing";
    out["verdict"] = verdict_name(fast.verdict);
    if (fast.witness)
      out["witness"] = encode(*fast.witness);
    return out;
  }
  if (inst.op == "gfp") {
    SemilinearSet ambient = args.set("ambient");
    IsotoneExpr e = parse_expr(inst, args.raw("expr"));
    args.finish();
    if (!ambient.finite() || ambient.size() > kGfpAtoms)
      throw SizeGuard("exhaustive gfp needs a finite ambient of at most " +
                      std::to_string(kGfpAtoms) + " atoms");
    auto atoms = ambient.members();
    SemilinearSet brute;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
      std::vector<Element> d;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (mask >> k & 1)
          d.push_back(atoms[k]);
      SemilinearSet ds = SemilinearSet::of(d);
      if (ds.subset_of(e.eval(ds)))
        brute = brute | ds;
    }
    SemilinearSet fix = gfp_isotone(e, ambient, budget);
    return Json{{"oracle", "gfp"},
                {"exhaustive", encode(brute)},
                {"gfp", encode(fix)},
                {"agree", fix == brute}};
  }
  if (inst.op == "prefix") {
    SemilinearSet s = args.set("set");
    Index bound = kPrefixCheck;
    if (inst.args.contains("bound"))
      decode(args.raw("bound"), bound);
    args.finish();
    if (bound < 0 || bound > kPrefixCheck)
      throw SizeGuard("prefix bound must lie in [0, " +
                      std::to_string(kPrefixCheck) + "]");
    return Json{{"oracle", "prefix"},
                {"bound", bound},
                {"members", encode(s.members_below(bound))}};
  }
  throw SchemaError("unknown oracle \"" + inst.op + "\"");
}

Verdict verify(const Json &doc) {
  require_keys(doc, {"tool", "version", "op", "budget", "witness"}, "witness file");
  for (const char *key : {"tool", "version", "op", "budget", "witness"})
    expect(doc.contains(key), std::string("witness file: missing \"") + key + "\"");
  Budget b;
  decode(doc["budget"], b);
  expect(doc["op"].is_string(), "op: expected a string");
  const std::string op = doc["op"].get<std::string>();
  const Json &w = doc["witness"];
  if (op == "countable_union")
    return check<CountableUnionWitness>(w);
  if (op == "iterated_image")
    return check<IteratedImageWitness>(w);
  if (op == "key_refinement")
    return check<RefinementWitness>(w);
  if (op == "absorption_split")
    return check<AbsorptionWitness>(w);
  if (op == "finite_refinement")
    return check<QuadWitness>(w);
  if (op == "remainder_chain")
    return check<RemainderWitness>(w);
  if (op == "cancellation")
    return check<CancellationDoc>(w);
  throw SchemaError("unknown op \"" + op + "\"");
}

} // namespace surj::io
