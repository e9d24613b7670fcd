// Command-line front end: run, verify, proptest, oracle.
#include "surj/io.hpp"
#include "surj/proptest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace surj;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kSchema = 2, kConstruction = 3, kInvalid = 4 };

const char *error_kind(const Error &e) {
#define KIND(T)                                                                \
  if (dynamic_cast<const T *>(&e))                                             \
    return #T;
  if (dynamic_cast<const io::SchemaError *>(&e))
    return "SchemaError";
  KIND(NonStabilizing)
  KIND(SizeGuard)
  KIND(NotSurjectionPair)
  KIND(NotPartialSurjection)
  KIND(DisjointnessViolation)
  KIND(InvalidChain)
  KIND(InvalidFamily)
  KIND(ConflictingUnion)
  KIND(TagCollision)
  KIND(Unsupported)
  KIND(RepresentationLimit)
  KIND(InputError)
  KIND(ConstructionError)
#undef KIND
  return "Error";
}

int report(const std::string &kind, const std::string &message, int code) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
  return code;
}

Json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw io::SchemaError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw io::SchemaError(path + ": " + e.what());
  }
}

void write_json(const Json &j, const std::string &out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  f << j.dump(2) << "\n";
  if (!f)
    throw std::runtime_error("cannot write " + out);
}

struct Flags {
  std::optional<Index> budget;
  bool no_accel = false;
  std::string out;

  Budget resolve(const std::optional<Budget> &from_file) const {
    Budget b = from_file.value_or(default_budget());
    if (budget)
      b.max_steps = *budget;
    if (no_accel)
      b.acceleration = false;
    return b;
  }
};

/// Maps library errors onto exit codes.
template <class F> int guarded(F f) {
  try {
    return f();
  } catch (const InputError &e) {
    return report(error_kind(e), e.what(), kSchema);
  } catch (const ConstructionError &e) {
    return report(error_kind(e), e.what(), kConstruction);
  } catch (const Error &e) {
    return report(error_kind(e), e.what(), kConstruction);
  }
}

void print_failures(const Verdict &v) {
  for (const std::string &f : v.failures)
    std::cerr << Json{{"error", "ValidationFailure"}, {"message", f}}.dump() << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Explicit surjection-pair constructions on semilinear sets"};
  app.require_subcommand(1);
  Flags flags;
  auto budget_flags = [&](CLI::App *sub) {
    sub->add_option("--budget", flags.budget, "Step budget for ω-iterations")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--no-accel", flags.no_accel, "Disable closure acceleration");
  };

  std::string instance_path;
  auto *run = app.add_subcommand("run", "Run the construction in an instance file");
  run->add_option("instance", instance_path)->required();
  run->add_option("--out", flags.out, "Witness file (default: stdout)");
  budget_flags(run);

  std::string witness_path;
  auto *verify = app.add_subcommand("verify", "Re-validate a witness file");
  verify->add_option("witness", witness_path)->required();

  std::string op;
  std::uint64_t seed = 0;
  int iters = 100;
  Index max_size = 30;
  auto *proptest = app.add_subcommand("proptest", "Seeded property tests for one op");
  proptest->add_option("op", op)->required();
  proptest->add_option("--seed", seed);
  proptest->add_option("--iters", iters)->check(CLI::NonNegativeNumber);
  proptest->add_option("--max-size", max_size, "Bound on finite atoms per set")
      ->check(CLI::PositiveNumber);
  budget_flags(proptest);

  std::string kind;
  auto *oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->add_option("kind", kind)->required()->check(
      CLI::IsMember({"equiv", "gfp", "prefix"}));
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--out", flags.out);
  budget_flags(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kSchema;
  }

  if (*run)
    return guarded([&] {
      io::Instance inst = io::parse_instance(read_json(instance_path));
      io::RunResult r = io::run(inst, flags.resolve(inst.budget));
      write_json(r.document, flags.out);
      if (!r.verdict.ok()) {
        print_failures(r.verdict);
        return int{kInvalid};
      }
      return int{kOk};
    });

  if (*verify)
    return guarded([&] {
      Verdict v = io::verify(read_json(witness_path));
      if (!v.ok()) {
        print_failures(v);
        return int{kInvalid};
      }
      std::cout << "ok\n";
      return int{kOk};
    });

  if (*proptest)
    return guarded([&] {
      gen::Shape shape;
      shape.max_points = max_size;
      prop::Stats st = prop::run(op, seed, iters, shape, flags.resolve(std::nullopt));
      std::cout << "op " << st.op << " seed " << seed << " iters " << st.iters
                << " valid " << st.valid << " equivariant " << st.equivariant
                << " failures " << st.failures.size() << "\n";
      for (const std::string &f : st.failures)
        std::cout << "  " << f << "\n";
      return st.ok() ? int{kOk} : int{kFailed};
    });

  return guarded([&] {
    io::Instance inst = io::parse_instance(read_json(instance_path));
    if (inst.op != kind)
      throw io::SchemaError("instance op \"" + inst.op + "\" is not \"" + kind + "\"");
    write_json(io::oracle(inst, flags.resolve(inst.budget)), flags.out);
    return int{kOk};
  });
}
