#pragma once

#include "surj/algebra.hpp"

#include <string>
#include <vector>

namespace surj::prop {

struct Checks {
  bool validity = true;
  bool equivariance = true;
};

struct Stats {
  std::string op;
  int iters = 0;
  int valid = 0;
  int equivariant = 0;
  /// One line per failing iteration, with the seed that reproduces it.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Operation names accepted by run(); '-' and '_' are interchangeable.
const std::vector<std::string> &op_names();

/// Iteration i draws its instance and tag permutation from seed + i.
/// Throws InputError for an unknown op.
Stats run(const std::string &op, std::uint64_t seed, int iters,
          const gen::Shape &shape, const Budget &budget, Checks checks = {});

} // namespace surj::prop
