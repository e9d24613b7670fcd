#pragma once

#include "surj/semiset.hpp"

#include <functional>
#include <memory>

namespace surj {

struct Budget {
  Index max_steps = 64;
  bool acceleration = true;

  bool operator==(const Budget &) const = default;
};

/// The default budget, honouring SURJ_BUDGET when set.
Budget default_budget();

class NonStabilizing : public ConstructionError {
public:
  NonStabilizing(std::string what, Index steps, SemilinearSet last_delta)
      : ConstructionError(std::move(what)), steps(steps),
        last_delta(std::move(last_delta)) {}

  Index steps;
  SemilinearSet last_delta;
};

Index cantor_pair(Index m, Index n);
std::pair<Index, Index> cantor_unpair(Index k);

/// An isotone set expression in one variable D.
class IsotoneExpr {
public:
  enum class Kind { Var, Const, Intersect, Union, Image, Preimage };

  static IsotoneExpr var();
  static IsotoneExpr constant(SemilinearSet s);
  static IsotoneExpr intersect(IsotoneExpr a, IsotoneExpr b);
  static IsotoneExpr unite(IsotoneExpr a, IsotoneExpr b);
  static IsotoneExpr image(PAMap f, IsotoneExpr a);
  static IsotoneExpr preimage(PAMap f, IsotoneExpr a);

  SemilinearSet eval(const SemilinearSet &d) const;

  Kind kind() const;
  const SemilinearSet &set() const;
  const PAMap &map() const;
  const IsotoneExpr &lhs() const;
  const IsotoneExpr &rhs() const;
  Index depth() const;

  /// A single map H with eval(D) = H[D] for every D ⊆ ambient, if the tree
  /// is a chain of images and intersections with constants.
  std::optional<PAMap> as_single_image(const SemilinearSet &ambient) const;

private:
  struct Node;
  explicit IsotoneExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class Direction { Forward, Backward };

/// Least U ⊇ seed closed under D -> f[D] (Forward) or D -> f⁻¹[D]
/// (Backward).
SemilinearSet omega_union(const SemilinearSet &seed, const PAMap &f,
                          const Budget &budget,
                          Direction dir = Direction::Forward);
SemilinearSet omega_union(const SemilinearSet &seed, const IsotoneExpr &step,
                          const Budget &budget);

/// D_0 ⊇ D_1 ⊇ ... given either by a recurrence D_{k+1} = next(D_k) or by an
/// indexed generator that is constant from a known index on.
struct DescendingChain {
  std::function<SemilinearSet(Index)> at;
  std::function<SemilinearSet(const SemilinearSet &)> next;
  std::optional<Index> constant_from;

  static DescendingChain recurrence(SemilinearSet d0,
                                    std::function<SemilinearSet(const SemilinearSet &)> next);
  static DescendingChain indexed(std::function<SemilinearSet(Index)> at,
                                 std::optional<Index> constant_from);
};

SemilinearSet omega_intersection(const DescendingChain &chain,
                                 const Budget &budget);

/// Greatest fixed point of D -> ambient ∩ i(D) below ambient.
SemilinearSet gfp_isotone(const IsotoneExpr &i, const SemilinearSet &ambient,
                          const Budget &budget);

/// x -> step^m(x) for the least m >= min_steps with step^m(x) in target.
PAMap least_index_stratify(const SemilinearSet &domain, const PAMap &step,
                           const SemilinearSet &target, const Budget &budget,
                           Index min_steps = 0);

/// Members x of dom f whose image index compares to x's index as requested
/// (sign > 0: larger, sign < 0: smaller, sign == 0: equal).
SemilinearSet index_comparison(const PAMap &f, int sign);

/// ⋃_{i >= 0} (s + i*shift) per tag, shift > 0.
Track translate_closure(const Track &s, Index shift);

} // namespace surj
