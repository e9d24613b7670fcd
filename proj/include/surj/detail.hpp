#pragma once

#include "surj/core.hpp"

namespace surj::detail {

/// Largest threshold or period a normal form may reach.
inline constexpr Index kMaxExtent = Index{1} << 22;
inline constexpr Index kMaxValue = Index{1} << 60;

Index floor_mod(Index a, Index m);
Index checked_lcm(Index a, Index b);
void check_extent(Index n);
/// a + b*k, throwing RepresentationLimit on overflow.
Index checked_affine(Index a, Index b, Index k);

} // namespace surj::detail
