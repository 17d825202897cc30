#pragma once

#include <utility>

#include "fext/nat.hpp"

namespace fext {

/// Cantor pairing: (x + y)(x + y + 1)/2 + y. A bijection N x N -> N.
Nat pair(const Nat& x, const Nat& y);

/// Inverse of `pair`.
std::pair<Nat, Nat> unpair(const Nat& z);

inline Nat proj1(const Nat& z) { return unpair(z).first; }
inline Nat proj2(const Nat& z) { return unpair(z).second; }

}  // namespace fext
