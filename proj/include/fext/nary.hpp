#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fext/funlang.hpp"
#include "fext/hyper.hpp"

namespace fext {

/// A way of presenting a tuple of points as images of one point:
/// *coords[i](zeta) is meant to be eq to the i-th argument.
struct Decomposition {
    Hyperpoint zeta;
    std::vector<FnExpr> coords;
    std::string label;
};

/// [m -> phi(args_1(m), ..., args_n(m))]
Hyperpoint star_nary_direct(const NaryFn& phi, std::span<const Hyperpoint> args);

/// zeta = the pointwise tuple of the arguments, coords = the tuple projections.
Decomposition canonical_decomposition(std::span<const Hyperpoint> args);

/// Up to `count` further decompositions of the same arguments, built from
/// permutations, padding, scaling, shifting, nesting and finite changes.
/// Finite changes touch only indices below `perturb_below`.
std::vector<Decomposition> alternative_decompositions(std::span<const Hyperpoint> args, std::size_t count,
                                                      std::uint64_t perturb_below = 10);

/// Checks *coords[i](zeta) eq args[i] for every i.
bool decomposition_valid(const Model& m, const Decomposition& d, std::span<const Hyperpoint> args);

/// *(phi . (coords...))(zeta)
Hyperpoint star_nary_via(const NaryFn& phi, const Decomposition& d);

/// The parametric route over the canonical decomposition. With `verify`
/// set, the decomposition is checked first and ConsistencyViolation thrown
/// if a projection equation fails.
Hyperpoint star_nary_parametric(const NaryFn& phi, std::span<const Hyperpoint> args, const Model* verify = nullptr);

/// *R(args): the indicator's value is eq to standard(1).
bool star_rel(const Model& m, const NaryFn& indicator, std::span<const Hyperpoint> args);

/// phi . (psi_1, ..., psi_n); every psi_i must have the same arity.
NaryFn compose_nary(const NaryFn& phi, std::span<const NaryFn> psis);

}  // namespace fext
