#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "fext/expr.hpp"
#include "fext/funlang.hpp"

namespace fext {

using Rng = std::mt19937_64;

/// Uniform in [0, n). Plain modulo so the stream is identical on every
/// standard library (std::uniform_int_distribution is not).
inline std::uint64_t uniform(Rng& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline bool coin(Rng& rng) { return (rng() & 1U) != 0; }

struct RandomFnOptions {
    int max_depth = 3;
    std::uint64_t max_constant = 9;
    bool allow_pairing = true;
    bool allow_compose = true;
};

/// A random grammar-valid term.
FnExpr random_fn(Rng& rng, const RandomFnOptions& opts = {});

/// A random 0/1-valued term: residue classes, tails, or equalizers.
FnExpr random_indicator(Rng& rng, const RandomFnOptions& opts = {});

/// A random function of `arity` arguments over the packed-tuple input.
NaryFn random_nary(Rng& rng, std::size_t arity, const RandomFnOptions& opts = {});

}  // namespace fext
