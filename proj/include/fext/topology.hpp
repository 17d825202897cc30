#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fext/hyper.hpp"
#include "fext/keisler.hpp"

namespace fext {

/// E(f_1, ..., f_n; eta_1, ..., eta_n): the points xi with *f_i(xi) = eta_i
/// for some i.
struct BasicClosed {
    std::vector<std::pair<FnExpr, Hyperpoint>> pairs;

    /// `E(f_1, ...; eta_1, ...)`
    std::string text() const;
};

/// A finite intersection of basic closed sets.
struct ClosedSet {
    std::vector<BasicClosed> parts;
};

bool closed_member(const Model& m, const Hyperpoint& xi, const BasicClosed& e);
bool closed_member(const Model& m, const Hyperpoint& xi, const ClosedSet& e);

/// E(identity; xi): closed, contains xi, and misses every point not eq to xi.
BasicClosed separating_set(const Hyperpoint& xi);

/// E(f_1 . f, ..., f_n . f; eta): the preimage of E under *f.
BasicClosed star_preimage(const FnExpr& f, const BasicClosed& e);

struct CoverResult {
    Verdict3 verdict = Verdict3::undecided;  // accept = covers, reject = a standard point is missed
    std::optional<Nat> witness;              // first uncovered x
    /// Sampled points that failed the membership sweep after a cover.
    std::vector<std::size_t> non_members;
};

/// Whether the standard points up to `upto` all lie in E, which needs every
/// target to be standard (std::invalid_argument otherwise). After a cover,
/// every sampled point must be a member; one that is not makes the result
/// undecided.
CoverResult covers_standard(const Model& m, const BasicClosed& e, std::span<const Hyperpoint> sample,
                            std::uint64_t upto);

}  // namespace fext
