#pragma once

#include <optional>
#include <span>
#include <string>

#include "fext/expr.hpp"
#include "fext/nat.hpp"
#include "fext/oracle.hpp"
#include "fext/predicate.hpp"

namespace fext {

/// An element of the ultrapower: the class of the sequence n -> seq(n).
struct Hyperpoint {
    FnExpr seq;
    std::string name;

    Nat at(const Nat& n) const { return seq.eval(n); }
    /// `[n -> <expr>]`
    std::string text() const { return "[n -> " + seq.to_string("n") + "]"; }
    /// The name when there is one, the text otherwise.
    std::string label() const { return name.empty() ? text() : name; }
};

/// The extension of a subset of N given by its 0/1 characteristic function.
struct StarSet {
    FnExpr indicator;
    std::string tag;

    /// `{x : <expr>(x)=1}`
    std::string text() const { return "{x : (" + indicator.to_string("x") + ")(x)=1}"; }
};

StarSet set_union(const StarSet& a, const StarSet& b);
StarSet set_intersection(const StarSet& a, const StarSet& b);
StarSet set_complement(const StarSet& a);
/// Indicator of a finite set, as a chain of ifeq tests.
StarSet finite_set(std::span<const Nat> elements);

/// The ultrapower N^N / U over an oracle. Equality and membership are
/// decided by the oracle on agreement sets; everything else is syntax.
class Model {
public:
    explicit Model(Oracle& oracle) : oracle_(&oracle) {}

    Oracle& oracle() const noexcept { return *oracle_; }

    static Hyperpoint standard(const Nat& x);
    /// [n -> n]
    static Hyperpoint omega();
    static Hyperpoint star_apply(const FnExpr& f, const Hyperpoint& xi);

    /// The index set on which two representatives agree.
    static IndexPredicate agreement(const Hyperpoint& a, const Hyperpoint& b);
    bool eq(const Hyperpoint& a, const Hyperpoint& b) const;

    /// The index set queried by `member`. For an indicator of the form
    /// ifeq(a, b, 1, 0) this is the agreement set of *a(xi) and *b(xi), so
    /// membership in an equalizer and equality of the two images share one
    /// oracle entry.
    static IndexPredicate membership(const Hyperpoint& xi, const StarSet& a);
    bool member(const Hyperpoint& xi, const StarSet& a) const;

    /// {x : f(x) = g(x)}
    static StarSet equalizer(const FnExpr& f, const FnExpr& g);

    /// The unique element of `a` that `xi` equals, or nullopt when xi is not
    /// in *a. Throws ConsistencyViolation if the level sets of xi over `a` do
    /// not partition the membership decision.
    std::optional<Nat> decide_finite(const Hyperpoint& xi, std::span<const Nat> a) const;

    /// The standard value xi equals, if any. Only the value at the oracle's
    /// least surviving index can qualify, so this costs one query. Values
    /// above the oracle's floor are not reported: every index of the window
    /// exceeds the floor, and past it a constant looks like omega.
    std::optional<Nat> standard_part(const Hyperpoint& xi) const;

private:
    Oracle* oracle_;
};

}  // namespace fext
