#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fext/nat.hpp"

namespace fext {

enum class Op : std::uint8_t {
    Const,
    Var,
    Succ,
    Pred,     // truncated at 0
    Add,
    Mul,
    Monus,    // truncated subtraction
    Div,      // by a nonzero constant
    Mod,      // by a nonzero constant
    IfEq,     // ifeq(a, b, c, d) = c if a = b else d
    Pair,
    P1,
    P2,
    Compose,  // comp(outer, inner)(x) = outer(inner(x))
};

/// Code for a total function N -> N.
///
/// Immutable and cheap to copy: subtrees are shared. Totality is a property
/// of the grammar itself (no unbounded search, division only by nonzero
/// constants), so `eval` always terminates.
class FnExpr {
public:
    /// The identity function.
    FnExpr();

    static FnExpr constant(Nat k);
    static FnExpr var();
    static FnExpr succ(FnExpr e);
    static FnExpr pred(FnExpr e);
    static FnExpr add(FnExpr a, FnExpr b);
    static FnExpr mul(FnExpr a, FnExpr b);
    static FnExpr monus(FnExpr a, FnExpr b);
    /// Throws std::invalid_argument when `k` is zero.
    static FnExpr div(FnExpr a, Nat k);
    static FnExpr mod(FnExpr a, Nat k);
    static FnExpr ifeq(FnExpr a, FnExpr b, FnExpr then_e, FnExpr else_e);
    static FnExpr pair(FnExpr a, FnExpr b);
    static FnExpr p1(FnExpr e);
    static FnExpr p2(FnExpr e);
    /// Builds a Compose node verbatim. Most callers want `compose()`.
    static FnExpr compose_node(FnExpr outer, FnExpr inner);

    Op op() const noexcept;
    /// Constant for Const, divisor for Div/Mod, zero otherwise.
    const Nat& value() const noexcept;
    std::size_t child_count() const noexcept;
    const FnExpr& child(std::size_t i) const;

    Nat eval(const Nat& x) const;
    /// Same value, computed without the word-sized fast path.
    Nat eval_exact(const Nat& x) const;

    /// Canonical concrete syntax; re-parses to an equal tree.
    std::string to_string(std::string_view var_name = "x") const;

    /// Number of free occurrences of the input variable.
    std::size_t occurrences() const noexcept;
    std::size_t size() const noexcept;
    bool is_identity() const noexcept { return op() == Op::Var; }
    bool is_constant() const noexcept { return op() == Op::Const; }

    friend bool operator==(const FnExpr& a, const FnExpr& b);

private:
    struct Node;
    explicit FnExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static FnExpr make(Op op, Nat value, std::vector<FnExpr> kids);

    std::shared_ptr<const Node> node_;
};

/// outer . inner, i.e. x -> outer(inner(x)).
///
/// Substitutes `inner` into `outer` when that cannot duplicate work (the
/// variable occurs at most once, or `inner` is a leaf) and falls back to a
/// Compose node otherwise, so repeated composition stays linear in size.
FnExpr compose(const FnExpr& outer, const FnExpr& inner);

/// Replaces every free occurrence of the variable in `e` by `replacement`.
FnExpr substitute(const FnExpr& e, const FnExpr& replacement);

/// The diagonal characteristic function composed with (f, g):
/// x -> 1 if f(x) = g(x) else 0.
FnExpr diagonal_indicator(const FnExpr& f, const FnExpr& g);

/// Left-nested tuple encoding: pack(a) = a, pack(a, b, c) = pair(pair(a, b), c).
FnExpr pack(std::span<const FnExpr> parts);

/// Expression extracting coordinate `index` (0-based) of an `arity`-tuple
/// packed by `pack`, applied to the input variable.
FnExpr coordinate(std::size_t arity, std::size_t index);

}  // namespace fext
