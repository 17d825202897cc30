#pragma once

#include <functional>
#include <memory>
#include <string>

#include "fext/expr.hpp"
#include "fext/nat.hpp"

namespace fext {

/// A decidable subset of the index set N, as handed to the ultrafilter oracle.
///
/// Every predicate carries a canonical text that identifies the set it was
/// built from; the oracle uses that text as its query id.
class IndexPredicate {
public:
    static IndexPredicate all();
    static IndexPredicate none();
    /// {n : e(n) != 0}
    static IndexPredicate nonzero(const FnExpr& e);
    /// {n : a(n) = b(n)}. The two sides are stored in canonical order, so
    /// agreement(a, b) and agreement(b, a) have the same text.
    static IndexPredicate agreement(const FnExpr& a, const FnExpr& b);
    /// Escape hatch for sets that funlang cannot express (e.g. truth sets of
    /// formulas with bounded quantifiers). `text` must identify the set.
    static IndexPredicate custom(std::string text, std::function<bool(const Nat&)> test);

    bool contains(const Nat& n) const;
    const std::string& text() const noexcept;

    friend IndexPredicate operator&(const IndexPredicate& a, const IndexPredicate& b);
    friend IndexPredicate operator|(const IndexPredicate& a, const IndexPredicate& b);
    friend IndexPredicate operator!(const IndexPredicate& a);

private:
    struct Impl;
    explicit IndexPredicate(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace fext
