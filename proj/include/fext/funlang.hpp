#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fext/expr.hpp"
#include "fext/nat.hpp"

namespace fext {

/// A total function N^arity -> N. The body reads a single input holding the
/// arguments as a left-nested pair tuple (see `pack`).
struct NaryFn {
    std::string name;
    std::size_t arity = 1;
    FnExpr body;
};

/// Named definitions, kept in declaration order.
class Registry {
public:
    /// Replaces an existing definition with the same name.
    void add(NaryFn fn);
    const NaryFn* find(std::string_view name) const;
    const std::vector<NaryFn>& all() const noexcept { return defs_; }
    bool empty() const noexcept { return defs_.empty(); }

private:
    std::vector<NaryFn> defs_;
};

/// Input variables visible to the parser, each bound to the expression it
/// stands for (e.g. `y` -> p2(x) inside a binary definition).
using VariableBindings = std::vector<std::pair<std::string, FnExpr>>;

struct ParseOptions {
    const Registry* registry = nullptr;
    VariableBindings variables = {{"x", FnExpr::var()}};
};

/// Parses the function grammar:
///
///   expr  := mterm (('+' | '-') mterm)*
///   mterm := atom ('*' atom | 'mod' NAT | 'div' NAT)*
///   atom  := NAT | VAR | '(' expr ')'
///          | 'ifeq(' expr ',' expr ',' expr ',' expr ')'
///          | 'pair(' expr ',' expr ')' | 'p1(' expr ')' | 'p2(' expr ')'
///          | 'succ(' expr ')' | 'pred(' expr ')' | 'comp(' expr ',' expr ')'
///          | NAME '(' expr (',' expr)* ')'      -- registry application
///
/// '-' is truncated subtraction. Throws SyntaxError with line and column;
/// `mod 0` and `div 0` are rejected here.
FnExpr parse_fn(std::string_view source, const ParseOptions& opts = {});

/// Variable bindings for an `arity`-ary definition body: x, y, z for
/// arities up to 3, x1..xn beyond that.
VariableBindings nary_variables(std::size_t arity);

/// Parses `def name = expr`, `def2 name = expr` or `def3 name = expr`.
NaryFn parse_definition(std::string_view source, const Registry* registry = nullptr,
                        std::size_t line = 1);

/// Canonical text of a definition. Bodies of arity > 1 are shown over the
/// packed input, so only unary definitions parse back verbatim.
std::string to_string(const NaryFn& fn);

bool is_reserved_word(std::string_view word);

/// 0 is false, anything else true.
inline bool truthy(const Nat& v) { return !v.is_zero(); }

}  // namespace fext
