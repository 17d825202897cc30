#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fext/axioms.hpp"
#include "fext/funlang.hpp"
#include "fext/hyper.hpp"
#include "fext/random.hpp"

namespace fext {

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    enum class Kind { variable, constant, add, mul, monus, div, mod, apply };
    Kind kind = Kind::constant;
    std::string name;  // variable name, or function name for apply
    Nat value;         // constant, or divisor for div/mod
    FnExpr body;       // apply: the definition body over the packed arguments
    std::vector<Term> args;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    enum class Kind { truth, falsity, equal, less, relation, negation, conjunction, disjunction, implication, forall, exists };
    Kind kind = Kind::truth;
    /// equal/less: two sides; relation: the single application term;
    /// quantifiers: the bound.
    std::vector<Term> terms;
    std::vector<Formula> parts;
    std::string var;  // bound variable
};

Term make_var(std::string name);
Term make_const(Nat v);
Term make_op(TermNode::Kind kind, Term a, Term b);
Term make_apply(const NaryFn& fn, std::vector<Term> args);

Formula make_atom(FormulaNode::Kind kind, Term a, Term b);
Formula make_relation(Term application);
Formula make_not(Formula f);
Formula make_binary(FormulaNode::Kind kind, Formula a, Formula b);
Formula make_quantifier(FormulaNode::Kind kind, std::string var, Term bound, Formula body);

/// Formula syntax:
///
///   formula := disj ('->' formula)?
///   disj    := conj ('|' conj)*
///   conj    := unary ('&' unary)*
///   unary   := '!' unary | ('forall' | 'exists') VAR '<' term '.' formula
///            | 'true' | 'false' | '(' formula ')' | term ('=' | '<') term
///            | NAME '(' term (',' term)* ')'          -- relation: value != 0
///   term    := funlang arithmetic over variables, constants and
///              registry applications
///
/// A quantifier body extends as far right as possible.
Formula parse_formula(std::string_view source, const Registry* registry = nullptr, std::size_t line = 1);

std::string to_string(const Term& t);
/// Canonical text; parses back to an equal formula.
std::string to_string(const Formula& f);

/// Sorted, without duplicates.
std::vector<std::string> free_variables(const Formula& f);
bool has_quantifier(const Formula& f);

using BaseEnv = std::map<std::string, Nat>;
using HyperEnv = std::map<std::string, Hyperpoint>;

/// Quantifier bounds above this are refused with Undecidable.
inline constexpr std::uint64_t kQuantifierBudget = 1'000'000;

Nat eval_term(const Term& t, const BaseEnv& env);
bool eval_base(const Formula& f, const BaseEnv& env);

/// The set {m : eval_base(f, env at m)} with a canonical text. Quantifier-free
/// parts become agreement and nonzero sets joined by the Boolean
/// combinators, so "f(x) = g(x)" at xi has the same text as membership of
/// xi in the equalizer of f and g.
IndexPredicate truth_set(const Formula& f, const HyperEnv& env);
bool eval_hyper(const Model& m, const Formula& f, const HyperEnv& env);

/// eval_base against eval_hyper on the standard embedding of `env`.
CheckOutcome transfer_check(const Model& m, const Formula& f, const BaseEnv& env);

struct RandomFormulaOptions {
    int max_depth = 2;
    std::uint64_t max_constant = 12;
    bool allow_quantifiers = true;
};

/// A random formula whose free variables are drawn from `vars`. Registry
/// functions of arity 1 to 3 appear as terms and relations.
Formula random_formula(Rng& rng, const std::vector<std::string>& vars, const Registry* registry = nullptr,
                       const RandomFormulaOptions& opts = {});

}  // namespace fext
