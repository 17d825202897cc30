#include "fext/transfer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "fext/errors.hpp"
#include "fext/lexer.hpp"
#include "fext/pairing.hpp"

namespace fext {

using TK = TermNode::Kind;
using FK = FormulaNode::Kind;

Term make_var(std::string name) {
    auto t = std::make_shared<TermNode>();
    t->kind = TK::variable;
    t->name = std::move(name);
    return t;
}

Term make_const(Nat v) {
    auto t = std::make_shared<TermNode>();
    t->kind = TK::constant;
    t->value = std::move(v);
    return t;
}

Term make_op(TK kind, Term a, Term b) {
    auto t = std::make_shared<TermNode>();
    t->kind = kind;
    if (kind == TK::div || kind == TK::mod) {
        if (!b || b->kind != TK::constant || b->value.is_zero()) {
            throw std::invalid_argument("mod and div need a nonzero constant divisor");
        }
        t->value = b->value;
        t->args = {std::move(a)};
    } else {
        t->args = {std::move(a), std::move(b)};
    }
    return t;
}

Term make_apply(const NaryFn& fn, std::vector<Term> args) {
    if (args.size() != fn.arity) {
        throw std::invalid_argument(fn.name + " takes " + std::to_string(fn.arity) + " arguments");
    }
    auto t = std::make_shared<TermNode>();
    t->kind = TK::apply;
    t->name = fn.name;
    t->body = fn.body;
    t->args = std::move(args);
    return t;
}

Formula make_atom(FK kind, Term a, Term b) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = kind;
    f->terms = {std::move(a), std::move(b)};
    return f;
}

Formula make_relation(Term application) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = FK::relation;
    f->terms = {std::move(application)};
    return f;
}

Formula make_not(Formula g) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = FK::negation;
    f->parts = {std::move(g)};
    return f;
}

Formula make_binary(FK kind, Formula a, Formula b) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = kind;
    f->parts = {std::move(a), std::move(b)};
    return f;
}

Formula make_quantifier(FK kind, std::string var, Term bound, Formula body) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = kind;
    f->var = std::move(var);
    f->terms = {std::move(bound)};
    f->parts = {std::move(body)};
    return f;
}

namespace {

Formula constant_formula(bool v) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = v ? FK::truth : FK::falsity;
    return f;
}

bool is_formula_word(std::string_view w) { return w == "forall" || w == "exists" || w == "true" || w == "false"; }

class Parser {
public:
    Parser(TokenStream& ts, const Registry* reg) : ts_(ts), reg_(reg) {}

    Formula formula() {
        Formula lhs = disjunction();
        if (ts_.accept("->")) return make_binary(FK::implication, lhs, formula());
        return lhs;
    }

    Term term() {
        Term lhs = mterm();
        for (;;) {
            if (ts_.accept("+")) {
                lhs = make_op(TK::add, lhs, mterm());
            } else if (ts_.accept("-")) {
                lhs = make_op(TK::monus, lhs, mterm());
            } else {
                return lhs;
            }
        }
    }

private:
    Formula disjunction() {
        Formula lhs = conjunction();
        while (ts_.accept("|")) lhs = make_binary(FK::disjunction, lhs, conjunction());
        return lhs;
    }

    Formula conjunction() {
        Formula lhs = unary();
        while (ts_.accept("&")) lhs = make_binary(FK::conjunction, lhs, unary());
        return lhs;
    }

    Formula unary() {
        if (ts_.accept("!")) return make_not(unary());
        const Token& t = ts_.peek();
        if (t.is("forall") || t.is("exists")) {
            FK kind = t.is("forall") ? FK::forall : FK::exists;
            ts_.next();
            const Token& v = ts_.peek();
            std::string var = ts_.expect_ident();
            if (is_reserved_word(var) || is_formula_word(var) || (reg_ && reg_->find(var))) {
                ts_.fail_at(v, "'" + var + "' cannot be a bound variable");
            }
            ts_.expect("<");
            Term bound = term();
            ts_.expect(".");
            return make_quantifier(kind, var, bound, formula());
        }
        if (ts_.accept("true")) return constant_formula(true);
        if (ts_.accept("false")) return constant_formula(false);
        if (t.is("(")) {
            // either a parenthesised formula or an atom whose left term starts with '('
            std::size_t start = ts_.position();
            try {
                return atom();
            } catch (const SyntaxError&) {
                ts_.rewind(start);
            }
            ts_.expect("(");
            Formula inner = formula();
            ts_.expect(")");
            return inner;
        }
        return atom();
    }

    Formula atom() {
        const Token& start = ts_.peek();
        Term lhs = term();
        if (ts_.accept("=")) return make_atom(FK::equal, lhs, term());
        if (ts_.accept("<")) return make_atom(FK::less, lhs, term());
        if (lhs->kind == TK::apply) return make_relation(lhs);
        ts_.fail_at(start, "expected '=' or '<' after term");
    }

    Term mterm() {
        Term lhs = primary();
        for (;;) {
            if (ts_.accept("*")) {
                lhs = make_op(TK::mul, lhs, primary());
            } else if (ts_.peek().is("mod") || ts_.peek().is("div")) {
                TK kind = ts_.next().is("mod") ? TK::mod : TK::div;
                const Token& k = ts_.peek();
                Nat d = ts_.expect_number();
                if (d.is_zero()) ts_.fail_at(k, "divisor must be nonzero");
                lhs = make_op(kind, lhs, make_const(d));
            } else {
                return lhs;
            }
        }
    }

    Term primary() {
        const Token& t = ts_.peek();
        if (t.kind == Token::Kind::Number) return make_const(ts_.expect_number());
        if (ts_.accept("(")) {
            Term inner = term();
            ts_.expect(")");
            return inner;
        }
        if (t.kind != Token::Kind::Ident) ts_.fail("expected term");
        if (is_formula_word(t.text) || is_reserved_word(t.text)) ts_.fail("unexpected '" + t.text + "'");
        std::string name = ts_.next().text;
        if (!ts_.peek().is("(")) return make_var(name);
        const NaryFn* fn = reg_ ? reg_->find(name) : nullptr;
        if (!fn) ts_.fail_at(t, "unknown function '" + name + "'");
        ts_.expect("(");
        std::vector<Term> args{term()};
        while (ts_.accept(",")) args.push_back(term());
        if (args.size() != fn->arity) {
            ts_.fail_at(t, name + " takes " + std::to_string(fn->arity) + " arguments, got " + std::to_string(args.size()));
        }
        ts_.expect(")");
        return make_apply(*fn, std::move(args));
    }

    TokenStream& ts_;
    const Registry* reg_;
};

int level(const Term& t) {
    switch (t->kind) {
        case TK::add:
        case TK::monus: return 1;
        case TK::mul:
        case TK::div:
        case TK::mod: return 2;
        default: return 3;
    }
}

std::string wrap(const Term& t, int min_level) {
    std::string s = to_string(t);
    return level(t) < min_level ? "(" + s + ")" : s;
}

}  // namespace

Formula parse_formula(std::string_view source, const Registry* registry, std::size_t line) {
    TokenStream ts(tokenize(source, line));
    Parser p(ts, registry);
    Formula f = p.formula();
    if (!ts.at_end()) ts.fail("unexpected '" + ts.peek().text + "'");
    return f;
}

std::string to_string(const Term& t) {
    switch (t->kind) {
        case TK::variable: return t->name;
        case TK::constant: return t->value.to_string();
        case TK::add: return wrap(t->args[0], 1) + " + " + wrap(t->args[1], 2);
        case TK::monus: return wrap(t->args[0], 1) + " - " + wrap(t->args[1], 2);
        case TK::mul: return wrap(t->args[0], 2) + " * " + wrap(t->args[1], 3);
        case TK::div: return wrap(t->args[0], 2) + " div " + t->value.to_string();
        case TK::mod: return wrap(t->args[0], 2) + " mod " + t->value.to_string();
        case TK::apply: {
            std::string s = t->name + "(";
            for (std::size_t i = 0; i < t->args.size(); ++i) s += (i ? ", " : "") + to_string(t->args[i]);
            return s + ")";
        }
    }
    return "?";
}

std::string to_string(const Formula& f) {
    switch (f->kind) {
        case FK::truth: return "true";
        case FK::falsity: return "false";
        case FK::equal: return to_string(f->terms[0]) + " = " + to_string(f->terms[1]);
        case FK::less: return to_string(f->terms[0]) + " < " + to_string(f->terms[1]);
        case FK::relation: return to_string(f->terms[0]);
        case FK::negation: {
            const auto& g = f->parts[0];
            bool bare = g->kind == FK::truth || g->kind == FK::falsity || g->kind == FK::relation ||
                        g->kind == FK::negation;
            return "!" + (bare ? to_string(g) : "(" + to_string(g) + ")");
        }
        case FK::conjunction: return "(" + to_string(f->parts[0]) + " & " + to_string(f->parts[1]) + ")";
        case FK::disjunction: return "(" + to_string(f->parts[0]) + " | " + to_string(f->parts[1]) + ")";
        case FK::implication: return "(" + to_string(f->parts[0]) + " -> " + to_string(f->parts[1]) + ")";
        case FK::forall:
        case FK::exists:
            return std::string("(") + (f->kind == FK::forall ? "forall " : "exists ") + f->var + " < " +
                   to_string(f->terms[0]) + " . " + to_string(f->parts[0]) + ")";
    }
    return "?";
}

namespace {

void collect(const Term& t, const std::set<std::string>& bound, std::set<std::string>& out) {
    if (t->kind == TK::variable && !bound.contains(t->name)) out.insert(t->name);
    for (const auto& a : t->args) collect(a, bound, out);
}

void collect(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
    for (const auto& t : f->terms) collect(t, bound, out);
    if (f->kind == FK::forall || f->kind == FK::exists) bound.insert(f->var);
    for (const auto& p : f->parts) collect(p, bound, out);
}

}  // namespace

std::vector<std::string> free_variables(const Formula& f) {
    std::set<std::string> out;
    collect(f, {}, out);
    return {out.begin(), out.end()};
}

bool has_quantifier(const Formula& f) {
    if (f->kind == FK::forall || f->kind == FK::exists) return true;
    return std::any_of(f->parts.begin(), f->parts.end(), [](const Formula& p) { return has_quantifier(p); });
}

Nat eval_term(const Term& t, const BaseEnv& env) {
    switch (t->kind) {
        case TK::variable: {
            auto it = env.find(t->name);
            if (it == env.end()) throw std::invalid_argument("unbound variable '" + t->name + "'");
            return it->second;
        }
        case TK::constant: return t->value;
        case TK::add: return eval_term(t->args[0], env) + eval_term(t->args[1], env);
        case TK::mul: return eval_term(t->args[0], env) * eval_term(t->args[1], env);
        case TK::monus: return monus(eval_term(t->args[0], env), eval_term(t->args[1], env));
        case TK::div: return div(eval_term(t->args[0], env), t->value);
        case TK::mod: return mod(eval_term(t->args[0], env), t->value);
        case TK::apply: {
            Nat packed = eval_term(t->args[0], env);
            for (std::size_t i = 1; i < t->args.size(); ++i) packed = pair(packed, eval_term(t->args[i], env));
            return t->body.eval(packed);
        }
    }
    return {};
}

bool eval_base(const Formula& f, const BaseEnv& env) {
    switch (f->kind) {
        case FK::truth: return true;
        case FK::falsity: return false;
        case FK::equal: return eval_term(f->terms[0], env) == eval_term(f->terms[1], env);
        case FK::less: return eval_term(f->terms[0], env) < eval_term(f->terms[1], env);
        case FK::relation: return truthy(eval_term(f->terms[0], env));
        case FK::negation: return !eval_base(f->parts[0], env);
        case FK::conjunction: return eval_base(f->parts[0], env) && eval_base(f->parts[1], env);
        case FK::disjunction: return eval_base(f->parts[0], env) || eval_base(f->parts[1], env);
        case FK::implication: return !eval_base(f->parts[0], env) || eval_base(f->parts[1], env);
        case FK::forall:
        case FK::exists: {
            Nat bound = eval_term(f->terms[0], env);
            if (bound > Nat(kQuantifierBudget)) {
                throw Undecidable("quantifier bound " + bound.to_string() + " exceeds the evaluation budget");
            }
            bool want = f->kind == FK::exists;
            BaseEnv inner = env;
            for (std::uint64_t y = 0, n = bound.clamp_u64(); y < n; ++y) {
                inner[f->var] = Nat(y);
                if (eval_base(f->parts[0], inner) == want) return want;
            }
            return !want;
        }
    }
    return false;
}

namespace {

FnExpr term_seq(const Term& t, const HyperEnv& env) {
    switch (t->kind) {
        case TK::variable: {
            auto it = env.find(t->name);
            if (it == env.end()) throw std::invalid_argument("unbound variable '" + t->name + "'");
            return it->second.seq;
        }
        case TK::constant: return FnExpr::constant(t->value);
        case TK::add: return FnExpr::add(term_seq(t->args[0], env), term_seq(t->args[1], env));
        case TK::mul: return FnExpr::mul(term_seq(t->args[0], env), term_seq(t->args[1], env));
        case TK::monus: return FnExpr::monus(term_seq(t->args[0], env), term_seq(t->args[1], env));
        case TK::div: return FnExpr::div(term_seq(t->args[0], env), t->value);
        case TK::mod: return FnExpr::mod(term_seq(t->args[0], env), t->value);
        case TK::apply: {
            std::vector<FnExpr> args;
            for (const auto& a : t->args) args.push_back(term_seq(a, env));
            return compose(t->body, pack(args));
        }
    }
    return {};
}

IndexPredicate quantified_set(const Formula& f, const HyperEnv& env) {
    std::vector<std::pair<std::string, FnExpr>> seqs;
    std::string text = "{n : " + to_string(f);
    const char* sep = " where ";
    for (const auto& v : free_variables(f)) {
        auto it = env.find(v);
        if (it == env.end()) throw std::invalid_argument("unbound variable '" + v + "'");
        seqs.emplace_back(v, it->second.seq);
        text += sep + v + " = " + it->second.text();
        sep = ", ";
    }
    text += "}";
    return IndexPredicate::custom(std::move(text), [f, seqs](const Nat& m) {
        BaseEnv at;
        for (const auto& [v, s] : seqs) at[v] = s.eval(m);
        return eval_base(f, at);
    });
}

}  // namespace

IndexPredicate truth_set(const Formula& f, const HyperEnv& env) {
    switch (f->kind) {
        case FK::truth: return IndexPredicate::all();
        case FK::falsity: return IndexPredicate::none();
        case FK::equal: return IndexPredicate::agreement(term_seq(f->terms[0], env), term_seq(f->terms[1], env));
        case FK::less:
            return IndexPredicate::nonzero(FnExpr::monus(term_seq(f->terms[1], env), term_seq(f->terms[0], env)));
        case FK::relation: return IndexPredicate::nonzero(term_seq(f->terms[0], env));
        case FK::negation: return !truth_set(f->parts[0], env);
        case FK::conjunction: return truth_set(f->parts[0], env) & truth_set(f->parts[1], env);
        case FK::disjunction: return truth_set(f->parts[0], env) | truth_set(f->parts[1], env);
        case FK::implication: return (!truth_set(f->parts[0], env)) | truth_set(f->parts[1], env);
        case FK::forall:
        case FK::exists: return quantified_set(f, env);
    }
    return IndexPredicate::none();
}

bool eval_hyper(const Model& m, const Formula& f, const HyperEnv& env) {
    return m.oracle().accepts(truth_set(f, env));
}

CheckOutcome transfer_check(const Model& m, const Formula& f, const BaseEnv& env) {
    return detail::guarded([&] {
        HyperEnv hyper;
        for (const auto& [v, x] : env) hyper.emplace(v, Model::standard(x));
        bool base = eval_base(f, env);
        bool star = eval_hyper(m, f, hyper);
        std::string w = std::string("base=") + (base ? "true" : "false") + " hyper=" + (star ? "true" : "false");
        return base == star ? CheckOutcome::ok(w) : CheckOutcome::bad(to_string(f) + ": " + w);
    });
}

namespace {

struct FormulaGen {
    Rng& rng;
    const RandomFormulaOptions& opts;
    std::vector<const NaryFn*> fns;

    Term term(const std::vector<std::string>& vars, int depth) {
        std::uint64_t pick = uniform(rng, depth <= 0 ? 2 : 6);
        if (pick == 0 || vars.empty()) return make_const(Nat(uniform(rng, opts.max_constant + 1)));
        if (pick == 1) return make_var(vars[uniform(rng, vars.size())]);
        switch (pick) {
            case 2: return make_op(TK::add, term(vars, depth - 1), term(vars, depth - 1));
            case 3: return make_op(TK::mul, term(vars, depth - 1), term(vars, depth - 1));
            case 4:
                if (uniform(rng, 2) == 0) return make_op(TK::monus, term(vars, depth - 1), term(vars, depth - 1));
                return make_op(TK::mod, term(vars, depth - 1), make_const(Nat(2 + uniform(rng, 4))));
            default: {
                if (fns.empty()) return make_op(TK::add, term(vars, depth - 1), make_const(Nat(1)));
                const NaryFn* fn = fns[uniform(rng, fns.size())];
                std::vector<Term> args;
                for (std::size_t i = 0; i < fn->arity; ++i) args.push_back(term(vars, depth - 1));
                return make_apply(*fn, std::move(args));
            }
        }
    }

    Formula atom(const std::vector<std::string>& vars) {
        switch (uniform(rng, fns.empty() ? 2 : 3)) {
            case 0: return make_atom(FK::equal, term(vars, opts.max_depth), term(vars, opts.max_depth));
            case 1: return make_atom(FK::less, term(vars, opts.max_depth), term(vars, opts.max_depth));
            default: {
                const NaryFn* fn = fns[uniform(rng, fns.size())];
                std::vector<Term> args;
                for (std::size_t i = 0; i < fn->arity; ++i) args.push_back(term(vars, opts.max_depth - 1));
                return make_relation(make_apply(*fn, std::move(args)));
            }
        }
    }

    Formula formula(std::vector<std::string> vars, int depth, int& fresh) {
        if (depth <= 0) return atom(vars);
        switch (uniform(rng, opts.allow_quantifiers ? 7 : 5)) {
            case 0: return atom(vars);
            case 1: return make_not(formula(vars, depth - 1, fresh));
            case 2: return make_binary(FK::conjunction, formula(vars, depth - 1, fresh), formula(vars, depth - 1, fresh));
            case 3: return make_binary(FK::disjunction, formula(vars, depth - 1, fresh), formula(vars, depth - 1, fresh));
            case 4: return make_binary(FK::implication, formula(vars, depth - 1, fresh), formula(vars, depth - 1, fresh));
            default: {
                // bounds stay small: a constant, or a variable plus a constant
                Term bound = make_const(Nat(uniform(rng, opts.max_constant + 1)));
                if (!vars.empty() && coin(rng)) {
                    bound = make_op(TK::add, make_var(vars[uniform(rng, vars.size())]), bound);
                }
                std::string v = "q" + std::to_string(fresh++);
                FK kind = coin(rng) ? FK::forall : FK::exists;
                vars.push_back(v);
                return make_quantifier(kind, v, bound, formula(vars, depth - 1, fresh));
            }
        }
    }
};

}  // namespace

Formula random_formula(Rng& rng, const std::vector<std::string>& vars, const Registry* registry,
                       const RandomFormulaOptions& opts) {
    FormulaGen gen{rng, opts, {}};
    if (registry) {
        for (const auto& fn : registry->all()) {
            if (fn.arity >= 1 && fn.arity <= 3) gen.fns.push_back(&fn);
        }
    }
    int fresh = 1;
    return gen.formula(vars, opts.max_depth, fresh);
}

}  // namespace fext
