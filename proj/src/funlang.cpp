#include "fext/funlang.hpp"

#include <algorithm>
#include <array>

#include "fext/errors.hpp"
#include "fext/lexer.hpp"

namespace fext {

void Registry::add(NaryFn fn) {
    for (auto& d : defs_) {
        if (d.name == fn.name) {
            d = std::move(fn);
            return;
        }
    }
    defs_.push_back(std::move(fn));
}

const NaryFn* Registry::find(std::string_view name) const {
    for (const auto& d : defs_) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

bool is_reserved_word(std::string_view word) {
    static constexpr std::array<std::string_view, 17> kWords = {
        "ifeq", "pair", "p1", "p2", "succ", "pred", "comp", "mod", "div",
        "def", "def2", "def3", "forall", "exists", "closed", "point", "star"};
    return std::find(kWords.begin(), kWords.end(), word) != kWords.end();
}

namespace {

class ExprParser {
public:
    ExprParser(TokenStream& ts, const ParseOptions& opts) : ts_(ts), opts_(opts) {}

    FnExpr expr() {
        FnExpr lhs = mterm();
        for (;;) {
            if (ts_.accept("+")) {
                lhs = FnExpr::add(lhs, mterm());
            } else if (ts_.accept("-")) {
                lhs = FnExpr::monus(lhs, mterm());
            } else {
                return lhs;
            }
        }
    }

private:
    FnExpr mterm() {
        FnExpr lhs = atom();
        for (;;) {
            if (ts_.accept("*")) {
                lhs = FnExpr::mul(lhs, atom());
            } else if (ts_.peek().is("mod") || ts_.peek().is("div")) {
                bool is_mod = ts_.next().text == "mod";
                const Token& at = ts_.peek();
                Nat k = ts_.expect_number();
                if (k.is_zero()) {
                    ts_.fail_at(at, std::string(is_mod ? "modulus" : "division") + " by constant 0 is not total");
                }
                lhs = is_mod ? FnExpr::mod(lhs, k) : FnExpr::div(lhs, k);
            } else {
                return lhs;
            }
        }
    }

    std::vector<FnExpr> args(std::size_t n) {
        ts_.expect("(");
        std::vector<FnExpr> out;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) ts_.expect(",");
            out.push_back(expr());
        }
        ts_.expect(")");
        return out;
    }

    FnExpr atom() {
        const Token& t = ts_.peek();
        if (t.kind == Token::Kind::Number) return FnExpr::constant(ts_.expect_number());
        if (ts_.accept("(")) {
            FnExpr e = expr();
            ts_.expect(")");
            return e;
        }
        if (t.kind != Token::Kind::Ident) ts_.fail("expected expression");

        std::string word = t.text;
        for (const auto& [name, bound] : opts_.variables) {
            if (name == word) {
                ts_.next();
                return bound;
            }
        }
        if (word == "ifeq" || word == "pair" || word == "p1" || word == "p2" || word == "succ" ||
            word == "pred" || word == "comp") {
            ts_.next();
            if (word == "ifeq") {
                auto a = args(4);
                return FnExpr::ifeq(a[0], a[1], a[2], a[3]);
            }
            if (word == "pair") {
                auto a = args(2);
                return FnExpr::pair(a[0], a[1]);
            }
            if (word == "comp") {
                auto a = args(2);
                return FnExpr::compose_node(a[0], a[1]);
            }
            auto a = args(1);
            if (word == "p1") return FnExpr::p1(a[0]);
            if (word == "p2") return FnExpr::p2(a[0]);
            if (word == "succ") return FnExpr::succ(a[0]);
            return FnExpr::pred(a[0]);
        }
        if (is_reserved_word(word)) ts_.fail("unexpected keyword");

        const NaryFn* fn = opts_.registry ? opts_.registry->find(word) : nullptr;
        if (!fn) ts_.fail("unknown name");
        Token at = ts_.next();
        if (!ts_.peek().is("(")) ts_.fail_at(at, "function '" + word + "' must be applied");
        auto a = args(fn->arity);
        return compose(fn->body, pack(a));
    }

    TokenStream& ts_;
    const ParseOptions& opts_;
};

}  // namespace

FnExpr parse_fn(std::string_view source, const ParseOptions& opts) {
    TokenStream ts(tokenize(source));
    ExprParser p(ts, opts);
    FnExpr e = p.expr();
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    return e;
}

VariableBindings nary_variables(std::size_t arity) {
    VariableBindings vars;
    if (arity == 1) {
        vars.emplace_back("x", FnExpr::var());
        return vars;
    }
    static constexpr std::array<std::string_view, 3> kNames = {"x", "y", "z"};
    for (std::size_t i = 0; i < arity; ++i) {
        std::string name = arity <= 3 ? std::string(kNames[i]) : "x" + std::to_string(i + 1);
        vars.emplace_back(std::move(name), coordinate(arity, i));
    }
    return vars;
}

NaryFn parse_definition(std::string_view source, const Registry* registry, std::size_t line) {
    TokenStream ts(tokenize(source, line));
    std::size_t arity = 0;
    if (ts.accept("def")) {
        arity = 1;
    } else if (ts.accept("def2")) {
        arity = 2;
    } else if (ts.accept("def3")) {
        arity = 3;
    } else {
        ts.fail("expected 'def', 'def2' or 'def3'");
    }
    const Token& name_tok = ts.peek();
    std::string name = ts.expect_ident();
    if (is_reserved_word(name)) ts.fail_at(name_tok, "reserved word used as a name");
    ts.expect("=");

    ParseOptions opts;
    opts.registry = registry;
    opts.variables = nary_variables(arity);
    ExprParser p(ts, opts);
    FnExpr body = p.expr();
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    return NaryFn{std::move(name), arity, std::move(body)};
}

std::string to_string(const NaryFn& fn) {
    std::string kw = fn.arity == 1 ? "def" : "def" + std::to_string(fn.arity);
    return kw + " " + fn.name + " = " + fn.body.to_string();
}

}  // namespace fext
