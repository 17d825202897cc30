#include "fext/expr.hpp"

#include <cmath>
#include <stdexcept>

#include "fext/pairing.hpp"

namespace fext {

struct FnExpr::Node {
    Op op;
    Nat value;
    std::vector<FnExpr> kids;
    std::size_t occurrences;
    std::size_t size;
};

namespace {

const Nat kZero{};

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Monus: return 1;
        case Op::Mul:
        case Op::Div:
        case Op::Mod: return 2;
        default: return 3;
    }
}

}  // namespace

FnExpr FnExpr::make(Op op, Nat value, std::vector<FnExpr> kids) {
    std::size_t occ = 0;
    std::size_t size = 1;
    if (op == Op::Var) occ = 1;
    if (op == Op::Compose) {
        // the outer function's variable is bound to the inner result
        occ = kids[1].occurrences();
    } else {
        for (const auto& k : kids) occ += k.occurrences();
    }
    for (const auto& k : kids) size += k.size();
    return FnExpr(std::make_shared<const Node>(Node{op, std::move(value), std::move(kids), occ, size}));
}

FnExpr::FnExpr() : FnExpr(var()) {}

FnExpr FnExpr::constant(Nat k) { return make(Op::Const, std::move(k), {}); }

FnExpr FnExpr::var() {
    static const FnExpr identity(std::make_shared<const Node>(Node{Op::Var, Nat{}, {}, 1, 1}));
    return identity;
}

FnExpr FnExpr::succ(FnExpr e) { return make(Op::Succ, {}, {std::move(e)}); }
FnExpr FnExpr::pred(FnExpr e) { return make(Op::Pred, {}, {std::move(e)}); }
FnExpr FnExpr::add(FnExpr a, FnExpr b) { return make(Op::Add, {}, {std::move(a), std::move(b)}); }
FnExpr FnExpr::mul(FnExpr a, FnExpr b) { return make(Op::Mul, {}, {std::move(a), std::move(b)}); }
FnExpr FnExpr::monus(FnExpr a, FnExpr b) { return make(Op::Monus, {}, {std::move(a), std::move(b)}); }

FnExpr FnExpr::div(FnExpr a, Nat k) {
    if (k.is_zero()) throw std::invalid_argument("division by constant 0");
    return make(Op::Div, std::move(k), {std::move(a)});
}

FnExpr FnExpr::mod(FnExpr a, Nat k) {
    if (k.is_zero()) throw std::invalid_argument("modulus by constant 0");
    return make(Op::Mod, std::move(k), {std::move(a)});
}

FnExpr FnExpr::ifeq(FnExpr a, FnExpr b, FnExpr then_e, FnExpr else_e) {
    return make(Op::IfEq, {}, {std::move(a), std::move(b), std::move(then_e), std::move(else_e)});
}

FnExpr FnExpr::pair(FnExpr a, FnExpr b) { return make(Op::Pair, {}, {std::move(a), std::move(b)}); }
FnExpr FnExpr::p1(FnExpr e) { return make(Op::P1, {}, {std::move(e)}); }
FnExpr FnExpr::p2(FnExpr e) { return make(Op::P2, {}, {std::move(e)}); }

FnExpr FnExpr::compose_node(FnExpr outer, FnExpr inner) {
    return make(Op::Compose, {}, {std::move(outer), std::move(inner)});
}

Op FnExpr::op() const noexcept { return node_->op; }
const Nat& FnExpr::value() const noexcept { return node_->value; }
std::size_t FnExpr::child_count() const noexcept { return node_->kids.size(); }
const FnExpr& FnExpr::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t FnExpr::occurrences() const noexcept { return node_->occurrences; }
std::size_t FnExpr::size() const noexcept { return node_->size; }

namespace {

using Word = unsigned __int128;

Word isqrt_word(Word v) {
    auto r = static_cast<Word>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Evaluation in 128-bit words; false when some intermediate value does not fit.
bool eval_word(const FnExpr& e, Word x, Word& out) {
    Word a = 0;
    Word b = 0;
    switch (e.op()) {
        case Op::Const: {
            auto v = e.value().to_u128();
            if (!v) return false;
            out = *v;
            return true;
        }
        case Op::Var: out = x; return true;
        case Op::Succ:
            if (!eval_word(e.child(0), x, a)) return false;
            return !__builtin_add_overflow(a, Word{1}, &out);
        case Op::Pred:
            if (!eval_word(e.child(0), x, a)) return false;
            out = a == 0 ? 0 : a - 1;
            return true;
        case Op::Add:
            if (!eval_word(e.child(0), x, a) || !eval_word(e.child(1), x, b)) return false;
            return !__builtin_add_overflow(a, b, &out);
        case Op::Mul:
            if (!eval_word(e.child(0), x, a)) return false;
            if (a == 0) {
                out = 0;
                return true;
            }
            if (!eval_word(e.child(1), x, b)) return false;
            return !__builtin_mul_overflow(a, b, &out);
        case Op::Monus:
            if (!eval_word(e.child(0), x, a) || !eval_word(e.child(1), x, b)) return false;
            out = a > b ? a - b : 0;
            return true;
        case Op::Div:
        case Op::Mod: {
            if (!eval_word(e.child(0), x, a)) return false;
            auto k = e.value().to_u128();
            if (!k) {
                out = e.op() == Op::Div ? 0 : a;  // the divisor exceeds a
                return true;
            }
            out = e.op() == Op::Div ? a / *k : a % *k;
            return true;
        }
        case Op::IfEq:
            if (!eval_word(e.child(0), x, a) || !eval_word(e.child(1), x, b)) return false;
            return eval_word(e.child(a == b ? 2 : 3), x, out);
        case Op::Pair: {
            if (!eval_word(e.child(0), x, a) || !eval_word(e.child(1), x, b)) return false;
            Word s = 0;
            Word t = 0;
            if (__builtin_add_overflow(a, b, &s) || s + 1 == 0) return false;
            // s * (s + 1) / 2 without overflowing the product
            Word h = s % 2 == 0 ? s / 2 : (s + 1) / 2;
            Word o = s % 2 == 0 ? s + 1 : s;
            if (__builtin_mul_overflow(h, o, &t)) return false;
            return !__builtin_add_overflow(t, b, &out);
        }
        case Op::P1:
        case Op::P2: {
            if (!eval_word(e.child(0), x, a)) return false;
            if (a >> 124) return false;
            Word w = (isqrt_word(8 * a + 1) - 1) / 2;
            Word y = a - w * (w + 1) / 2;
            out = e.op() == Op::P1 ? w - y : y;
            return true;
        }
        case Op::Compose:
            if (!eval_word(e.child(1), x, a)) return false;
            return eval_word(e.child(0), a, out);
    }
    return false;
}

}  // namespace

Nat FnExpr::eval(const Nat& x) const {
    if (auto small = x.to_u128()) {
        Word out = 0;
        if (eval_word(*this, *small, out)) return Nat::from_u128(out);
    }
    return eval_exact(x);
}

Nat FnExpr::eval_exact(const Nat& x) const {
    const Node& n = *node_;
    const auto& k = n.kids;
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return x;
        case Op::Succ: return k[0].eval_exact(x) + Nat(1);
        case Op::Pred: return fext::monus(k[0].eval_exact(x), Nat(1));
        case Op::Add: return k[0].eval_exact(x) + k[1].eval_exact(x);
        case Op::Mul: {
            Nat a = k[0].eval_exact(x);
            if (a.is_zero()) return a;
            return a * k[1].eval_exact(x);
        }
        case Op::Monus: return fext::monus(k[0].eval_exact(x), k[1].eval_exact(x));
        case Op::Div: return fext::div(k[0].eval_exact(x), n.value);
        case Op::Mod: return fext::mod(k[0].eval_exact(x), n.value);
        case Op::IfEq: return k[0].eval_exact(x) == k[1].eval_exact(x) ? k[2].eval_exact(x) : k[3].eval_exact(x);
        case Op::Pair: return fext::pair(k[0].eval_exact(x), k[1].eval_exact(x));
        case Op::P1: return proj1(k[0].eval_exact(x));
        case Op::P2: return proj2(k[0].eval_exact(x));
        case Op::Compose: return k[0].eval_exact(k[1].eval_exact(x));
    }
    return kZero;
}

namespace {

void print(const FnExpr& e, std::string_view var, std::string& out);

void print_at(const FnExpr& e, int min_prec, std::string_view var, std::string& out) {
    if (precedence(e.op()) < min_prec) {
        out += '(';
        print(e, var, out);
        out += ')';
    } else {
        print(e, var, out);
    }
}

void print_call(std::string_view name, const FnExpr& e, std::string_view var, std::string& out) {
    out += name;
    out += '(';
    for (std::size_t i = 0; i < e.child_count(); ++i) {
        if (i) out += ", ";
        print(e.child(i), var, out);
    }
    out += ')';
}

void print(const FnExpr& e, std::string_view var, std::string& out) {
    switch (e.op()) {
        case Op::Const: out += e.value().to_string(); return;
        case Op::Var: out += var; return;
        case Op::Add:
        case Op::Monus:
        case Op::Mul: {
            int p = precedence(e.op());
            print_at(e.child(0), p, var, out);
            out += e.op() == Op::Add ? " + " : e.op() == Op::Monus ? " - " : " * ";
            print_at(e.child(1), p + 1, var, out);
            return;
        }
        case Op::Div:
        case Op::Mod:
            print_at(e.child(0), 2, var, out);
            out += e.op() == Op::Div ? " div " : " mod ";
            out += e.value().to_string();
            return;
        case Op::Succ: print_call("succ", e, var, out); return;
        case Op::Pred: print_call("pred", e, var, out); return;
        case Op::IfEq: print_call("ifeq", e, var, out); return;
        case Op::Pair: print_call("pair", e, var, out); return;
        case Op::P1: print_call("p1", e, var, out); return;
        case Op::P2: print_call("p2", e, var, out); return;
        case Op::Compose: print_call("comp", e, var, out); return;
    }
}

}  // namespace

std::string FnExpr::to_string(std::string_view var_name) const {
    std::string out;
    print(*this, var_name, out);
    return out;
}

bool operator==(const FnExpr& a, const FnExpr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.op != y.op || x.value != y.value || x.size != y.size || x.kids.size() != y.kids.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.kids.size(); ++i) {
        if (!(x.kids[i] == y.kids[i])) return false;
    }
    return true;
}

FnExpr substitute(const FnExpr& e, const FnExpr& replacement) {
    if (e.occurrences() == 0) return e;
    switch (e.op()) {
        case Op::Var: return replacement;
        case Op::Compose:
            return FnExpr::compose_node(e.child(0), substitute(e.child(1), replacement));
        case Op::Succ: return FnExpr::succ(substitute(e.child(0), replacement));
        case Op::Pred: return FnExpr::pred(substitute(e.child(0), replacement));
        case Op::P1: return FnExpr::p1(substitute(e.child(0), replacement));
        case Op::P2: return FnExpr::p2(substitute(e.child(0), replacement));
        case Op::Div: return FnExpr::div(substitute(e.child(0), replacement), e.value());
        case Op::Mod: return FnExpr::mod(substitute(e.child(0), replacement), e.value());
        case Op::Add:
            return FnExpr::add(substitute(e.child(0), replacement), substitute(e.child(1), replacement));
        case Op::Mul:
            return FnExpr::mul(substitute(e.child(0), replacement), substitute(e.child(1), replacement));
        case Op::Monus:
            return FnExpr::monus(substitute(e.child(0), replacement), substitute(e.child(1), replacement));
        case Op::Pair:
            return FnExpr::pair(substitute(e.child(0), replacement), substitute(e.child(1), replacement));
        case Op::IfEq:
            return FnExpr::ifeq(substitute(e.child(0), replacement), substitute(e.child(1), replacement),
                                substitute(e.child(2), replacement), substitute(e.child(3), replacement));
        case Op::Const: return e;
    }
    return e;
}

FnExpr compose(const FnExpr& outer, const FnExpr& inner) {
    if (inner.is_identity()) return outer;
    if (outer.is_identity()) return inner;
    if (outer.occurrences() == 0) return outer;
    if (outer.occurrences() == 1 || inner.child_count() == 0) return substitute(outer, inner);
    return FnExpr::compose_node(outer, inner);
}

FnExpr diagonal_indicator(const FnExpr& f, const FnExpr& g) {
    return FnExpr::ifeq(f, g, FnExpr::constant(1), FnExpr::constant(0));
}

FnExpr pack(std::span<const FnExpr> parts) {
    if (parts.empty()) throw std::invalid_argument("pack of an empty tuple");
    FnExpr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = FnExpr::pair(acc, parts[i]);
    return acc;
}

FnExpr coordinate(std::size_t arity, std::size_t index) {
    if (arity == 0 || index >= arity) throw std::invalid_argument("coordinate out of range");
    // pair(pair(c0, c1), c2): coordinate i sits under (arity - 1 - i) p1's,
    // then one p2 unless it is the innermost-left coordinate 0.
    FnExpr e = FnExpr::var();
    for (std::size_t k = 0; k + 1 + index < arity; ++k) e = FnExpr::p1(e);
    if (index > 0) e = FnExpr::p2(e);
    return e;
}

}  // namespace fext
