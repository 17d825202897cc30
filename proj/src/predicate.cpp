#include "fext/predicate.hpp"

#include <variant>

namespace fext {

namespace {

struct All {};
struct None {};
struct Nonzero {
    FnExpr e;
};
struct Agree {
    FnExpr a;
    FnExpr b;
};
struct Custom {
    std::function<bool(const Nat&)> test;
};
struct And {
    IndexPredicate a;
    IndexPredicate b;
};
struct Or {
    IndexPredicate a;
    IndexPredicate b;
};
struct Not {
    IndexPredicate a;
};

}  // namespace

struct IndexPredicate::Impl {
    std::variant<All, None, Nonzero, Agree, Custom, And, Or, Not> node;
    std::string text;
};

IndexPredicate IndexPredicate::all() {
    static const IndexPredicate p(std::make_shared<const Impl>(Impl{All{}, "{n : true}"}));
    return p;
}

IndexPredicate IndexPredicate::none() {
    static const IndexPredicate p(std::make_shared<const Impl>(Impl{None{}, "{n : false}"}));
    return p;
}

IndexPredicate IndexPredicate::nonzero(const FnExpr& e) {
    return IndexPredicate(std::make_shared<const Impl>(Impl{Nonzero{e}, "{n : " + e.to_string("n") + " != 0}"}));
}

IndexPredicate IndexPredicate::agreement(const FnExpr& a, const FnExpr& b) {
    std::string ta = a.to_string("n");
    std::string tb = b.to_string("n");
    if (tb < ta) return agreement(b, a);
    return IndexPredicate(std::make_shared<const Impl>(Impl{Agree{a, b}, "{n : " + ta + " = " + tb + "}"}));
}

IndexPredicate IndexPredicate::custom(std::string text, std::function<bool(const Nat&)> test) {
    return IndexPredicate(std::make_shared<const Impl>(Impl{Custom{std::move(test)}, std::move(text)}));
}

bool IndexPredicate::contains(const Nat& n) const {
    struct Visitor {
        const Nat& n;
        bool operator()(const All&) const { return true; }
        bool operator()(const None&) const { return false; }
        bool operator()(const Nonzero& p) const { return !p.e.eval(n).is_zero(); }
        bool operator()(const Agree& p) const { return p.a.eval(n) == p.b.eval(n); }
        bool operator()(const Custom& p) const { return p.test(n); }
        bool operator()(const And& p) const { return p.a.contains(n) && p.b.contains(n); }
        bool operator()(const Or& p) const { return p.a.contains(n) || p.b.contains(n); }
        bool operator()(const Not& p) const { return !p.a.contains(n); }
    };
    return std::visit(Visitor{n}, impl_->node);
}

const std::string& IndexPredicate::text() const noexcept { return impl_->text; }

IndexPredicate operator&(const IndexPredicate& a, const IndexPredicate& b) {
    return IndexPredicate(std::make_shared<const IndexPredicate::Impl>(
        IndexPredicate::Impl{And{a, b}, "(" + a.text() + " & " + b.text() + ")"}));
}

IndexPredicate operator|(const IndexPredicate& a, const IndexPredicate& b) {
    return IndexPredicate(std::make_shared<const IndexPredicate::Impl>(
        IndexPredicate::Impl{Or{a, b}, "(" + a.text() + " | " + b.text() + ")"}));
}

IndexPredicate operator!(const IndexPredicate& a) {
    return IndexPredicate(
        std::make_shared<const IndexPredicate::Impl>(IndexPredicate::Impl{Not{a}, "!" + a.text()}));
}

}  // namespace fext
