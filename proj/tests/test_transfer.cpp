#include <doctest.h>

#include "fext/errors.hpp"
#include "fext/transfer.hpp"

using namespace fext;

namespace {

Registry sample_registry() {
    Registry r;
    r.add(parse_definition("def f = x * x + 1"));
    r.add(parse_definition("def g = 2 * x + 1"));
    r.add(parse_definition("def even = ifeq(x mod 2, 0, 1, 0)"));
    r.add(parse_definition("def2 plus = x + y"));
    r.add(parse_definition("def2 less = ifeq(y - x, 0, 0, 1)"));
    r.add(parse_definition("def3 mid = ifeq(x - y, 0, ifeq(y - z, 0, 1, 0), 0)"));
    return r;
}

bool base(std::string_view src, BaseEnv env = {}, const Registry* reg = nullptr) {
    return eval_base(parse_formula(src, reg), env);
}

}  // namespace

TEST_CASE("base evaluation") {
    CHECK(base("x + 0 = x", {{"x", Nat(7)}}));
    CHECK(base("exists y < x . y + y = x", {{"x", Nat(6)}}));
    CHECK_FALSE(base("exists y < x . y + y = x", {{"x", Nat(7)}}));
    CHECK(base("!(0 = 1)"));
    CHECK_FALSE(base("0 = 1"));
    CHECK(base("forall y < 5 . y < 5"));
    CHECK(base("forall y < 0 . false"));
    CHECK_FALSE(base("exists y < 0 . true"));
    CHECK(base("1 = 2 -> 3 = 4"));
    CHECK(base("x mod 3 = 1 & x div 3 = 2", {{"x", Nat(7)}}));

    Registry reg = sample_registry();
    CHECK(base("f(3) = 10", {}, &reg));
    CHECK(base("plus(x, 4) = 11", {{"x", Nat(7)}}, &reg));
    CHECK(base("less(2, 5) & !less(5, 2)", {}, &reg));
    CHECK(base("mid(3, 3, 3) & !mid(3, 2, 1)", {}, &reg));
    CHECK(base("exists y < 20 . f(y) = 50", {}, &reg));

    CHECK_THROWS_AS(base("y = 1"), std::invalid_argument);
    CHECK_THROWS_AS(base("forall y < 2000000 . true"), Undecidable);
}

TEST_CASE("parsing and printing") {
    Registry reg = sample_registry();
    CHECK(to_string(parse_formula("exists y<x.y+y=x")) == "(exists y < x . y + y = x)");
    CHECK(to_string(parse_formula("a = b & c = d | !e = f -> true")) == "(((a = b & c = d) | !(e = f)) -> true)");
    CHECK(to_string(parse_formula("(x + 1) * 2 = y")) == "(x + 1) * 2 = y");
    CHECK(to_string(parse_formula("((x = 1))")) == "x = 1");
    CHECK(to_string(parse_formula("even(x) -> plus(x, 1) < 9", &reg)) == "(even(x) -> plus(x, 1) < 9)");

    auto fv = free_variables(parse_formula("forall y < x + z . y = w"));
    CHECK(fv == std::vector<std::string>{"w", "x", "z"});
    CHECK(free_variables(parse_formula("exists y < 3 . y = 1")).empty());

    CHECK_THROWS_AS(parse_formula("x ="), SyntaxError);
    CHECK_THROWS_AS(parse_formula("x"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("h(x) = 1", &reg), SyntaxError);
    CHECK_THROWS_AS(parse_formula("plus(x) = 1", &reg), SyntaxError);
    CHECK_THROWS_AS(parse_formula("forall f < 3 . true", &reg), SyntaxError);
    try {
        parse_formula("x = 1 &\n  & y = 2");
        FAIL("no error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }

    Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        Formula f = random_formula(rng, {"x", "y"}, &reg);
        REQUIRE(to_string(parse_formula(to_string(f), &reg)) == to_string(f));
    }
}

TEST_CASE("hyper evaluation") {
    Oracle o;
    Model m(o);
    HyperEnv at_omega{{"x", Model::omega()}};
    Formula evens = parse_formula("exists y < x . y + y = x");
    IndexPredicate t = truth_set(evens, at_omega);
    CHECK(t.text() == "{n : (exists y < x . y + y = x) where x = [n -> n]}");
    for (std::uint64_t n = 0; n < 200; ++n) REQUIRE(t.contains(Nat(n)) == (n % 2 == 0 && n > 0));

    StarSet evens_set{parse_fn("ifeq(x mod 2, 0, 1, 0)"), "evens"};
    bool direct = m.member(Model::omega(), evens_set);
    CHECK(eval_hyper(m, evens, at_omega) == direct);
    CHECK(eval_hyper(m, parse_formula("x mod 2 = 0"), at_omega) == direct);
    CHECK(eval_hyper(m, parse_formula("!(x mod 2 = 0)"), at_omega) != direct);

    Registry reg = sample_registry();
    Hyperpoint xi{parse_fn("x * x + 3"), "xi"};
    Formula eq = parse_formula("f(x) = g(x)", &reg);
    StarSet e = Model::equalizer(reg.find("f")->body, reg.find("g")->body);
    CHECK(truth_set(eq, {{"x", xi}}).text() == Model::membership(xi, e).text());
    CHECK(eval_hyper(m, eq, {{"x", xi}}) == m.member(xi, e));

    CHECK(eval_hyper(m, parse_formula("forall y < 10 . y < x"), at_omega));
    CHECK(eval_hyper(m, parse_formula("5 < x & !(x = 9)"), at_omega));
}

TEST_CASE("transfer with standard parameters") {
    Oracle o;
    Model m(o);
    Registry reg = sample_registry();
    CHECK(transfer_check(m, parse_formula("0 = 1"), {}).verdict == Verdict::pass);
    CHECK(transfer_check(m, parse_formula("exists y < x . y + y = x"), {{"x", Nat(6)}}).verdict == Verdict::pass);
    Rng rng(42);
    int quantified = 0;
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, {"x", "y"}, &reg);
        quantified += has_quantifier(f);
        BaseEnv env{{"x", Nat(uniform(rng, 30))}, {"y", Nat(uniform(rng, 30))}};
        auto r = transfer_check(m, f, env);
        REQUIRE_MESSAGE(r.verdict == Verdict::pass, to_string(f) << " " << r.witness);
    }
    CHECK(quantified > 20);
}

TEST_CASE("connective laws on nonstandard parameters") {
    Oracle o;
    Model m(o);
    Registry reg = sample_registry();
    Rng rng(43);
    RandomFormulaOptions qf{.max_depth = 2, .allow_quantifiers = false};
    for (int i = 0; i < 200; ++i) {
        HyperEnv env{{"x", {random_fn(rng, {.max_depth = 2}), ""}}, {"y", Model::omega()}};
        Formula a = random_formula(rng, {"x", "y"}, &reg, qf);
        Formula b = random_formula(rng, {"x", "y"}, &reg, qf);
        bool va = eval_hyper(m, a, env);
        bool vb = eval_hyper(m, b, env);
        REQUIRE(eval_hyper(m, make_not(a), env) == !va);
        REQUIRE(eval_hyper(m, make_binary(FormulaNode::Kind::conjunction, a, b), env) == (va && vb));
        REQUIRE(eval_hyper(m, make_binary(FormulaNode::Kind::disjunction, a, b), env) == (va || vb));
    }
}
