#include <doctest.h>

#include <vector>

#include "fext/errors.hpp"
#include "fext/funlang.hpp"
#include "fext/hyper.hpp"
#include "fext/random.hpp"

using namespace fext;

namespace {

Hyperpoint point(std::string_view seq) { return {parse_fn(seq), ""}; }
StarSet set(std::string_view ind) { return {parse_fn(ind), std::string(ind)}; }

const StarSet kEvens = set("ifeq(x mod 2, 0, 1, 0)");

Hyperpoint random_point(Rng& rng) {
    switch (uniform(rng, 4)) {
        case 0: return Model::standard(uniform(rng, 1000));
        case 1: return Model::omega();
        default: return {random_fn(rng, {.max_depth = 2}), ""};
    }
}

StarSet random_set(Rng& rng) {
    FnExpr ind = random_indicator(rng, {.max_depth = 2});
    return {ind, ind.to_string()};
}

}  // namespace

TEST_CASE("standard points") {
    Oracle o;
    Model m(o);
    CHECK_FALSE(m.eq(Model::standard(0), Model::standard(1)));
    CHECK(m.eq(Model::star_apply(parse_fn("succ(x)"), Model::standard(4)), Model::standard(5)));
    CHECK(m.eq(Model::star_apply(parse_fn("7"), Model::omega()), Model::standard(7)));
    CHECK(m.eq(Model::standard(3), Model::standard(3)));
    CHECK_FALSE(m.eq(Model::standard(3), Model::standard(4)));
    CHECK(Model::standard(9).text() == "[n -> 9]");
    CHECK(Model::omega().text() == "[n -> n]");
}

TEST_CASE("eq on n mod 2 is the oracle decision on the evens") {
    Oracle o;
    Model m(o);
    auto agree = Model::agreement(point("x mod 2"), Model::standard(0));
    for (std::uint64_t n = 0; n <= o.config().horizon; ++n) REQUIRE(agree.contains(n) == (n % 2 == 0));
    bool e = m.eq(point("x mod 2"), Model::standard(0));
    CHECK(o.log().entries().back().predicate == agree.text());
    CHECK(e == m.member(Model::omega(), kEvens));
    CHECK(m.member(Model::omega(), set_complement(kEvens)) == !e);
}

TEST_CASE("star_apply: identity, composition, diagonal") {
    Oracle o;
    Model m(o);
    Hyperpoint w = Model::omega();
    CHECK(m.eq(Model::star_apply(FnExpr::var(), w), w));
    FnExpr f = parse_fn("x + 1");
    FnExpr g = parse_fn("x * 2");
    auto lhs = Model::star_apply(g, Model::star_apply(f, w));
    auto rhs = Model::star_apply(compose(g, f), w);
    for (std::uint64_t n = 0; n < 1000; ++n) REQUIRE(lhs.at(n) == rhs.at(n));
    CHECK(m.eq(lhs, rhs));

    FnExpr a = parse_fn("x mod 3");
    FnExpr b = parse_fn("1");
    auto chi = Model::star_apply(diagonal_indicator(a, b), w);
    bool same = m.eq(Model::star_apply(a, w), Model::star_apply(b, w));
    CHECK(m.eq(chi, Model::standard(same ? 1 : 0)));
    CHECK_FALSE(m.eq(chi, Model::standard(same ? 0 : 1)));
}

TEST_CASE("(comp) is pointwise identity on 1000 random triples") {
    Rng rng(101);
    for (int i = 0; i < 1000; ++i) {
        FnExpr f = random_fn(rng, {.max_depth = 2});
        FnExpr g = random_fn(rng, {.max_depth = 2});
        Hyperpoint xi = random_point(rng);
        auto lhs = Model::star_apply(g, Model::star_apply(f, xi));
        auto rhs = Model::star_apply(compose(g, f), xi);
        for (std::uint64_t n = 0; n <= 1000; n += 7) REQUIRE(lhs.at(n) == rhs.at(n));
    }
}

TEST_CASE("(diag) on 500 random triples") {
    Rng rng(102);
    Oracle o;
    Model m(o);
    for (int i = 0; i < 500; ++i) {
        FnExpr f = random_fn(rng, {.max_depth = 2});
        FnExpr g = random_fn(rng, {.max_depth = 2});
        Hyperpoint xi = random_point(rng);
        auto chi = Model::star_apply(diagonal_indicator(f, g), xi);
        bool same = m.eq(Model::star_apply(f, xi), Model::star_apply(g, xi));
        REQUIRE(m.eq(chi, Model::standard(same ? 1 : 0)));
        REQUIRE_FALSE(m.eq(chi, Model::standard(same ? 0 : 1)));
    }
}

TEST_CASE("membership of standard points is membership in the base set") {
    Oracle o;
    Model m(o);
    CHECK(m.member(Model::standard(4), kEvens));
    CHECK_FALSE(m.member(Model::standard(3), kEvens));
    Rng rng(103);
    for (int i = 0; i < 20; ++i) {
        StarSet a = random_set(rng);
        for (std::uint64_t x = 0; x <= 1000; x += 13) {
            REQUIRE(m.member(Model::standard(x), a) == truthy(a.indicator.eval(x)));
        }
    }
}

TEST_CASE("membership commutes with union, intersection, complement") {
    Rng rng(104);
    Oracle o;
    Model m(o);
    for (int i = 0; i < 100; ++i) {
        StarSet a = random_set(rng);
        StarSet b = random_set(rng);
        Hyperpoint xi = random_point(rng);
        bool in_a = m.member(xi, a);
        bool in_b = m.member(xi, b);
        REQUIRE(m.member(xi, set_union(a, b)) == (in_a || in_b));
        REQUIRE(m.member(xi, set_intersection(a, b)) == (in_a && in_b));
        REQUIRE(m.member(xi, set_complement(a)) == !in_a);
    }
}

TEST_CASE("equalizers") {
    Oracle o;
    Model m(o);
    Rng rng(105);
    FnExpr f = parse_fn("x mod 2");
    FnExpr zero = parse_fn("0");
    StarSet ff = Model::equalizer(f, f);
    for (int i = 0; i < 20; ++i) CHECK(m.member(random_point(rng), ff));

    StarSet e = Model::equalizer(f, zero);
    Hyperpoint w = Model::omega();
    auto lhs = Model::membership(w, e);
    auto rhs = Model::agreement(Model::star_apply(f, w), Model::star_apply(zero, w));
    CHECK(lhs.text() == rhs.text());
    CHECK(m.member(w, e) == m.eq(Model::star_apply(f, w), Model::star_apply(zero, w)));

    // disjoint functions have disjoint extensions
    FnExpr g = parse_fn("x + 1");
    for (int i = 0; i < 20; ++i) {
        Hyperpoint xi = random_point(rng);
        CHECK_FALSE(m.member(xi, Model::equalizer(FnExpr::var(), g)));
        CHECK_FALSE(m.eq(xi, Model::star_apply(g, xi)));
    }

    for (int i = 0; i < 500; ++i) {
        FnExpr a = random_fn(rng, {.max_depth = 2});
        FnExpr b = random_fn(rng, {.max_depth = 2});
        Hyperpoint xi = random_point(rng);
        StarSet q = Model::equalizer(a, b);
        auto ma = Model::membership(xi, q);
        auto mb = Model::agreement(Model::star_apply(a, xi), Model::star_apply(b, xi));
        REQUIRE(ma.text() == mb.text());
        REQUIRE(m.member(xi, q) == o.accepts(mb));
    }
}

TEST_CASE("extensions of finite sets are trivial") {
    Oracle o;
    Model m(o);
    std::vector<Nat> a{1, 2, 3};
    CHECK(m.decide_finite(Model::standard(2), a) == Nat(2));
    CHECK(m.decide_finite(Model::omega(), a) == std::nullopt);

    std::vector<Nat> residues{0, 1, 2};
    auto r = m.decide_finite(point("x mod 3"), residues);
    REQUIRE(r.has_value());
    int accepted = 0;
    for (const Nat& v : residues) accepted += m.eq(point("x mod 3"), Model::standard(v)) ? 1 : 0;
    CHECK(accepted == 1);
    CHECK(m.eq(point("x mod 3"), Model::standard(*r)));

    Rng rng(106);
    for (int i = 0; i < 100; ++i) {
        std::vector<Nat> fin;
        std::size_t k = 1 + uniform(rng, 5);
        for (std::size_t j = 0; j < k; ++j) fin.push_back(uniform(rng, 8));
        Hyperpoint xi{FnExpr::mod(random_fn(rng, {.max_depth = 2}), 1 + uniform(rng, 8)), ""};
        CHECK_NOTHROW((void)m.decide_finite(xi, fin));
    }
}

TEST_CASE("injectivity and ranges are preserved") {
    Oracle o;
    Model m(o);
    Rng rng(107);
    for (int i = 0; i < 100; ++i) {
        std::uint64_t k = uniform(rng, 10);
        std::uint64_t s = 1 + uniform(rng, 3);
        // f = s*x + k is injective; its image of A is {y : y >= k, s | y - k, A((y - k) div s)}
        FnExpr f = parse_fn(std::to_string(s) + " * x + " + std::to_string(k));
        FnExpr inv = FnExpr::div(FnExpr::monus(FnExpr::var(), FnExpr::constant(k)), s);
        StarSet a = random_set(rng);
        FnExpr back = compose(f, inv);
        StarSet image{FnExpr::ifeq(back, FnExpr::var(), compose(a.indicator, inv), FnExpr::constant(0)), "f(A)"};
        for (std::uint64_t y = 0; y < 300; ++y) {
            bool direct = false;
            for (std::uint64_t x = 0; x <= y; ++x) direct = direct || (f.eval(x) == Nat(y) && truthy(a.indicator.eval(x)));
            REQUIRE(truthy(image.indicator.eval(y)) == direct);
        }
        Hyperpoint xi = random_point(rng);
        Hyperpoint eta = random_point(rng);
        if (m.eq(Model::star_apply(f, xi), Model::star_apply(f, eta)) && m.member(xi, a) && m.member(eta, a)) {
            CHECK(m.eq(xi, eta));
        }
        if (m.member(xi, a)) CHECK(m.member(Model::star_apply(f, xi), image));
    }
}
