#include <doctest.h>

#include <cstdint>
#include <vector>

#include "fext/errors.hpp"
#include "fext/funlang.hpp"
#include "fext/pairing.hpp"
#include "fext/predicate.hpp"
#include "fext/random.hpp"

using namespace fext;

namespace {

Nat ev(std::string_view src, std::uint64_t x) { return parse_fn(src).eval(Nat(x)); }

}  // namespace

TEST_CASE("parse produces the expected trees") {
    CHECK(parse_fn("x + 1") == FnExpr::add(FnExpr::var(), FnExpr::constant(1)));
    CHECK(parse_fn("ifeq(x mod 2, 0, 1, 0)") ==
          FnExpr::ifeq(FnExpr::mod(FnExpr::var(), 2), FnExpr::constant(0), FnExpr::constant(1),
                       FnExpr::constant(0)));
    CHECK(parse_fn("p1(x)") == FnExpr::p1(FnExpr::var()));
    // precedence: * binds tighter than +, both left-associative
    CHECK(parse_fn("1 + 2 * x") ==
          FnExpr::add(FnExpr::constant(1), FnExpr::mul(FnExpr::constant(2), FnExpr::var())));
    CHECK(parse_fn("x - 1 - 1") ==
          FnExpr::monus(FnExpr::monus(FnExpr::var(), FnExpr::constant(1)), FnExpr::constant(1)));
}

TEST_CASE("evens indicator") {
    for (std::uint64_t n = 0; n < 50; ++n) {
        CHECK(ev("ifeq(x mod 2, 0, 1, 0)", n) == Nat(n % 2 == 0 ? 1 : 0));
    }
}

TEST_CASE("eval examples") {
    CHECK(ev("7", 3) == Nat(7));
    CHECK(ev("x + 1", 4) == Nat(5));
    CHECK(ev("x - 9", 4) == Nat(0));
    CHECK(ev("pred(0)", 0) == Nat(0));
    CHECK(ev("succ(x) * 3 div 2", 4) == Nat(7));
    auto chi = parse_fn("ifeq(p1(x), p2(x), 1, 0)");
    CHECK(chi.eval(pair(5, 5)) == Nat(1));
    CHECK(chi.eval(pair(5, 6)) == Nat(0));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_fn("x +\n  (x mod 0)");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 10);
    }
    CHECK_THROWS_AS(parse_fn("x div 0"), SyntaxError);
    CHECK_THROWS_AS(parse_fn("x +"), SyntaxError);
    CHECK_THROWS_AS(parse_fn("y + 1"), SyntaxError);
    CHECK_THROWS_AS(parse_fn("ifeq(x, 1, 2)"), SyntaxError);
    CHECK_THROWS_AS(parse_fn("x $ 2"), SyntaxError);
    CHECK_THROWS_AS(parse_fn("x x"), SyntaxError);
}

TEST_CASE("definitions and registry application") {
    Registry reg;
    reg.add(parse_definition("def inc = x + 1"));
    reg.add(parse_definition("def2 add = x + y"));
    reg.add(parse_definition("def3 mid = y"));
    ParseOptions opts{&reg};
    CHECK(parse_fn("inc(inc(x))", opts).eval(3) == Nat(5));
    CHECK(parse_fn("add(x, x * x)", opts).eval(4) == Nat(20));
    CHECK(parse_fn("mid(1, x, 3)", opts).eval(9) == Nat(9));
    CHECK_THROWS_AS(parse_fn("add(x)", opts), SyntaxError);
    CHECK_THROWS_AS(parse_fn("inc", opts), SyntaxError);
    CHECK_THROWS_AS(parse_definition("def ifeq = x"), SyntaxError);
    CHECK(to_string(*reg.find("inc")) == "def inc = x + 1");
}

TEST_CASE("pair base cases and closed formula") {
    CHECK(pair(0, 0) == Nat(0));
    CHECK(unpair(pair(1, 2)) == std::pair<Nat, Nat>{1, 2});
    // (x + y)(x + y + 1)/2 + y evaluated independently
    auto closed = [](std::uint64_t x, std::uint64_t y) { return (x + y) * (x + y + 1) / 2 + y; };
    CHECK(pair(1, 2) == Nat(closed(1, 2)));
    CHECK(pair(1, 2) == Nat(8));
}

TEST_CASE("pairing is the diagonal enumeration, exhaustively below 1000") {
    // Oracle: walk the diagonals x + y = s in order of increasing y and count.
    constexpr std::uint64_t kBound = 1000;
    std::vector<std::uint64_t> code(kBound * kBound);
    std::uint64_t z = 0;
    for (std::uint64_t s = 0; s < 2 * kBound - 1; ++s) {
        for (std::uint64_t y = 0; y <= s; ++y, ++z) {
            std::uint64_t x = s - y;
            if (x < kBound && y < kBound) code[x * kBound + y] = z;
        }
    }
    bool ok = true;
    for (std::uint64_t x = 0; x < kBound && ok; ++x) {
        for (std::uint64_t y = 0; y < kBound && ok; ++y) {
            Nat p = pair(x, y);
            ok = p == Nat(code[x * kBound + y]) && unpair(p) == std::pair<Nat, Nat>{x, y};
        }
    }
    CHECK(ok);
    for (std::uint64_t n = 0; n < 200000; ++n) {
        auto [a, b] = unpair(n);
        if (pair(a, b) != Nat(n)) {
            FAIL("pair(unpair(z)) != z at " << n);
        }
    }
}

TEST_CASE("pairing stays exact past 64 bits") {
    const Nat big = Nat::parse("123456789012345678901234567890");
    for (const Nat& a : {Nat(0), Nat(1), Nat(UINT64_MAX), big, big * big}) {
        for (const Nat& b : {Nat(7), Nat(UINT64_MAX), big}) {
            CHECK(unpair(pair(a, b)) == std::pair<Nat, Nat>{a, b});
        }
    }
    CHECK(pair(Nat(UINT64_MAX), Nat(0)).to_string() == "170141183460469231722463931679029329920");
}

TEST_CASE("round trip: parse(print(t)) == t for generated terms") {
    Rng rng(20240607);
    for (int i = 0; i < 100; ++i) {
        FnExpr t = random_fn(rng, {.max_depth = 4});
        std::string text = t.to_string();
        FnExpr back = parse_fn(text);
        CHECK_MESSAGE(back == t, text);
        CHECK(parse_fn(back.to_string()) == back);
    }
}

TEST_CASE("totality fuzz: 10^4 (expr, input) pairs evaluate") {
    Rng rng(99);
    std::size_t evaluated = 0;
    for (int i = 0; i < 10000; ++i) {
        FnExpr t = random_fn(rng, {.max_depth = 3});
        Nat x(uniform(rng, 100000));
        (void)t.eval(x);
        ++evaluated;
    }
    CHECK(evaluated == 10000);
}

TEST_CASE("compose agrees with pointwise composition") {
    Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        FnExpr f = random_fn(rng);
        FnExpr g = random_fn(rng);
        FnExpr gf = compose(g, f);
        for (std::uint64_t x = 0; x < 20; ++x) {
            REQUIRE(gf.eval(x) == g.eval(f.eval(x)));
        }
    }
    // repeated composition stays linear in size
    FnExpr dup = parse_fn("ifeq(x, x, x, x)");
    FnExpr acc = FnExpr::var();
    for (int i = 0; i < 30; ++i) acc = compose(dup, acc);
    CHECK(acc.size() <= 30 * (dup.size() + 1) + 1);
}

TEST_CASE("tuple coordinates invert pack") {
    for (std::size_t arity = 1; arity <= 4; ++arity) {
        std::vector<FnExpr> parts;
        for (std::size_t i = 0; i < arity; ++i) parts.push_back(FnExpr::constant(10 * i + 3));
        Nat packed = pack(parts).eval(0);
        for (std::size_t i = 0; i < arity; ++i) {
            CHECK(coordinate(arity, i).eval(packed) == Nat(10 * i + 3));
        }
    }
}

TEST_CASE("index predicate combinators are pointwise set operations") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto pa = IndexPredicate::nonzero(random_fn(rng, {.max_depth = 2, .allow_pairing = false}));
        auto pb = IndexPredicate::agreement(random_fn(rng, {.max_depth = 2}), random_fn(rng, {.max_depth = 2}));
        auto both = pa & pb;
        auto either = pa | pb;
        auto not_a = !pa;
        for (std::uint64_t n = 0; n < 1000; ++n) {
            bool a = pa.contains(n);
            bool b = pb.contains(n);
            REQUIRE(both.contains(n) == (a && b));
            REQUIRE(either.contains(n) == (a || b));
            REQUIRE(not_a.contains(n) == !a);
        }
    }
    auto ab = IndexPredicate::agreement(parse_fn("x"), parse_fn("x mod 2"));
    auto ba = IndexPredicate::agreement(parse_fn("x mod 2"), parse_fn("x"));
    CHECK(ab.text() == ba.text());
    CHECK(ab.text() == "{n : n = n mod 2}");
}

TEST_CASE("isqrt is the exact floor on big values") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        Nat a(1 + rng());
        for (int k = uniform(rng, 8); k >= 0; --k) a = a * Nat(1 + rng()) + Nat(rng());
        Nat r = isqrt(a);
        REQUIRE(r * r <= a);
        Nat r1 = r + Nat(1);
        REQUIRE(a < r1 * r1);
    }
    Nat sq = Nat::parse("340282366920938463463374607431768211456");  // 2^128
    CHECK(isqrt(sq).to_string() == "18446744073709551616");
    CHECK(isqrt(monus(sq, Nat(1))).to_string() == "18446744073709551615");
}
