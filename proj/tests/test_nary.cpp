#include <doctest.h>

#include <vector>

#include "fext/nary.hpp"
#include "fext/random.hpp"

using namespace fext;

namespace {

Hyperpoint point(std::string_view seq) { return {parse_fn(seq), ""}; }

Hyperpoint random_point(Rng& rng) {
    switch (uniform(rng, 4)) {
        case 0: return Model::standard(uniform(rng, 100));
        case 1: return Model::omega();
        default: return {random_fn(rng, {.max_depth = 2}), ""};
    }
}

std::vector<Hyperpoint> random_args(Rng& rng, std::size_t n) {
    std::vector<Hyperpoint> args;
    for (std::size_t i = 0; i < n; ++i) args.push_back(random_point(rng));
    return args;
}

}  // namespace

TEST_CASE("direct route") {
    Oracle o;
    Model m(o);
    NaryFn add = parse_definition("def2 add = x + y");
    std::vector<Hyperpoint> args{Model::omega(), Model::standard(1)};
    CHECK(m.eq(star_nary_direct(add, args), point("x + 1")));

    NaryFn mid = parse_definition("def3 mid = y");
    std::vector<Hyperpoint> three{Model::omega(), point("x * x"), Model::standard(4)};
    CHECK(m.eq(star_nary_direct(mid, three), three[1]));

    NaryFn chi = parse_definition("def2 chi = ifeq(x, y, 1, 0)");
    std::vector<Hyperpoint> same{point("x mod 5"), point("x mod 5")};
    CHECK(m.eq(star_nary_direct(chi, same), Model::standard(1)));

    CHECK_THROWS_AS(star_nary_direct(add, three), std::invalid_argument);
}

TEST_CASE("parametric route") {
    Oracle o;
    Model m(o);
    NaryFn inc = parse_definition("def inc = x + 1");
    std::vector<Hyperpoint> one{point("x * 2")};
    CHECK(m.eq(star_nary_parametric(inc, one, &m), Model::star_apply(inc.body, one[0])));

    NaryFn add = parse_definition("def2 add = x + y");
    std::vector<Hyperpoint> args{Model::omega(), point("x * x")};
    Decomposition d = canonical_decomposition(args);
    CHECK(d.zeta.text() == "[n -> pair(n, n * n)]");
    Hyperpoint r = star_nary_parametric(add, args, &m);
    for (std::uint64_t n = 0; n <= 1000; ++n) REQUIRE(r.at(n) == Nat(n + n * n));
    CHECK(m.eq(r, point("x + x * x")));

    auto alts = alternative_decompositions(args, 10);
    REQUIRE(alts.size() == 10);
    for (const auto& a : alts) {
        CHECK_MESSAGE(decomposition_valid(m, a, args), a.label);
        CHECK_MESSAGE(m.eq(star_nary_via(add, a), r), a.label);
    }
}

TEST_CASE("relations") {
    Oracle o;
    Model m(o);
    NaryFn equal = parse_definition("def2 equal = ifeq(x, y, 1, 0)");
    NaryFn less = parse_definition("def2 less = ifeq(y - x, 0, 0, 1)");
    Hyperpoint xi = point("x * x + 3");
    std::vector<Hyperpoint> refl{xi, xi};
    CHECK(star_rel(m, equal, refl));
    std::vector<Hyperpoint> a{Model::standard(2), Model::standard(5)};
    std::vector<Hyperpoint> b{Model::standard(5), Model::standard(2)};
    CHECK(star_rel(m, less, a));
    CHECK_FALSE(star_rel(m, less, b));
    std::vector<Hyperpoint> c{Model::omega(), point("x + 1")};
    CHECK(star_rel(m, less, c));
}

TEST_CASE("composition preservation on 200 random instances") {
    Oracle o;
    Model m(o);
    Rng rng(301);
    for (int i = 0; i < 200; ++i) {
        std::size_t n = 1 + uniform(rng, 3);
        std::size_t k = 1 + uniform(rng, 3);
        NaryFn phi = random_nary(rng, n, {.max_depth = 2});
        std::vector<NaryFn> psis;
        for (std::size_t j = 0; j < n; ++j) psis.push_back(random_nary(rng, k, {.max_depth = 2}));
        auto args = random_args(rng, k);
        std::vector<Hyperpoint> inner;
        for (const auto& p : psis) inner.push_back(star_nary_direct(p, args));
        Hyperpoint lhs = star_nary_direct(phi, inner);
        Hyperpoint rhs = star_nary_direct(compose_nary(phi, psis), args);
        REQUIRE(m.eq(lhs, rhs));
    }
}

TEST_CASE("routes agree and decompositions never matter") {
    Oracle o({.horizon = 2000});
    Model m(o);
    Rng rng(302);
    for (int i = 0; i < 500; ++i) {
        std::size_t n = 1 + uniform(rng, 3);
        NaryFn phi = random_nary(rng, n, {.max_depth = 2});
        auto args = random_args(rng, n);
        Hyperpoint direct = star_nary_direct(phi, args);
        Hyperpoint param = star_nary_parametric(phi, args, &m);
        REQUIRE(m.eq(direct, param));
        if (i % 5 != 0) continue;
        for (const auto& d : alternative_decompositions(args, 10)) {
            REQUIRE_MESSAGE(decomposition_valid(m, d, args), d.label);
            REQUIRE_MESSAGE(m.eq(star_nary_via(phi, d), direct), d.label);
        }
    }
}
