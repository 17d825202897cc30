#include <doctest.h>

#include "fext/funlang.hpp"
#include "fext/random.hpp"
#include "fext/topology.hpp"

using namespace fext;

namespace {

Hyperpoint point(std::string_view seq) { return {parse_fn(seq), ""}; }

std::vector<Hyperpoint> sweep_points() {
    return {Model::omega(), point("x * x"), point("x + 3"), point("pair(x, 2 * x)"), Model::standard(4),
            point("x mod 7"), point("x div 3")};
}

BasicClosed residues(std::uint64_t k, std::uint64_t skip = ~std::uint64_t{0}) {
    BasicClosed e;
    for (std::uint64_t r = 0; r < k; ++r) {
        if (r != skip) e.pairs.emplace_back(FnExpr::mod(FnExpr::var(), Nat(k)), Model::standard(r));
    }
    return e;
}

}  // namespace

TEST_CASE("membership") {
    Oracle o({.horizon = 2000});
    Model m(o);
    Hyperpoint xi = point("x * x + 1");
    CHECK(closed_member(m, xi, separating_set(xi)));
    CHECK_FALSE(closed_member(m, Model::omega(), separating_set(xi)));

    BasicClosed never{{{FnExpr::constant(5), Model::standard(4)}}};
    for (const auto& p : sweep_points()) CHECK_FALSE(closed_member(m, p, never));

    BasicClosed evens{{{parse_fn("x mod 2"), Model::standard(0)}}};
    StarSet ev{parse_fn("ifeq(x mod 2, 0, 1, 0)"), "evens"};
    CHECK(closed_member(m, Model::omega(), evens) == m.member(Model::omega(), ev));

    // adding pairs only adds members
    BasicClosed more = evens;
    more.pairs.emplace_back(FnExpr::var(), xi);
    for (const auto& p : sweep_points()) {
        if (closed_member(m, p, evens)) CHECK(closed_member(m, p, more));
    }
    CHECK(closed_member(m, xi, more));

    ClosedSet both{{evens, separating_set(Model::omega())}};
    CHECK(closed_member(m, Model::omega(), both) == closed_member(m, Model::omega(), evens));

    // nonstandard targets are reached from nonstandard points only
    BasicClosed far{{{parse_fn("x + 1"), Model::omega()}, {parse_fn("x * x"), point("x * x")}}};
    for (std::uint64_t v = 0; v < 50; ++v) CHECK_FALSE(closed_member(m, Model::standard(v), far));
    CHECK(closed_member(m, Model::omega(), far));

    CHECK(far.text() == "E(x + 1, x * x; omega, [n -> n * n])");
}

TEST_CASE("covers") {
    Oracle o({.horizon = 2000});
    Model m(o);
    auto sample = sweep_points();

    CoverResult r = covers_standard(m, residues(2), sample, 2000);
    CHECK(r.verdict == Verdict3::accept);
    r = covers_standard(m, {{{parse_fn("x mod 2"), Model::standard(0)}}}, sample, 2000);
    CHECK(r.verdict == Verdict3::reject);
    CHECK(r.witness == Nat(1));

    Rng rng(61);
    int yes = 0;
    int no = 0;
    for (std::uint64_t k = 2; k < 7; ++k) {
        yes += covers_standard(m, residues(k), sample, 2000).verdict == Verdict3::accept;
        std::uint64_t skip = uniform(rng, k);
        CoverResult miss = covers_standard(m, residues(k, skip), sample, 2000);
        no += miss.verdict == Verdict3::reject && miss.witness == Nat(skip);
    }
    for (int i = 0; i < 5; ++i) {
        FnExpr a = random_indicator(rng);
        BasicClosed part{{{a, Model::standard(1)}, {FnExpr::monus(FnExpr::constant(1), a), Model::standard(1)}}};
        yes += covers_standard(m, part, sample, 2000).verdict == Verdict3::accept;
        BasicClosed half{{{a, Model::standard(1)}}};
        CoverResult miss = covers_standard(m, half, sample, 2000);
        bool full = true;
        for (std::uint64_t x = 0; x <= 2000 && full; ++x) full = a.eval(Nat(x)) == Nat(1);
        no += full ? miss.verdict == Verdict3::accept
                   : miss.verdict == Verdict3::reject && a.eval(*miss.witness) != Nat(1);
    }
    CHECK(yes == 10);
    CHECK(no == 10);

    Oracle fresh({.horizon = 2000});
    CHECK_THROWS_AS(covers_standard(Model(fresh), separating_set(Model::omega()), sample, 10), std::invalid_argument);
}

TEST_CASE("preimages") {
    Oracle o({.horizon = 2000});
    Model m(o);
    BasicClosed five{{{FnExpr::var(), Model::standard(5)}}};
    BasicClosed pre = star_preimage(parse_fn("x + 1"), five);
    CHECK(pre.text() == "E(x + 1; [n -> 5])");
    CHECK(closed_member(m, Model::standard(4), pre));
    CHECK_FALSE(closed_member(m, Model::standard(5), pre));

    for (const auto& p : sweep_points()) {
        CHECK(closed_member(m, p, star_preimage(FnExpr::var(), five)) == closed_member(m, p, five));
    }

    Rng rng(62);
    for (int i = 0; i < 200; ++i) {
        FnExpr f = random_fn(rng, {.max_depth = 2});
        BasicClosed e;
        for (std::uint64_t k = 0, n = 1 + uniform(rng, 3); k < n; ++k) {
            Hyperpoint eta = coin(rng) ? Model::standard(uniform(rng, 10)) : Hyperpoint{random_fn(rng, {.max_depth = 2}), ""};
            e.pairs.emplace_back(random_fn(rng, {.max_depth = 2}), eta);
        }
        Hyperpoint xi = coin(rng) ? Hyperpoint{random_fn(rng, {.max_depth = 2}), ""} : Model::standard(uniform(rng, 20));
        REQUIRE(closed_member(m, Model::star_apply(f, xi), e) == closed_member(m, xi, star_preimage(f, e)));
    }
}
