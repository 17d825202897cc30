#include <doctest.h>

#include "fext/errors.hpp"
#include "fext/funlang.hpp"
#include "fext/keisler.hpp"

using namespace fext;

namespace {

Hyperpoint point(std::string_view seq, std::string name = "") { return {parse_fn(seq), std::move(name)}; }

std::vector<FnExpr> fns(std::initializer_list<std::string_view> srcs) {
    std::vector<FnExpr> out;
    for (auto s : srcs) out.push_back(parse_fn(s));
    return out;
}

struct Setup {
    Oracle oracle{{.horizon = 2000}};
    Model model{oracle};
};

}  // namespace

TEST_CASE("check sets") {
    Setup s;
    Fragment frag(s.model, fns({"x + 1", "p1(x)", "p2(x)", "x * x"}),
                  {Model::omega(), point("pair(x, x * x)", "zeta"), Model::standard(5), point("x * x", "sq")}, 0, 50);
    REQUIRE(frag.points().size() == 4);
    CHECK(frag.functions().front().is_identity());

    const CheckSet& five = frag.check_set(2);
    CHECK(five.size() == 4);
    const AlphaHat& h5 = frag.alpha_hat(2);
    for (std::size_t xi = 0; xi < 4; ++xi) {
        for (std::size_t k = 0; k < 50; ++k) REQUIRE(h5.at({xi, k}) == Nat(5));
    }

    const CheckSet& om = frag.check_set(0);
    CHECK(om.contains(0));
    REQUIRE(om.contains(1));
    CHECK(*om.witness[1] == parse_fn("p1(x)"));
    CHECK_FALSE(om.contains(2));
    CHECK_FALSE(om.contains(3));

    // directedness: zeta sits in the check set of both omega and sq
    CHECK(frag.check_set(3).contains(1));

    const AlphaHat& ho = frag.alpha_hat(0);
    CHECK(e_alpha_related({1, 3}, {0, 3}, ho) == (ho.at({1, 3}) == Nat(3)));
    CHECK(e_alpha_related({2, 7}, {3, 7}, ho));
}

TEST_CASE("closure merges eq points") {
    Setup s;
    Fragment frag(s.model, fns({"x + 1", "x - 1", "x mod 2", "2 * x"}), {Model::omega(), Model::standard(3)}, 1, 10);
    // omega+1, omega-1, omega mod 2 (standard), 2 omega, 4, 2, 1, 6
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < frag.points().size(); ++i) labels.push_back(frag.label(i));
    CHECK(frag.points().size() <= 10);
    CHECK(frag.find(point("x + 1 - 1")).value() == 0);
    CHECK(frag.find(Model::standard(4)).has_value());
    // x - 1 applied to standard(3) is standard(2)
    CHECK(frag.find(Model::standard(2)).has_value());
    // a derived point gets the composite witness from its parent
    std::size_t two_omega_plus = frag.add(point("2 * x + 1"), std::size_t{0}, parse_fn("2 * x + 1"));
    CHECK(frag.check_set(two_omega_plus).contains(0));
}

TEST_CASE("d-membership and the claim") {
    Setup s;
    Fragment frag(s.model, fns({"x + 1", "2 * x", "x * x", "p1(x)", "p2(x)", "x mod 2", "x div 2", "x + 7"}),
                  {Model::omega(), point("x * x", "sq"), point("pair(x, x * x)", "zeta"), Model::standard(5),
                   point("x * x * x", "cube")},
                  0, 100);

    DOutcome all = d_member(frag, [](std::size_t) { return FnExpr::constant(1); });
    CHECK(all.verdict == Verdict3::accept);
    DOutcome none = d_member(frag, [](std::size_t) { return FnExpr::constant(0); });
    CHECK(none.verdict == Verdict3::reject);

    StarSet evens{parse_fn("ifeq(x mod 2, 0, 1, 0)"), "evens"};
    CHECK(u_xi_member(s.model, Model::standard(4), evens));
    CHECK(u_xi_member(s.model, Model::omega(), evens) == s.model.member(Model::omega(), evens));

    ClaimReport id = main_claim_check(frag, 0, FnExpr::var());
    CHECK(id.beta == 0);
    CHECK(id.forward_ok());
    CHECK(id.negatives_ok());

    ClaimReport succ = main_claim_check(frag, 0, parse_fn("x + 1"));
    CHECK(succ.forward_ok());
    CHECK(succ.negatives_ok());
    REQUIRE(succ.negatives.size() == 2);
    for (const auto& [b, out] : succ.negatives) CHECK(out.verdict == Verdict3::reject);

    for (std::size_t a = 0; a < frag.seed_count(); ++a) {
        for (const auto& g : frag.functions()) {
            ClaimReport r = main_claim_check(frag, a, g);
            CHECK_MESSAGE(r.forward_ok(), frag.label(a) << " " << g.to_string());
            CHECK_MESSAGE(r.negatives_ok(), frag.label(a) << " " << g.to_string());
        }
    }

    // complement law whenever both sides are decided
    DSet d = claim_set(frag, 1, 0, FnExpr::var());
    DOutcome pos = d_member(frag, d);
    DOutcome neg = d_member(frag, complement(d));
    if (pos.verdict != Verdict3::undecided && neg.verdict != Verdict3::undecided) {
        CHECK((pos.verdict == Verdict3::accept) == (neg.verdict == Verdict3::reject));
    }
}

TEST_CASE("inclusion law is checked exhaustively") {
    Setup s;
    Fragment frag(s.model, fns({"x + 1"}), {Model::omega(), Model::standard(3)}, 1, 20);
    InclusionReport r = check_inclusion_law(frag);
    CHECK(r.pairs_checked > 0);
    // omega+1 is an image of omega; points outside omega's check set keep x,
    // so (3, 8) and (omega, 8) agree under omega-hat but not under its successor's
    CHECK_FALSE(r.holds());
    CHECK(r.witness.find("alpha=omega") != std::string::npos);
}

TEST_CASE("surjectivity probe") {
    Setup s;
    Fragment frag(s.model, fns({"x + 1", "2 * x", "p1(x)"}),
                  {Model::omega(), point("pair(x, x + 3)", "zeta"), Model::standard(2)}, 0, 60);
    ProbeReport k = surjectivity_probe(frag, 0, [](std::size_t) { return FnExpr::constant(9); });
    CHECK(frag.points()[k.beta].standard == Nat(9));
    CHECK(k.own_slice_exact);
    CHECK(k.agreement.verdict == Verdict3::accept);

    ProbeReport self = surjectivity_probe(frag, 0, [&](std::size_t xi) {
        const CheckSet& cs = frag.check_set(0);
        return cs.contains(xi) ? *cs.witness[xi] : FnExpr::var();
    });
    CHECK(self.beta == 0);
    CHECK(self.agreement.verdict == Verdict3::accept);

    ProbeReport twice = surjectivity_probe(frag, 0, [&](std::size_t xi) {
        const CheckSet& cs = frag.check_set(0);
        return compose(parse_fn("2 * x"), cs.contains(xi) ? *cs.witness[xi] : FnExpr::var());
    });
    CHECK(s.model.eq(frag.point(twice.beta), point("2 * x")));
    CHECK(twice.agreement.verdict == Verdict3::accept);

    CHECK_THROWS_AS(surjectivity_probe(frag, 0, [](std::size_t xi) { return FnExpr::constant(xi); }),
                    NotRepresentable);
}
