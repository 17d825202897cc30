#include "fext/hyper.hpp"

#include <algorithm>
#include <vector>

#include "fext/errors.hpp"

namespace fext {

namespace {

const FnExpr kOne = FnExpr::constant(1);
const FnExpr kZero = FnExpr::constant(0);

bool is_diagonal_shape(const FnExpr& ind) {
    return ind.op() == Op::IfEq && ind.child(2) == kOne && ind.child(3) == kZero;
}

}  // namespace

StarSet set_union(const StarSet& a, const StarSet& b) {
    return {FnExpr::ifeq(a.indicator, kOne, kOne, b.indicator), "(" + a.tag + " | " + b.tag + ")"};
}

StarSet set_intersection(const StarSet& a, const StarSet& b) {
    return {FnExpr::ifeq(a.indicator, kOne, b.indicator, kZero), "(" + a.tag + " & " + b.tag + ")"};
}

StarSet set_complement(const StarSet& a) {
    return {FnExpr::ifeq(a.indicator, kOne, kZero, kOne), "!" + a.tag};
}

StarSet finite_set(std::span<const Nat> elements) {
    FnExpr ind = kZero;
    std::string tag;
    for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
        ind = FnExpr::ifeq(FnExpr::var(), FnExpr::constant(*it), kOne, ind);
        tag = it->to_string() + (tag.empty() ? "" : "," + tag);
    }
    return {ind, "{" + tag + "}"};
}

Hyperpoint Model::standard(const Nat& x) { return {FnExpr::constant(x), ""}; }

Hyperpoint Model::omega() { return {FnExpr::var(), "omega"}; }

Hyperpoint Model::star_apply(const FnExpr& f, const Hyperpoint& xi) { return {compose(f, xi.seq), ""}; }

IndexPredicate Model::agreement(const Hyperpoint& a, const Hyperpoint& b) {
    return IndexPredicate::agreement(a.seq, b.seq);
}

bool Model::eq(const Hyperpoint& a, const Hyperpoint& b) const {
    if (a.seq == b.seq) return true;
    return oracle_->accepts(agreement(a, b));
}

IndexPredicate Model::membership(const Hyperpoint& xi, const StarSet& a) {
    if (is_diagonal_shape(a.indicator)) {
        return IndexPredicate::agreement(compose(a.indicator.child(0), xi.seq), compose(a.indicator.child(1), xi.seq));
    }
    return IndexPredicate::agreement(compose(a.indicator, xi.seq), kOne);
}

bool Model::member(const Hyperpoint& xi, const StarSet& a) const { return oracle_->accepts(membership(xi, a)); }

StarSet Model::equalizer(const FnExpr& f, const FnExpr& g) {
    return {diagonal_indicator(f, g), "Eq(" + f.to_string() + ", " + g.to_string() + ")"};
}

std::optional<Nat> Model::decide_finite(const Hyperpoint& xi, std::span<const Nat> a) const {
    std::vector<Nat> elems(a.begin(), a.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    bool in = member(xi, finite_set(elems));
    std::vector<Nat> accepted;
    for (const Nat& v : elems) {
        if (oracle_->accepts(agreement(xi, standard(v)))) accepted.push_back(v);
    }
    if (in && accepted.size() == 1) return accepted.front();
    if (!in && accepted.empty()) return std::nullopt;
    throw ConsistencyViolation(xi.text() + ": membership " + (in ? "accepted" : "rejected") + " but " +
                               std::to_string(accepted.size()) + " level sets accepted");
}

std::optional<Nat> Model::standard_part(const Hyperpoint& xi) const {
    if (xi.seq.is_constant()) return xi.seq.value();
    Nat c = xi.at(Nat(oracle_->representative()));
    // every index of the window exceeds the floor, so a larger value is
    // indistinguishable from a nonstandard one
    if (c > Nat(oracle_->bound())) return std::nullopt;
    if (eq(xi, standard(c))) return c;
    return std::nullopt;
}

}  // namespace fext
