#pragma once

#include <concepts>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fext/errors.hpp"
#include "fext/expr.hpp"
#include "fext/hyper.hpp"

namespace fext {

enum class Verdict { pass, fail, undecidable };

std::string_view to_string(Verdict v);

struct CheckOutcome {
    Verdict verdict = Verdict::pass;
    std::string witness;

    static CheckOutcome ok(std::string w = {}) { return {Verdict::pass, std::move(w)}; }
    static CheckOutcome bad(std::string w) { return {Verdict::fail, std::move(w)}; }
};

/// What the checkers need from an extension: a standard embedding, a star
/// operator on unary codes, and an equality on points.
template <class E>
concept Extension = requires(E& e, const typename E::Point& p, const FnExpr& f, const Nat& x) {
    { e.standard(x) } -> std::convertible_to<typename E::Point>;
    { e.star(f, p) } -> std::convertible_to<typename E::Point>;
    { e.eq(p, p) } -> std::convertible_to<bool>;
    { e.standard_value(p) } -> std::convertible_to<std::optional<Nat>>;
    { e.describe(p) } -> std::convertible_to<std::string>;
};

/// The ultrapower model seen through the Extension interface.
class HyperExtension {
public:
    using Point = Hyperpoint;

    explicit HyperExtension(Model& m) : model_(&m) {}

    Point standard(const Nat& x) const { return Model::standard(x); }
    Point star(const FnExpr& f, const Point& p) const { return Model::star_apply(f, p); }
    bool eq(const Point& a, const Point& b) const { return model_->eq(a, b); }
    std::optional<Nat> standard_value(const Point& p) const { return model_->standard_part(p); }
    std::string describe(const Point& p) const { return p.label(); }
    Model& model() const { return *model_; }

private:
    Model* model_;
};

struct ToyPoint {
    std::optional<Nat> value;  // set for standard points
    std::string name;

    friend bool operator==(const ToyPoint&, const ToyPoint&) = default;
};

/// A finite table posing as an extension: standard points plus named
/// nonstandard ones, with star maps given entry by entry. Nothing forces
/// the table to satisfy any axiom, which is what makes it useful as a
/// negative control. Standard points map as in the base structure;
/// asking for a missing entry throws NotSupported.
class ToyExtension {
public:
    using Point = ToyPoint;

    Point standard(const Nat& x) const { return {x, ""}; }
    Point star(const FnExpr& f, const Point& p) const;
    bool eq(const Point& a, const Point& b) const { return a == b; }
    std::optional<Nat> standard_value(const Point& p) const { return p.value; }
    std::string describe(const Point& p) const { return p.value ? p.value->to_string() : p.name; }

    /// Adds a nonstandard point; a no-op when it already exists.
    Point add_point(const std::string& name);
    std::optional<Point> find(const std::string& name) const;
    const std::vector<std::string>& points() const noexcept { return points_; }
    /// Points whose table covers every check on the toy's functions.
    const std::vector<std::string>& roots() const noexcept { return roots_; }
    void mark_root(const std::string& name);

    void set(const FnExpr& f, const std::string& at, Point to);
    bool has(const FnExpr& f, const std::string& at) const;
    /// Adds `name` with every entry copied from `of`. The copy behaves
    /// exactly like the original but lies in no star image.
    Point shadow(const std::string& name, const std::string& of);

    void add_function(const FnExpr& f) { functions_.push_back(f); }
    const std::vector<FnExpr>& functions() const noexcept { return functions_; }
    std::size_t entry_count() const noexcept { return table_.size(); }

private:
    std::vector<std::string> points_;
    std::vector<std::string> roots_;
    std::vector<FnExpr> functions_;
    std::map<std::pair<std::string, std::string>, Point> table_;
};

/// Tabulates the model on `points` and `functions`: every entry that the
/// (comp), (diag) and irredundancy checkers ask for on those inputs.
/// Images are merged with known points under the model's eq.
ToyExtension snapshot(Model& m, std::span<const Hyperpoint> points, std::span<const FnExpr> functions);

namespace detail {

template <class F>
CheckOutcome guarded(F&& body) {
    try {
        return body();
    } catch (const Undecidable& e) {
        return {Verdict::undecidable, e.what()};
    }
}

}  // namespace detail

/// *g(*f(xi)) eq *(g.f)(xi)
template <Extension E>
CheckOutcome check_comp(E& e, const FnExpr& f, const FnExpr& g, const typename E::Point& xi) {
    return detail::guarded([&] {
        auto lhs = e.star(g, e.star(f, xi));
        auto rhs = e.star(compose(g, f), xi);
        if (e.eq(lhs, rhs)) return CheckOutcome::ok();
        return CheckOutcome::bad("f=" + f.to_string() + " g=" + g.to_string() + " xi=" + e.describe(xi) +
                                 " *g(*f(xi))=" + e.describe(lhs) + " *(g.f)(xi)=" + e.describe(rhs));
    });
}

/// *(chi.(f,g))(xi) is 1 when *f(xi) eq *g(xi) and 0 otherwise.
/// Throws MalformedIndicator when the value is neither.
template <Extension E>
CheckOutcome check_diag(E& e, const FnExpr& f, const FnExpr& g, const typename E::Point& xi) {
    return detail::guarded([&] {
        auto v = e.star(diagonal_indicator(f, g), xi);
        bool same = e.eq(e.star(f, xi), e.star(g, xi));
        bool one = e.eq(v, e.standard(1));
        bool zero = !one && e.eq(v, e.standard(0));
        if (!one && !zero) {
            throw MalformedIndicator("*chi(" + f.to_string() + ", " + g.to_string() + ")(" + e.describe(xi) +
                                     ") = " + e.describe(v));
        }
        if (same == one) return CheckOutcome::ok();
        return CheckOutcome::bad("f=" + f.to_string() + " g=" + g.to_string() + " xi=" + e.describe(xi) +
                                 " images " + (same ? "equal" : "differ") + " but *chi = " + (one ? "1" : "0"));
    });
}

/// Looks for f in `functions` (then a constant, for standard xi) and eta in
/// `points` with *f(eta) eq xi. An empty scan is reported as a failure whose
/// witness says the search was exhausted; over an infinite carrier that is
/// not a disproof.
template <Extension E>
CheckOutcome check_irredundant(E& e, const typename E::Point& xi, std::span<const FnExpr> functions,
                               std::span<const typename E::Point> points) {
    return detail::guarded([&] {
        if (auto v = e.standard_value(xi)) {
            FnExpr c = FnExpr::constant(*v);
            return CheckOutcome::ok("f=" + c.to_string() + " eta=any");
        }
        for (const auto& f : functions) {
            for (const auto& eta : points) {
                std::optional<typename E::Point> image;
                try {
                    image = e.star(f, eta);
                } catch (const NotSupported&) {
                    continue;  // partial table: no such entry
                }
                if (e.eq(*image, xi)) return CheckOutcome::ok("f=" + f.to_string() + " eta=" + e.describe(eta));
            }
        }
        return CheckOutcome::bad("search exhausted: no (f, eta) among " + std::to_string(functions.size()) +
                                 " functions x " + std::to_string(points.size()) + " points reaches " +
                                 e.describe(xi));
    });
}

/// eta <=_P xi: the first f in `functions` with *f(xi) eq eta, falling back
/// to a constant when eta is standard.
template <Extension E>
std::optional<FnExpr> puritz_leq(E& e, const typename E::Point& eta, const typename E::Point& xi,
                                 std::span<const FnExpr> functions) {
    for (const auto& f : functions) {
        if (e.eq(e.star(f, xi), eta)) return f;
    }
    if (auto v = e.standard_value(eta)) return FnExpr::constant(*v);
    return std::nullopt;
}

struct Directed {
    Hyperpoint zeta;
    FnExpr p1;
    FnExpr p2;
};

/// The point [n -> pair(xi(n), eta(n))] with the unary projections. The
/// projection equations hold index by index.
Directed realize_dir(const Model& m, const Hyperpoint& xi, const Hyperpoint& eta);

/// Tables carry no pairing.
Directed realize_dir(const ToyExtension& t, const ToyPoint& xi, const ToyPoint& eta);

/// realize_dir plus the two projection equations, checked under eq and
/// index by index on 0..check_upto.
CheckOutcome check_dir(Model& m, const Hyperpoint& xi, const Hyperpoint& eta, std::uint64_t check_upto = 1000);

/// If `alt` satisfies both projection equations for (xi, eta) it must be eq
/// to the realized zeta. Passes vacuously when it does not.
CheckOutcome check_dir_unique(Model& m, const Hyperpoint& xi, const Hyperpoint& eta, const Hyperpoint& alt);

}  // namespace fext
