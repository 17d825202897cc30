#include "fext/axioms.hpp"

#include <algorithm>

namespace fext {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::undecidable: return "undecidable";
    }
    return "?";
}

ToyPoint ToyExtension::star(const FnExpr& f, const Point& p) const {
    if (p.value) return standard(f.eval(*p.value));
    auto it = table_.find({f.to_string(), p.name});
    if (it == table_.end()) throw NotSupported("toy table has no entry for *(" + f.to_string() + ")(" + p.name + ")");
    return it->second;
}

ToyPoint ToyExtension::add_point(const std::string& name) {
    if (!find(name)) points_.push_back(name);
    return {std::nullopt, name};
}

std::optional<ToyPoint> ToyExtension::find(const std::string& name) const {
    for (const auto& p : points_) {
        if (p == name) return Point{std::nullopt, name};
    }
    return std::nullopt;
}

void ToyExtension::set(const FnExpr& f, const std::string& at, Point to) {
    add_point(at);
    if (!to.value) add_point(to.name);
    table_[{f.to_string(), at}] = std::move(to);
}

void ToyExtension::mark_root(const std::string& name) {
    add_point(name);
    if (std::find(roots_.begin(), roots_.end(), name) == roots_.end()) roots_.push_back(name);
}

bool ToyExtension::has(const FnExpr& f, const std::string& at) const {
    return table_.contains({f.to_string(), at});
}

ToyPoint ToyExtension::shadow(const std::string& name, const std::string& of) {
    Point p = add_point(name);
    std::vector<std::pair<std::string, Point>> copies;
    for (const auto& [key, to] : table_) {
        if (key.second == of) copies.emplace_back(key.first, to);
    }
    for (auto& [fn, to] : copies) table_[{fn, name}] = std::move(to);
    if (std::find(roots_.begin(), roots_.end(), of) != roots_.end()) mark_root(name);
    return p;
}

namespace {

class Tabulator {
public:
    Tabulator(Model& m, ToyExtension& toy) : m_(m), toy_(toy) {}

    ToyPoint classify(const Hyperpoint& h) {
        if (auto v = m_.standard_part(h)) return {*v, ""};
        for (const auto& [name, p] : known_) {
            if (m_.eq(p, h)) return {std::nullopt, name};
        }
        std::string name = h.name.empty() ? "t" + std::to_string(fresh_++) : h.name;
        known_.emplace_back(name, h);
        toy_.add_point(name);
        return {std::nullopt, name};
    }

    const Hyperpoint& point(const std::string& name) const {
        for (const auto& [n, p] : known_) {
            if (n == name) return p;
        }
        throw std::out_of_range(name);
    }

    /// Fills the entry for f at a nonstandard point and returns its value.
    ToyPoint fill(const FnExpr& f, const ToyPoint& at) {
        if (at.value) return toy_.star(f, at);
        if (toy_.has(f, at.name)) return toy_.star(f, at);
        ToyPoint to = classify(Model::star_apply(f, point(at.name)));
        toy_.set(f, at.name, to);
        return to;
    }

private:
    Model& m_;
    ToyExtension& toy_;
    std::vector<std::pair<std::string, Hyperpoint>> known_;
    int fresh_ = 1;
};

}  // namespace

ToyExtension snapshot(Model& m, std::span<const Hyperpoint> points, std::span<const FnExpr> functions) {
    ToyExtension toy;
    for (const auto& f : functions) toy.add_function(f);
    Tabulator tab(m, toy);
    std::vector<ToyPoint> roots;
    for (const auto& p : points) roots.push_back(tab.classify(p));
    for (const auto& xi : roots) {
        if (xi.value) continue;
        toy.mark_root(xi.name);
        for (const auto& f : functions) {
            ToyPoint eta = tab.fill(f, xi);
            for (const auto& g : functions) {
                tab.fill(g, eta);
                tab.fill(compose(g, f), xi);
                tab.fill(diagonal_indicator(f, g), xi);
            }
        }
    }
    return toy;
}

Directed realize_dir(const Model&, const Hyperpoint& xi, const Hyperpoint& eta) {
    Hyperpoint zeta{FnExpr::pair(xi.seq, eta.seq), ""};
    return {zeta, FnExpr::p1(FnExpr::var()), FnExpr::p2(FnExpr::var())};
}

Directed realize_dir(const ToyExtension&, const ToyPoint&, const ToyPoint&) {
    throw NotSupported("toy extensions carry no pairing");
}

CheckOutcome check_dir(Model& m, const Hyperpoint& xi, const Hyperpoint& eta, std::uint64_t check_upto) {
    return detail::guarded([&] {
        Directed d = realize_dir(m, xi, eta);
        auto a = Model::star_apply(d.p1, d.zeta);
        auto b = Model::star_apply(d.p2, d.zeta);
        for (std::uint64_t n = 0; n <= check_upto; ++n) {
            if (a.at(n) != xi.at(n) || b.at(n) != eta.at(n)) {
                return CheckOutcome::bad("projection differs at n=" + std::to_string(n) + " for " + d.zeta.text());
            }
        }
        if (!m.eq(a, xi) || !m.eq(b, eta)) return CheckOutcome::bad("projection not eq for " + d.zeta.text());
        return CheckOutcome::ok(d.zeta.text());
    });
}

CheckOutcome check_dir_unique(Model& m, const Hyperpoint& xi, const Hyperpoint& eta, const Hyperpoint& alt) {
    return detail::guarded([&] {
        Directed d = realize_dir(m, xi, eta);
        if (!m.eq(Model::star_apply(d.p1, alt), xi) || !m.eq(Model::star_apply(d.p2, alt), eta)) {
            return CheckOutcome::ok("vacuous: " + alt.text() + " misses a projection");
        }
        if (m.eq(alt, d.zeta)) return CheckOutcome::ok(alt.text());
        return CheckOutcome::bad(alt.text() + " projects to (xi, eta) but differs from " + d.zeta.text());
    });
}

}  // namespace fext
