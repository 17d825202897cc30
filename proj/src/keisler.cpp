#include "fext/keisler.hpp"

#include <algorithm>
#include <unordered_map>

#include "fext/errors.hpp"

namespace fext {

std::size_t CheckSet::size() const {
    return static_cast<std::size_t>(std::count_if(witness.begin(), witness.end(), [](const auto& w) { return w.has_value(); }));
}

bool e_alpha_related(IElem i, IElem j, const AlphaHat& hat) { return hat.at(i) == hat.at(j); }

Fragment::Fragment(Model& m, std::vector<FnExpr> functions, const std::vector<Hyperpoint>& seeds, int depth,
                   std::uint64_t sample_size)
    : model_(&m), functions_(std::move(functions)) {
    if (std::find(functions_.begin(), functions_.end(), FnExpr::var()) == functions_.end()) {
        functions_.insert(functions_.begin(), FnExpr::var());
    }
    for (std::uint64_t x = 0; x < sample_size; ++x) sample_.emplace_back(x);
    for (const auto& s : seeds) add(s);
    seeds_ = points_.size();
    // omega directs the fragment: every point is the image of omega under its own sequence
    add(Model::omega());
    std::vector<std::size_t> frontier(points_.size());
    for (std::size_t i = 0; i < frontier.size(); ++i) frontier[i] = i;
    for (int d = 0; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t p : frontier) {
            for (const auto& f : functions_) {
                if (f.is_identity()) continue;
                std::size_t before = points_.size();
                std::size_t q = add(Model::star_apply(f, points_[p].point), p, f);
                if (points_.size() > before) next.push_back(q);
            }
        }
        frontier = std::move(next);
    }
}

std::optional<std::size_t> Fragment::find(const Hyperpoint& p) const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].point.seq == p.seq) return i;
    }
    // standard points are told apart by value; a standard point is never eq
    // to one whose standard part came back empty
    std::optional<Nat> v = model_->standard_part(p);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& q = points_[i];
        if (v.has_value() != q.standard.has_value()) continue;
        if (v ? *v == *q.standard : model_->eq(p, q.point)) return i;
    }
    return std::nullopt;
}

std::size_t Fragment::add(const Hyperpoint& p, std::optional<std::size_t> parent, std::optional<FnExpr> via) {
    std::optional<std::size_t> i = find(p);
    if (!i) {
        points_.push_back({p, parent, via, model_->standard_part(p), {}});
        i = points_.size() - 1;
    } else if (!parent || !via || *parent == *i) {
        return *i;
    }
    if (parent && via) {
        auto& ds = points_[*i].derivations;
        std::pair<std::size_t, FnExpr> d{*parent, *via};
        if (std::find(ds.begin(), ds.end(), d) != ds.end()) return *i;
        ds.push_back(std::move(d));
    }
    checks_.clear();
    hats_.clear();
    return *i;
}

std::string Fragment::label(std::size_t i) const {
    const auto& fp = points_.at(i);
    if (!fp.point.name.empty()) return fp.point.name;
    if (fp.parent && fp.via) return "*(" + fp.via->to_string() + ")(" + label(*fp.parent) + ")";
    return fp.point.text();
}

const CheckSet& Fragment::check_set(std::size_t alpha) {
    if (checks_.empty()) build_checks();
    return checks_.at(alpha);
}

void Fragment::build_checks() {
    const std::size_t n = points_.size();
    std::vector<CheckSet> sets;
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
        const FragmentPoint& a = points_[alpha];
        CheckSet cs{alpha, std::vector<std::optional<FnExpr>>(n)};
        if (a.standard) {
            for (auto& w : cs.witness) w = FnExpr::constant(*a.standard);
            sets.push_back(std::move(cs));
            continue;
        }
        for (std::size_t xi = 0; xi < n; ++xi) {
            const FragmentPoint& x = points_[xi];
            // images of standard points are standard
            if (x.standard) continue;
            for (const auto& f : functions_) {
                if (model_->eq(Model::star_apply(f, x.point), a.point)) {
                    cs.witness[xi] = f;
                    break;
                }
            }
        }
        sets.push_back(std::move(cs));
    }
    // h . f_{xi,p} along recorded derivations, until nothing changes
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
            if (points_[alpha].standard) continue;
            for (const auto& [p, h] : points_[alpha].derivations) {
                for (std::size_t xi = 0; xi < n; ++xi) {
                    if (sets[alpha].witness[xi] || !sets[p].witness[xi] || points_[xi].standard) continue;
                    FnExpr w = compose(h, *sets[p].witness[xi]);
                    if (model_->eq(Model::star_apply(w, points_[xi].point), points_[alpha].point)) {
                        sets[alpha].witness[xi] = w;
                        changed = true;
                    }
                }
            }
        }
    }
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
        for (std::size_t xi = 0; xi < n; ++xi) {
            if (!sets[alpha].witness[xi] && points_[xi].point.seq.is_identity()) {
                sets[alpha].witness[xi] = points_[alpha].point.seq;
            }
        }
        checks_.emplace(alpha, std::move(sets[alpha]));
    }
}

const AlphaHat& Fragment::alpha_hat(std::size_t alpha) {
    if (auto it = hats_.find(alpha); it != hats_.end()) return it->second;
    const CheckSet& cs = check_set(alpha);
    AlphaHat hat{alpha, {}};
    hat.values.resize(points_.size());
    for (std::size_t xi = 0; xi < points_.size(); ++xi) {
        auto& row = hat.values[xi];
        row.reserve(sample_.size());
        for (const auto& x : sample_) row.push_back(cs.contains(xi) ? cs.witness[xi]->eval(x) : x);
    }
    return hats_.emplace(alpha, std::move(hat)).first->second;
}

CheckSet build_check_set(Fragment& frag, std::size_t alpha) { return frag.check_set(alpha); }
AlphaHat alpha_hat(Fragment& frag, std::size_t alpha) { return frag.alpha_hat(alpha); }

bool u_xi_member(const Model& m, const Hyperpoint& xi, const StarSet& a) { return m.member(xi, a); }

namespace {

struct NatHash {
    std::size_t operator()(const Nat& n) const noexcept { return n.hash(); }
};

std::string ielem_text(const Fragment& frag, IElem i) {
    return "(" + frag.label(i.first) + ", " + frag.sample()[i.second].to_string() + ")";
}

/// First pair of index elements related by `a` but not by `b`, scanning only
/// points accepted by `keep`.
template <class Keep>
std::optional<std::pair<IElem, IElem>> first_escape(const AlphaHat& a, const AlphaHat& b, Keep keep) {
    std::unordered_map<Nat, IElem, NatHash> seen;
    for (std::size_t xi = 0; xi < a.values.size(); ++xi) {
        if (!keep(xi)) continue;
        for (std::size_t k = 0; k < a.values[xi].size(); ++k) {
            IElem i{xi, k};
            auto [it, fresh] = seen.emplace(a.at(i), i);
            if (!fresh && b.at(it->second) != b.at(i)) return std::pair{it->second, i};
        }
    }
    return std::nullopt;
}

FnExpr hat_fn(Fragment& frag, std::size_t alpha, std::size_t xi) {
    const CheckSet& cs = frag.check_set(alpha);
    return cs.contains(xi) ? *cs.witness[xi] : FnExpr::var();
}

}  // namespace

InclusionReport check_inclusion_law(Fragment& frag) {
    InclusionReport r;
    const std::size_t n = frag.points().size();
    for (std::size_t beta = 0; beta < n; ++beta) {
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
            if (alpha == beta || !frag.check_set(beta).contains(alpha)) continue;
            ++r.pairs_checked;
            const AlphaHat& ha = frag.alpha_hat(alpha);
            const AlphaHat& hb = frag.alpha_hat(beta);
            auto esc = first_escape(ha, hb, [](std::size_t) { return true; });
            if (!esc) continue;
            ++r.pairs_violating;
            const CheckSet& ca = frag.check_set(alpha);
            if (first_escape(ha, hb, [&](std::size_t xi) { return ca.contains(xi); })) ++r.violating_inside;
            if (r.witness.empty()) {
                auto [i, j] = *esc;
                r.witness = "alpha=" + frag.label(alpha) + " beta=" + frag.label(beta) + " i=" + ielem_text(frag, i) +
                            " j=" + ielem_text(frag, j) + " alpha-hat=" + ha.at(i).to_string() +
                            " beta-hat=" + hb.at(i).to_string() + "/" + hb.at(j).to_string();
            }
        }
    }
    return r;
}

std::string_view to_string(Verdict3 v) {
    switch (v) {
        case Verdict3::accept: return "accept";
        case Verdict3::reject: return "reject";
        case Verdict3::undecided: return "undecided";
    }
    return "?";
}

DOutcome d_member(Fragment& frag, const DSet& d) {
    DOutcome out;
    const std::size_t n = frag.points().size();
    for (std::size_t xi = 0; xi < n; ++xi) {
        out.inner.push_back(frag.model().member(frag.point(xi), StarSet{d(xi), ""}));
    }
    bool accept = false;
    bool reject = false;
    for (std::size_t alpha = 0; alpha < n && !(accept && reject); ++alpha) {
        const CheckSet& cs = frag.check_set(alpha);
        bool all_in = true;
        bool all_out = true;
        for (std::size_t xi = 0; xi < n; ++xi) {
            if (!cs.contains(xi)) continue;
            all_in = all_in && out.inner[xi];
            all_out = all_out && !out.inner[xi];
        }
        accept = accept || all_in;
        reject = reject || all_out;
    }
    out.conflict = accept && reject;
    if (accept != reject) out.verdict = accept ? Verdict3::accept : Verdict3::reject;
    return out;
}

DSet complement(const DSet& d) {
    return [d](std::size_t xi) { return FnExpr::monus(FnExpr::constant(1), d(xi)); };
}

DSet claim_set(Fragment& frag, std::size_t alpha, std::size_t beta, const FnExpr& g) {
    return [&frag, alpha, beta, g](std::size_t xi) {
        return diagonal_indicator(compose(g, hat_fn(frag, alpha, xi)), hat_fn(frag, beta, xi));
    };
}

bool ClaimReport::negatives_ok() const {
    return std::none_of(negatives.begin(), negatives.end(),
                        [](const auto& n) { return n.second.verdict == Verdict3::accept; });
}

std::size_t ClaimReport::undecided() const {
    std::size_t u = forward.verdict == Verdict3::undecided;
    for (const auto& n : negatives) u += n.second.verdict == Verdict3::undecided;
    return u;
}

ClaimReport main_claim_check(Fragment& frag, std::size_t alpha, const FnExpr& g) {
    Model& m = frag.model();
    ClaimReport r;
    r.alpha = alpha;
    r.g = g;
    r.beta = frag.add(Model::star_apply(g, frag.point(alpha)), alpha, g);
    const auto& bstd = frag.points()[r.beta].standard;
    std::vector<std::size_t> wrong{
        frag.add(Model::standard(Nat(bstd && bstd->is_zero() ? 1 : 0))),
        frag.add(Model::star_apply(FnExpr::succ(FnExpr::var()), frag.point(r.beta)), r.beta, FnExpr::succ(FnExpr::var())),
    };

    const CheckSet& ca = frag.check_set(alpha);
    for (std::size_t xi = 0; xi < frag.points().size(); ++xi) {
        if (!ca.contains(xi)) continue;
        StarSet eqz = Model::equalizer(compose(g, *ca.witness[xi]), hat_fn(frag, r.beta, xi));
        if (!m.member(frag.point(xi), eqz)) r.forward_failures.push_back(xi);
    }
    r.forward = d_member(frag, claim_set(frag, alpha, r.beta, g));
    for (std::size_t b : wrong) {
        if (m.eq(frag.point(b), frag.point(r.beta))) continue;
        r.negatives.emplace_back(b, d_member(frag, claim_set(frag, alpha, b, g)));
    }
    return r;
}

ProbeReport surjectivity_probe(Fragment& frag, std::size_t alpha, const std::function<FnExpr(std::size_t)>& phi) {
    const AlphaHat& hat = frag.alpha_hat(alpha);
    std::unordered_map<Nat, std::pair<Nat, IElem>, NatHash> classes;
    for (std::size_t xi = 0; xi < hat.values.size(); ++xi) {
        FnExpr slice = phi(xi);
        for (std::size_t k = 0; k < frag.sample().size(); ++k) {
            IElem i{xi, k};
            Nat v = slice.eval(frag.sample()[k]);
            auto [it, fresh] = classes.emplace(hat.at(i), std::pair{v, i});
            if (!fresh && it->second.first != v) {
                throw NotRepresentable("phi separates " + ielem_text(frag, it->second.second) + " and " +
                                       ielem_text(frag, i) + ", which E_alpha relates");
            }
        }
    }
    ProbeReport r;
    r.g = phi(alpha);
    r.beta = frag.add(Model::star_apply(r.g, frag.point(alpha)), alpha, r.g);
    const AlphaHat& hb = frag.alpha_hat(r.beta);
    r.own_slice_exact = true;
    for (std::size_t k = 0; k < frag.sample().size(); ++k) {
        if (hb.at({alpha, k}) != r.g.eval(frag.sample()[k])) r.own_slice_exact = false;
    }
    std::size_t beta = r.beta;
    r.agreement = d_member(frag, [&frag, beta, &phi](std::size_t xi) {
        return diagonal_indicator(hat_fn(frag, beta, xi), phi(xi));
    });
    return r;
}

}  // namespace fext
