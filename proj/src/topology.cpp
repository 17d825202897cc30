#include "fext/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace fext {

std::string BasicClosed::text() const {
    std::string fs;
    std::string ts;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        fs += (i ? ", " : "") + pairs[i].first.to_string();
        ts += (i ? ", " : "") + pairs[i].second.label();
    }
    return "E(" + fs + "; " + ts + ")";
}

bool closed_member(const Model& m, const Hyperpoint& xi, const BasicClosed& e) {
    return std::any_of(e.pairs.begin(), e.pairs.end(),
                       [&](const auto& p) { return m.eq(Model::star_apply(p.first, xi), p.second); });
}

bool closed_member(const Model& m, const Hyperpoint& xi, const ClosedSet& e) {
    return std::all_of(e.parts.begin(), e.parts.end(), [&](const auto& b) { return closed_member(m, xi, b); });
}

BasicClosed separating_set(const Hyperpoint& xi) { return {{{FnExpr::var(), xi}}}; }

BasicClosed star_preimage(const FnExpr& f, const BasicClosed& e) {
    BasicClosed out;
    for (const auto& [g, eta] : e.pairs) out.pairs.emplace_back(compose(g, f), eta);
    return out;
}

CoverResult covers_standard(const Model& m, const BasicClosed& e, std::span<const Hyperpoint> sample,
                            std::uint64_t upto) {
    std::vector<std::pair<FnExpr, Nat>> targets;
    for (const auto& [f, eta] : e.pairs) {
        auto y = m.standard_part(eta);
        if (!y) throw std::invalid_argument("covers_standard needs standard targets, got " + eta.label());
        targets.emplace_back(f, *y);
    }
    CoverResult r;
    for (std::uint64_t x = 0; x <= upto; ++x) {
        Nat nx(x);
        bool hit = std::any_of(targets.begin(), targets.end(), [&](const auto& t) { return t.first.eval(nx) == t.second; });
        if (!hit) {
            r.verdict = Verdict3::reject;
            r.witness = nx;
            return r;
        }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!closed_member(m, sample[i], e)) r.non_members.push_back(i);
    }
    r.verdict = r.non_members.empty() ? Verdict3::accept : Verdict3::undecided;
    return r;
}

}  // namespace fext
