#include "fext/nary.hpp"

#include <stdexcept>

#include "fext/errors.hpp"

namespace fext {

namespace {

void check_arity(const NaryFn& phi, std::size_t n) {
    if (phi.arity != n) {
        throw std::invalid_argument(phi.name + " takes " + std::to_string(phi.arity) + " arguments, got " +
                                    std::to_string(n));
    }
}

std::vector<FnExpr> seqs(std::span<const Hyperpoint> args) {
    std::vector<FnExpr> out;
    for (const auto& a : args) out.push_back(a.seq);
    return out;
}

std::vector<FnExpr> coords_through(std::size_t arity, std::size_t offset, std::size_t n, const FnExpr& inner) {
    std::vector<FnExpr> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(compose(coordinate(arity, offset + i), inner));
    return out;
}

}  // namespace

Hyperpoint star_nary_direct(const NaryFn& phi, std::span<const Hyperpoint> args) {
    check_arity(phi, args.size());
    auto s = seqs(args);
    return {compose(phi.body, pack(s)), ""};
}

Decomposition canonical_decomposition(std::span<const Hyperpoint> args) {
    auto s = seqs(args);
    return {{pack(s), ""}, coords_through(s.size(), 0, s.size(), FnExpr::var()), "canonical"};
}

std::vector<Decomposition> alternative_decompositions(std::span<const Hyperpoint> args, std::size_t count,
                                                      std::uint64_t perturb_below) {
    const auto s = seqs(args);
    const std::size_t n = s.size();
    const FnExpr idx = FnExpr::var();
    const FnExpr packed = pack(s);
    const FnExpr id = FnExpr::var();
    auto k = [](std::uint64_t v) { return FnExpr::constant(v); };

    std::vector<Decomposition> out;
    {
        std::vector<FnExpr> rev(s.rbegin(), s.rend());
        std::vector<FnExpr> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(coordinate(n, n - 1 - i));
        out.push_back({{pack(rev), ""}, c, "reversed"});
    }
    {
        auto padded = s;
        padded.push_back(k(7));
        out.push_back({{pack(padded), ""}, coords_through(n + 1, 0, n, id), "padded right"});
    }
    {
        std::vector<FnExpr> padded{k(3)};
        padded.insert(padded.end(), s.begin(), s.end());
        out.push_back({{pack(padded), ""}, coords_through(n + 1, 1, n, id), "padded left"});
    }
    out.push_back({{FnExpr::mul(packed, k(3)), ""}, coords_through(n, 0, n, FnExpr::div(id, 3)), "scaled"});
    out.push_back({{FnExpr::add(packed, k(5)), ""}, coords_through(n, 0, n, FnExpr::monus(id, k(5))), "shifted"});
    out.push_back({{FnExpr::pair(packed, idx), ""}, coords_through(n, 0, n, FnExpr::p1(id)), "nested left"});
    out.push_back({{FnExpr::pair(FnExpr::mul(idx, idx), packed), ""}, coords_through(n, 0, n, FnExpr::p2(id)),
                   "nested right"});
    {
        std::uint64_t j = perturb_below == 0 ? 0 : (n * 7 + 3) % perturb_below;
        out.push_back({{FnExpr::ifeq(idx, k(j), k(0), packed), ""}, coords_through(n, 0, n, id),
                       "changed at index " + std::to_string(j)});
    }
    out.push_back({{FnExpr::pair(packed, packed), ""}, coords_through(n, 0, n, FnExpr::p2(id)), "duplicated"});
    {
        auto twice = s;
        twice.insert(twice.end(), s.begin(), s.end());
        out.push_back({{pack(twice), ""}, coords_through(2 * n, n, n, id), "second copy"});
    }
    {
        auto twice = s;
        twice.insert(twice.end(), s.begin(), s.end());
        out.push_back({{FnExpr::mul(pack(twice), k(2)), ""}, coords_through(2 * n, 0, n, FnExpr::div(id, 2)),
                       "first copy scaled"});
    }
    if (out.size() > count) out.resize(count);
    return out;
}

bool decomposition_valid(const Model& m, const Decomposition& d, std::span<const Hyperpoint> args) {
    if (d.coords.size() != args.size()) return false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!m.eq(Model::star_apply(d.coords[i], d.zeta), args[i])) return false;
    }
    return true;
}

Hyperpoint star_nary_via(const NaryFn& phi, const Decomposition& d) {
    check_arity(phi, d.coords.size());
    return Model::star_apply(compose(phi.body, pack(d.coords)), d.zeta);
}

Hyperpoint star_nary_parametric(const NaryFn& phi, std::span<const Hyperpoint> args, const Model* verify) {
    check_arity(phi, args.size());
    Decomposition d = canonical_decomposition(args);
    if (verify && !decomposition_valid(*verify, d, args)) {
        throw ConsistencyViolation("canonical decomposition fails a projection equation for " + d.zeta.text());
    }
    return star_nary_via(phi, d);
}

bool star_rel(const Model& m, const NaryFn& indicator, std::span<const Hyperpoint> args) {
    return m.eq(star_nary_direct(indicator, args), Model::standard(1));
}

NaryFn compose_nary(const NaryFn& phi, std::span<const NaryFn> psis) {
    check_arity(phi, psis.size());
    if (psis.empty()) throw std::invalid_argument("composition needs at least one inner function");
    std::vector<FnExpr> bodies;
    std::string name = phi.name + "(";
    for (const auto& p : psis) {
        if (p.arity != psis.front().arity) throw std::invalid_argument("inner functions differ in arity");
        bodies.push_back(p.body);
        name += (bodies.size() > 1 ? "," : "") + p.name;
    }
    return {name + ")", psis.front().arity, compose(phi.body, pack(bodies))};
}

}  // namespace fext
