#include "fext/suites.hpp"

#include <algorithm>
#include <stdexcept>

#include "fext/keisler.hpp"
#include "fext/nary.hpp"
#include "fext/random.hpp"
#include "fext/topology.hpp"
#include "fext/transfer.hpp"

namespace fext {

void Report::add(std::string suite, std::string check, std::string instance, const CheckOutcome& out) {
    if (std::find(suites_.begin(), suites_.end(), suite) == suites_.end()) suites_.push_back(suite);
    lines_.push_back({std::move(suite), std::move(check), std::move(instance), out.verdict, out.witness});
    order_.push_back({});
}

void Report::note(std::string suite, std::string text) {
    if (std::find(suites_.begin(), suites_.end(), suite) == suites_.end()) suites_.push_back(suite);
    notes_.emplace_back(std::move(suite), std::move(text));
    order_.push_back("n");
}

namespace {

void count(Tally& t, Verdict v) {
    switch (v) {
        case Verdict::pass: ++t.pass; break;
        case Verdict::fail: ++t.fail; break;
        case Verdict::undecidable: ++t.undecidable; break;
    }
}

std::string tally_text(const Tally& t) {
    return "pass=" + std::to_string(t.pass) + " fail=" + std::to_string(t.fail) +
           " undecidable=" + std::to_string(t.undecidable);
}

// Tabs and newlines would break the line format.
std::string field(std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

}  // namespace

Tally Report::tally() const {
    Tally t;
    for (const auto& l : lines_) count(t, l.verdict);
    return t;
}

Tally Report::tally_suite(std::string_view suite) const {
    Tally t;
    for (const auto& l : lines_) {
        if (l.suite == suite) count(t, l.verdict);
    }
    return t;
}

Tally Report::tally_check(std::string_view check) const {
    Tally t;
    for (const auto& l : lines_) {
        if (l.check == check) count(t, l.verdict);
    }
    return t;
}

const ReportLine* Report::first_failure(std::string_view check) const {
    for (const auto& l : lines_) {
        if (l.check == check && l.verdict == Verdict::fail) return &l;
    }
    return nullptr;
}

bool Report::ok(bool strict) const {
    Tally t = tally();
    return t.fail == 0 && (!strict || t.undecidable == 0);
}

std::string Report::to_text() const {
    std::string out;
    std::size_t li = 0;
    std::size_t ni = 0;
    for (const auto& kind : order_) {
        if (kind.empty()) {
            const auto& l = lines_[li++];
            out += field(l.check) + '\t' + field(l.instance) + '\t' + std::string(to_string(l.verdict)) + '\t' +
                   field(l.witness) + '\n';
        } else {
            const auto& [suite, text] = notes_[ni++];
            out += "note\t" + suite + '\t' + field(text) + '\n';
        }
    }
    for (const auto& s : suites_) out += "summary\t" + s + '\t' + tally_text(tally_suite(s)) + '\n';
    out += "summary\ttotal\t" + tally_text(tally()) + '\n';
    return out;
}

namespace {

std::uint64_t suite_seed(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
    return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

struct Context {
    const Scenario& sc;
    Model& m;
    Report& report;
    std::string suite;
    Rng rng;
    std::vector<Hyperpoint> points;  // scenario points with omega first
    std::vector<FnExpr> functions;   // scenario unary functions

    Context(const Scenario& s, Model& model, Report& r, std::string name)
        : sc(s), m(model), report(r), suite(std::move(name)), rng(suite_seed(s.seed, suite)) {
        points.push_back({Model::omega().seq, "omega"});
        for (const auto& p : sc.points) {
            if (p.name != "omega") points.push_back(p);
        }
        functions = sc.unary_functions();
    }

    std::uint64_t count(const std::string& key, std::uint64_t fallback) const { return sc.count(key, fallback); }

    void add(const std::string& check, const std::string& instance, const CheckOutcome& out) {
        report.add(suite, check, instance, out);
    }
    void note(const std::string& text) { report.note(suite, text); }

    Hyperpoint point() {
        switch (uniform(rng, 4)) {
            case 0: return points[uniform(rng, points.size())];
            case 1: return Model::standard(uniform(rng, 50));
            default: return {random_fn(rng, {.max_depth = 2}), ""};
        }
    }

    FnExpr function() {
        if (!functions.empty() && coin(rng)) return functions[uniform(rng, functions.size())];
        return random_fn(rng, {.max_depth = 2});
    }
};

CheckOutcome undecidable(const Undecidable& e) { return {Verdict::undecidable, e.what()}; }

// --- axioms -----------------------------------------------------------------

void comp_checks(Context& c, HyperExtension& e) {
    const std::uint64_t upto = c.count("comp_upto", 1000);
    for (std::uint64_t i = 0, n = c.count("comp", 1000); i < n; ++i) {
        FnExpr f = c.function();
        FnExpr g = c.function();
        Hyperpoint xi = c.point();
        std::string inst = "#" + std::to_string(i) + " f=" + f.to_string() + " g=" + g.to_string() + " xi=" + xi.label();
        Hyperpoint lhs = Model::star_apply(g, Model::star_apply(f, xi));
        Hyperpoint rhs = Model::star_apply(compose(g, f), xi);
        std::optional<std::uint64_t> bad;
        for (std::uint64_t k = 0; k <= upto && !bad; ++k) {
            if (lhs.at(Nat(k)) != rhs.at(Nat(k))) bad = k;
        }
        if (bad) {
            c.add("comp", inst, CheckOutcome::bad("sequences differ at n=" + std::to_string(*bad)));
            continue;
        }
        c.add("comp", inst, check_comp(e, f, g, xi));
    }
}

void diag_checks(Context& c, HyperExtension& e) {
    for (std::uint64_t i = 0, n = c.count("diag", 500); i < n; ++i) {
        FnExpr f = c.function();
        FnExpr g = coin(c.rng) ? c.function() : compose(FnExpr::mod(FnExpr::var(), Nat(2 + uniform(c.rng, 4))), f);
        Hyperpoint xi = c.point();
        std::string inst = "#" + std::to_string(i) + " f=" + f.to_string() + " g=" + g.to_string() + " xi=" + xi.label();
        try {
            c.add("diag", inst, check_diag(e, f, g, xi));
        } catch (const MalformedIndicator& ex) {
            c.add("diag", inst, CheckOutcome::bad(std::string("malformed indicator: ") + ex.what()));
        }
    }
}

void dir_checks(Context& c) {
    for (std::uint64_t i = 0, n = c.count("dir", 100); i < n; ++i) {
        Hyperpoint xi = c.point();
        Hyperpoint eta = c.point();
        c.add("dir", "#" + std::to_string(i) + " xi=" + xi.label() + " eta=" + eta.label(), check_dir(c.m, xi, eta));
    }
}

void irredundancy_checks(Context& c, HyperExtension& e) {
    std::vector<FnExpr> fns{FnExpr::var()};
    for (const auto& f : c.functions) fns.push_back(f);
    for (const auto& p : c.points) {
        std::vector<Hyperpoint> others;
        for (const auto& q : c.points) {
            if (q.name != p.name) others.push_back(q);
        }
        // reachable from another point, or trivially from itself
        CheckOutcome out = check_irredundant(e, p, std::span<const FnExpr>(fns), std::span<const Hyperpoint>(others));
        if (out.verdict == Verdict::fail) {
            out = check_irredundant(e, p, std::span<const FnExpr>(fns), std::span<const Hyperpoint>(&p, 1));
        }
        c.add("irredundant", p.label(), out);
    }
}

void boolean_checks(Context& c) {
    const std::uint64_t npoints = c.count("boolean_points", 20);
    const std::uint64_t trace_upto = c.count("trace_upto", 1000);
    for (std::uint64_t i = 0, n = c.count("boolean", 200); i < n; ++i) {
        StarSet a{random_indicator(c.rng), "A"};
        StarSet b{random_indicator(c.rng), "B"};
        std::string inst = "#" + std::to_string(i) + " A=" + a.text() + " B=" + b.text();
        StarSet u = set_union(a, b);
        StarSet x = set_intersection(a, b);
        StarSet na = set_complement(a);
        CheckOutcome out = CheckOutcome::ok();
        try {
            for (std::uint64_t k = 0; k < npoints && out.verdict == Verdict::pass; ++k) {
                Hyperpoint xi = c.point();
                bool ia = c.m.member(xi, a);
                bool ib = c.m.member(xi, b);
                std::string at = " at xi=" + xi.label();
                if (c.m.member(xi, u) != (ia || ib)) out = CheckOutcome::bad("union" + at);
                else if (c.m.member(xi, x) != (ia && ib)) out = CheckOutcome::bad("intersection" + at);
                else if (c.m.member(xi, na) == ia) out = CheckOutcome::bad("complement" + at);
            }
        } catch (const Undecidable& ex) {
            out = undecidable(ex);
        }
        c.add("boolean", inst, out);

        // *A restricted to the standard points is A
        CheckOutcome trace = CheckOutcome::ok();
        try {
            for (std::uint64_t v = 0; v <= trace_upto && trace.verdict == Verdict::pass; ++v) {
                bool in = c.m.member(Model::standard(v), a);
                if (in != (a.indicator.eval(Nat(v)) == Nat(1))) trace = CheckOutcome::bad("x=" + std::to_string(v));
            }
        } catch (const Undecidable& ex) {
            trace = undecidable(ex);
        }
        c.add("standard-trace", inst, trace);
    }
}

void equalizer_checks(Context& c) {
    for (std::uint64_t i = 0, n = c.count("equalizer", 500); i < n; ++i) {
        FnExpr f = c.function();
        FnExpr g = coin(c.rng) ? c.function() : compose(FnExpr::mod(FnExpr::var(), Nat(2 + uniform(c.rng, 3))), f);
        Hyperpoint xi = c.point();
        std::string inst = "#" + std::to_string(i) + " f=" + f.to_string() + " g=" + g.to_string() + " xi=" + xi.label();
        StarSet eqz = Model::equalizer(f, g);
        Hyperpoint fx = Model::star_apply(f, xi);
        Hyperpoint gx = Model::star_apply(g, xi);
        std::string mtext = Model::membership(xi, eqz).text();
        std::string etext = Model::agreement(fx, gx).text();
        if (mtext != etext) {
            c.add("equalizer", inst, CheckOutcome::bad("predicates differ: " + mtext + " vs " + etext));
            continue;
        }
        try {
            bool in = c.m.member(xi, eqz);
            bool same = c.m.eq(fx, gx);
            c.add("equalizer", inst,
                  in == same ? CheckOutcome::ok(in ? "member" : "non-member")
                             : CheckOutcome::bad(std::string("member=") + (in ? "yes" : "no") +
                                                 " eq=" + (same ? "yes" : "no")));
        } catch (const Undecidable& ex) {
            c.add("equalizer", inst, undecidable(ex));
        }
    }
}

// Points likely to take finitely many values.
Hyperpoint bounded_point(Context& c) {
    switch (uniform(c.rng, 3)) {
        case 0: return Model::standard(uniform(c.rng, 12));
        case 1: return {FnExpr::mod(c.point().seq, Nat(2 + uniform(c.rng, 9))), ""};
        default: return c.point();
    }
}

void finite_checks(Context& c) {
    for (std::uint64_t i = 0, n = c.count("finite", 100); i < n; ++i) {
        Hyperpoint xi = bounded_point(c);
        std::vector<Nat> elems;
        for (std::uint64_t k = 0, sz = 1 + uniform(c.rng, 8); k < sz; ++k) {
            Nat v(uniform(c.rng, 12));
            if (std::find(elems.begin(), elems.end(), v) == elems.end()) elems.push_back(v);
        }
        std::sort(elems.begin(), elems.end());
        std::string inst = "#" + std::to_string(i) + " xi=" + xi.label() + " A=" + finite_set(elems).text();
        try {
            auto r = c.m.decide_finite(xi, elems);
            std::size_t accepted = 0;
            for (const auto& v : elems) accepted += c.m.eq(xi, Model::standard(v)) ? 1 : 0;
            bool in = c.m.member(xi, finite_set(elems));
            if (accepted != (in ? 1U : 0U) || r.has_value() != in) {
                c.add("finite", inst,
                      CheckOutcome::bad("accepted level sets=" + std::to_string(accepted) +
                                        " member=" + (in ? "yes" : "no")));
            } else {
                c.add("finite", inst, CheckOutcome::ok(r ? "xi=" + r->to_string() : "outside"));
            }
        } catch (const Undecidable& ex) {
            c.add("finite", inst, undecidable(ex));
        }
    }
}

ToyPoint toy_target(ToyExtension& t, const std::string& ref) {
    if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        return t.standard(Nat::parse(ref));
    }
    return t.add_point(ref);
}

void toy_checks(Context& c) {
    const ToySpec& spec = *c.sc.toy;
    std::vector<Hyperpoint> pts;
    for (const auto& name : spec.points) pts.push_back(*c.sc.resolve_point(name));
    std::vector<FnExpr> fns{FnExpr::var()};
    for (const auto& f : spec.functions) {
        if (std::find(fns.begin(), fns.end(), f) == fns.end()) fns.push_back(f);
    }
    ToyExtension t = snapshot(c.m, pts, fns);
    for (const auto& entry : spec.entries) t.set(entry.f, entry.at, toy_target(t, entry.to));
    for (const auto& [name, of] : spec.shadows) t.shadow(name, of);
    c.note("toy: " + std::to_string(t.points().size()) + " points, " + std::to_string(t.entry_count()) +
           " entries, " + std::to_string(spec.entries.size()) + " overrides, " + std::to_string(spec.shadows.size()) +
           " shadows");

    for (const auto& root : t.roots()) {
        ToyPoint xi{std::nullopt, root};
        for (const auto& f : t.functions()) {
            for (const auto& g : t.functions()) {
                std::string inst = "f=" + f.to_string() + " g=" + g.to_string() + " xi=" + root;
                try {
                    c.add("toy-comp", inst, check_comp(t, f, g, xi));
                } catch (const NotSupported& ex) {
                    c.add("toy-comp", inst, {Verdict::undecidable, ex.what()});
                }
                try {
                    c.add("toy-diag", inst, check_diag(t, f, g, xi));
                } catch (const MalformedIndicator& ex) {
                    c.add("toy-diag", inst, CheckOutcome::bad(std::string("malformed indicator: ") + ex.what()));
                } catch (const NotSupported& ex) {
                    c.add("toy-diag", inst, {Verdict::undecidable, ex.what()});
                }
            }
        }
    }
    std::vector<ToyPoint> carrier;
    for (const auto& name : t.points()) carrier.push_back({std::nullopt, name});
    for (const auto& p : carrier) {
        c.add("toy-irredundant", p.name,
              check_irredundant(t, p, std::span<const FnExpr>(t.functions()), std::span<const ToyPoint>(carrier)));
    }
}

void axioms_suite(Context& c) {
    HyperExtension e(c.m);
    comp_checks(c, e);
    diag_checks(c, e);
    dir_checks(c);
    irredundancy_checks(c, e);
    boolean_checks(c);
    equalizer_checks(c);
    finite_checks(c);
    if (c.sc.toy) toy_checks(c);
}

// --- nary -------------------------------------------------------------------

void nary_suite(Context& c) {
    std::vector<NaryFn> declared[4];
    for (const auto& fn : c.sc.registry.all()) {
        if (fn.arity >= 1 && fn.arity <= 3) declared[fn.arity].push_back(fn);
    }
    const std::uint64_t alternatives = c.count("nary_decompositions", 10);
    for (std::uint64_t i = 0, n = c.count("nary", 500); i < n; ++i) {
        std::size_t arity = 1 + uniform(c.rng, 3);
        NaryFn phi = !declared[arity].empty() && coin(c.rng)
                         ? declared[arity][uniform(c.rng, declared[arity].size())]
                         : random_nary(c.rng, arity, {.max_depth = 2});
        std::vector<Hyperpoint> args;
        for (std::size_t k = 0; k < arity; ++k) args.push_back(c.point());
        std::string inst = "#" + std::to_string(i) + " phi=" + (phi.name.empty() ? to_string(phi) : phi.name) + " args=";
        for (std::size_t k = 0; k < arity; ++k) inst += (k ? ", " : "") + args[k].label();
        try {
            Hyperpoint direct = star_nary_direct(phi, args);
            Hyperpoint param = star_nary_parametric(phi, args, &c.m);
            c.add("nary-routes", inst,
                  c.m.eq(direct, param) ? CheckOutcome::ok()
                                        : CheckOutcome::bad("direct=" + direct.text() + " parametric=" + param.text()));
            CheckOutcome alt = CheckOutcome::ok();
            std::size_t used = 0;
            for (const auto& d : alternative_decompositions(args, alternatives)) {
                if (!decomposition_valid(c.m, d, args)) {
                    alt = CheckOutcome::bad("invalid decomposition " + d.label);
                    break;
                }
                ++used;
                Hyperpoint via = star_nary_via(phi, d);
                if (!c.m.eq(via, direct)) {
                    alt = CheckOutcome::bad(d.label + " gives " + via.text());
                    break;
                }
            }
            if (alt.verdict == Verdict::pass) alt.witness = std::to_string(used) + " decompositions";
            c.add("nary-decompositions", inst, alt);
        } catch (const Undecidable& ex) {
            c.add("nary-routes", inst, undecidable(ex));
        }
    }

    // composition commutes with the star
    for (std::uint64_t i = 0, n = c.count("nary_compose", 100); i < n; ++i) {
        std::size_t inner = 1 + uniform(c.rng, 3);
        std::size_t outer = 1 + uniform(c.rng, 2);
        NaryFn phi = random_nary(c.rng, outer, {.max_depth = 2});
        std::vector<NaryFn> psis;
        for (std::size_t k = 0; k < outer; ++k) psis.push_back(random_nary(c.rng, inner, {.max_depth = 2}));
        std::vector<Hyperpoint> args;
        for (std::size_t k = 0; k < inner; ++k) args.push_back(c.point());
        std::vector<Hyperpoint> mid;
        for (const auto& psi : psis) mid.push_back(star_nary_parametric(psi, args));
        std::string inst = "#" + std::to_string(i) + " phi=" + to_string(phi);
        try {
            Hyperpoint lhs = star_nary_parametric(compose_nary(phi, psis), args);
            Hyperpoint rhs = star_nary_parametric(phi, mid);
            c.add("nary-compose", inst,
                  c.m.eq(lhs, rhs) ? CheckOutcome::ok() : CheckOutcome::bad(lhs.text() + " vs " + rhs.text()));
        } catch (const Undecidable& ex) {
            c.add("nary-compose", inst, undecidable(ex));
        }
    }
}

// --- transfer ---------------------------------------------------------------

void transfer_suite(Context& c) {
    for (const auto& spec : c.sc.formulas) {
        std::string inst = "line " + std::to_string(spec.line) + ": " + to_string(spec.formula);
        HyperEnv henv;
        BaseEnv benv;
        bool standard = true;
        try {
            for (const auto& [var, ref] : spec.env) {
                Hyperpoint p = *c.sc.resolve_point(ref);
                henv.emplace(var, p);
                if (auto v = c.m.standard_part(p)) benv.emplace(var, *v);
                else standard = false;
            }
            if (standard) {
                c.add("formula", inst, transfer_check(c.m, spec.formula, benv));
            } else {
                bool v = eval_hyper(c.m, spec.formula, henv);
                bool nv = eval_hyper(c.m, make_not(spec.formula), henv);
                c.add("formula", inst,
                      v != nv ? CheckOutcome::ok(v ? "true" : "false")
                              : CheckOutcome::bad("formula and its negation both " + std::string(v ? "true" : "false")));
            }
        } catch (const Undecidable& ex) {
            c.add("formula", inst, undecidable(ex));
        }
    }

    const std::vector<std::string> vars{"x", "y"};
    for (std::uint64_t i = 0, n = c.count("transfer", 200); i < n; ++i) {
        Formula f = random_formula(c.rng, vars, &c.sc.registry);
        BaseEnv env{{"x", Nat(uniform(c.rng, 30))}, {"y", Nat(uniform(c.rng, 30))}};
        std::string inst = "#" + std::to_string(i) + " " + to_string(f) + " x=" + env["x"].to_string() +
                           " y=" + env["y"].to_string();
        try {
            c.add("transfer-standard", inst, transfer_check(c.m, f, env));
        } catch (const Undecidable& ex) {
            c.add("transfer-standard", inst, undecidable(ex));
        }
    }

    RandomFormulaOptions qf{.max_depth = 2, .allow_quantifiers = false};
    for (std::uint64_t i = 0, n = c.count("connectives", 200); i < n; ++i) {
        HyperEnv env{{"x", c.point()}, {"y", c.point()}};
        Formula a = random_formula(c.rng, vars, &c.sc.registry, qf);
        Formula b = random_formula(c.rng, vars, &c.sc.registry, qf);
        std::string inst = "#" + std::to_string(i) + " a=" + to_string(a) + " b=" + to_string(b) +
                           " x=" + env.at("x").label() + " y=" + env.at("y").label();
        try {
            bool va = eval_hyper(c.m, a, env);
            bool vb = eval_hyper(c.m, b, env);
            CheckOutcome out = CheckOutcome::ok();
            if (eval_hyper(c.m, make_not(a), env) == va) out = CheckOutcome::bad("negation");
            else if (eval_hyper(c.m, make_binary(FormulaNode::Kind::conjunction, a, b), env) != (va && vb))
                out = CheckOutcome::bad("conjunction");
            else if (eval_hyper(c.m, make_binary(FormulaNode::Kind::disjunction, a, b), env) != (va || vb))
                out = CheckOutcome::bad("disjunction");
            c.add("connectives", inst, out);
        } catch (const Undecidable& ex) {
            c.add("connectives", inst, undecidable(ex));
        }
    }
}

// --- keisler ----------------------------------------------------------------

std::string set_text(const Fragment& frag, const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i : idx) s += (s.empty() ? "" : ", ") + frag.label(i);
    return "{" + s + "}";
}

void keisler_suite(Context& c) {
    if (!c.sc.fragment) {
        c.note("no [fragment] section; suite skipped");
        return;
    }
    const FragmentSpec& spec = *c.sc.fragment;
    std::vector<Hyperpoint> seeds;
    for (const auto& name : spec.points) seeds.push_back(*c.sc.resolve_point(name));
    Fragment frag(c.m, spec.functions, seeds, spec.depth, spec.sample);
    c.note("fragment: " + std::to_string(frag.points().size()) + " points, " +
           std::to_string(frag.functions().size()) + " functions, sample 0.." +
           std::to_string(frag.sample().size() - 1));

    for (std::size_t a = 0; a < frag.points().size(); ++a) {
        const CheckSet& cs = frag.check_set(a);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < frag.points().size(); ++i) {
            if (cs.contains(i)) members.push_back(i);
        }
        c.note("check set of " + frag.label(a) + ": " + set_text(frag, members));
    }

    InclusionReport inc = check_inclusion_law(frag);
    std::string inc_inst = std::to_string(inc.pairs_checked) + " pairs (alpha in check set of beta)";
    c.add("inclusion", inc_inst,
          inc.holds() ? CheckOutcome::ok()
                      : CheckOutcome::bad(std::to_string(inc.pairs_violating) + " violating pairs (" +
                                          std::to_string(inc.violating_inside) + " inside); " + inc.witness));

    std::size_t decisions = 0;
    std::size_t undecided = 0;
    for (std::size_t a = 0; a < frag.seed_count(); ++a) {
        for (const auto& g : frag.functions()) {
            ClaimReport r = main_claim_check(frag, a, g);
            decisions += r.decisions();
            undecided += r.undecided();
            std::string inst = "alpha=" + frag.label(a) + " g=" + g.to_string() + " beta=" + frag.label(r.beta);
            if (r.forward_ok()) {
                c.add("claim-forward", inst, CheckOutcome::ok());
            } else if (!r.forward_failures.empty()) {
                c.add("claim-forward", inst,
                      CheckOutcome::bad("equalizer rejected at " + set_text(frag, r.forward_failures)));
            } else if (r.forward.verdict == Verdict3::undecided) {
                c.add("claim-forward", inst,
                      {Verdict::undecidable, r.forward.conflict ? "set and complement both contain a check set"
                                                                : "no check set inside either side"});
            } else {
                c.add("claim-forward", inst, CheckOutcome::bad("claim set rejected"));
            }
            for (const auto& [neg, out] : r.negatives) {
                std::string ninst = inst + " beta'=" + frag.label(neg);
                switch (out.verdict) {
                    case Verdict3::reject: c.add("claim-negative", ninst, CheckOutcome::ok("rejected")); break;
                    case Verdict3::accept: c.add("claim-negative", ninst, CheckOutcome::bad("accepted")); break;
                    case Verdict3::undecided: c.add("claim-negative", ninst, {Verdict::undecidable, "undecided"}); break;
                }
            }
        }
    }
    c.note("claim decisions " + std::to_string(decisions) + ", undecided " + std::to_string(undecided) + " (" +
           std::to_string(decisions ? (100 * undecided + decisions / 2) / decisions : 0) + "%)");

    // phi = g(alpha-hat) for a few g of the fragment
    for (std::size_t a = 0; a < frag.seed_count(); ++a) {
        for (std::size_t k = 0; k < frag.functions().size(); k += std::max<std::size_t>(1, frag.functions().size() / 3)) {
            const FnExpr& g = frag.functions()[k];
            const CheckSet& cs = frag.check_set(a);
            std::string inst = "alpha=" + frag.label(a) + " phi=" + g.to_string() + " . alpha-hat";
            std::vector<FnExpr> slices;
            for (std::size_t xi = 0; xi < frag.points().size(); ++xi) {
                slices.push_back(cs.contains(xi) ? compose(g, *cs.witness[xi]) : g);
            }
            try {
                ProbeReport p = surjectivity_probe(frag, a, [&](std::size_t xi) { return slices[xi]; });
                std::string w = "beta=" + frag.label(p.beta) + " own slice " + (p.own_slice_exact ? "exact" : "inexact");
                switch (p.agreement.verdict) {
                    case Verdict3::accept: c.add("surjectivity", inst, CheckOutcome::ok(w)); break;
                    case Verdict3::reject: c.add("surjectivity", inst, CheckOutcome::bad(w + ", agreement rejected")); break;
                    case Verdict3::undecided: c.add("surjectivity", inst, {Verdict::undecidable, w}); break;
                }
            } catch (const NotRepresentable& ex) {
                c.add("surjectivity", inst, {Verdict::undecidable, ex.what()});
            }
        }
    }
}

// --- topology ---------------------------------------------------------------

BasicClosed residue_cover(std::uint64_t k, std::uint64_t skip) {
    BasicClosed e;
    for (std::uint64_t r = 0; r < k; ++r) {
        if (r != skip) e.pairs.emplace_back(FnExpr::mod(FnExpr::var(), Nat(k)), Model::standard(r));
    }
    return e;
}

void cover_line(Context& c, const std::string& check, const BasicClosed& e, std::span<const Hyperpoint> sample,
                std::uint64_t upto, Verdict3 expected) {
    CoverResult r = covers_standard(c.m, e, sample, upto);
    std::string w = std::string(to_string(r.verdict));
    if (r.witness) w += " x=" + r.witness->to_string();
    if (!r.non_members.empty()) w += " non-members=" + std::to_string(r.non_members.size());
    bool good = r.verdict == expected;
    if (good && r.witness) {
        // the witness must be uncovered
        for (const auto& [f, eta] : e.pairs) {
            if (f.eval(*r.witness) == *c.m.standard_part(eta)) good = false;
        }
    }
    if (r.verdict == Verdict3::undecided) c.add(check, e.text(), {Verdict::undecidable, w});
    else c.add(check, e.text(), good ? CheckOutcome::ok(w) : CheckOutcome::bad(w));
}

void topology_suite(Context& c) {
    const std::uint64_t upto = c.sc.oracle.horizon;
    std::vector<Hyperpoint> sample = c.points;
    for (std::uint64_t i = 0; i < 8; ++i) sample.push_back(c.point());

    for (const auto& nc : c.sc.closed) {
        for (const auto& p : c.points) {
            try {
                bool in = closed_member(c.m, p, nc.set);
                c.add("closed-member", nc.name + " " + nc.set.text() + " xi=" + p.label(),
                      CheckOutcome::ok(in ? "member" : "non-member"));
            } catch (const Undecidable& ex) {
                c.add("closed-member", nc.name + " xi=" + p.label(), undecidable(ex));
            }
        }
        bool all_standard = std::all_of(nc.set.pairs.begin(), nc.set.pairs.end(),
                                        [&](const auto& pr) { return c.m.standard_part(pr.second).has_value(); });
        if (all_standard) {
            CoverResult r = covers_standard(c.m, nc.set, sample, upto);
            std::string w = std::string(to_string(r.verdict));
            if (r.witness) w += " x=" + r.witness->to_string();
            c.add("covers", nc.name + " " + nc.set.text(),
                  r.verdict == Verdict3::undecided ? CheckOutcome{Verdict::undecidable, w} : CheckOutcome::ok(w));
        }
    }

    for (const auto& p : c.points) {
        c.add("separation", p.label(),
              closed_member(c.m, p, separating_set(p)) ? CheckOutcome::ok() : CheckOutcome::bad("not a member"));
    }

    // engineered covers: residue classes and indicator partitions
    std::uint64_t made = 0;
    for (std::uint64_t k = 2; made < 5; ++k, ++made) {
        cover_line(c, "covers-yes", residue_cover(k, k), sample, upto, Verdict3::accept);
        cover_line(c, "covers-no", residue_cover(k, uniform(c.rng, k)), sample, upto, Verdict3::reject);
    }
    while (made < 10) {
        FnExpr a = random_indicator(c.rng);
        bool full = true;
        bool empty = true;
        for (std::uint64_t x = 0; x <= upto && (full || empty); ++x) {
            bool one = a.eval(Nat(x)) == Nat(1);
            full = full && one;
            empty = empty && !one;
        }
        if (full || empty) continue;  // no miss to find
        BasicClosed part{{{a, Model::standard(1)}, {FnExpr::monus(FnExpr::constant(1), a), Model::standard(1)}}};
        cover_line(c, "covers-yes", part, sample, upto, Verdict3::accept);
        cover_line(c, "covers-no", BasicClosed{{{a, Model::standard(1)}}}, sample, upto, Verdict3::reject);
        ++made;
    }

    for (std::uint64_t i = 0, n = c.count("continuity", 200); i < n; ++i) {
        FnExpr f = c.function();
        BasicClosed e;
        for (std::uint64_t k = 0, np = 1 + uniform(c.rng, 3); k < np; ++k) e.pairs.emplace_back(c.function(), c.point());
        Hyperpoint xi = c.point();
        std::string inst = "#" + std::to_string(i) + " f=" + f.to_string() + " E=" + e.text() + " xi=" + xi.label();
        try {
            bool lhs = closed_member(c.m, Model::star_apply(f, xi), e);
            bool rhs = closed_member(c.m, xi, star_preimage(f, e));
            c.add("continuity", inst,
                  lhs == rhs ? CheckOutcome::ok(lhs ? "member" : "non-member")
                             : CheckOutcome::bad(std::string("image ") + (lhs ? "in" : "not in") + " E, point " +
                                                 (rhs ? "in" : "not in") + " preimage"));
        } catch (const Undecidable& ex) {
            c.add("continuity", inst, undecidable(ex));
        }
    }
}

}  // namespace

void run_suite(const std::string& name, const Scenario& sc, Model& m, Report& report) {
    Context c(sc, m, report, name);
    if (name == "axioms") axioms_suite(c);
    else if (name == "nary") nary_suite(c);
    else if (name == "transfer") transfer_suite(c);
    else if (name == "keisler") keisler_suite(c);
    else if (name == "topology") topology_suite(c);
    else throw std::invalid_argument("unknown suite '" + name + "'");
    const Oracle& o = m.oracle();
    c.note("oracle: " + std::to_string(o.query_count()) + " queries, " + std::to_string(o.log().size()) +
           " decisions, " + std::to_string(o.survivor_count()) + " survivors" +
           (o.principal_since() ? ", principal since decision " + std::to_string(*o.principal_since()) : ""));
}

Report run_suites(const Scenario& sc, Oracle& oracle, const std::vector<std::string>& selection) {
    const std::vector<std::string>& wanted = !selection.empty() ? selection : sc.suites;
    for (const auto& s : wanted) {
        if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
            throw std::invalid_argument("unknown suite '" + s + "'");
        }
    }
    Model m(oracle);
    Report report;
    for (const auto& s : all_suites()) {
        if (wanted.empty() || std::find(wanted.begin(), wanted.end(), s) != wanted.end()) run_suite(s, sc, m, report);
    }
    return report;
}

}  // namespace fext
