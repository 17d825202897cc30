#include "fext/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fext/errors.hpp"

namespace fext {

std::optional<Hyperpoint> Scenario::resolve_point(std::string_view ref) const {
    for (const auto& p : points) {
        if (p.name == ref) return p;
    }
    if (ref == "omega") return Model::omega();
    if (!ref.empty() && std::all_of(ref.begin(), ref.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return Model::standard(Nat::parse(ref));
    }
    return std::nullopt;
}

std::vector<FnExpr> Scenario::unary_functions() const {
    std::vector<FnExpr> out;
    for (const auto& fn : registry.all()) {
        if (fn.arity == 1) out.push_back(fn.body);
    }
    return out;
}

std::uint64_t Scenario::count(const std::string& key, std::uint64_t fallback) const {
    auto it = counts.find(key);
    return it == counts.end() ? fallback : it->second;
}

FnExpr parse_function_ref(std::string_view text, const Registry& registry) {
    if (const NaryFn* fn = registry.find(text); fn && fn->arity == 1) return fn->body;
    return parse_fn(text, {.registry = &registry});
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_name(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// The message of a SyntaxError without its "line:col: " prefix.
std::string bare_message(const SyntaxError& e) {
    std::string_view w = e.what();
    auto first = w.find(": ");
    return std::string(first == std::string_view::npos ? w : w.substr(first + 2));
}

class LineParser {
public:
    LineParser(std::string_view line, std::size_t number, std::size_t offset) : line_(line), number_(number), offset_(offset) {}

    [[noreturn]] void fail(const std::string& msg, std::size_t col = 0) const {
        throw SyntaxError(msg, number_, offset_ + col + 1);
    }

    std::size_t column_of(std::string_view part) const {
        return static_cast<std::size_t>(part.data() - line_.data());
    }

    /// Runs `parse` on a piece of the line, moving any SyntaxError to the
    /// piece's position.
    template <class F>
    auto within(std::string_view part, F&& parse) const {
        try {
            return parse(part);
        } catch (const SyntaxError& e) {
            throw SyntaxError(bare_message(e), number_, offset_ + column_of(part) + e.column());
        } catch (const std::invalid_argument& e) {
            fail(e.what(), column_of(part));
        }
    }

    /// `key = value`
    std::pair<std::string_view, std::string_view> key_value() const {
        auto eq = line_.find('=');
        if (eq == std::string_view::npos) fail("expected 'key = value'");
        auto key = trim(line_.substr(0, eq));
        if (!is_name(key)) fail("expected a key before '='");
        return {key, trim(line_.substr(eq + 1))};
    }

    std::uint64_t number(std::string_view v) const {
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc() || ptr != v.data() + v.size()) fail("expected a natural number", column_of(v));
        return out;
    }

    /// Splits on commas outside parentheses and brackets.
    std::vector<std::string_view> split(std::string_view s, char sep = ',') const {
        std::vector<std::string_view> out;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            char c = s[i];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (c == sep && depth == 0) {
                out.push_back(trim(s.substr(start, i - start)));
                start = i + 1;
            }
        }
        out.push_back(trim(s.substr(start)));
        if (out.size() == 1 && out[0].empty()) out.clear();
        return out;
    }

    std::string_view line() const { return line_; }
    std::size_t number() const { return number_; }

private:
    std::string_view line_;
    std::size_t number_;
    std::size_t offset_;
};

class ScenarioParser {
public:
    Scenario run(std::string_view text) {
        std::size_t number = 0;
        std::string section;
        while (!text.empty()) {
            auto nl = text.find('\n');
            std::string_view raw = text.substr(0, nl);
            text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
            ++number;
            if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
            std::string_view body = trim(raw);
            if (body.empty()) continue;
            std::size_t offset = static_cast<std::size_t>(body.data() - raw.data());
            LineParser lp(body, number, offset);
            if (body.front() == '[') {
                if (body.back() != ']') lp.fail("unterminated section header");
                section = std::string(trim(body.substr(1, body.size() - 2)));
                static const std::vector<std::string> known{"oracle", "functions", "points", "fragment",
                                                            "formulas", "closed", "toy", "suites"};
                if (std::find(known.begin(), known.end(), section) == known.end()) {
                    lp.fail("unknown section [" + section + "]");
                }
                if (section == "fragment" && !s_.fragment) s_.fragment.emplace();
                if (section == "toy" && !s_.toy) s_.toy.emplace();
                continue;
            }
            if (section.empty()) lp.fail("line outside any section");
            if (section == "oracle") oracle(lp);
            if (section == "functions") function(lp);
            if (section == "points") point(lp);
            if (section == "fragment") fragment(lp);
            if (section == "formulas") formula(lp);
            if (section == "closed") closed(lp);
            if (section == "toy") toy(lp);
            if (section == "suites") suites(lp);
        }
        return std::move(s_);
    }

private:
    void oracle(const LineParser& lp) {
        auto [k, v] = lp.key_value();
        if (k == "horizon") {
            s_.oracle.horizon = lp.number(v);
        } else if (k == "floor") {
            s_.oracle.floor = lp.number(v);
        } else if (k == "tiebreak") {
            s_.oracle.tiebreak = lp.within(v, [](std::string_view t) { return TieBreak::parse(t); });
        } else if (k == "seed") {
            s_.seed = lp.number(v);
        } else {
            lp.fail("unknown oracle key '" + std::string(k) + "'");
        }
    }

    void function(const LineParser& lp) {
        NaryFn fn = lp.within(lp.line(), [&](std::string_view t) { return parse_definition(t, &s_.registry); });
        if (s_.registry.find(fn.name)) lp.fail("function '" + fn.name + "' defined twice");
        s_.registry.add(std::move(fn));
    }

    void point(const LineParser& lp) {
        auto [k, v] = lp.key_value();
        std::string name(k);
        if (is_reserved_word(name) || name == "omega") lp.fail("'" + name + "' cannot name a point");
        if (std::any_of(s_.points.begin(), s_.points.end(), [&](const auto& p) { return p.name == name; })) {
            lp.fail("point '" + name + "' defined twice");
        }
        FnExpr seq = lp.within(v, [&](std::string_view t) {
            ParseOptions opts{.registry = &s_.registry, .variables = {{"n", FnExpr::var()}, {"x", FnExpr::var()}}};
            return parse_fn(t, opts);
        });
        s_.points.push_back({std::move(seq), name});
    }

    Hyperpoint point_ref(const LineParser& lp, std::string_view ref) const {
        auto p = s_.resolve_point(ref);
        if (!p) lp.fail("unknown point '" + std::string(ref) + "'", lp.column_of(ref));
        return *p;
    }

    FnExpr function_ref(const LineParser& lp, std::string_view ref) const {
        return lp.within(ref, [&](std::string_view t) { return parse_function_ref(t, s_.registry); });
    }

    void fragment(const LineParser& lp) {
        auto [k, v] = lp.key_value();
        FragmentSpec& f = *s_.fragment;
        if (k == "functions") {
            for (auto ref : lp.split(v)) f.functions.push_back(function_ref(lp, ref));
        } else if (k == "points") {
            for (auto ref : lp.split(v)) {
                point_ref(lp, ref);
                f.points.emplace_back(ref);
            }
        } else if (k == "depth") {
            f.depth = static_cast<int>(lp.number(v));
        } else if (k == "sample") {
            auto dots = v.find("..");
            if (dots == std::string_view::npos || trim(v.substr(0, dots)) != "0") {
                lp.fail("sample must be written 0..N", lp.column_of(v));
            }
            f.sample = lp.number(trim(v.substr(dots + 2))) + 1;
        } else {
            lp.fail("unknown fragment key '" + std::string(k) + "'");
        }
    }

    void formula(const LineParser& lp) {
        std::string_view line = lp.line();
        auto at = line.find('@');
        FormulaSpec spec;
        spec.line = lp.number();
        std::string_view src = trim(line.substr(0, at));
        spec.formula = lp.within(src, [&](std::string_view t) { return parse_formula(t, &s_.registry); });
        if (at != std::string_view::npos) {
            for (auto binding : lp.split(line.substr(at + 1))) {
                auto eq = binding.find('=');
                if (eq == std::string_view::npos) lp.fail("expected 'var = point'", lp.column_of(binding));
                auto var = trim(binding.substr(0, eq));
                auto ref = trim(binding.substr(eq + 1));
                point_ref(lp, ref);
                spec.env.emplace_back(var, ref);
            }
        }
        for (const auto& v : free_variables(spec.formula)) {
            if (std::none_of(spec.env.begin(), spec.env.end(), [&](const auto& b) { return b.first == v; })) {
                lp.fail("free variable '" + v + "' has no binding");
            }
        }
        s_.formulas.push_back(std::move(spec));
    }

    void closed(const LineParser& lp) {
        std::string_view line = lp.line();
        if (line.substr(0, 7) != "closed ") lp.fail("expected 'closed NAME = [(f, point), ...]'");
        auto eq = line.find('=');
        if (eq == std::string_view::npos) lp.fail("expected '='");
        auto name = trim(line.substr(7, eq - 7));
        if (!is_name(name)) lp.fail("expected a name after 'closed'", 7);
        auto list = trim(line.substr(eq + 1));
        if (list.size() < 2 || list.front() != '[' || list.back() != ']') {
            lp.fail("expected a bracketed list", lp.column_of(list));
        }
        NamedClosed nc{std::string(name), {}};
        for (auto item : lp.split(list.substr(1, list.size() - 2))) {
            if (item.size() < 2 || item.front() != '(' || item.back() != ')') {
                lp.fail("expected '(f, point)'", lp.column_of(item));
            }
            auto parts = lp.split(item.substr(1, item.size() - 2));
            if (parts.size() != 2) lp.fail("expected '(f, point)'", lp.column_of(item));
            nc.set.pairs.emplace_back(function_ref(lp, parts[0]), point_ref(lp, parts[1]));
        }
        if (nc.set.pairs.empty()) lp.fail("empty closed set");
        s_.closed.push_back(std::move(nc));
    }

    void toy(const LineParser& lp) {
        ToySpec& t = *s_.toy;
        std::string_view line = lp.line();
        if (line.substr(0, 4) == "set ") {
            auto at = line.find('@');
            auto arrow = line.find("->", at == std::string_view::npos ? 0 : at);
            if (at == std::string_view::npos || arrow == std::string_view::npos) {
                lp.fail("expected 'set f @ point -> value'");
            }
            ToyEntry e;
            e.f = function_ref(lp, trim(line.substr(4, at - 4)));
            e.at = trim(line.substr(at + 1, arrow - at - 1));
            e.to = trim(line.substr(arrow + 2));
            if (!is_name(e.at)) lp.fail("expected a toy point name", lp.column_of(line.substr(at + 1)));
            if (e.to.empty()) lp.fail("expected a value after '->'");
            t.entries.push_back(std::move(e));
            return;
        }
        if (line.substr(0, 7) == "shadow ") {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) lp.fail("expected 'shadow NAME = point'");
            auto name = trim(line.substr(7, eq - 7));
            auto of = trim(line.substr(eq + 1));
            if (!is_name(name) || !is_name(of)) lp.fail("expected 'shadow NAME = point'");
            t.shadows.emplace_back(name, of);
            return;
        }
        auto [k, v] = lp.key_value();
        if (k == "points") {
            for (auto ref : lp.split(v)) {
                point_ref(lp, ref);
                t.points.emplace_back(ref);
            }
        } else if (k == "functions") {
            for (auto ref : lp.split(v)) t.functions.push_back(function_ref(lp, ref));
        } else {
            lp.fail("unknown toy key '" + std::string(k) + "'");
        }
    }

    void suites(const LineParser& lp) {
        std::string_view line = lp.line();
        if (line.find('=') != std::string_view::npos) {
            auto [k, v] = lp.key_value();
            s_.counts[std::string(k)] = lp.number(v);
            return;
        }
        static const std::vector<std::string> known{"axioms", "nary", "transfer", "keisler", "topology"};
        std::string names(line);
        std::replace(names.begin(), names.end(), ',', ' ');
        std::istringstream is(names);
        for (std::string n; is >> n;) {
            if (std::find(known.begin(), known.end(), n) == known.end()) lp.fail("unknown suite '" + n + "'");
            if (std::find(s_.suites.begin(), s_.suites.end(), n) == s_.suites.end()) s_.suites.push_back(n);
        }
    }

    Scenario s_;
};

}  // namespace

Scenario parse_scenario(std::string_view text) { return ScenarioParser().run(text); }

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read scenario " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

}  // namespace fext
