#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fext/funlang.hpp"
#include "fext/hyper.hpp"
#include "fext/oracle.hpp"
#include "fext/topology.hpp"
#include "fext/transfer.hpp"

namespace fext {

struct FragmentSpec {
    std::vector<FnExpr> functions;
    std::vector<std::string> points;
    int depth = 0;
    std::uint64_t sample = 500;
};

struct FormulaSpec {
    Formula formula;
    /// variable -> point name
    std::vector<std::pair<std::string, std::string>> env;
    std::size_t line = 0;
};

struct NamedClosed {
    std::string name;
    BasicClosed set;
};

struct ToyEntry {
    FnExpr f;
    std::string at;
    std::string to;  // a point name or a natural number
};

struct ToySpec {
    std::vector<std::string> points;
    std::vector<FnExpr> functions;
    std::vector<ToyEntry> entries;
    std::vector<std::pair<std::string, std::string>> shadows;  // (new name, original)
};

/// A parsed scenario file.
///
///   [oracle]    horizon = N, floor = N, tiebreak = least | seeded:N, seed = N
///   [functions] def / def2 / def3 lines
///   [points]    name = expr        (sequence in n; x is accepted too)
///   [fragment]  functions = f, ...; points = p, ...; depth = d; sample = 0..N
///   [formulas]  formula @ x = point, ...
///   [closed]    closed E = [(f, point), ...]
///   [toy]       points = ...; functions = ...; set f @ point -> point|N; shadow rho = omega
///   [suites]    suite names, and count overrides as key = N
///
/// `#` starts a comment. Function references are unary definition names or
/// inline expressions in x; point references are point names, `omega`, or
/// natural numbers.
struct Scenario {
    OracleConfig oracle;
    std::uint64_t seed = 1;
    Registry registry;
    std::vector<Hyperpoint> points;
    std::optional<FragmentSpec> fragment;
    std::vector<FormulaSpec> formulas;
    std::vector<NamedClosed> closed;
    std::optional<ToySpec> toy;
    std::vector<std::string> suites;
    std::map<std::string, std::uint64_t> counts;

    /// Named point, `omega`, or a natural number as a standard point.
    std::optional<Hyperpoint> resolve_point(std::string_view ref) const;
    /// Unary functions of the registry, in declaration order.
    std::vector<FnExpr> unary_functions() const;
    std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
};

/// Throws SyntaxError with the line and column of the first problem. Every
/// name is resolved here, so a scenario that parses is complete.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// A function reference: a unary definition name or an expression in x.
FnExpr parse_function_ref(std::string_view text, const Registry& registry);

}  // namespace fext
