#include "fext/cli.hpp"

#include <fstream>
#include <sstream>

#include "fext/errors.hpp"
#include "fext/oracle.hpp"
#include "fext/scenario.hpp"
#include "fext/suites.hpp"

namespace fext {

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + p.string());
    out << text;
}

// The run header stores the scenario seed next to the oracle config.
std::optional<std::uint64_t> logged_seed(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        auto at = line.find(" seed=");
        if (at != std::string::npos) return std::stoull(line.substr(at + 6));
    }
    return std::nullopt;
}

std::string header(const Scenario& sc, const RunOptions& opts) {
    std::string suites;
    for (const auto& s : opts.suites.empty() ? sc.suites : opts.suites) suites += (suites.empty() ? "" : ",") + s;
    return "scenario\t" + opts.scenario.filename().string() + '\n' + "config\thorizon=" +
           std::to_string(sc.oracle.horizon) + " floor=" + std::to_string(sc.oracle.bound()) +
           " tiebreak=" + sc.oracle.tiebreak.to_string() + " seed=" + std::to_string(sc.seed) +
           " suites=" + (suites.empty() ? "all" : suites) + (opts.strict ? " strict" : "") + '\n';
}

}  // namespace

RunResult run(const RunOptions& opts) {
    RunResult r;
    Scenario sc;
    DecisionLog expected;
    try {
        sc = parse_scenario(read_file(opts.scenario));
        if (opts.horizon) {
            sc.oracle.horizon = *opts.horizon;
            sc.oracle.floor.reset();
        }
        if (opts.seed) sc.seed = *opts.seed;
        if (opts.replay) {
            std::string text = read_file(*opts.replay);
            expected = DecisionLog::from_text(text, &sc.oracle);
            if (auto s = logged_seed(text)) sc.seed = *s;
        }
        if (sc.oracle.horizon < 2) throw std::invalid_argument("horizon must be at least 2");
    } catch (const SyntaxError& e) {
        r.exit_code = exit_config;
        r.error = opts.scenario.string() + ":" + e.what();
        return r;
    } catch (const std::exception& e) {
        r.exit_code = exit_config;
        r.error = e.what();
        return r;
    }

    Oracle oracle(sc.oracle);
    if (opts.replay) oracle.expect(expected);
    try {
        Report report = run_suites(sc, oracle, opts.suites);
        r.report = header(sc, opts) + report.to_text();
        r.exit_code = report.ok(opts.strict) ? exit_ok : exit_failures;
    } catch (const ConsistencyViolation& e) {
        r.exit_code = exit_consistency;
        r.error = std::string("consistency violation: ") + e.what();
    } catch (const ReplayMismatch& e) {
        r.exit_code = exit_replay_mismatch;
        r.error = std::string("replay mismatch: ") + e.what();
    } catch (const std::invalid_argument& e) {
        r.exit_code = exit_config;
        r.error = e.what();
        return r;
    } catch (const Error& e) {
        r.exit_code = exit_failures;
        r.error = e.what();
    }
    r.log = "# run seed=" + std::to_string(sc.seed) + '\n' + oracle.log().to_text(sc.oracle);

    if (!opts.out.empty()) {
        try {
            std::filesystem::create_directories(opts.out);
            if (!r.report.empty()) write_file(opts.out / "report.txt", r.report);
            write_file(opts.out / "decisions.log", r.log);
        } catch (const std::exception& e) {
            r.exit_code = exit_config;
            r.error = e.what();
        }
    }
    return r;
}

}  // namespace fext
