#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "fext/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Run property suites over an ultrapower of N"};
    fext::RunOptions opts;
    std::string scenario;
    std::uint64_t horizon = 0;
    std::uint64_t seed = 0;
    std::string replay;
    std::string out = "fext-out";
    app.add_option("scenario", scenario, "scenario file")->required();
    app.add_option("--suite", opts.suites, "suites to run (axioms, nary, transfer, keisler, topology)");
    auto* h = app.add_option("--horizon", horizon, "oracle horizon H");
    auto* s = app.add_option("--seed", seed, "seed for random instances");
    app.add_flag("--strict", opts.strict, "count undecidable results as failures");
    app.add_option("--replay", replay, "decision log of an earlier run to replay against");
    app.add_option("--out", out, "output directory")->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : fext::exit_config;
    }
    opts.scenario = scenario;
    if (*h) opts.horizon = horizon;
    if (*s) opts.seed = seed;
    if (!replay.empty()) opts.replay = replay;
    opts.out = out;

    fext::RunResult r = fext::run(opts);
    if (!r.error.empty()) std::cerr << "fext: " << r.error << '\n';
    std::istringstream lines(r.report);
    for (std::string line; std::getline(lines, line);) {
        if (line.starts_with("summary\t")) std::cout << line << '\n';
    }
    return r.exit_code;
}
