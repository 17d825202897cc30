#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fext/axioms.hpp"
#include "fext/oracle.hpp"
#include "fext/scenario.hpp"

namespace fext {

struct ReportLine {
    std::string suite;
    std::string check;
    std::string instance;
    Verdict verdict = Verdict::pass;
    std::string witness;
};

struct Tally {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t undecidable = 0;

    std::size_t total() const { return pass + fail + undecidable; }
};

/// Check results in run order, plus free-form notes.
///
/// Text form: one `<check>\t<instance>\t<verdict>\t<witness>` line per
/// result, `note\t<suite>\t<text>` lines, then `summary` lines per suite
/// and overall.
class Report {
public:
    void add(std::string suite, std::string check, std::string instance, const CheckOutcome& out);
    void note(std::string suite, std::string text);

    const std::vector<ReportLine>& lines() const noexcept { return lines_; }
    Tally tally() const;
    Tally tally_suite(std::string_view suite) const;
    Tally tally_check(std::string_view check) const;
    /// First failing line of a check, if any.
    const ReportLine* first_failure(std::string_view check) const;

    /// Zero failures, and under `strict` zero undecidable results.
    bool ok(bool strict) const;
    std::string to_text() const;

private:
    std::vector<ReportLine> lines_;
    std::vector<std::pair<std::string, std::string>> notes_;
    std::vector<std::string> order_;  // suites and notes interleaved as they ran
    std::vector<std::string> suites_;
};

inline const std::vector<std::string>& all_suites() {
    static const std::vector<std::string> names{"axioms", "nary", "transfer", "keisler", "topology"};
    return names;
}

/// Suite `name` against the scenario. Random instances are drawn from a
/// generator seeded by the scenario seed and the suite name.
void run_suite(const std::string& name, const Scenario& sc, Model& m, Report& report);

/// The named suites in the fixed order of all_suites(); an empty selection
/// runs the scenario's [suites] list, or everything when that is empty too.
Report run_suites(const Scenario& sc, Oracle& oracle, const std::vector<std::string>& selection = {});

}  // namespace fext
