#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fext/predicate.hpp"

namespace fext {

enum class Decision { accept, reject };

std::string_view to_string(Decision d);

/// How to break a tie between two equally large sides of a split.
struct TieBreak {
    enum class Kind { least, seeded };
    Kind kind = Kind::least;
    std::uint64_t seed = 0;

    /// "least" or "seeded:<n>"
    static TieBreak parse(std::string_view text);
    std::string to_string() const;
};

struct OracleConfig {
    std::uint64_t horizon = 10000;
    /// Lower end b of the examined window (b, horizon]. Defaults to horizon / 2.
    std::optional<std::uint64_t> floor;
    TieBreak tiebreak;

    std::uint64_t bound() const { return floor.value_or(horizon / 2); }
};

struct LogEntry {
    std::uint64_t seq = 0;
    std::string predicate;
    Decision decision = Decision::reject;
    std::uint64_t witness = 0;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

/// Append-only record of committed decisions.
///
/// Text form: optional `#` header lines carrying the oracle configuration,
/// then one `<seq>\t<predicate>\t<accept|reject>\t<witness>` line per entry.
class DecisionLog {
public:
    void append(LogEntry e) { entries_.push_back(std::move(e)); }
    const std::vector<LogEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    void write(std::ostream& os, const OracleConfig& cfg) const;
    std::string to_text(const OracleConfig& cfg) const;
    /// Reads a log; when `cfg` is given, header keys overwrite its fields.
    static DecisionLog read(std::istream& is, OracleConfig* cfg = nullptr);
    static DecisionLog from_text(std::string_view text, OracleConfig* cfg = nullptr);

    friend bool operator==(const DecisionLog&, const DecisionLog&) = default;

private:
    std::vector<LogEntry> entries_;
};

/// Lazy, deterministic approximation of a nonprincipal ultrafilter on N.
///
/// The state is the set C of surviving indices in (b, H]: those that lie in
/// every accepted set and outside every rejected one. A query on S splits C
/// into C∩S and C∩Sᶜ. An empty side loses outright; otherwise the larger
/// side wins, and equal sizes fall to the tie-break. The winning side
/// becomes the new C, so C is never empty and every answer so far stays
/// consistent with every later one: the decisions form an ultrafilter on
/// the window, and sets with no element above b are always rejected.
///
/// Queries are memoised by canonical text. Single writer: callers must
/// serialise queries.
class Oracle {
public:
    explicit Oracle(OracleConfig cfg = {});

    /// Throws Undecidable when the window holds no survivors, and
    /// ReplayMismatch when an expected log disagrees.
    Decision query(const IndexPredicate& s);
    bool accepts(const IndexPredicate& s) { return query(s) == Decision::accept; }

    /// Replay mode: every fresh decision is compared with the entry of the
    /// same sequence number in `log`.
    void expect(DecisionLog log);

    const DecisionLog& log() const noexcept { return log_; }
    const OracleConfig& config() const noexcept { return cfg_; }
    std::uint64_t bound() const noexcept { return cfg_.bound(); }
    std::size_t survivor_count() const noexcept { return survivors_.size(); }
    /// Least surviving index. Any sequence that is equivalent to a constant
    /// takes that constant's value here.
    std::uint64_t representative() const;
    /// Queries answered, including memoised repeats.
    std::size_t query_count() const noexcept { return queries_; }
    /// Sequence number of the decision that left a single survivor. From
    /// then on every answer is membership of that one index.
    std::optional<std::uint64_t> principal_since() const noexcept { return principal_since_; }
    std::optional<Decision> cached(const std::string& text) const;

private:
    OracleConfig cfg_;
    std::vector<std::uint64_t> survivors_;
    std::unordered_map<std::string, Decision> decided_;
    DecisionLog log_;
    std::optional<DecisionLog> expected_;
    std::mt19937_64 rng_;
    std::size_t queries_ = 0;
    std::optional<std::uint64_t> principal_since_;
};

/// Re-issues `queries` against a fresh oracle and checks each decision
/// against `log` on the common prefix.
Oracle replay(const DecisionLog& log, const OracleConfig& cfg, std::span<const IndexPredicate> queries);

}  // namespace fext
