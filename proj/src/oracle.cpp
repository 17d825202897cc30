#include "fext/oracle.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "fext/errors.hpp"

namespace fext {

std::string_view to_string(Decision d) { return d == Decision::accept ? "accept" : "reject"; }

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
    }
    return v;
}

std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

}  // namespace

TieBreak TieBreak::parse(std::string_view text) {
    if (text == "least") return {};
    constexpr std::string_view prefix = "seeded:";
    if (text.substr(0, prefix.size()) == prefix) {
        return {Kind::seeded, parse_u64(text.substr(prefix.size()), "tiebreak seed")};
    }
    throw std::invalid_argument("tiebreak must be 'least' or 'seeded:<n>'");
}

std::string TieBreak::to_string() const {
    return kind == Kind::least ? "least" : "seeded:" + std::to_string(seed);
}

void DecisionLog::write(std::ostream& os, const OracleConfig& cfg) const {
    os << "# decision log\n";
    os << "# horizon=" << cfg.horizon << " floor=" << cfg.bound() << " tiebreak=" << cfg.tiebreak.to_string()
       << '\n';
    for (const auto& e : entries_) {
        os << e.seq << '\t' << e.predicate << '\t' << to_string(e.decision) << '\t' << e.witness << '\n';
    }
}

std::string DecisionLog::to_text(const OracleConfig& cfg) const {
    std::ostringstream os;
    write(os, cfg);
    return os.str();
}

DecisionLog DecisionLog::read(std::istream& is, OracleConfig* cfg) {
    DecisionLog log;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!cfg) continue;
            std::istringstream hs(line.substr(1));
            std::string kv;
            while (hs >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string key = kv.substr(0, eq);
                std::string val = kv.substr(eq + 1);
                if (key == "horizon") cfg->horizon = parse_u64(val, "horizon");
                if (key == "floor") cfg->floor = parse_u64(val, "floor");
                if (key == "tiebreak") cfg->tiebreak = TieBreak::parse(val);
            }
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 4) {
            throw std::invalid_argument("decision log line " + std::to_string(lineno) + ": expected 4 fields");
        }
        LogEntry e;
        e.seq = parse_u64(fields[0], "sequence number");
        e.predicate = fields[1];
        if (fields[2] == "accept") {
            e.decision = Decision::accept;
        } else if (fields[2] == "reject") {
            e.decision = Decision::reject;
        } else {
            throw std::invalid_argument("decision log line " + std::to_string(lineno) + ": bad decision");
        }
        e.witness = parse_u64(fields[3], "witness");
        log.append(std::move(e));
    }
    return log;
}

DecisionLog DecisionLog::from_text(std::string_view text, OracleConfig* cfg) {
    std::istringstream is{std::string(text)};
    return read(is, cfg);
}

Oracle::Oracle(OracleConfig cfg) : cfg_(cfg), rng_(cfg.tiebreak.seed) {
    for (std::uint64_t n = cfg_.bound() + 1; n <= cfg_.horizon; ++n) survivors_.push_back(n);
}

void Oracle::expect(DecisionLog log) { expected_ = std::move(log); }

std::uint64_t Oracle::representative() const {
    if (survivors_.empty()) throw Undecidable("horizon exhausted: no surviving index");
    return survivors_.front();
}

std::optional<Decision> Oracle::cached(const std::string& text) const {
    auto it = decided_.find(text);
    if (it == decided_.end()) return std::nullopt;
    return it->second;
}

Decision Oracle::query(const IndexPredicate& s) {
    ++queries_;
    const std::string& text = s.text();
    if (auto it = decided_.find(text); it != decided_.end()) return it->second;

    std::vector<std::uint64_t> in;
    std::vector<std::uint64_t> out;
    for (std::uint64_t n : survivors_) (s.contains(Nat(n)) ? in : out).push_back(n);

    if (in.empty() && out.empty()) {
        throw Undecidable("horizon exhausted deciding " + text);
    }
    bool accept;
    if (in.empty()) {
        accept = false;
    } else if (out.empty()) {
        accept = true;
    } else if (in.size() != out.size()) {
        accept = in.size() > out.size();
    } else if (cfg_.tiebreak.kind == TieBreak::Kind::least) {
        accept = in.front() < out.front();
    } else {
        accept = (rng_() & 1U) == 1U;
    }

    Decision d = accept ? Decision::accept : Decision::reject;
    survivors_ = accept ? std::move(in) : std::move(out);

    LogEntry e{log_.size(), sanitize(text), d, survivors_.front()};
    if (expected_ && e.seq < expected_->size()) {
        const LogEntry& want = expected_->entries()[e.seq];
        if (want.predicate != e.predicate || want.decision != e.decision) {
            throw ReplayMismatch("entry " + std::to_string(e.seq) + ": logged '" + want.predicate + "' -> " +
                                 std::string(to_string(want.decision)) + ", recomputed '" + e.predicate +
                                 "' -> " + std::string(to_string(e.decision)));
        }
    }
    if (survivors_.size() == 1 && !principal_since_) principal_since_ = e.seq;
    log_.append(std::move(e));
    decided_.emplace(text, d);
    return d;
}

Oracle replay(const DecisionLog& log, const OracleConfig& cfg, std::span<const IndexPredicate> queries) {
    Oracle o(cfg);
    o.expect(log);
    for (const auto& q : queries) o.query(q);
    return o;
}

}  // namespace fext
