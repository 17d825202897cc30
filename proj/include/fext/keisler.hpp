#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fext/hyper.hpp"

namespace fext {

/// Element of the sampled index set: (fragment point, sample position).
using IElem = std::pair<std::size_t, std::size_t>;

/// Witnesses f with *f(xi) eq alpha, one per fragment point that has one.
struct CheckSet {
    std::size_t alpha = 0;
    /// Indexed by fragment point; nullopt where no witness was found.
    std::vector<std::optional<FnExpr>> witness;

    bool contains(std::size_t xi) const { return xi < witness.size() && witness[xi].has_value(); }
    std::size_t size() const;
};

/// Values of alpha-hat on the sampled index set.
struct AlphaHat {
    std::size_t alpha = 0;
    std::vector<std::vector<Nat>> values;  // [point][sample position]

    const Nat& at(IElem i) const { return values[i.first][i.second]; }
};

bool e_alpha_related(IElem i, IElem j, const AlphaHat& hat);

struct FragmentPoint {
    Hyperpoint point;
    std::optional<std::size_t> parent;  // the point this one was first reached from
    std::optional<FnExpr> via;
    std::optional<Nat> standard;
    /// Every (p, h) with this point eq *h(p) met while building the fragment.
    std::vector<std::pair<std::size_t, FnExpr>> derivations;
};

/// A finite surrogate for the extension: functions, the points reachable
/// from some seeds by those functions up to a depth (merged under eq), and a
/// sample {0, ..., n-1} of the base set. Omega is always among the points.
class Fragment {
public:
    /// The identity is put first among the functions when missing.
    Fragment(Model& m, std::vector<FnExpr> functions, const std::vector<Hyperpoint>& seeds, int depth,
             std::uint64_t sample_size = 500);

    Model& model() const noexcept { return *model_; }
    const std::vector<FnExpr>& functions() const noexcept { return functions_; }
    const std::vector<FragmentPoint>& points() const noexcept { return points_; }
    const Hyperpoint& point(std::size_t i) const { return points_.at(i).point; }
    const std::vector<Nat>& sample() const noexcept { return sample_; }
    std::size_t seed_count() const noexcept { return seeds_; }

    std::optional<std::size_t> find(const Hyperpoint& p) const;
    /// Index of the point eq to `p`, adding it first when there is none.
    /// Adding a point or a derivation drops cached check sets and hats.
    std::size_t add(const Hyperpoint& p, std::optional<std::size_t> parent = {}, std::optional<FnExpr> via = {});

    /// First witness per point: the constant for a standard alpha, else the
    /// first function in order, else h . f_{xi,p} for a derivation
    /// alpha = *h(p) with xi in p's check set (closed under chains of
    /// derivations), else alpha's own sequence when xi is omega. All check
    /// sets are built together on first use.
    const CheckSet& check_set(std::size_t alpha);
    const AlphaHat& alpha_hat(std::size_t alpha);

    std::string label(std::size_t i) const;

private:
    void build_checks();

    Model* model_;
    std::vector<FnExpr> functions_;
    std::vector<FragmentPoint> points_;
    std::vector<Nat> sample_;
    std::size_t seeds_ = 0;
    std::map<std::size_t, CheckSet> checks_;
    std::map<std::size_t, AlphaHat> hats_;
};

CheckSet build_check_set(Fragment& frag, std::size_t alpha);
AlphaHat alpha_hat(Fragment& frag, std::size_t alpha);

/// xi in *A.
bool u_xi_member(const Model& m, const Hyperpoint& xi, const StarSet& a);

struct InclusionReport {
    std::size_t pairs_checked = 0;    // (alpha, beta) with alpha in beta's check set
    std::size_t pairs_violating = 0;
    /// Violating pairs where both offending index elements lie in alpha's check set.
    std::size_t violating_inside = 0;
    std::string witness;

    bool holds() const { return pairs_violating == 0; }
};

/// E_alpha within E_beta whenever alpha is in beta's check set, over every
/// pair of sampled index elements. The intersection form follows pairwise.
InclusionReport check_inclusion_law(Fragment& frag);

enum class Verdict3 { accept, reject, undecided };
std::string_view to_string(Verdict3 v);

struct DOutcome {
    Verdict3 verdict = Verdict3::undecided;
    bool conflict = false;  // both the set and its complement contain a check set
    std::vector<bool> inner;  // U_xi decision per fragment point
};

/// A subset of the index set given slice by slice: slice(xi) is the 0/1
/// indicator of {x : (xi, x) in D}.
using DSet = std::function<FnExpr(std::size_t)>;

/// Decides the inner U_xi sets by oracle membership, then the outer set
/// by the check-set policy: accept if the inner-true points contain some
/// check set of the fragment, reject if the inner-false ones do.
DOutcome d_member(Fragment& frag, const DSet& d);

DSet complement(const DSet& d);

struct ClaimReport {
    std::size_t alpha = 0;
    std::size_t beta = 0;
    FnExpr g;
    /// Points of alpha's check set where the equalizer of g . f_{xi,alpha}
    /// and f_{xi,beta} was rejected.
    std::vector<std::size_t> forward_failures;
    DOutcome forward;
    /// One entry per engineered beta' not eq *g(alpha).
    std::vector<std::pair<std::size_t, DOutcome>> negatives;

    bool forward_ok() const { return forward_failures.empty() && forward.verdict == Verdict3::accept; }
    bool negatives_ok() const;
    std::size_t undecided() const;
    std::size_t decisions() const { return 1 + negatives.size(); }
};

/// The set {i : g(alpha-hat(i)) = beta-hat(i)} as slices.
DSet claim_set(Fragment& frag, std::size_t alpha, std::size_t beta, const FnExpr& g);

ClaimReport main_claim_check(Fragment& frag, std::size_t alpha, const FnExpr& g);

struct ProbeReport {
    std::size_t beta = 0;
    FnExpr g;
    /// beta-hat = phi on the sample at alpha's own slice.
    bool own_slice_exact = false;
    /// {i : beta-hat(i) = phi(i)} decided mod D.
    DOutcome agreement;
};

/// phi given slice by slice as a function of x. Throws NotRepresentable when
/// phi is not constant on the E_alpha classes of the sampled index set.
ProbeReport surjectivity_probe(Fragment& frag, std::size_t alpha, const std::function<FnExpr(std::size_t)>& phi);

}  // namespace fext
