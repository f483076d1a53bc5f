#pragma once

// Lower previsions on a finite outcome space as finite collections of
// assessments, their credal sets as H-polytopes, coherence, and the natural
// extension evaluated over the credal set.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "credal/cones.hpp"
#include "credal/events.hpp"
#include "credal/polytope.hpp"

namespace credal {

class OutcomeSpace {
public:
    OutcomeSpace() = default;

    explicit OutcomeSpace(std::vector<std::string> names) : names_(std::move(names))
    {
        if (names_.size() < 2) throw input_error("outcome space needs at least two outcomes");
        if (names_.size() > max_outcomes) throw unsupported_input("outcome space too large");
        std::set<std::string> seen;
        for (const auto& s : names_) {
            if (s.empty()) throw input_error("empty outcome label");
            if (!seen.insert(s).second) throw input_error("duplicate outcome label \"" + s + "\"");
        }
    }

    /// x1, ..., xn
    static OutcomeSpace numbered(std::size_t n)
    {
        std::vector<std::string> names;
        for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        return OutcomeSpace(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::size_t index_of(const std::string& label) const
    {
        auto it = std::find(names_.begin(), names_.end(), label);
        if (it == names_.end()) throw input_error("unknown outcome label \"" + label + "\"");
        return static_cast<std::size_t>(it - names_.begin());
    }

    friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

private:
    std::vector<std::string> names_;
};

using Gamble = RatVector;

enum class Provenance { direct, conjugate, convention };

struct Assessment {
    Gamble gamble;
    Rat lower;
    Provenance provenance = Provenance::direct;
};

class LowerPrevision {
public:
    LowerPrevision() = default;
    explicit LowerPrevision(OutcomeSpace space) : space_(std::move(space)) {}

    const OutcomeSpace& space() const { return space_; }
    std::size_t size() const { return space_.size(); }
    const std::vector<Assessment>& assessments() const { return assessments_; }

    /// At most one assessment per gamble; a repeated gamble keeps the larger bound.
    void add_lower(Gamble f, Rat value, Provenance p = Provenance::direct)
    {
        if (f.size() != size()) throw input_error("assessment gamble has wrong length");
        for (auto& a : assessments_)
            if (a.gamble == f) {
                if (value > a.lower) {
                    a.lower = std::move(value);
                    a.provenance = p;
                }
                return;
            }
        assessments_.push_back({std::move(f), std::move(value), p});
    }

    /// upper(f) = u is stored as lower(-f) = -u.
    void add_upper(const Gamble& f, const Rat& value) { add_lower(-f, -value, Provenance::conjugate); }

    void add_event_lower(Event a, Rat value) { add_lower(indicator(size(), a), std::move(value)); }

private:
    OutcomeSpace space_;
    std::vector<Assessment> assessments_;
};

// ---------------------------------------------------------------------------

struct CredalHRep {
    HPolytope polytope;                  // assessment rows, then one p(x) >= 0 row per outcome, then sum p = 1
    SupportUniverse universe;            // lineality: the constant one
    std::vector<std::size_t> universe_rows;   // inequality row behind each universe vector
    std::vector<bool> redundant;         // per inequality row: implied nonnegativity rows
    std::size_t assessment_rows = 0;
};

namespace detail {

// Representative of the ray of f modulo constants: first entry 0, first
// nonzero entry +-1. The bound is carried along the same affine map.
inline std::pair<RatVector, Rat> ray_key(const RatVector& f, const Rat& bound)
{
    RatVector g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] - f[0];
    Rat b = bound - f[0];
    auto lead = std::find_if(g.begin(), g.end(), [](const Rat& x) { return x != 0; });
    if (lead == g.end()) return {g, b};
    const Rat s = abs(*lead);
    for (auto& x : g) x /= s;
    return {g, b / s};
}

} // namespace detail

/// Credal set of lp. Every outcome gets a nonnegativity row; a row is marked
/// redundant when minimizing p(x) over the rows not yet marked redundant
/// already gives at least 0. Redundant rows stay in the polytope but never
/// enter the support universe. Universe vectors are unique up to positive
/// scaling and adding constants; the tightest row of each such class is kept.
inline CredalHRep build_credal_hrep(const LowerPrevision& lp)
{
    const std::size_t n = lp.size();
    if (n < 2) throw input_error("build_credal_hrep: empty outcome space");
    CredalHRep rep;
    rep.polytope.dim = n;
    for (const auto& a : lp.assessments()) rep.polytope.inequalities.push_back({a.gamble, a.lower});
    rep.assessment_rows = rep.polytope.inequalities.size();
    for (std::size_t x = 0; x < n; ++x) rep.polytope.inequalities.push_back({unit_vector(n, x), Rat(0)});
    rep.polytope.equalities.push_back({ones(n), Rat(1)});

    const std::size_t rows = rep.polytope.inequalities.size();
    rep.redundant.assign(rows, false);
    for (std::size_t r = rep.assessment_rows; r < rows; ++r) {
        HPolytope rest{n, {}, rep.polytope.equalities};
        for (std::size_t k = 0; k < rows; ++k)
            if (k != r && !rep.redundant[k]) rest.inequalities.push_back(rep.polytope.inequalities[k]);
        auto sol = solve_lp(rest, rep.polytope.inequalities[r].normal);
        if (sol.status == LpStatus::optimal && sol.value >= 0) rep.redundant[r] = true;
    }

    std::map<RatVector, std::size_t> best;   // ray key -> row
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < rows; ++r) {
        if (rep.redundant[r]) continue;
        const auto& c = rep.polytope.inequalities[r];
        if (is_zero(c.normal) || in_span({ones(n)}, c.normal)) continue;
        auto [key, b] = detail::ray_key(c.normal, c.bound);
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, r);
            order.push_back(r);
        } else {
            const auto& other = rep.polytope.inequalities[it->second];
            if (b > detail::ray_key(other.normal, other.bound).second) {
                std::replace(order.begin(), order.end(), it->second, r);
                it->second = r;
            }
        }
    }
    std::vector<RatVector> vecs;
    std::set<RatVector> seen;
    for (auto r : order) {
        const auto& f = rep.polytope.inequalities[r].normal;
        if (!seen.insert(f).second) continue;
        vecs.push_back(f);
        rep.universe_rows.push_back(r);
    }
    rep.universe = SupportUniverse::credal(n, std::move(vecs));
    return rep;
}

// ---------------------------------------------------------------------------

/// The credal set with cached vertices when the oracle can handle it; larger
/// inputs fall back to the exact simplex.
class CredalSet {
public:
    explicit CredalSet(const LowerPrevision& lp, const OracleLimits& limits = {}) : hrep_(build_credal_hrep(lp))
    {
        const auto& h = hrep_.polytope;
        if (h.dim <= limits.max_dim && h.inequalities.size() <= limits.max_constraints) {
            vertices_ = vertices_bruteforce(h, limits);
            empty_ = vertices_->empty;
        } else {
            empty_ = solve_lp(h, RatVector(h.dim, Rat(0))).status == LpStatus::infeasible;
        }
    }

    const CredalHRep& hrep() const { return hrep_; }
    const HPolytope& polytope() const { return hrep_.polytope; }
    bool empty() const { return empty_; }
    bool has_vertices() const { return vertices_.has_value(); }
    const VertexEnumeration& vertices() const
    {
        if (!vertices_) throw oracle_limit_exceeded("credal set too large for the vertex oracle");
        return *vertices_;
    }

    /// min over the credal set of p.f
    Rat lower(const Gamble& f) const
    {
        if (empty_) throw precondition_error("lower expectation over an empty credal set");
        if (vertices_) return lp_min(*vertices_, f).value;
        auto sol = solve_lp(hrep_.polytope, f);
        if (sol.status != LpStatus::optimal) throw precondition_error("lower expectation: LP not solvable");
        return sol.value;
    }

private:
    CredalHRep hrep_;
    std::optional<VertexEnumeration> vertices_;
    bool empty_ = true;
};

struct CoherenceReport {
    bool coherent = false;
    bool nonempty = false;
    std::vector<Rat> attained;                 // min of each assessed gamble over the credal set
    std::optional<std::size_t> first_violation;

    explicit operator bool() const { return coherent; }
};

inline CoherenceReport is_coherent(const CredalSet& cs, const LowerPrevision& lp)
{
    CoherenceReport r;
    r.nonempty = !cs.empty();
    if (!r.nonempty) return r;
    r.coherent = true;
    for (std::size_t i = 0; i < lp.assessments().size(); ++i) {
        const auto& a = lp.assessments()[i];
        r.attained.push_back(cs.lower(a.gamble));
        if (r.attained.back() != a.lower && r.coherent) {
            r.coherent = false;
            r.first_violation = i;
        }
    }
    return r;
}

/// Every bound is reachable: the credal set is nonempty and each assessed
/// gamble attains its lower bound on it.
inline CoherenceReport is_coherent(const LowerPrevision& lp) { return is_coherent(CredalSet(lp), lp); }

/// Natural extension with the credal set built once.
class NaturalExtension {
public:
    explicit NaturalExtension(const LowerPrevision& lp) : set_(lp)
    {
        if (!is_coherent(set_, lp)) throw precondition_error("natural extension of an incoherent lower prevision");
    }

    Rat operator()(const Gamble& f) const
    {
        if (f.size() != set_.polytope().dim) throw input_error("gamble length does not match the outcome space");
        return set_.lower(f);
    }

    const CredalSet& credal_set() const { return set_; }

private:
    CredalSet set_;
};

inline Rat natural_extension(const LowerPrevision& lp, const Gamble& f) { return NaturalExtension(lp)(f); }

// ---------------------------------------------------------------------------

struct AxiomReport {
    bool sure_gain = true;       // E(f) >= min f
    bool homogeneity = true;     // E(c f) = c E(f), c in {0, 1, 2, 5}
    bool superlinearity = true;  // E(f + g) >= E(f) + E(g)
    std::string first_failure;

    bool pass() const { return sure_gain && homogeneity && superlinearity; }
};

using Extension = std::function<Rat(const Gamble&)>;

inline AxiomReport check_axioms(const Extension& e, const std::vector<std::pair<Gamble, Gamble>>& sample)
{
    AxiomReport r;
    auto fail = [&](bool& flag, const std::string& what, const Gamble& f) {
        if (flag && r.first_failure.empty()) r.first_failure = what + " at (" + to_string(f) + ")";
        flag = false;
    };
    for (const auto& [f, g] : sample) {
        for (const auto* h : {&f, &g}) {
            const Rat ef = e(*h);
            if (ef < *std::min_element(h->begin(), h->end())) fail(r.sure_gain, "sure gain", *h);
            for (int c : {0, 1, 2, 5})
                if (e(Rat(c) * *h) != Rat(c) * ef) fail(r.homogeneity, "homogeneity", *h);
        }
        if (e(f + g) < e(f) + e(g)) fail(r.superlinearity, "superlinearity", f);
    }
    return r;
}

/// E(g + h) = E(g) + E(h) for g, h in the normal cone at p. nullopt when
/// either gamble is outside that cone.
inline std::optional<bool> cone_additivity_check(const NaturalExtension& e, const RatVector& p, const Gamble& g,
                                                 const Gamble& h)
{
    const Cone nc = normal_cone_at(e.credal_set().polytope(), p);
    if (!contains(nc, g) || !contains(nc, h)) return std::nullopt;
    return e(g + h) == e(g) + e(h);
}

// ---------------------------------------------------------------------------
// Collections of events as candidate MESC generators.

struct EventCollection {
    std::vector<Event> events;
};

enum class EventMescReason { accepted, disjoint_pair, covering_pair, dependent, not_full_dimensional, contains_indicator };

inline std::string to_string(EventMescReason r)
{
    switch (r) {
    case EventMescReason::accepted: return "accepted";
    case EventMescReason::disjoint_pair: return "two events are disjoint";
    case EventMescReason::covering_pair: return "two proper events cover the space";
    case EventMescReason::dependent: return "indicators linearly dependent";
    case EventMescReason::not_full_dimensional: return "cone not full-dimensional";
    case EventMescReason::contains_indicator: return "cone contains another event indicator";
    }
    return "?";
}

struct EventMescResult {
    EventMescReason reason = EventMescReason::accepted;
    std::pair<Event, Event> pair{0, 0};   // for the pairwise filters
    std::optional<Event> witness;         // contained indicator
    RatVector coefficients;               // its expansion: proper events in input order, then the constant

    explicit operator bool() const { return reason == EventMescReason::accepted; }
};

/// All nonempty proper events of an n-element space, by bitmask.
inline SupportUniverse event_universe(std::size_t n)
{
    std::vector<RatVector> vecs;
    for (Event a = 1; a < full_event(n); ++a) vecs.push_back(indicator(n, a));
    return SupportUniverse::credal(n, std::move(vecs));
}

/// Pairwise intersection and union filters first, then the full MESC test
/// against every event indicator.
inline EventMescResult is_event_mesc(const EventCollection& col, std::size_t n)
{
    const Event omega = full_event(n);
    if (std::find(col.events.begin(), col.events.end(), omega) == col.events.end())
        throw precondition_error("is_event_mesc: collection must contain the whole space");
    EventMescResult r;
    const auto& ev = col.events;
    for (std::size_t i = 0; i < ev.size(); ++i)
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            if ((ev[i] & ev[j]) == 0) {
                r.reason = EventMescReason::disjoint_pair;
                r.pair = {ev[i], ev[j]};
                return r;
            }
        }
    for (std::size_t i = 0; i < ev.size(); ++i)
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            if (ev[i] != omega && ev[j] != omega && (ev[i] | ev[j]) == omega) {
                r.reason = EventMescReason::covering_pair;
                r.pair = {ev[i], ev[j]};
                return r;
            }
        }

    std::vector<RatVector> gens;
    std::vector<Event> proper;
    for (auto a : ev)
        if (a != omega) {
            proper.push_back(a);
            gens.push_back(indicator(n, a));
        }
    const auto universe = event_universe(n);
    auto check = check_mesc(gens, universe);
    switch (check.verdict) {
    case MescVerdict::mesc: return r;
    case MescVerdict::dependent: r.reason = EventMescReason::dependent; return r;
    case MescVerdict::not_full_dimensional: r.reason = EventMescReason::not_full_dimensional; return r;
    case MescVerdict::contains_support_vector: break;
    }
    r.reason = EventMescReason::contains_indicator;
    r.witness = static_cast<Event>(*check.witness + 1);
    // check_mesc reports coefficients over the sorted proper generators; map back to input order.
    auto sorted = gens;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& g : gens) {
        auto k = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), g) - sorted.begin());
        r.coefficients.push_back(check.coefficients[k]);
    }
    r.coefficients.push_back(check.coefficients.back());
    return r;
}

} // namespace credal
