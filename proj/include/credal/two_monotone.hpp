#pragma once

// 2-monotone lower probabilities, maximal chains of events and the chain fan:
// every maximal chain gives an extreme point of the credal set and a
// simplicial cone, and those cones form a complete fan refining the normal
// fan. The natural extension then reduces to a Choquet integral.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "credal/cones.hpp"
#include "credal/events.hpp"
#include "credal/fanwalk.hpp"
#include "credal/lower_prevision.hpp"

namespace credal {

class LowerProbability {
public:
    LowerProbability() = default;

    /// values[A] for every event bitmask A of an n-element space.
    LowerProbability(std::size_t n, std::vector<Rat> values) : n_(n), values_(std::move(values))
    {
        if (n < 2) throw input_error("lower probability needs at least two outcomes");
        if (n > 20) throw unsupported_input("lower probability on more than 20 outcomes");
        if (values_.size() != (std::size_t{1} << n)) throw input_error("lower probability needs a value for every event");
        if (values_[0] != 0) throw input_error("lower probability of the empty event must be 0");
        if (values_[full_event(n)] != 1) throw input_error("lower probability of the whole space must be 1");
        for (Event a = 0; a <= full_event(n); ++a)
            for (std::size_t i = 0; i < n; ++i)
                if (!credal::contains(a, i) && values_[a] > values_[a | singleton(i)])
                    throw input_error("lower probability is not monotone");
    }

    /// Any set function over events; used for the additive special case.
    static LowerProbability from_function(std::size_t n, const std::function<Rat(Event)>& f)
    {
        std::vector<Rat> v(std::size_t{1} << n);
        for (Event a = 0; a <= full_event(n); ++a) v[a] = f(a);
        return LowerProbability(n, std::move(v));
    }

    static LowerProbability additive(const RatVector& p)
    {
        return from_function(p.size(), [&](Event a) {
            Rat s = 0;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (credal::contains(a, i)) s += p[i];
            return s;
        });
    }

    static LowerProbability vacuous(std::size_t n)
    {
        return from_function(n, [n](Event a) { return a == full_event(n) ? Rat(1) : Rat(0); });
    }

    std::size_t size() const { return n_; }
    const Rat& operator()(Event a) const { return values_.at(a); }
    const std::vector<Rat>& values() const { return values_; }

private:
    std::size_t n_ = 0;
    std::vector<Rat> values_;
};

struct SupermodularityViolation {
    Event a;
    Event b;
};

/// First pair (A, B) with L(A u B) + L(A n B) < L(A) + L(B).
inline std::optional<SupermodularityViolation> two_monotone_violation(const LowerProbability& l)
{
    const Event omega = full_event(l.size());
    for (Event a = 0; a <= omega; ++a)
        for (Event b = a + 1; b <= omega; ++b)
            if (l(a | b) + l(a & b) < l(a) + l(b)) return SupermodularityViolation{a, b};
    return std::nullopt;
}

inline bool is_two_monotone(const LowerProbability& l) { return !two_monotone_violation(l); }

/// Strict inequality for every pair of events not nested in each other.
inline bool is_strictly_supermodular(const LowerProbability& l)
{
    const Event omega = full_event(l.size());
    for (Event a = 0; a <= omega; ++a)
        for (Event b = a + 1; b <= omega; ++b)
            if (!is_subset(a, b) && !is_subset(b, a) && l(a | b) + l(a & b) <= l(a) + l(b)) return false;
    return true;
}

/// One assessment per proper nonempty event; outcomes named x1..xn unless a space is given.
inline LowerPrevision to_lower_prevision(const LowerProbability& l, std::optional<OutcomeSpace> space = std::nullopt)
{
    if (space && space->size() != l.size()) throw input_error("to_lower_prevision: space size mismatch");
    LowerPrevision lp(space ? *space : OutcomeSpace::numbered(l.size()));
    for (Event a = 1; a < full_event(l.size()); ++a) lp.add_event_lower(a, l(a));
    return lp;
}

// ---------------------------------------------------------------------------

/// A_1 c A_2 c ... c A_n = Omega.
struct EventChain {
    std::vector<Event> sets;

    friend bool operator==(const EventChain&, const EventChain&) = default;
    friend auto operator<=>(const EventChain&, const EventChain&) = default;

    bool is_maximal(std::size_t n) const
    {
        if (sets.size() != n || sets.back() != full_event(n)) return false;
        Event prev = 0;
        for (auto a : sets) {
            if (!is_subset(prev, a) || cardinality(a) != cardinality(prev) + 1) return false;
            prev = a;
        }
        return true;
    }

    /// Outcomes in the order they are added.
    std::vector<std::size_t> permutation() const
    {
        std::vector<std::size_t> out;
        Event prev = 0;
        for (auto a : sets) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(a & ~prev)));
            prev = a;
        }
        return out;
    }

    static EventChain from_permutation(const std::vector<std::size_t>& order)
    {
        EventChain c;
        Event a = 0;
        for (auto i : order) {
            a |= singleton(i);
            c.sets.push_back(a);
        }
        return c;
    }
};

inline void require_maximal(const EventChain& c, std::size_t n)
{
    if (!c.is_maximal(n)) throw precondition_error("event chain is not maximal");
}

inline std::vector<EventChain> all_maximal_chains(std::size_t n)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<EventChain> out;
    do out.push_back(EventChain::from_permutation(perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

struct ChainVertex {
    RatVector point;
    bool feasible = true;   // P >= L on every event
};

/// P with P(A_i) = L(A_i) along the chain.
inline ChainVertex chain_vertex(const LowerProbability& l, const EventChain& c)
{
    const std::size_t n = l.size();
    require_maximal(c, n);
    ChainVertex v{RatVector(n, Rat(0)), true};
    Event prev = 0;
    for (auto a : c.sets) {
        v.point[static_cast<std::size_t>(std::countr_zero(a & ~prev))] = l(a) - l(prev);
        prev = a;
    }
    for (Event a = 1; a < full_event(n) && v.feasible; ++a) {
        Rat p = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (credal::contains(a, i)) p += v.point[i];
        if (p < l(a)) v.feasible = false;
    }
    return v;
}

struct ChainEnumeration {
    std::vector<RatVector> vertices;   // distinct, sorted
    std::size_t raw_count = 0;         // one per maximal chain
};

inline ChainEnumeration enumerate_extreme_2mono(const LowerProbability& l)
{
    if (two_monotone_violation(l))
        throw precondition_error("enumerate_extreme_2mono: lower probability is not 2-monotone");
    std::set<RatVector> pts;
    ChainEnumeration out;
    for (const auto& c : all_maximal_chains(l.size())) {
        pts.insert(chain_vertex(l, c).point);
        ++out.raw_count;
    }
    out.vertices.assign(pts.begin(), pts.end());
    return out;
}

inline std::vector<RatVector> chain_generators(const EventChain& c, std::size_t n)
{
    require_maximal(c, n);
    std::vector<RatVector> gens;
    for (std::size_t i = 0; i + 1 < c.sets.size(); ++i) gens.push_back(indicator(n, c.sets[i]));
    return gens;
}

inline Cone chain_cone(const EventChain& c, std::size_t n) { return Cone(chain_generators(c, n), {ones(n)}); }

inline std::vector<Cone> chain_fan(std::size_t n)
{
    std::vector<Cone> out;
    for (const auto& c : all_maximal_chains(n)) out.push_back(chain_cone(c, n));
    return out;
}

/// Swap the i-th and (i+1)-th added outcomes, i = 1..n-1; Omega stays.
inline std::vector<EventChain> chain_neighbors(const EventChain& c, std::size_t n)
{
    require_maximal(c, n);
    std::vector<EventChain> out;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        EventChain d = c;
        const Event before = i == 0 ? 0 : c.sets[i - 1];
        d.sets[i] = before | (c.sets[i + 1] & ~c.sets[i]);
        out.push_back(std::move(d));
    }
    return out;
}

/// The chain of upper level sets of f: outcomes by decreasing value, ties by index.
inline EventChain upper_level_chain(const Gamble& f)
{
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] > f[b]; });
    return EventChain::from_permutation(order);
}

// ---------------------------------------------------------------------------

/// A common nondecreasing ordering of the outcomes exists.
inline bool is_comonotone(const std::vector<Gamble>& fs)
{
    if (fs.empty()) return true;
    const std::size_t n = fs.front().size();
    for (const auto& f : fs)
        if (f.size() != n) throw input_error("is_comonotone: gambles of different length");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto tuple_less = [&](std::size_t a, std::size_t b) {
        for (const auto& f : fs)
            if (f[a] != f[b]) return f[a] < f[b];
        return false;
    };
    std::sort(order.begin(), order.end(), tuple_less);
    for (const auto& f : fs)
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (f[order[i]] > f[order[i + 1]]) return false;
    return true;
}

/// g(x) > g(y) implies f(x) >= f(y), in both directions.
inline bool is_comonotone_pairwise(const Gamble& f, const Gamble& g)
{
    for (std::size_t x = 0; x < f.size(); ++x)
        for (std::size_t y = 0; y < f.size(); ++y) {
            if (g[x] > g[y] && f[x] < f[y]) return false;
            if (f[x] > f[y] && g[x] < g[y]) return false;
        }
    return true;
}

/// The upper level sets of all gambles together are nested.
inline bool level_sets_form_chain(const std::vector<Gamble>& fs)
{
    std::vector<Event> sets;
    for (const auto& f : fs)
        for (const auto& t : f) {
            Event a = 0;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (f[i] >= t) a |= singleton(i);
            sets.push_back(a);
        }
    for (auto a : sets)
        for (auto b : sets)
            if (!is_subset(a, b) && !is_subset(b, a)) return false;
    return true;
}

/// min f plus the gaps between consecutive distinct values weighted by L of
/// the upper level sets.
inline Rat choquet(const LowerProbability& l, const Gamble& f)
{
    if (f.size() != l.size()) throw input_error("choquet: gamble length does not match the space");
    const auto chain = upper_level_chain(f);
    const auto order = chain.permutation();
    Rat value = f[order.back()];
    for (std::size_t i = 0; i + 1 < order.size(); ++i) value += (f[order[i]] - f[order[i + 1]]) * l(chain.sets[i]);
    return value;
}

struct AdditivityReport {
    std::size_t checked = 0;
    std::optional<std::pair<Gamble, Gamble>> counterexample;

    bool pass() const { return !counterexample; }
};

/// e(f + g) = e(f) + e(g) on the comonotone pairs of the sample.
inline AdditivityReport comonotone_additivity(const Extension& e, const std::vector<std::pair<Gamble, Gamble>>& sample)
{
    AdditivityReport r;
    for (const auto& [f, g] : sample) {
        if (!is_comonotone({f, g})) continue;
        ++r.checked;
        if (e(f + g) != e(f) + e(g) && !r.counterexample) r.counterexample = std::make_pair(f, g);
    }
    return r;
}

// ---------------------------------------------------------------------------

/// All n! chain cones as a MESC graph over the universe of proper event
/// indicators (index = bitmask - 1), edges by adjacent transposition.
inline MescGraph chain_fan_graph(const LowerProbability& l)
{
    const std::size_t n = l.size();
    MescGraph g;
    g.universe = event_universe(n);
    const auto chains = all_maximal_chains(n);
    auto key = [n](const EventChain& c) {
        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i + 1 < n; ++i) gens.push_back(c.sets[i] - 1);
        std::sort(gens.begin(), gens.end());
        return gens;
    };
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (const auto& c : chains) {
        index.emplace(key(c), g.nodes.size());
        g.nodes.push_back({key(c), chain_vertex(l, c).point});
    }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (const auto& d : chain_neighbors(chains[i], n)) {
            const std::size_t j = index.at(key(d));
            edges.emplace(std::min(i, j), std::max(i, j));
        }
    g.edges.assign(edges.begin(), edges.end());
    return canonicalize(std::move(g));
}

} // namespace credal
