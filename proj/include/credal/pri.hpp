#pragma once

// Probability-interval models: per-outcome bounds l(x) <= P(x) <= u(x).
// Their MESCs are the cones N(x, A, B): outcomes in A sit above x with their
// lower bound active, outcomes in B below x with their upper bound active.
// Extreme points, adjacency and the natural extension all have closed forms.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "credal/events.hpp"
#include "credal/fanwalk.hpp"
#include "credal/lower_prevision.hpp"
#include "credal/two_monotone.hpp"

namespace credal {

class PRIModel {
public:
    PRIModel() = default;

    PRIModel(RatVector lower, RatVector upper) : l_(std::move(lower)), u_(std::move(upper))
    {
        if (l_.size() != u_.size()) throw input_error("interval bounds of different length");
        if (l_.size() < 2) throw input_error("interval model needs at least two outcomes");
        if (l_.size() > 20) throw unsupported_input("interval model on more than 20 outcomes");
        for (std::size_t i = 0; i < l_.size(); ++i)
            if (l_[i] < 0 || l_[i] > u_[i] || u_[i] > 1)
                throw input_error("interval bounds must satisfy 0 <= l <= u <= 1 (outcome " + std::to_string(i) + ")");
    }

    static PRIModel uniform(std::size_t n, const Rat& l, const Rat& u)
    {
        return PRIModel(RatVector(n, l), RatVector(n, u));
    }

    std::size_t size() const { return l_.size(); }
    const RatVector& lower() const { return l_; }
    const RatVector& upper() const { return u_; }
    const Rat& l(std::size_t x) const { return l_[x]; }
    const Rat& u(std::size_t x) const { return u_[x]; }

    friend bool operator==(const PRIModel&, const PRIModel&) = default;

private:
    RatVector l_, u_;
};

struct PriCoherence {
    bool coherent = false;
    bool nonempty = false;               // sum l <= 1 <= sum u
    std::optional<PRIModel> reachable;   // tightened bounds when nonempty

    explicit operator bool() const { return coherent; }
};

inline PriCoherence is_coherent_pri(const PRIModel& m)
{
    const std::size_t n = m.size();
    const Rat sl = std::accumulate(m.lower().begin(), m.lower().end(), Rat(0));
    const Rat su = std::accumulate(m.upper().begin(), m.upper().end(), Rat(0));
    PriCoherence r;
    r.nonempty = sl <= 1 && 1 <= su;
    if (!r.nonempty) return r;
    RatVector l(n), u(n);
    r.coherent = true;
    for (std::size_t x = 0; x < n; ++x) {
        const Rat lo = 1 - (su - m.u(x));
        const Rat hi = 1 - (sl - m.l(x));
        l[x] = std::max(m.l(x), lo);
        u[x] = std::min(m.u(x), hi);
        if (l[x] != m.l(x) || u[x] != m.u(x)) r.coherent = false;
    }
    r.reachable = PRIModel(std::move(l), std::move(u));
    return r;
}

inline void require_coherent(const PRIModel& m, const char* who)
{
    if (!is_coherent_pri(m)) throw precondition_error(std::string(who) + ": interval model is not coherent");
}

/// Singletons with bound l, complements with bound 1 - u.
inline LowerPrevision to_lower_prevision(const PRIModel& m, std::optional<OutcomeSpace> space = std::nullopt)
{
    const std::size_t n = m.size();
    if (space && space->size() != n) throw input_error("to_lower_prevision: space size mismatch");
    LowerPrevision lp(space ? *space : OutcomeSpace::numbered(n));
    for (std::size_t x = 0; x < n; ++x) lp.add_lower(indicator(n, singleton(x)), m.l(x));
    for (std::size_t x = 0; x < n; ++x)
        lp.add_lower(indicator(n, complement(singleton(x), n)), 1 - m.u(x), Provenance::conjugate);
    return lp;
}

// ---------------------------------------------------------------------------

/// N(x, A, B): f(y) >= f(x) on A, f(z) <= f(x) on B, f = f(x) elsewhere.
struct PriCone {
    std::size_t center = 0;
    Event l_active = 0;   // the high side
    Event u_active = 0;   // the low side

    friend bool operator==(const PriCone&, const PriCone&) = default;
    friend auto operator<=>(const PriCone&, const PriCone&) = default;

    bool is_maximal(std::size_t n) const
    {
        return !credal::contains(l_active | u_active, center) && (l_active & u_active) == 0 &&
               (l_active | u_active | singleton(center)) == full_event(n);
    }
};

inline std::string to_string(const PriCone& c, std::size_t n)
{
    auto set = [n](Event a) {
        std::string s = "{";
        for (auto i : members(a, n)) s += (s.size() > 1 ? "," : "") + ("x" + std::to_string(i + 1));
        return s + "}";
    };
    return "N(x" + std::to_string(c.center + 1) + ", " + set(c.l_active) + ", " + set(c.u_active) + ")";
}

/// Support vectors of interval models: 1_x for every x, then 1_{x^c}.
inline SupportUniverse pri_universe(std::size_t n)
{
    if (n < 3) throw precondition_error("pri_universe: singletons and complements coincide for n < 3");
    std::vector<RatVector> vecs;
    for (std::size_t x = 0; x < n; ++x) vecs.push_back(indicator(n, singleton(x)));
    for (std::size_t x = 0; x < n; ++x) vecs.push_back(indicator(n, complement(singleton(x), n)));
    return SupportUniverse::credal(n, std::move(vecs));
}

/// Indices into pri_universe(n).
inline std::vector<std::size_t> pri_generators(const PriCone& c, std::size_t n)
{
    std::vector<std::size_t> gens = members(c.l_active, n);
    for (auto z : members(c.u_active, n)) gens.push_back(n + z);
    std::sort(gens.begin(), gens.end());
    return gens;
}

enum class ConeMembership { outside, boundary, relative_interior };

inline std::string to_string(ConeMembership m)
{
    switch (m) {
    case ConeMembership::outside: return "outside";
    case ConeMembership::boundary: return "boundary";
    case ConeMembership::relative_interior: return "relative_interior";
    }
    return "?";
}

inline ConeMembership cone_membership(const PriCone& c, const Gamble& f)
{
    const std::size_t n = f.size();
    if (c.center >= n || (full_event(n) & (c.l_active | c.u_active)) != (c.l_active | c.u_active))
        throw input_error("cone_membership: cone does not fit the gamble");
    const Rat& fx = f[c.center];
    bool strict = true;
    for (std::size_t y = 0; y < n; ++y) {
        if (y == c.center) continue;
        if (credal::contains(c.l_active, y)) {
            if (f[y] < fx) return ConeMembership::outside;
            if (f[y] == fx) strict = false;
        } else if (credal::contains(c.u_active, y)) {
            if (f[y] > fx) return ConeMembership::outside;
            if (f[y] == fx) strict = false;
        } else if (f[y] != fx) {
            return ConeMembership::outside;
        }
    }
    return strict ? ConeMembership::relative_interior : ConeMembership::boundary;
}

/// N(x, {f > f(x)}, {f < f(x)}); nullopt when either side is empty.
inline std::optional<PriCone> locate_cone(const Gamble& f, std::size_t x)
{
    if (x >= f.size()) throw input_error("locate_cone: no such outcome");
    PriCone c{x, 0, 0};
    for (std::size_t y = 0; y < f.size(); ++y) {
        if (f[y] > f[x]) c.l_active |= singleton(y);
        if (f[y] < f[x]) c.u_active |= singleton(y);
    }
    if (c.l_active == 0 || c.u_active == 0) return std::nullopt;
    return c;
}

namespace detail {

/// 1 - sum_A l - sum_B u: the mass left for the center.
inline Rat pri_remainder(const PRIModel& m, const PriCone& c)
{
    Rat r = 1;
    for (std::size_t y = 0; y < m.size(); ++y) {
        if (credal::contains(c.l_active, y)) r -= m.l(y);
        if (credal::contains(c.u_active, y)) r -= m.u(y);
    }
    return r;
}

inline std::optional<RatVector> pri_vertex_unchecked(const PRIModel& m, const PriCone& c)
{
    const Rat r = pri_remainder(m, c);
    if (r < m.l(c.center) || r > m.u(c.center)) return std::nullopt;
    RatVector p(m.size());
    for (std::size_t y = 0; y < m.size(); ++y)
        p[y] = credal::contains(c.l_active, y) ? m.l(y) : credal::contains(c.u_active, y) ? m.u(y) : Rat(0);
    p[c.center] = r;
    return p;
}

inline void require_maximal(const PriCone& c, std::size_t n, const char* who)
{
    if (!c.is_maximal(n) || c.l_active == 0 || c.u_active == 0)
        throw precondition_error(std::string(who) + ": cone must split all other outcomes into two nonempty sides");
}

} // namespace detail

/// P = l on A, u on B, the remainder at the center; nullopt when the remainder
/// falls outside [l(x), u(x)].
inline std::optional<RatVector> vertex_for_cone(const PRIModel& m, const PriCone& c)
{
    require_coherent(m, "vertex_for_cone");
    detail::require_maximal(c, m.size(), "vertex_for_cone");
    return detail::pri_vertex_unchecked(m, c);
}

enum class PriMove { a1, a2, b1, b2 };

inline std::string to_string(PriMove m)
{
    switch (m) {
    case PriMove::a1: return "A1";
    case PriMove::a2: return "A2";
    case PriMove::b1: return "B1";
    case PriMove::b2: return "B2";
    }
    return "?";
}

struct PriNeighbor {
    PriCone cone;
    PriMove move;
    std::size_t moved;   // the outcome leaving A or B
};

namespace detail {

inline std::vector<PriNeighbor> pri_neighbors_unchecked(const PRIModel& m, const PriCone& c)
{
    const std::size_t n = m.size();
    const std::size_t x = c.center;
    const Rat r = pri_remainder(m, c);
    std::vector<PriNeighbor> out;
    for (auto y : members(c.l_active, n)) {
        const Rat after = r + m.l(y) - m.u(y);   // center's mass once y moves to B
        const Event rest = c.l_active & ~singleton(y);
        if (cardinality(c.l_active) > 1 && after >= m.l(x))
            out.push_back({{x, rest, c.u_active | singleton(y)}, PriMove::a1, y});
        if (cardinality(c.l_active) == 1 || after <= m.l(x))
            out.push_back({{y, rest | singleton(x), c.u_active}, PriMove::a2, y});
    }
    for (auto z : members(c.u_active, n)) {
        const Rat after = r + m.u(z) - m.l(z);   // center's mass once z moves to A
        const Event rest = c.u_active & ~singleton(z);
        if (cardinality(c.u_active) > 1 && after <= m.u(x))
            out.push_back({{x, c.l_active | singleton(z), rest}, PriMove::b1, z});
        if (cardinality(c.u_active) == 1 || after >= m.u(x))
            out.push_back({{z, c.l_active, rest | singleton(x)}, PriMove::b2, z});
    }
    return out;
}

} // namespace detail

/// Cones across each facet of c that still certify an extreme point. Both
/// forms are returned when the selection inequality is tight.
inline std::vector<PriNeighbor> pri_neighbors(const PRIModel& m, const PriCone& c)
{
    if (!vertex_for_cone(m, c)) throw precondition_error("pri_neighbors: cone does not certify an extreme point");
    return detail::pri_neighbors_unchecked(m, c);
}

// ---------------------------------------------------------------------------

struct PriNaturalExtension {
    Rat value;
    RatVector minimizer;
    std::vector<std::size_t> order;   // outcomes by nondecreasing f
    std::size_t k = 0;                // position of the outcome taking the remainder
};

/// Outcomes by nondecreasing f fill their upper bound from the bottom and their
/// lower bound from the top; the outcome at position k takes what is left.
inline PriNaturalExtension natural_extension_pri_detail(const PRIModel& m, const Gamble& f)
{
    const std::size_t n = m.size();
    if (f.size() != n) throw input_error("natural_extension_pri: gamble length does not match the model");
    require_coherent(m, "natural_extension_pri");

    PriNaturalExtension r;
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), std::size_t{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](auto a, auto b) { return f[a] < f[b]; });

    // s = 1 - sum_{i>k} l - sum_{i<k} u, updated as k advances
    Rat s = 1;
    for (std::size_t i = 1; i < n; ++i) s -= m.l(r.order[i]);
    std::optional<std::size_t> boundary;
    std::optional<Rat> boundary_s;
    bool found = false;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t xk = r.order[k];
        if (m.l(xk) <= s && s <= m.u(xk)) {
            if (k == 0 || k + 1 == n) {
                if (!boundary) {
                    boundary = k;
                    boundary_s = s;
                }
            } else {
                r.k = k;
                found = true;
                break;
            }
        }
        if (k + 1 < n) s += m.l(r.order[k + 1]) - m.u(xk);
    }
    if (!found) {
        if (!boundary) throw precondition_error("natural_extension_pri: no admissible split index");
        r.k = *boundary;
        s = *boundary_s;
    }
    r.minimizer.assign(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t xi = r.order[i];
        r.minimizer[xi] = i < r.k ? m.u(xi) : i > r.k ? m.l(xi) : s;
    }
    r.value = dot(r.minimizer, f);
    return r;
}

inline Rat natural_extension_pri(const PRIModel& m, const Gamble& f) { return natural_extension_pri_detail(m, f).value; }

/// L(A) = max(sum_A l, 1 - sum_{A^c} u).
inline LowerProbability induced_2mono(const PRIModel& m)
{
    require_coherent(m, "induced_2mono");
    const std::size_t n = m.size();
    return LowerProbability::from_function(n, [&](Event a) {
        Rat in = 0, out = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (credal::contains(a, x))
                in += m.l(x);
            else
                out += m.u(x);
        }
        return std::max(in, 1 - out);
    });
}

// ---------------------------------------------------------------------------

struct PriEnumeration {
    std::vector<RatVector> vertices;   // distinct, sorted
    std::vector<PriCone> cones;        // in graph node order
    MescGraph graph;                   // over pri_universe(n)
};

/// Breadth-first walk over the N(x, A, B) cones from the cone of the gamble
/// (0, 1, ..., n-1).
inline PriEnumeration enumerate_extreme_pri(const PRIModel& m)
{
    const std::size_t n = m.size();
    if (n < 3) throw precondition_error("enumerate_extreme_pri: needs at least three outcomes");
    require_coherent(m, "enumerate_extreme_pri");

    RatVector seed_gamble(n);
    for (std::size_t i = 0; i < n; ++i) seed_gamble[i] = static_cast<long>(i);
    const auto ne = natural_extension_pri_detail(m, seed_gamble);
    PriCone seed{ne.order[ne.k], 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        if (i < ne.k) seed.u_active |= singleton(ne.order[i]);
        if (i > ne.k) seed.l_active |= singleton(ne.order[i]);
    }

    std::map<PriCone, std::size_t> index;
    std::vector<PriCone> cones;
    std::vector<RatVector> points;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::deque<std::size_t> frontier;
    auto visit = [&](const PriCone& c) {
        auto [it, inserted] = index.emplace(c, cones.size());
        if (inserted) {
            auto p = detail::pri_vertex_unchecked(m, c);
            if (!p) throw std::logic_error("enumerate_extreme_pri: reached a cone without an extreme point");
            cones.push_back(c);
            points.push_back(std::move(*p));
            frontier.push_back(it->second);
        }
        return it->second;
    };
    visit(seed);
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        const PriCone c = cones[cur];
        for (const auto& nb : detail::pri_neighbors_unchecked(m, c)) {
            const std::size_t j = visit(nb.cone);
            edges.emplace(std::min(cur, j), std::max(cur, j));
        }
    }

    MescGraph g;
    g.universe = pri_universe(n);
    for (std::size_t i = 0; i < cones.size(); ++i) g.nodes.push_back({pri_generators(cones[i], n), points[i]});
    g.edges.assign(edges.begin(), edges.end());

    PriEnumeration out;
    out.graph = canonicalize(std::move(g));
    std::map<std::vector<std::size_t>, PriCone> by_key;
    for (const auto& c : cones) by_key.emplace(pri_generators(c, n), c);
    for (const auto& node : out.graph.nodes) out.cones.push_back(by_key.at(node.gens));
    out.vertices = out.graph.vertices();
    return out;
}

// ---------------------------------------------------------------------------

inline std::uint64_t factorial(std::size_t k)
{
    if (k > 20) throw unsupported_input("factorial overflows 64 bits");
    std::uint64_t r = 1;
    for (std::size_t i = 2; i <= k; ++i) r *= i;
    return r;
}

/// Maximal chain cones inside N(x, A, B).
inline std::uint64_t comonotone_cones_in(const PriCone& c)
{
    return factorial(cardinality(c.l_active)) * factorial(cardinality(c.u_active));
}

struct CountBounds {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;

    friend bool operator==(const CountBounds&, const CountBounds&) = default;
};

/// Range of the number of MESCs of an interval model on n outcomes.
inline CountBounds count_bounds(std::size_t n)
{
    if (n < 3) throw input_error("count_bounds: needs n >= 3");
    if (n > 20) throw unsupported_input("count_bounds: n > 20 overflows 64 bits");
    const std::size_t lo = (n - 1) / 2, hi = n - 1 - lo;
    // n! / (lo! hi!) = n * C(n-1, lo)
    std::uint64_t binom = 1;
    for (std::size_t i = 1; i <= lo; ++i) binom = binom * (hi + i) / i;
    return {n * (n - 1), n * binom};
}

} // namespace credal
