#pragma once

// Enumeration of a complete normal simplicial fan, and with it the extreme
// points of a polytope, by walking the adjacency graph of maximal elementary
// simplicial cones. Starting from one MESC inside the normal cone of a vertex,
// every generator is dropped in turn and replaced by each support vector that
// lands on the other side of the shared facet, yields a MESC, and certifies a
// feasible point.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "credal/cones.hpp"
#include "credal/polytope.hpp"

namespace credal {

struct MescNode {
    std::vector<std::size_t> gens;   // sorted indices into the graph's universe
    RatVector vertex;                // the extreme point this cone certifies
};

struct MescGraph {
    SupportUniverse universe;
    std::vector<MescNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;   // (i, j) with i < j, sorted

    std::vector<std::vector<std::size_t>> adjacency() const
    {
        std::vector<std::vector<std::size_t>> adj(nodes.size());
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    /// Distinct certified extreme points, lexicographically sorted.
    std::vector<RatVector> vertices() const
    {
        std::set<RatVector> s;
        for (const auto& n : nodes) s.insert(n.vertex);
        return {s.begin(), s.end()};
    }

    std::vector<RatVector> generators(std::size_t node) const { return universe.select(nodes.at(node).gens); }

    Cone cone(std::size_t node) const { return Cone(generators(node), universe.lineality()); }
};

/// Sorts nodes by generator key and renumbers edges so output does not
/// depend on discovery order.
inline MescGraph canonicalize(MescGraph g)
{
    std::vector<std::size_t> order(g.nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return g.nodes[a].gens < g.nodes[b].gens; });
    std::vector<std::size_t> rank_of(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = i;

    MescGraph out;
    out.universe = std::move(g.universe);
    for (auto i : order) out.nodes.push_back(std::move(g.nodes[i]));
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (auto [a, b] : g.edges) {
        auto x = rank_of[a], y = rank_of[b];
        if (x != y) edges.insert({std::min(x, y), std::max(x, y)});
    }
    out.edges.assign(edges.begin(), edges.end());
    return out;
}

// ---------------------------------------------------------------------------

/// Unique solution of f.x = b over the given constraints plus the equalities.
inline RatVector extreme_point_of(const std::vector<LinearConstraint>& active,
                                  const std::vector<LinearConstraint>& equalities)
{
    RatMatrix rows;
    RatVector rhs;
    for (const auto* list : {&active, &equalities})
        for (const auto& c : *list) {
            rows.push_back(c.normal);
            rhs.push_back(c.bound);
        }
    if (rows.empty()) throw precondition_error("extreme_point_of: no constraints");
    auto x = solve_system(rows, rhs);
    if (!x) throw precondition_error("extreme_point_of: active system is singular or inconsistent");
    return *x;
}

/// Support universe vectors paired with the right-hand sides of their
/// inequalities in h.
class FanContext {
public:
    FanContext(const HPolytope& h, const SupportUniverse& u) : h_(h), u_(u)
    {
        h.validate();
        if (u.dim() != h.dim) throw input_error("support universe dimension does not match the polytope");
        bounds_.reserve(u.size());
        for (const auto& f : u.vectors()) {
            std::optional<Rat> b;
            for (const auto& c : h.inequalities)
                if (c.normal == f && (!b || c.bound > *b)) b = c.bound;
            if (!b) throw precondition_error("support vector has no matching inequality in the polytope");
            bounds_.push_back(*b);
        }
        for (const auto& f : u.lineality()) lin_rank_rows_.push_back(f);
    }

    const HPolytope& polytope() const { return h_; }
    const SupportUniverse& universe() const { return u_; }
    const Rat& bound(std::size_t i) const { return bounds_[i]; }
    std::size_t cone_size() const { return h_.dim - (lin_rank_rows_.empty() ? 0 : rank(lin_rank_rows_)); }

    RatVector solve(const std::vector<std::size_t>& gens) const
    {
        std::vector<LinearConstraint> act;
        for (auto i : gens) act.push_back({u_[i], bounds_[i]});
        return extreme_point_of(act, h_.equalities);
    }

    bool tight(std::size_t i, const RatVector& x) const { return dot(u_[i], x) == bounds_[i]; }

private:
    const HPolytope& h_;
    const SupportUniverse& u_;
    RatVector bounds_;
    RatMatrix lin_rank_rows_;
};

/// Every MESC (G \ {dropped}) ∪ {f'} across the facet opposite the dropped
/// generator whose certified point is feasible. All of them certify the same
/// extreme point; more than one appears only where the normal cone admits
/// several triangulations.
inline std::vector<MescNode> neighbor_candidates(const FanContext& ctx, const MescNode& node,
                                                 std::size_t drop_position)
{
    const auto& u = ctx.universe();
    if (drop_position >= node.gens.size()) throw precondition_error("neighbor_candidates: no such generator");
    std::vector<std::size_t> shared = node.gens;
    const std::size_t dropped = shared[drop_position];
    shared.erase(shared.begin() + static_cast<std::ptrdiff_t>(drop_position));

    const auto t = hyperplane_normal(u.select(shared), u.lineality(), u.dim());
    const Rat side = dot(u[dropped], t);

    std::vector<MescNode> out;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (std::binary_search(node.gens.begin(), node.gens.end(), j)) continue;
        if (side * dot(u[j], t) >= 0) continue;
        std::vector<std::size_t> cand = shared;
        cand.insert(std::lower_bound(cand.begin(), cand.end(), j), j);
        RatVector x = ctx.solve(cand);
        if (!ctx.polytope().contains(x)) continue;
        if (!is_mesc(u.select(cand), u)) continue;
        out.push_back({std::move(cand), std::move(x)});
    }
    return out;
}

inline std::vector<MescNode> neighbor_candidates(const MescNode& node, std::size_t drop_position, const HPolytope& h,
                                                 const SupportUniverse& u)
{
    return neighbor_candidates(FanContext(h, u), node, drop_position);
}

/// Deterministic generic direction: distinct rational entries.
inline RatVector generic_direction(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-997, 997);
    std::uniform_int_distribution<long> den(1, 89);
    RatVector d;
    while (d.size() < n) {
        Rat r(Int(num(rng)), Int(den(rng)));
        if (std::find(d.begin(), d.end(), r) == d.end()) d.push_back(r);
    }
    return d;
}

class walk_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// A MESC among the generators tight at x whose cone contains d.
inline std::optional<MescNode> seed_node(const FanContext& ctx, const RatVector& d)
{
    const auto& h = ctx.polytope();
    const auto& u = ctx.universe();
    auto lp = solve_lp(h, d);
    if (lp.status == LpStatus::infeasible) throw walk_error("walk: polytope is empty");
    if (lp.status == LpStatus::unbounded) throw walk_error("walk: polytope is unbounded in the seed direction");
    const RatVector& x = lp.x;

    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (ctx.tight(i, x)) tight.push_back(i);
    const std::size_t k = ctx.cone_size();
    if (tight.size() < k) return std::nullopt;

    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    const std::size_t m = tight.size();
    for (;;) {
        std::vector<std::size_t> gens;
        for (auto i : idx) gens.push_back(tight[i]);
        auto vecs = u.select(gens);
        auto basis = vecs;
        basis.insert(basis.end(), u.lineality().begin(), u.lineality().end());
        if (is_simplicial(basis) && basis.size() == u.dim() && contains(Cone(vecs, u.lineality()), d) &&
            is_mesc(vecs, u)) {
            RatVector p = ctx.solve(gens);
            if (h.contains(p)) return MescNode{std::move(gens), std::move(p)};
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

} // namespace detail

struct WalkOptions {
    std::optional<RatVector> seed;
    std::size_t seed_attempts = 16;
    std::uint64_t rng_seed = 0x5eedULL;
};

/// Breadth-first walk until no node has an unexplored droppable generator.
inline MescGraph walk(const HPolytope& h, const SupportUniverse& u, const WalkOptions& opts = {})
{
    FanContext ctx(h, u);
    std::optional<MescNode> start;
    for (std::size_t attempt = 0; attempt < opts.seed_attempts && !start; ++attempt) {
        RatVector d = (attempt == 0 && opts.seed) ? *opts.seed : generic_direction(h.dim, opts.rng_seed + attempt);
        if (d.size() != h.dim) throw input_error("walk: seed direction has wrong length");
        start = detail::seed_node(ctx, d);
    }
    if (!start) throw walk_error("walk: no MESC found from any seed direction");

    MescGraph g;
    g.universe = u;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    std::deque<std::size_t> frontier;

    index.emplace(start->gens, 0);
    g.nodes.push_back(std::move(*start));
    frontier.push_back(0);

    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        const MescNode node = g.nodes[cur];
        for (std::size_t pos = 0; pos < node.gens.size(); ++pos) {
            for (auto& cand : neighbor_candidates(ctx, node, pos)) {
                auto [it, inserted] = index.emplace(cand.gens, g.nodes.size());
                if (inserted) {
                    g.nodes.push_back(std::move(cand));
                    frontier.push_back(it->second);
                }
                edges.insert({std::min(cur, it->second), std::max(cur, it->second)});
            }
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return canonicalize(std::move(g));
}

// ---------------------------------------------------------------------------

struct GraphReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    bool connected = false;
    std::map<std::size_t, std::size_t> degree_histogram;   // degree -> node count
    std::size_t expected_degree = 0;
    bool regular = false;

    bool pass() const { return connected && regular; }
};

inline GraphReport verify_graph(const MescGraph& g, std::size_t expected_degree)
{
    GraphReport r;
    r.nodes = g.nodes.size();
    r.edges = g.edges.size();
    r.expected_degree = expected_degree;
    const auto adj = g.adjacency();
    for (const auto& a : adj) ++r.degree_histogram[a.size()];
    r.regular = r.degree_histogram.size() == 1 && r.degree_histogram.begin()->first == expected_degree;

    if (r.nodes == 0) return r;
    std::vector<bool> seen(r.nodes, false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                q.push_back(w);
            }
    }
    r.connected = count == r.nodes;
    return r;
}

/// Undirected DOT; node labels are the certified vertices.
inline std::string to_dot(const MescGraph& g, const std::string& name = "mesc")
{
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        out << "  n" << i << " [label=\"(" << to_string(g.nodes[i].vertex) << ")\"];\n";
    for (auto [a, b] : g.edges) out << "  n" << a << " -- n" << b << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace credal
