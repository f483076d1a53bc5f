#pragma once

// H-represented polyhedra over the rationals and the deliberately naive
// vertex oracle: every basis of constraints is solved and kept when feasible.
// The oracle is the trusted baseline the structured enumerators are checked
// against, so it stays simple and refuses large inputs.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "credal/cones.hpp"
#include "credal/exactla.hpp"

namespace credal {

struct LinearConstraint {
    RatVector normal;
    Rat bound;
};

/// { x : f.x >= b for inequalities, f.x = b for equalities }.
/// Constraint index k < inequalities.size() refers to an inequality, larger
/// indices to equalities in order.
struct HPolytope {
    std::size_t dim = 0;
    std::vector<LinearConstraint> inequalities;
    std::vector<LinearConstraint> equalities;

    void validate() const
    {
        if (inequalities.empty() && equalities.empty()) throw input_error("polytope has no constraints");
        for (const auto& c : inequalities)
            if (c.normal.size() != dim) throw input_error("inequality normal has wrong length");
        for (const auto& c : equalities)
            if (c.normal.size() != dim) throw input_error("equality normal has wrong length");
    }

    std::size_t constraint_count() const { return inequalities.size() + equalities.size(); }
    bool is_equality(std::size_t k) const { return k >= inequalities.size(); }

    const LinearConstraint& constraint(std::size_t k) const
    {
        return is_equality(k) ? equalities.at(k - inequalities.size()) : inequalities.at(k);
    }

    bool contains(const RatVector& x) const
    {
        for (const auto& c : inequalities)
            if (dot(c.normal, x) < c.bound) return false;
        for (const auto& c : equalities)
            if (dot(c.normal, x) != c.bound) return false;
        return true;
    }

    /// The same set with each equality f.x = b written as f.x >= b, -f.x >= -b.
    HPolytope split_equalities() const
    {
        HPolytope out{dim, inequalities, {}};
        for (const auto& c : equalities) {
            out.inequalities.push_back(c);
            out.inequalities.push_back({-c.normal, -c.bound});
        }
        return out;
    }
};

struct Vertex {
    RatVector point;
    std::vector<std::size_t> active;   // sorted constraint indices tight at point

    friend bool operator==(const Vertex& a, const Vertex& b) { return a.point == b.point; }
};

struct OracleLimits {
    std::size_t max_dim = 6;
    std::size_t max_constraints = 25;
};

class oracle_limit_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

struct VertexEnumeration {
    std::vector<Vertex> vertices;   // sorted lexicographically by point
    bool empty = false;             // no vertex found: infeasible (or unbounded)

    std::vector<RatVector> points() const
    {
        std::vector<RatVector> out;
        out.reserve(vertices.size());
        for (const auto& v : vertices) out.push_back(v.point);
        return out;
    }
};

inline std::vector<std::size_t> active_set(const HPolytope& h, const RatVector& x)
{
    if (x.size() != h.dim) throw input_error("active_set: point has wrong length");
    if (!h.contains(x)) throw precondition_error("active_set: point is not feasible");
    std::vector<std::size_t> act;
    for (std::size_t k = 0; k < h.constraint_count(); ++k) {
        const auto& c = h.constraint(k);
        if (h.is_equality(k) || dot(c.normal, x) == c.bound) act.push_back(k);
    }
    return act;
}

/// cone(active inequality normals) + span(equality normals).
inline Cone normal_cone_at(const HPolytope& h, const RatVector& x)
{
    std::vector<RatVector> gens, lin;
    for (auto k : active_set(h, x)) {
        const auto& f = h.constraint(k).normal;
        if (h.is_equality(k))
            lin.push_back(f);
        else if (!is_zero(f))
            gens.push_back(f);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return Cone(std::move(gens), std::move(lin));
}

inline VertexEnumeration vertices_bruteforce(const HPolytope& h, const OracleLimits& limits = {})
{
    h.validate();
    if (h.dim > limits.max_dim || h.inequalities.size() > limits.max_constraints)
        throw oracle_limit_exceeded("vertex oracle limited to dim <= " + std::to_string(limits.max_dim) + " and <= " +
                                    std::to_string(limits.max_constraints) + " inequalities");

    RatMatrix eq_rows;
    RatVector eq_rhs;
    for (const auto& c : h.equalities) {
        eq_rows.push_back(c.normal);
        eq_rhs.push_back(c.bound);
    }
    const std::size_t eq_rank = eq_rows.empty() ? 0 : rank(eq_rows);
    VertexEnumeration out;
    if (eq_rank > h.dim) {
        out.empty = true;
        return out;
    }
    const std::size_t k = h.dim - eq_rank;
    const std::size_t m = h.inequalities.size();

    std::map<RatVector, bool> found;
    auto try_subset = [&](const std::vector<std::size_t>& subset) {
        RatMatrix rows = eq_rows;
        RatVector rhs = eq_rhs;
        for (auto i : subset) {
            rows.push_back(h.inequalities[i].normal);
            rhs.push_back(h.inequalities[i].bound);
        }
        if (rows.empty()) return;
        auto x = solve_system(rows, rhs);
        if (x && h.contains(*x)) found.emplace(std::move(*x), true);
    };

    if (k <= m) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        for (;;) {
            try_subset(idx);
            // next k-combination of [0, m)
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    for (auto& [point, unused] : found) out.vertices.push_back({point, active_set(h, point)});
    out.empty = out.vertices.empty();
    return out;
}

struct LpMinimum {
    Rat value;
    Vertex argmin;
};

/// Scan of precomputed vertices; ties go to the lexicographically smallest.
inline LpMinimum lp_min(const VertexEnumeration& verts, const RatVector& f)
{
    if (verts.vertices.empty()) throw precondition_error("lp_min: polytope has no vertices");
    const Vertex* best = nullptr;
    Rat best_value;
    for (const auto& v : verts.vertices) {
        Rat value = dot(v.point, f);
        if (!best || value < best_value) {
            best = &v;
            best_value = value;
        }
    }
    return {best_value, *best};
}

inline LpMinimum lp_min(const HPolytope& h, const RatVector& f, const OracleLimits& limits = {})
{
    if (f.size() != h.dim) throw input_error("lp_min: objective has wrong length");
    return lp_min(vertices_bruteforce(h, limits), f);
}

/// Exact simplex solve of min f.x over h, for inputs beyond the oracle's
/// reach. The returned point is a basic solution of the split standard form.
inline LpSolution solve_lp(const HPolytope& h, const RatVector& f)
{
    h.validate();
    if (f.size() != h.dim) throw input_error("solve_lp: objective has wrong length");
    const std::size_t n = h.dim, m = h.inequalities.size();
    const std::size_t vars = 2 * n + m;
    RatMatrix a;
    RatVector b;
    for (std::size_t i = 0; i < m; ++i) {
        RatVector row(vars, Rat(0));
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = h.inequalities[i].normal[j];
            row[n + j] = -h.inequalities[i].normal[j];
        }
        row[2 * n + i] = -1;
        a.push_back(std::move(row));
        b.push_back(h.inequalities[i].bound);
    }
    for (const auto& c : h.equalities) {
        RatVector row(vars, Rat(0));
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = c.normal[j];
            row[n + j] = -c.normal[j];
        }
        a.push_back(std::move(row));
        b.push_back(c.bound);
    }
    RatVector c(vars, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = f[j];
        c[n + j] = -f[j];
    }
    auto sol = simplex_min(a, b, c);
    if (sol.status == LpStatus::optimal) {
        RatVector x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = sol.x[j] - sol.x[n + j];
        sol.x = std::move(x);
    }
    return sol;
}

} // namespace credal
