#pragma once

// Finitely generated cones with a lineality space, and the simplicial-cone
// calculus used to build complete normal simplicial fans: membership,
// relative interiors, the maximal elementary simplicial cone (MESC) test and
// the sign test for adjacency of two MESCs.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "credal/exactla.hpp"

namespace credal {

/// cone(generators) + span(lineality).
class Cone {
public:
    Cone() = default;

    explicit Cone(std::vector<RatVector> generators, std::vector<RatVector> lineality = {})
        : generators_(std::move(generators)), lineality_(std::move(lineality))
    {
        const std::size_t n = dim_of();
        for (const auto& g : generators_) {
            if (g.size() != n) throw input_error("cone generator length mismatch");
            if (is_zero(g)) throw input_error("cone generator is the zero vector");
        }
        for (const auto& l : lineality_)
            if (l.size() != n) throw input_error("cone lineality length mismatch");
        std::sort(generators_.begin(), generators_.end());
    }

    const std::vector<RatVector>& generators() const { return generators_; }
    const std::vector<RatVector>& lineality() const { return lineality_; }
    std::size_t ambient_dim() const { return dim_of(); }

    /// Dimension of the linear hull.
    std::size_t dimension() const
    {
        RatMatrix rows = generators_;
        rows.insert(rows.end(), lineality_.begin(), lineality_.end());
        return rank(rows);
    }

private:
    std::size_t dim_of() const
    {
        if (!generators_.empty()) return generators_.front().size();
        if (!lineality_.empty()) return lineality_.front().size();
        return 0;
    }

    std::vector<RatVector> generators_;
    std::vector<RatVector> lineality_;
};

/// The support vectors F of a polyhedron together with the lineality of all
/// its normal cones (the equality normals; for credal sets the constant one).
class SupportUniverse {
public:
    SupportUniverse() = default;

    SupportUniverse(std::vector<RatVector> vectors, std::vector<RatVector> lineality)
        : vectors_(std::move(vectors)), lineality_(std::move(lineality))
    {
        auto sorted = vectors_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw input_error("support universe contains duplicate vectors");
        const std::size_t n = dim();
        for (const auto& v : vectors_)
            if (v.size() != n) throw input_error("support universe length mismatch");
        for (const auto& v : lineality_)
            if (v.size() != n) throw input_error("support universe lineality length mismatch");
    }

    /// Universe for a credal set on n outcomes: lineality is the constant one.
    static SupportUniverse credal(std::size_t n, std::vector<RatVector> vectors)
    {
        return SupportUniverse(std::move(vectors), {RatVector(n, Rat(1))});
    }

    const std::vector<RatVector>& vectors() const { return vectors_; }
    const std::vector<RatVector>& lineality() const { return lineality_; }
    std::size_t size() const { return vectors_.size(); }
    const RatVector& operator[](std::size_t i) const { return vectors_.at(i); }

    std::size_t dim() const
    {
        if (!vectors_.empty()) return vectors_.front().size();
        if (!lineality_.empty()) return lineality_.front().size();
        return 0;
    }

    std::optional<std::size_t> index_of(const RatVector& v) const
    {
        auto it = std::find(vectors_.begin(), vectors_.end(), v);
        if (it == vectors_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vectors_.begin());
    }

    std::vector<RatVector> select(const std::vector<std::size_t>& idx) const
    {
        std::vector<RatVector> out;
        out.reserve(idx.size());
        for (auto i : idx) out.push_back(vectors_.at(i));
        return out;
    }

private:
    std::vector<RatVector> vectors_;
    std::vector<RatVector> lineality_;
};

// ---------------------------------------------------------------------------

inline bool in_span(const std::vector<RatVector>& basis, const RatVector& v)
{
    if (basis.empty()) return is_zero(v);
    RatMatrix rows = basis;
    const std::size_t r = rank(rows);
    rows.push_back(v);
    return rank(rows) == r;
}

inline bool is_simplicial(const std::vector<RatVector>& gens)
{
    if (gens.empty()) return true;
    return rank(gens) == gens.size();
}

/// Generators and lineality together linearly independent.
inline bool is_simplicial(const Cone& c)
{
    RatMatrix rows = c.generators();
    rows.insert(rows.end(), c.lineality().begin(), c.lineality().end());
    return is_simplicial(rows);
}

/// Coefficients of v in cone(G) + span(L): the unique expansion when the cone
/// is simplicial, otherwise one exact witness from the phase-1 simplex.
inline std::optional<SpanWitness> cone_witness(const Cone& c, const RatVector& v)
{
    if (v.size() != c.ambient_dim() && c.ambient_dim() != 0) throw input_error("cone membership: length mismatch");
    if (is_simplicial(c)) {
        std::vector<RatVector> basis = c.generators();
        basis.insert(basis.end(), c.lineality().begin(), c.lineality().end());
        auto coords = coordinates(basis, v);
        if (!coords) return std::nullopt;
        const std::size_t g = c.generators().size();
        SpanWitness w{RatVector(coords->begin(), coords->begin() + static_cast<std::ptrdiff_t>(g)),
                      RatVector(coords->begin() + static_cast<std::ptrdiff_t>(g), coords->end())};
        if (std::any_of(w.alpha.begin(), w.alpha.end(), [](const Rat& a) { return a < 0; })) return std::nullopt;
        return w;
    }
    return in_nonneg_span(c.generators(), c.lineality(), v);
}

inline bool contains(const Cone& c, const RatVector& v) { return cone_witness(c, v).has_value(); }

/// Strictly positive expansion on every generator. Simplicial cones only.
inline bool in_relative_interior(const Cone& c, const RatVector& v)
{
    if (!is_simplicial(c)) throw unsupported_input("in_relative_interior: cone is not simplicial");
    auto w = cone_witness(c, v);
    if (!w) return false;
    return std::all_of(w->alpha.begin(), w->alpha.end(), [](const Rat& a) { return a > 0; });
}

// ---------------------------------------------------------------------------
// MESC test.

enum class MescVerdict { mesc, dependent, not_full_dimensional, contains_support_vector };

inline std::string to_string(MescVerdict v)
{
    switch (v) {
    case MescVerdict::mesc: return "mesc";
    case MescVerdict::dependent: return "generators linearly dependent";
    case MescVerdict::not_full_dimensional: return "cone not full-dimensional";
    case MescVerdict::contains_support_vector: return "cone contains another support vector";
    }
    return "?";
}

struct MescCheck {
    MescVerdict verdict = MescVerdict::mesc;
    std::optional<std::size_t> witness;   // universe index of a contained vector
    RatVector coefficients;               // its expansion over the proper generators, then lineality

    explicit operator bool() const { return verdict == MescVerdict::mesc; }
};

namespace detail {

inline std::vector<RatVector> proper_generators(const std::vector<RatVector>& gens, const std::vector<RatVector>& lin)
{
    std::vector<RatVector> out;
    for (const auto& g : gens)
        if (!in_span(lin, g)) out.push_back(g);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// Members of `gens` lying in the lineality span are treated as lineality.
inline MescCheck check_mesc(const std::vector<RatVector>& gens, const SupportUniverse& universe)
{
    const auto& lin = universe.lineality();
    const auto proper = detail::proper_generators(gens, lin);
    for (const auto& g : proper)
        if (!universe.index_of(g)) throw precondition_error("check_mesc: generator not in the support universe");

    std::vector<RatVector> basis = proper;
    basis.insert(basis.end(), lin.begin(), lin.end());
    MescCheck result;
    if (!is_simplicial(basis)) {
        result.verdict = MescVerdict::dependent;
        return result;
    }
    if (basis.size() != universe.dim()) {
        result.verdict = MescVerdict::not_full_dimensional;
        return result;
    }
    for (std::size_t i = 0; i < universe.size(); ++i) {
        const auto& f = universe[i];
        if (std::binary_search(proper.begin(), proper.end(), f) || in_span(lin, f)) continue;
        auto coords = coordinates(basis, f);
        if (!coords) continue;
        bool nonneg = true;
        for (std::size_t k = 0; k < proper.size(); ++k)
            if ((*coords)[k] < 0) { nonneg = false; break; }
        if (nonneg) {
            result.verdict = MescVerdict::contains_support_vector;
            result.witness = i;
            result.coefficients = std::move(*coords);
            return result;
        }
    }
    return result;
}

inline bool is_mesc(const std::vector<RatVector>& gens, const SupportUniverse& universe)
{
    return static_cast<bool>(check_mesc(gens, universe));
}

// ---------------------------------------------------------------------------
// Adjacency.

namespace detail {

struct SwapSplit {
    std::vector<RatVector> shared;
    RatVector dropped;   // in G only
    RatVector added;     // in G2 only
};

inline SwapSplit split_swap(const std::vector<RatVector>& g1, const std::vector<RatVector>& g2,
                            const std::vector<RatVector>& lin)
{
    auto a = proper_generators(g1, lin);
    auto b = proper_generators(g2, lin);
    SwapSplit s;
    std::vector<RatVector> only_a, only_b;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(s.shared));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    if (a.size() != b.size() || only_a.size() != 1 || only_b.size() != 1)
        throw precondition_error("are_adjacent: generator sets must differ in exactly one element");
    s.dropped = std::move(only_a.front());
    s.added = std::move(only_b.front());
    return s;
}

} // namespace detail

/// Normal t of the hyperplane spanned by shared ∪ lineality, scaled so its
/// first nonzero entry is +1.
inline RatVector hyperplane_normal(const std::vector<RatVector>& shared, const std::vector<RatVector>& lin,
                                   std::size_t n)
{
    RatMatrix rows = shared;
    rows.insert(rows.end(), lin.begin(), lin.end());
    auto kernel = nullspace(rows, n);
    if (kernel.size() != 1) throw precondition_error("are_adjacent: shared generators do not span a hyperplane");
    RatVector t = std::move(kernel.front());
    auto lead = std::find_if(t.begin(), t.end(), [](const Rat& x) { return x != 0; });
    const Rat s = *lead;
    for (auto& x : t) x /= s;
    return t;
}

/// Sign test: the swapped generators lie strictly on opposite sides of the
/// hyperplane through the shared facet.
inline bool are_adjacent(const std::vector<RatVector>& g1, const std::vector<RatVector>& g2,
                         const std::vector<RatVector>& lineality)
{
    auto s = detail::split_swap(g1, g2, lineality);
    const auto t = hyperplane_normal(s.shared, lineality, s.dropped.size());
    return dot(s.dropped, t) * dot(s.added, t) < 0;
}

/// When the swapped generators lie on the same side, a vector in the
/// relative interior of both cones. Coefficients on the shared generators are
/// pushed large enough that both expansions stay strictly positive.
inline std::optional<RatVector> interior_intersection_witness(const std::vector<RatVector>& g1,
                                                              const std::vector<RatVector>& g2,
                                                              const std::vector<RatVector>& lineality)
{
    auto s = detail::split_swap(g1, g2, lineality);
    const std::size_t n = s.dropped.size();
    const auto t = hyperplane_normal(s.shared, lineality, n);

    std::vector<RatVector> basis = s.shared;
    basis.insert(basis.end(), lineality.begin(), lineality.end());
    basis.push_back(t);
    auto a = coordinates(basis, s.dropped);
    auto b = coordinates(basis, s.added);
    if (!a || !b) throw precondition_error("interior_intersection_witness: cones are not full-dimensional");
    const Rat alpha = a->back(), beta = b->back();
    if (alpha * beta <= 0) return std::nullopt;

    const Rat gamma = 1;
    const Rat delta = alpha / beta * gamma;
    RatVector h = gamma * s.dropped;
    for (std::size_t i = 0; i < s.shared.size(); ++i) {
        const Rat ai = (*a)[i], bi = (*b)[i];
        const Rat gi = 1 + abs(gamma * ai) + abs(delta * bi);
        h = h + gi * s.shared[i];
    }
    return h;
}

} // namespace credal
