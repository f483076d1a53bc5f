#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "credal/credal.hpp"
#include "random_models.hpp"

using namespace credal;
using credal::testing::Rng;

namespace {

Rat q(long p, long d = 1) { return Rat(Int(p), Int(d)); }

// outcomes are 1-based in names, 0-based here
Event set_of(std::initializer_list<std::size_t> xs)
{
    Event a = 0;
    for (auto x : xs) a |= singleton(x - 1);
    return a;
}

PriCone cone(std::size_t x, std::initializer_list<std::size_t> a, std::initializer_list<std::size_t> b)
{
    return {x - 1, set_of(a), set_of(b)};
}

const PRIModel& small3()
{
    static const PRIModel m = PRIModel::uniform(3, q(1, 6), q(1, 2));
    return m;
}

PRIModel random_pri(Rng& r, std::size_t n)
{
    RatVector l(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rat a = r.rat(0, 1, 6), b = r.rat(0, 1, 6);
        l[i] = std::min(a, b);
        u[i] = std::max(a, b);
    }
    return PRIModel(l, u);
}

Gamble gamble_in(const PriCone& c, std::size_t n, Rng& r)
{
    Gamble f(n, Rat(0));
    for (auto y : members(c.l_active, n)) f[y] = r.rat(1, 10, 7);
    for (auto z : members(c.u_active, n)) f[z] = -r.rat(1, 10, 7);
    return f;
}

// no selection inequality is tight at any enumerated cone
bool nondegenerate(const PRIModel& m, const PriEnumeration& e)
{
    for (const auto& c : e.cones)
        if (pri_neighbors(m, c).size() != m.size() - 1) return false;
    return true;
}

} // namespace

TEST(PriModel, Validation)
{
    EXPECT_THROW(PRIModel({q(1, 2), q(0)}, {q(1, 4), q(1)}), input_error);
    EXPECT_THROW(PRIModel({q(-1, 2), q(0)}, {q(1), q(1)}), input_error);
    EXPECT_THROW(PRIModel({q(0), q(0)}, {q(1), q(3, 2)}), input_error);
    EXPECT_THROW(PRIModel({q(0)}, {q(1)}), input_error);
}

TEST(PriCoherence, Examples)
{
    const RatVector p{q(1, 5), q(3, 10), q(1, 2)};
    EXPECT_TRUE(is_coherent_pri(PRIModel(p, p)));
    const auto ten = is_coherent_pri(PRIModel::uniform(10, q(1, 11), q(1, 9)));
    EXPECT_TRUE(ten);
    EXPECT_EQ(*ten.reachable, PRIModel::uniform(10, q(1, 11), q(1, 9)));
    const auto low = is_coherent_pri(PRIModel::uniform(3, q(0), q(1, 4)));
    EXPECT_FALSE(low);
    EXPECT_FALSE(low.nonempty);
    // u(x1) = 1 is not reachable once the others need 1/3
    const auto tight = is_coherent_pri(PRIModel({q(0), q(1, 6), q(1, 6)}, {q(1), q(1), q(1)}));
    EXPECT_FALSE(tight);
    ASSERT_TRUE(tight.reachable);
    EXPECT_EQ(tight.reachable->upper(), (RatVector{q(2, 3), q(5, 6), q(5, 6)}));
}

TEST(PriCoherenceProperties, AgreesWithOracle)
{
    Rng r(71);
    int coherent = 0, incoherent = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 3 + r.index(trial < 100 ? 2 : 4);
        const auto m = trial % 3 == 0 ? credal::testing::random_coherent_pri(r, n) : random_pri(r, n);
        const auto lp = to_lower_prevision(m);
        const auto mine = is_coherent_pri(m);
        const auto oracle = is_coherent(lp);
        EXPECT_EQ(mine.coherent, oracle.coherent);
        EXPECT_EQ(mine.nonempty, oracle.nonempty);
        if (mine.nonempty) {
            CredalSet cs(lp);
            for (std::size_t x = 0; x < n; ++x) {
                EXPECT_EQ(mine.reachable->l(x), cs.lower(indicator(n, singleton(x))));
                EXPECT_EQ(mine.reachable->u(x), -cs.lower(-indicator(n, singleton(x))));
            }
        }
        (mine.coherent ? coherent : incoherent)++;
    }
    EXPECT_GT(coherent, 30);
    EXPECT_GT(incoherent, 30);
}

TEST(PriCoherence, TwoOutcomesNeedExactComplements)
{
    // on two outcomes {x1} is the complement of {x2}: l(x1) and 1 - u(x2) bound the same event
    EXPECT_TRUE(is_coherent_pri(PRIModel({q(1, 4), q(1, 2)}, {q(1, 2), q(3, 4)})));
    EXPECT_FALSE(is_coherent_pri(PRIModel({q(1, 4), q(1, 4)}, {q(1, 2), q(3, 4)})));
}

TEST(ConeMembership, Examples)
{
    const auto c = cone(2, {3, 4}, {1});
    EXPECT_EQ(cone_membership(c, {q(0), q(1), q(2), q(2)}), ConeMembership::relative_interior);
    EXPECT_EQ(cone_membership(c, {q(0), q(1), q(1), q(2)}), ConeMembership::boundary);
    EXPECT_EQ(cone_membership(c, {q(2), q(1), q(1), q(2)}), ConeMembership::outside);
    EXPECT_EQ(cone_membership(c, {q(5), q(5), q(5), q(5)}), ConeMembership::boundary);
    EXPECT_EQ(cone_membership(cone(1, {2}, {3}), {q(0), q(1), q(-1)}), ConeMembership::relative_interior);
    EXPECT_THROW(cone_membership(c, {q(0), q(1), q(2)}), input_error);

    // generators 1_{x3}, 1_{x4}, 1_{x1^c} with the constant
    const Cone as_cone({indicator(4, set_of({3})), indicator(4, set_of({4})), indicator(4, set_of({2, 3, 4}))}, {ones(4)});
    EXPECT_TRUE(in_relative_interior(as_cone, {q(0), q(1), q(2), q(2)}));
    EXPECT_FALSE(in_relative_interior(as_cone, {q(0), q(1), q(1), q(2)}));
    EXPECT_TRUE(contains(as_cone, {q(0), q(1), q(1), q(2)}));
}

TEST(ConeMembershipProperties, MatchesGeneratorCone)
{
    Rng r(72);
    const std::size_t n = 4;
    for (int trial = 0; trial < 150; ++trial) {
        Gamble f(n);
        for (auto& x : f) x = r.integer(0, 2);
        const std::size_t x = r.index(n);
        PriCone c{x, 0, 0};
        for (std::size_t y = 0; y < n; ++y)
            if (y != x) (r.integer(0, 1) ? c.l_active : c.u_active) |= singleton(y);
        if (c.l_active == 0 || c.u_active == 0) continue;
        std::vector<RatVector> gens;
        for (auto i : pri_generators(c, n)) gens.push_back(pri_universe(n)[i]);
        const Cone k(gens, {ones(n)});
        const auto m = cone_membership(c, f);
        EXPECT_EQ(m != ConeMembership::outside, contains(k, f));
        EXPECT_EQ(m == ConeMembership::relative_interior, in_relative_interior(k, f));
    }
}

TEST(LocateCone, Examples)
{
    const Gamble f{q(3), q(1), q(2)};
    EXPECT_EQ(locate_cone(f, 2), cone(3, {1}, {2}));
    EXPECT_FALSE(locate_cone(f, 0));
    EXPECT_FALSE(locate_cone(f, 1));
    const Gamble g{q(4), q(0), q(7), q(2), q(5)};
    int found = 0;
    for (std::size_t x = 0; x < 5; ++x) {
        auto c = locate_cone(g, x);
        if (!c) continue;
        ++found;
        EXPECT_EQ(cone_membership(*c, g), ConeMembership::relative_interior);
    }
    EXPECT_EQ(found, 3);
    EXPECT_THROW(locate_cone(g, 5), input_error);
}

TEST(VertexForCone, Examples)
{
    const auto ten = PRIModel::uniform(10, q(1, 11), q(1, 9));
    const auto p = vertex_for_cone(ten, cone(5, {6, 7, 8, 9, 10}, {1, 2, 3, 4}));
    ASSERT_TRUE(p);
    EXPECT_EQ((*p)[4], q(10, 99));
    EXPECT_EQ(1 - q(5, 11) - q(4, 9), q(10, 99));
    EXPECT_EQ(vertex_for_cone(small3(), cone(2, {3}, {1})), (RatVector{q(1, 2), q(1, 3), q(1, 6)}));
    EXPECT_EQ(vertex_for_cone(small3(), cone(2, {1}, {3})), (RatVector{q(1, 6), q(1, 3), q(1, 2)}));
    // four upper bounds below x5 and five lower bounds above leave 10/99; six and three leave too little
    EXPECT_FALSE(vertex_for_cone(ten, cone(7, {8, 9, 10}, {1, 2, 3, 4, 5, 6})));
    EXPECT_THROW(vertex_for_cone(PRIModel::uniform(3, q(0), q(1, 4)), cone(2, {3}, {1})), precondition_error);
    EXPECT_THROW(vertex_for_cone(small3(), cone(2, {1, 3}, {})), precondition_error);
}

TEST(VertexForConeProperties, EveryOracleVertexHasACone)
{
    Rng r(73);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + r.index(3);
        const auto m = credal::testing::random_coherent_pri(r, n);
        const auto oracle = vertices_bruteforce(CredalSet(to_lower_prevision(m)).polytope()).points();
        std::set<RatVector> built;
        for (std::size_t x = 0; x < n; ++x)
            for (Event a = 1; a < full_event(n); ++a) {
                if (credal::contains(a, x)) continue;
                const Event b = full_event(n) & ~a & ~singleton(x);
                if (b == 0) continue;
                if (auto p = vertex_for_cone(m, {x, a, b})) built.insert(*p);
            }
        EXPECT_EQ(std::vector<RatVector>(built.begin(), built.end()), oracle);
    }
}

TEST(PriNeighbors, SmallModel)
{
    const auto nb = pri_neighbors(small3(), cone(2, {3}, {1}));
    ASSERT_EQ(nb.size(), 2u);
    EXPECT_EQ(nb[0].move, PriMove::a2);
    EXPECT_EQ(nb[0].cone, cone(3, {2}, {1}));
    EXPECT_EQ(nb[1].move, PriMove::b2);
    EXPECT_EQ(nb[1].cone, cone(1, {3}, {2}));
    const auto oracle = vertices_bruteforce(CredalSet(to_lower_prevision(small3())).polytope()).points();
    for (const auto& n : nb) {
        auto p = vertex_for_cone(small3(), n.cone);
        ASSERT_TRUE(p);
        EXPECT_TRUE(std::binary_search(oracle.begin(), oracle.end(), *p));
    }
    EXPECT_EQ(to_string(nb[0].cone, 3), "N(x3, {x2}, {x1})");
}

TEST(PriNeighbors, UniformTenOutcomes)
{
    const auto ten = PRIModel::uniform(10, q(1, 11), q(1, 9));
    const auto c = cone(5, {6, 7, 8, 9, 10}, {1, 2, 3, 4});
    const auto nb = pri_neighbors(ten, c);
    EXPECT_EQ(nb.size(), 9u);
    for (const auto& n : nb) {
        EXPECT_TRUE(vertex_for_cone(ten, n.cone));
        const auto a = cardinality(n.cone.l_active), b = cardinality(n.cone.u_active);
        EXPECT_TRUE((a == 5 && b == 4) || (a == 4 && b == 5));
    }
    EXPECT_THROW(pri_neighbors(ten, cone(7, {8, 9, 10}, {1, 2, 3, 4, 5, 6})), precondition_error);
}

TEST(PriNeighbors, SingleMemberSideOnlyMovesTheCenter)
{
    const auto m = PRIModel({q(1, 10), q(1, 5), q(1, 5), q(1, 10)}, {q(1, 2), q(1, 2), q(2, 5), q(1, 2)});
    ASSERT_TRUE(is_coherent_pri(m));
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 4; ++y) {
            if (x == y) continue;
            const PriCone c{x, singleton(y), full_event(4) & ~singleton(x) & ~singleton(y)};
            if (!vertex_for_cone(m, c)) continue;
            for (const auto& n : pri_neighbors(m, c))
                if (n.moved == y) {
                    EXPECT_EQ(n.move, PriMove::a2);
                }
        }
}

TEST(PriNeighbors, TieEmitsBothForms)
{
    const auto m = PRIModel::uniform(4, q(1, 8), q(3, 8));
    const auto c = cone(1, {2, 3}, {4});
    ASSERT_TRUE(vertex_for_cone(m, c));
    std::vector<PriNeighbor> moving_x2;
    for (const auto& n : pri_neighbors(m, c))
        if (n.moved == 1) moving_x2.push_back(n);
    ASSERT_EQ(moving_x2.size(), 2u);
    EXPECT_EQ(moving_x2[0].move, PriMove::a1);
    EXPECT_EQ(moving_x2[1].move, PriMove::a2);
    EXPECT_EQ(vertex_for_cone(m, moving_x2[0].cone), vertex_for_cone(m, moving_x2[1].cone));
}

TEST(EnumeratePri, Examples)
{
    const auto small = enumerate_extreme_pri(small3());
    EXPECT_EQ(small.vertices.size(), 6u);
    RatVector v{q(1, 6), q(1, 3), q(1, 2)};
    std::vector<RatVector> perms;
    do perms.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    EXPECT_EQ(small.vertices, perms);

    const auto a = enumerate_extreme_pri(PRIModel::uniform(10, q(1, 11), q(1, 9)));
    EXPECT_EQ(a.vertices.size(), 1260u);
    EXPECT_TRUE(verify_graph(a.graph, 9).pass());
    const auto b = enumerate_extreme_pri(PRIModel::uniform(10, q(1, 20), q(1, 9)));
    EXPECT_EQ(b.vertices.size(), 90u);
    EXPECT_THROW(enumerate_extreme_pri(PRIModel::uniform(3, q(0), q(1, 4))), precondition_error);
}

TEST(EnumeratePriProperties, MatchesOracleAndWalk)
{
    Rng r(74);
    int generic = 0, degenerate = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + r.index(3);
        const auto m = credal::testing::random_coherent_pri(r, n);
        const auto e = enumerate_extreme_pri(m);
        const auto rep = build_credal_hrep(to_lower_prevision(m));
        EXPECT_EQ(e.vertices, vertices_bruteforce(rep.polytope).points());
        const auto w = walk(rep.polytope, pri_universe(n));
        EXPECT_EQ(w.vertices(), e.vertices);
        EXPECT_EQ(w.nodes.size(), e.graph.nodes.size());
        EXPECT_EQ(w.edges, e.graph.edges);
        const auto b = count_bounds(n);
        EXPECT_LE(e.vertices.size(), b.upper);
        if (nondegenerate(m, e)) {
            ++generic;
            EXPECT_GE(e.cones.size(), b.lower);
            EXPECT_LE(e.cones.size(), b.upper);
            EXPECT_TRUE(verify_graph(e.graph, n - 1).pass());
        } else {
            ++degenerate;
        }
    }
    EXPECT_GT(generic, 10);
    EXPECT_GT(degenerate, 0);
}

TEST(EnumeratePriProperties, TiesGiveOverlappingTriangulations)
{
    // P(x4) is pinned, so every move of x4 is a tie
    const auto m = PRIModel({q(9, 19), q(0), q(5, 19), q(3, 19)}, {q(11, 19), q(2, 19), q(7, 19), q(3, 19)});
    ASSERT_TRUE(is_coherent_pri(m));
    const auto e = enumerate_extreme_pri(m);
    EXPECT_EQ(e.vertices, vertices_bruteforce(CredalSet(to_lower_prevision(m)).polytope()).points());
    EXPECT_EQ(e.vertices.size(), 3u);
    EXPECT_FALSE(nondegenerate(m, e));
    EXPECT_GT(e.cones.size(), count_bounds(4).upper);
}

TEST(EnumeratePriProperties, EveryConeIsMesc)
{
    Rng r(75);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + r.index(3);
        const auto e = enumerate_extreme_pri(credal::testing::random_coherent_pri(r, n));
        const auto u = pri_universe(n);
        for (std::size_t i = 0; i < e.graph.nodes.size(); ++i) EXPECT_TRUE(is_mesc(e.graph.generators(i), u));
    }
}

TEST(EnumeratePriProperties, ConesPartitionTheChains)
{
    Rng r(76);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + r.index(3);
        const auto m = credal::testing::random_coherent_pri(r, n);
        const auto e = enumerate_extreme_pri(m);
        if (!nondegenerate(m, e)) continue;
        ++checked;
        std::uint64_t total = 0;
        for (const auto& c : e.cones) total += comonotone_cones_in(c);
        EXPECT_EQ(total, factorial(n));
        for (int s = 0; s < 20; ++s) {
            const auto f = credal::testing::random_generic_gamble(r, n);
            int interior = 0;
            for (const auto& c : e.cones) interior += cone_membership(c, f) == ConeMembership::relative_interior;
            EXPECT_EQ(interior, 1);
            // a tie puts f in at most one interior; with none it sits on at least two boundaries
            Gamble tied = f;
            tied[1] = tied[0];
            int tied_interior = 0, tied_boundary = 0;
            for (const auto& c : e.cones) {
                const auto where = cone_membership(c, tied);
                tied_interior += where == ConeMembership::relative_interior;
                tied_boundary += where == ConeMembership::boundary;
            }
            EXPECT_LE(tied_interior, 1);
            if (tied_interior == 0) {
                EXPECT_GE(tied_boundary, 2);
            }
        }
        for (const auto& c : e.cones) {
            const auto f = gamble_in(c, n, r);
            EXPECT_EQ(cone_membership(c, f), ConeMembership::relative_interior);
        }
    }
    EXPECT_GT(checked, 5);
}

TEST(PriNaturalExtension, Examples)
{
    Rng r(77);
    const auto& m = small3();
    for (std::size_t x = 0; x < 3; ++x) {
        EXPECT_EQ(natural_extension_pri(m, indicator(3, singleton(x))), m.l(x));
        EXPECT_EQ(natural_extension_pri(m, -indicator(3, singleton(x))), -m.u(x));
    }
    const auto verts = vertices_bruteforce(CredalSet(to_lower_prevision(m)).polytope());
    for (int i = 0; i < 200; ++i) {
        const auto f = credal::testing::random_gamble(r, 3);
        EXPECT_EQ(natural_extension_pri(m, f), lp_min(verts, f).value);
    }
    EXPECT_EQ(natural_extension_pri(m, {q(3), q(2), q(1)}), q(5, 3));
    EXPECT_THROW(natural_extension_pri(PRIModel::uniform(3, q(0), q(1, 4)), ones(3)), precondition_error);
}

TEST(PriNaturalExtensionProperties, MatchesOracleAndChoquet)
{
    Rng r(78);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + r.index(3);
        const auto m = credal::testing::random_coherent_pri(r, n);
        const auto verts = vertices_bruteforce(CredalSet(to_lower_prevision(m)).polytope());
        const auto l = induced_2mono(m);
        for (int i = 0; i < 30; ++i) {
            const auto f = credal::testing::random_gamble(r, n, 3);
            const auto ne = natural_extension_pri_detail(m, f);
            EXPECT_EQ(ne.value, lp_min(verts, f).value);
            EXPECT_EQ(ne.value, choquet(l, f));
            EXPECT_GT(ne.k, 0u);
            EXPECT_LT(ne.k, n - 1);
        }
    }
}

TEST(PriNaturalExtensionProperties, ComonotoneAdditive)
{
    Rng r(79);
    const auto m = credal::testing::random_coherent_pri(r, 5);
    std::vector<std::pair<Gamble, Gamble>> sample;
    for (int i = 0; i < 100; ++i) sample.push_back(credal::testing::random_comonotone_pair(r, 5));
    const auto rep = comonotone_additivity([&](const Gamble& f) { return natural_extension_pri(m, f); }, sample);
    EXPECT_EQ(rep.checked, 100u);
    EXPECT_TRUE(rep.pass());
}

TEST(Induced2Mono, Examples)
{
    const RatVector p{q(1, 5), q(3, 10), q(1, 2)};
    const auto add = induced_2mono(PRIModel(p, p));
    for (Event a = 0; a < 8; ++a) EXPECT_EQ(add(a), LowerProbability::additive(p)(a));
    const auto l = induced_2mono(small3());
    EXPECT_EQ(l(0b011), q(1, 2));
    EXPECT_EQ(l(0b011), natural_extension(to_lower_prevision(small3()), indicator(3, 0b011)));
    const auto five = PRIModel::uniform(5, q(1, 6), q(1, 4));
    const auto l5 = induced_2mono(five);
    EXPECT_TRUE(is_two_monotone(l5));
    for (std::size_t x = 0; x < 5; ++x) {
        EXPECT_EQ(l5(singleton(x)), five.l(x));
        EXPECT_EQ(l5(complement(singleton(x), 5)), 1 - five.u(x));
    }
}

TEST(Counting, Examples)
{
    EXPECT_EQ(count_bounds(3), (CountBounds{6, 6}));
    EXPECT_EQ(count_bounds(4), (CountBounds{12, 12}));
    EXPECT_EQ(count_bounds(10), (CountBounds{90, 1260}));
    EXPECT_EQ(comonotone_cones_in(cone(5, {6, 7, 8, 9, 10}, {1, 2, 3, 4})), 2880u);
    EXPECT_THROW(count_bounds(2), input_error);
}

TEST(CountingProperties, UpperBoundIsTheMiddleBinomial)
{
    for (std::size_t n = 3; n <= 15; ++n) {
        const std::size_t lo = (n - 1) / 2, hi = n - 1 - lo;
        EXPECT_EQ(count_bounds(n).upper, factorial(n) / (factorial(lo) * factorial(hi)));
        EXPECT_EQ(count_bounds(n).lower, n * (n - 1));
    }
}
