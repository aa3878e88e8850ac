#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace relpsh;

namespace {

ElementsPresheaf edge_elements()
{
    auto p = std::make_shared<const RelStructure>(fixtures::single_edge());
    ElementsPresheaf F{p, {{"p", "q"}, {"r"}, {"u", "w"}}, {}};
    const auto& base = p->base();
    auto id = [&](const char* c, std::vector<std::size_t> m) {
        CellId x = p->at(c);
        F.transitions[{base.identity(p->object(x)), x, x}] = std::move(m);
    };
    id("v0", {0, 1});
    id("v1", {0});
    id("e", {0, 1});
    F.transitions[{base.require_arrow("s"), p->at("e"), p->at("v0")}] = {0, 1};
    F.transitions[{base.require_arrow("t"), p->at("e"), p->at("v1")}] = {0};
    return F;
}

} // namespace

TEST(ElementsCategory, SingleEdge)
{
    auto p = fixtures::single_edge();
    auto el = elements_category(p);
    EXPECT_EQ(el->object_count(), 3u);
    EXPECT_EQ(el->arrow_count(), 5u);
    EXPECT_TRUE(el->check_axioms().empty());
    RelStructure bare(graph_category());
    bare.add_cell(Object{0}, "v");
    EXPECT_THROW(elements_category(bare), std::invalid_argument);
}

TEST(ElementsCategory, CornerSquareComposesLikeTheBase)
{
    auto p = fixtures::corner_square();
    auto el = elements_category(p);
    EXPECT_EQ(el->object_count(), p.size());
    EXPECT_EQ(el->arrow_count(), p.relation_count());
    EXPECT_TRUE(el->check_axioms().empty());
}

TEST(ExtendedElements, SingleEdgeCounts)
{
    auto ext = extended_elements(fixtures::single_edge());
    // three cells and five instances, identity instances included
    EXPECT_EQ(ext.object_count(), 8u);
    EXPECT_EQ(ext.morphism_count(), 10u);
    auto cat = extended_elements_category(fixtures::single_edge());
    EXPECT_EQ(cat->object_count(), 8u);
    EXPECT_EQ(cat->arrow_count(), 8u + 10u);
}

TEST(ElementsPresheaf, PhiBuildsAFibration)
{
    auto F = edge_elements();
    EXPECT_TRUE(check_elements_presheaf(F).empty());
    auto alpha = phi(F);
    EXPECT_EQ(alpha.source().size(), 5u);
    EXPECT_TRUE(is_morphism(alpha).ok());
    EXPECT_TRUE(is_discrete_fibration(alpha).ok());
    EXPECT_EQ(psi(alpha), F);
}

TEST(ElementsPresheaf, RejectsBrokenData)
{
    auto F = edge_elements();
    F.transitions.erase(F.transitions.begin());
    EXPECT_FALSE(check_elements_presheaf(F).empty());
    EXPECT_THROW(phi(F), std::invalid_argument);

    auto G = edge_elements();
    // identity transition that is not the identity
    const auto& p = *G.base;
    G.transitions[{p.base().identity(0), p.at("v0"), p.at("v0")}] = {1, 0};
    EXPECT_FALSE(check_elements_presheaf(G).empty());
}

TEST(ElementsPresheaf, CompositesMustCommute)
{
    auto p = std::make_shared<const RelStructure>(fixtures::corner_square());
    ElementsPresheaf F{p, std::vector<std::vector<std::string>>(p->size()), {}};
    for (CellId x = 0; x < p->size(); ++x) F.fibers[x] = {p->name(x) + "1", p->name(x) + "2"};
    const auto& base = p->base();
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p->relation(f)) F.transitions[{f, x, y}] = {0, 1};
    }
    EXPECT_TRUE(check_elements_presheaf(F).empty());
    F.transitions[{base.require_arrow("++"), p->at("alpha"), p->at("t")}] = {1, 0};
    EXPECT_FALSE(check_elements_presheaf(F).empty());
}

TEST(Equivalence, RandomRoundTrips)
{
    gen::Rng rng(51);
    int done = 0;
    while (done < 40) {
        auto base = done % 2 ? graph_category() : cube_category(2);
        auto p = gen::random_lax(base, 4, rng, 0.4);
        auto F = gen::random_elements_presheaf(p, 8, rng);
        if (!F) continue;
        auto alpha = phi(*F);
        EXPECT_EQ(psi(alpha), *F);
        auto scrambled = gen::scramble_source(alpha, rng);
        EXPECT_TRUE(isomorphic_over(phi(psi(scrambled)), scrambled));
        EXPECT_TRUE(oracle::fiber_neighborhoods_bijective(scrambled));
        ++done;
    }
}

TEST(Equivalence, PsiRejectsNonFibrations)
{
    auto one = fixtures::relational_graph({"v", "w"}, {{"e", {"v"}, {"w"}}});
    auto lone = fixtures::relational_graph({"v"}, {});
    auto m = morphism_by_names(lone, one, {{"v", "v"}});
    EXPECT_THROW(psi(m), std::invalid_argument);
}

TEST(Equivalence, IsomorphicOverDistinguishesFibers)
{
    auto F = edge_elements();
    auto G = edge_elements();
    // the same upstairs shape but the two edges swap their sources
    G.transitions[{G.base->base().require_arrow("s"), G.base->at("e"), G.base->at("v0")}] = {1, 0};
    EXPECT_TRUE(isomorphic_over(phi(F), phi(G)));
    auto H = edge_elements();
    H.transitions[{H.base->base().require_arrow("s"), H.base->at("e"), H.base->at("v0")}] = {0, 0};
    H.fibers[H.base->at("v0")] = {"p", "q"};
    EXPECT_TRUE(check_elements_presheaf(H).empty());
    EXPECT_FALSE(isomorphic_over(phi(F), phi(H)));
}
