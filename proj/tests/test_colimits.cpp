#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace relpsh;

TEST(Coproduct, NamesAndInjections)
{
    auto sum = coproduct({fixtures::single_edge(), fixtures::forked_graph()});
    EXPECT_EQ(sum.structure.size(), 3u + 7u);
    EXPECT_TRUE(sum.structure.find("0:e").has_value());
    EXPECT_TRUE(sum.structure.find("1:a").has_value());
    EXPECT_EQ(sum.structure.level(), Level::Lax);
    ASSERT_EQ(sum.injections.size(), 2u);
    for (const auto& inj : sum.injections) {
        EXPECT_TRUE(is_morphism(inj).ok());
        EXPECT_TRUE(is_embedding(inj));
    }
}

TEST(Coproduct, UniversalProperty)
{
    gen::Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        auto a = gen::random_lax(graph_category(), 3, rng, 0.4);
        auto b = gen::random_lax(graph_category(), 3, rng, 0.4);
        auto t = gen::random_lax(graph_category(), 4, rng, 0.5);
        auto sum = coproduct({a, b});
        EXPECT_EQ(count_morphisms(sum.structure, t), count_morphisms(a, t) * count_morphisms(b, t));
    }
}

TEST(Coproduct, RejectsMixedBases)
{
    EXPECT_THROW(coproduct({fixtures::single_edge(), fixtures::corner_square()}), std::invalid_argument);
}

TEST(Coequalizer, IdentifiesEndpoints)
{
    // identify the two ends of an edge: a loop
    auto edge = fixtures::single_edge();
    auto point = fixtures::relational_graph({"p"}, {});
    auto a = morphism_by_names(point, edge, {{"p", "v0"}});
    auto b = morphism_by_names(point, edge, {{"p", "v1"}});
    auto c = coequalizer(a, b, Level::Lax);
    EXPECT_EQ(census(c.structure), (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(c.structure.name(c.projection(edge.at("v1"))), "v0");
    EXPECT_TRUE(validate_level(c.structure, Level::Functional).ok());
}

TEST(Coequalizer, FamilyAndLaxDifferOnNewComposites)
{
    // two separate pieces q ->"-0" e and e' ->"-" v; merging e with e'
    // creates the composable pair with no "--" relation
    RelStructure q(cube_category(2), Level::Lax);
    q.add_cell(Object{2}, "q");
    q.add_cell(Object{1}, "e");
    q.add_cell(Object{1}, "e2");
    q.add_cell(Object{0}, "v");
    q.relate("00", "q", "q");
    q.relate("0", "e", "e");
    q.relate("0", "e2", "e2");
    q.relate("", "v", "v");
    q.relate("-0", "q", "e");
    q.relate("-", "e2", "v");
    ASSERT_TRUE(validate_level(q, Level::Lax).ok());
    RelStructure s(cube_category(2), Level::Lax);
    s.add_cell(Object{1}, "x");
    s.relate("0", "x", "x");
    auto a = morphism_by_names(s, q, {{"x", "e"}});
    auto b = morphism_by_names(s, q, {{"x", "e2"}});
    auto fam = coequalizer(a, b, Level::Family);
    auto lax = coequalizer(a, b, Level::Lax);
    EXPECT_FALSE(validate_level(fam.structure, Level::Lax).ok());
    EXPECT_TRUE(validate_level(lax.structure, Level::Lax).ok());
    EXPECT_TRUE(lax.structure.related(lax.structure.base().require_arrow("--"), lax.structure.at("q"),
                                      lax.structure.at("v")));
    EXPECT_FALSE(with_level(fam.structure, Level::Lax) == lax.structure);
}

TEST(Coequalizer, RandomUniversalProperty)
{
    gen::Rng rng(43);
    std::vector<RelStructure> pool;
    for (int i = 0; i < 10; ++i) pool.push_back(gen::random_lax(cube_category(2), 5, rng, 0.4));
    int done = 0;
    while (done < 25) {
        auto q = gen::random_lax(cube_category(2), 5, rng, 0.4);
        auto s = gen::random_lax(cube_category(2), 2, rng, 0.3);
        auto homs = all_morphisms(s, q);
        if (homs.empty()) continue;
        RelMorphism a(s, q, homs.front());
        RelMorphism b(a.source_ptr(), a.target_ptr(), homs.back());
        auto fam = coequalizer(a, b, Level::Family);
        auto lax = coequalizer(a, b, Level::Lax);
        EXPECT_TRUE(is_pointwise_surjective(lax.projection));
        for (const auto& t : pool) {
            EXPECT_TRUE(oracle::coequalizer_universal(a, b, fam, t));
            EXPECT_TRUE(oracle::coequalizer_universal(a, b, lax, t));
        }
        bool creates = !validate_level(fam.structure, Level::Lax).ok();
        EXPECT_EQ(creates, !(with_level(fam.structure, Level::Lax) == lax.structure));
        ++done;
    }
}

TEST(Colimit, PushoutOfTwoEdgesIsAPath)
{
    auto edge = fixtures::single_edge();
    auto point = fixtures::relational_graph({"p"}, {});
    auto l = morphism_by_names(point, edge, {{"p", "v1"}});
    auto r = morphism_by_names(point, edge, {{"p", "v0"}});
    auto po = pushout(l, r, Level::Lax);
    EXPECT_EQ(census(po.structure), (std::vector<std::size_t>{3, 2}));
    EXPECT_TRUE(validate_level(po.structure, Level::Functional).ok());
    EXPECT_EQ(po.cocone.size(), 2u);
    EXPECT_EQ(po.cocone[0](edge.at("v1")), po.cocone[1](edge.at("v0")));
    // named after the least preimage, index first
    EXPECT_TRUE(po.structure.find("0:p").has_value());
}

TEST(Colimit, DiagramWithoutArrowsIsCoproduct)
{
    Diagram d;
    d.objects = {fixtures::closed_cube(1), fixtures::closed_cube(1)};
    auto col = finite_colimit(d, Level::Lax);
    EXPECT_TRUE(isomorphic(col.structure, coproduct(d.objects).structure));
}

TEST(Colimit, EmptyDiagramNeedsABase)
{
    Diagram d;
    d.base = graph_category();
    auto col = finite_colimit(d, Level::Lax);
    EXPECT_TRUE(col.structure.empty());
}

TEST(Colimit, RejectsPresheafLevel)
{
    Diagram d;
    d.objects = {fixtures::single_edge()};
    EXPECT_THROW(finite_colimit(d, Level::Functional), std::invalid_argument);
}
