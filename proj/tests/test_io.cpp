#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "generators.hpp"
#include "relpsh/io.hpp"

using namespace relpsh;

TEST(StructureJson, RoundTrips)
{
    gen::Rng rng(81);
    std::vector<RelStructure> cases{fixtures::corner_square(), fixtures::crossing_graph(), fixtures::split_graph(),
                                    fixtures::i11()};
    for (int i = 0; i < 20; ++i) cases.push_back(gen::random_lax(i % 2 ? graph_category() : cube_category(2), 6, rng, 0.4));
    for (const auto& p : cases) {
        auto j = to_json(p);
        auto back = structure_from_json(json::parse(dump(j)));
        EXPECT_EQ(back.level(), p.level());
        EXPECT_TRUE(isomorphic(back, p));
        EXPECT_EQ(to_json(back), j);
    }
}

TEST(StructureJson, GraphKeys)
{
    auto j = to_json(fixtures::single_edge());
    EXPECT_EQ(j["base"]["kind"], "graph");
    EXPECT_TRUE(j["relations"].contains("s"));
    EXPECT_TRUE(j["relations"].contains("t"));
    EXPECT_TRUE(j["relations"].contains("id0"));
    EXPECT_TRUE(j["relations"].contains("id1"));
    EXPECT_EQ(j["relations"]["s"], json::array({json::array({"e", "v0"})}));
    EXPECT_EQ(j["level"], "functional");
}

TEST(StructureJson, CubeWordsAreKeys)
{
    auto j = to_json(fixtures::corner_square());
    EXPECT_EQ(j["base"]["max_dim"], 2);
    EXPECT_TRUE(j["relations"].contains("--"));
    EXPECT_TRUE(j["relations"].contains(""));
}

TEST(StructureJson, RejectsBadDocuments)
{
    EXPECT_THROW(structure_from_json(json::object()), DocumentError);
    EXPECT_THROW(structure_from_json(json::parse(R"({"base": {"kind": "sphere"}, "carriers": {}})")), DocumentError);
    EXPECT_THROW(structure_from_json(json::parse(
                     R"({"base": {"kind": "graph"}, "carriers": {"0": ["v"]}, "relations": {"s": [["v", "w"]]}})")),
                 DocumentError);
    EXPECT_THROW(structure_from_json(json::parse(
                     R"({"base": {"kind": "graph"}, "carriers": {"0": ["v"]}, "relations": {"q": [["v", "v"]]}})")),
                 DocumentError);
    EXPECT_THROW(structure_from_json(json::parse(
                     R"({"base": {"kind": "graph"}, "carriers": {"0": ["v"]}, "relations": {"id0": [["v"]]}})")),
                 DocumentError);
    EXPECT_THROW(structure_from_json(json::parse(R"({"base": {"kind": "graph"}, "carriers": {}, "level": "strict"})")),
                 DocumentError);
}

TEST(FileIo, MissingAndMalformedFiles)
{
    auto dir = std::filesystem::temp_directory_path() / "relpsh_io_test";
    std::filesystem::create_directories(dir);
    EXPECT_THROW(read_structure(dir / "absent.json"), DocumentError);
    write_text(dir / "bad.json", "{ not json");
    EXPECT_THROW(read_structure(dir / "bad.json"), DocumentError);
    write_text(dir / "edge.json", dump(to_json(fixtures::single_edge())));
    EXPECT_EQ(read_structure(dir / "edge.json"), fixtures::single_edge());
    std::filesystem::remove_all(dir);
}

TEST(BaseJson, TableCategoryRoundTrips)
{
    auto span = span_category(*graph_category());
    auto back = base_from_json(base_to_json(*span));
    EXPECT_EQ(back->object_count(), span->object_count());
    EXPECT_EQ(back->arrow_count(), span->arrow_count());
    EXPECT_EQ(base_to_json(*back), base_to_json(*span));
    EXPECT_EQ(base_from_json(base_to_json(*cube_category(3)))->arrow_count(), cube_category(3)->arrow_count());
}

TEST(MorphismJson, RoundTrips)
{
    auto sq = fixtures::closed_cube(2);
    auto edge = with_base(fixtures::closed_cube(1), cube_category(2));
    auto m = morphism_by_names(edge, sq, {{"[0]", "[0-]"}, {"[-]", "[--]"}, {"[+]", "[+-]"}});
    auto back = morphism_from_json(json::parse(dump(to_json(m))));
    EXPECT_EQ(to_json(back), to_json(m));
    EXPECT_TRUE(is_morphism(back).ok());
    auto j = to_json(m);
    j["components"]["[0]"] = "nowhere";
    EXPECT_THROW(morphism_from_json(j), DocumentError);
}

TEST(ElementsJson, RoundTrips)
{
    gen::Rng rng(82);
    int done = 0;
    while (done < 20) {
        auto p = gen::random_lax(done % 2 ? graph_category() : cube_category(2), 4, rng, 0.4);
        auto F = gen::random_elements_presheaf(p, 8, rng);
        if (!F) continue;
        auto back = elements_presheaf_from_json(json::parse(dump(to_json(*F))));
        EXPECT_EQ(back, *F);
        ++done;
    }
}

TEST(DiagramJson, ResolvesFilesAndInlineObjects)
{
    auto dir = std::filesystem::temp_directory_path() / "relpsh_diagram_test";
    std::filesystem::create_directories(dir);
    write_text(dir / "edge.json", dump(to_json(fixtures::single_edge())));
    json j = {{"level", "lax"},
              {"objects", {to_json(fixtures::relational_graph({"p"}, {})), "edge.json", "edge.json"}},
              {"arrows",
               {{{"source", 0}, {"target", 1}, {"components", {{"p", "v1"}}}},
                {{"source", 0}, {"target", 2}, {"components", {{"p", "v0"}}}}}}};
    auto [d, level] = diagram_from_json(j, dir);
    EXPECT_EQ(level, Level::Lax);
    EXPECT_EQ(d.objects.size(), 3u);
    EXPECT_EQ(census(finite_colimit(d, level).structure), (std::vector<std::size_t>{3, 2}));
    j["arrows"][0]["target"] = 7;
    EXPECT_THROW(diagram_from_json(j, dir), DocumentError);
    std::filesystem::remove_all(dir);
}

TEST(Rationals, Parse)
{
    EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
    EXPECT_EQ(parse_rational("3"), Rational(3));
    EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
    EXPECT_THROW(parse_rational("half"), DocumentError);
    EXPECT_THROW(parse_rational("1/0"), std::exception);
}

TEST(ComplexJson, CarriesSummaries)
{
    auto k = geometric_realization(fixtures::closed_cube(2), GeometricMode::Standard);
    auto j = to_json(k);
    EXPECT_EQ(j["cells"].size(), 9u);
    EXPECT_EQ(j["components"], 1);
    EXPECT_EQ(j["euler_characteristic"], 1);
    EXPECT_EQ(j["census"], json::array({4, 4, 1}));
}

TEST(NeighborhoodJson, PrintsFactors)
{
    auto sq = fixtures::closed_cube(2);
    auto d = basis_neighborhood(sq, sq.at("[0-]"), {Rational(1, 2)});
    auto j = to_json(sq, d);
    EXPECT_EQ(j["cell"], "[0-]");
    EXPECT_EQ(j["point"], json::array({"1/2"}));
    EXPECT_EQ(j["terms"].size(), 2u);
    bool found = false;
    for (const auto& t : j["terms"]) {
        if (t["cell"] == "[00]") {
            found = true;
            EXPECT_EQ(t["factors"], json::array({"]1/2-1/k,1/2+1/k[", "]0,2/k["}));
        }
    }
    EXPECT_TRUE(found);
}
