#pragma once

// Hand-built structures shared by the test programs.

#include <string>
#include <utility>
#include <vector>

#include "relpsh/relpsh.hpp"

namespace fixtures {

using namespace relpsh;

inline void add_identities(RelStructure& p)
{
    for (CellId c = 0; c < p.size(); ++c) p.relate(p.base().identity(p.object(c)), c, c);
}

struct EdgeSpec {
    std::string name;
    std::vector<std::string> sources;
    std::vector<std::string> targets;
};

/// A relational graph: every edge lists its sources and targets.
inline RelStructure relational_graph(const std::vector<std::string>& vertices, const std::vector<EdgeSpec>& edges,
                                     Level level = Level::Lax)
{
    RelStructure g(graph_category(), level);
    for (const auto& v : vertices) g.add_cell(Object{0}, v);
    for (const auto& e : edges) g.add_cell(Object{1}, e.name);
    for (const auto& e : edges) {
        for (const auto& s : e.sources) g.relate("s", e.name, s);
        for (const auto& t : e.targets) g.relate("t", e.name, t);
    }
    add_identities(g);
    return g;
}

/// The square with a missing source on both edges, whose lower corner is only
/// reached through the composite "--".
inline RelStructure corner_square()
{
    RelStructure h(cube_category(2), Level::Lax);
    for (auto v : {"s", "t"}) h.add_cell(Object{0}, v);
    for (auto e : {"a", "b"}) h.add_cell(Object{1}, e);
    h.add_cell(Object{2}, "alpha");
    h.relate("0+", "alpha", "a");
    h.relate("+0", "alpha", "b");
    h.relate("+", "a", "t");
    h.relate("+", "b", "t");
    h.relate("--", "alpha", "s");
    h.relate("++", "alpha", "t");
    add_identities(h);
    return h;
}

/// Edge a with two targets and no source; b_i from y_i to z_i.
inline RelStructure forked_graph()
{
    return relational_graph({"y1", "y2", "z1", "z2"},
                            {{"a", {}, {"y1", "y2"}}, {"b1", {"y1"}, {"z1"}}, {"b2", {"y2"}, {"z2"}}});
}

/// x --a--> {y1, y2}, b1 : y1 -> z, b2 with source y2 and no target.
inline RelStructure split_graph()
{
    return relational_graph({"x", "y1", "y2", "z"},
                            {{"a", {"x"}, {"y1", "y2"}}, {"b1", {"y1"}, {"z"}}, {"b2", {"y2"}, {}}});
}

/// Reflection of the central graph: y1 and y2 merged, a fresh end for b2.
inline RelStructure split_graph_reflected()
{
    return relational_graph({"x", "y", "z", "z2"}, {{"a", {"x"}, {"y"}}, {"b1", {"y"}, {"z"}}, {"b2", {"y"}, {"z2"}}},
                            Level::Functional);
}

/// Coreflection of the central graph: a split in two, b2 dropped.
inline RelStructure split_graph_coreflected()
{
    return relational_graph({"x", "y1", "y2", "z"},
                            {{"a1", {"x"}, {"y1"}}, {"a2", {"x"}, {"y2"}}, {"b1", {"y1"}, {"z"}}}, Level::Functional);
}

/// Two edges a_i into x and two edges b_j out of x, with free far ends.
inline RelStructure crossing_graph()
{
    return relational_graph({"x", "u1", "u2", "v1", "v2"},
                            {{"a1", {"u1"}, {"x"}}, {"a2", {"u2"}, {"x"}}, {"b1", {"x"}, {"v1"}}, {"b2", {"x"}, {"v2"}}},
                            Level::Functional);
}

/// The crossing graph blown up: x replaced by four points x_ij.
inline RelStructure h_graph()
{
    return relational_graph({"x11", "x12", "x21", "x22"},
                            {{"a1", {}, {"x11", "x12"}},
                             {"a2", {}, {"x21", "x22"}},
                             {"b1", {"x11", "x21"}, {}},
                             {"b2", {"x12", "x22"}, {}}});
}

inline RelStructure single_edge()
{
    return relational_graph({"v0", "v1"}, {{"e", {"v0"}, {"v1"}}}, Level::Functional);
}

/// U(y(n)) over the cube category truncated at `max_dim` (default n).
inline RelStructure closed_cube(std::size_t n, std::size_t max_dim = 0)
{
    auto base = cube_category(std::max(n, max_dim));
    return with_level(representable(base, n), Level::Lax);
}

/// Two squares sharing an edge: I ⊗ J.
inline RelStructure i11() { return with_level(tensor(interval_I(), interval_J()), Level::Functional); }

inline RelStructure point_and_edge()
{
    return relational_graph({"p", "v"}, {{"e", {}, {}}});
}

inline RelStructure pointed_edge() { return relational_graph({"v"}, {{"e", {"v"}, {}}}); }

} // namespace fixtures
