#pragma once

// JSON documents for structures, morphisms, diagrams, elements presheaves
// and cell complexes. Printing is canonical: keys, cells and pairs sorted by
// name, so equal structures print to equal bytes.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "relpsh/blowup.hpp"
#include "relpsh/colimits.hpp"
#include "relpsh/fibrations.hpp"
#include "relpsh/realization.hpp"

namespace relpsh {

using nlohmann::json;

/// Malformed input: bad JSON, unknown keys or names, inconsistent data.
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw DocumentError(std::string("missing key '") + key + "'");
    return j.at(key);
}

template <class F>
auto rethrow_as_document(F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const DocumentError&) {
        throw;
    } catch (const std::exception& e) {
        throw DocumentError(e.what());
    }
}

/// Graph bases print their morphisms as s, t, id0, id1.
inline std::string arrow_key(const Category& c, Arrow f)
{
    if (c.kind() == Category::Kind::Graph) {
        const auto& n = c.arrow_name(f);
        if (n == "-") return "s";
        if (n == "+") return "t";
        if (n.empty()) return "id0";
        return "id1";
    }
    return c.arrow_name(f);
}

} // namespace detail

inline json base_to_json(const Category& c)
{
    switch (c.kind()) {
    case Category::Kind::Graph: return {{"kind", "graph"}};
    case Category::Kind::Cube: return {{"kind", "cube"}, {"max_dim", c.max_dim()}};
    case Category::Kind::Table: break;
    }
    json objects = json::array();
    for (Object o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
    json morphisms = json::array();
    json identities = json::object();
    json compositions = json::array();
    for (Arrow f = 0; f < c.arrow_count(); ++f) {
        morphisms.push_back({{"name", c.arrow_name(f)}, {"dom", c.object_name(c.dom(f))}, {"cod", c.object_name(c.cod(f))}});
        if (c.is_identity(f)) identities[c.object_name(c.dom(f))] = c.arrow_name(f);
    }
    for (Arrow f = 0; f < c.arrow_count(); ++f) {
        for (Arrow g = 0; g < c.arrow_count(); ++g) {
            if (c.cod(g) != c.dom(f) || c.is_identity(f) || c.is_identity(g)) continue;
            compositions.push_back({{"outer", c.arrow_name(f)}, {"inner", c.arrow_name(g)}, {"result", c.arrow_name(c.compose(f, g))}});
        }
    }
    return {{"kind", "table"}, {"objects", objects}, {"morphisms", morphisms}, {"identities", identities},
            {"compositions", compositions}};
}

inline CategoryPtr base_from_json(const json& j)
{
    return detail::rethrow_as_document([&]() -> CategoryPtr {
        const std::string kind = detail::field(j, "kind").get<std::string>();
        if (kind == "graph") return graph_category();
        if (kind == "cube") return cube_category(detail::field(j, "max_dim").get<std::size_t>());
        if (kind != "table") throw DocumentError("unknown base kind '" + kind + "'");
        std::vector<Category::ArrowSpec> arrows;
        for (const auto& m : detail::field(j, "morphisms")) {
            arrows.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(), m.at("cod").get<std::string>()});
        }
        std::vector<Category::CompositionSpec> comps;
        if (j.contains("compositions")) {
            for (const auto& c : j.at("compositions")) {
                comps.push_back({c.at("outer").get<std::string>(), c.at("inner").get<std::string>(),
                                 c.at("result").get<std::string>()});
            }
        }
        return Category::table(detail::field(j, "objects").get<std::vector<std::string>>(), arrows,
                               detail::field(j, "identities").get<std::map<std::string, std::string>>(), comps);
    });
}

inline json to_json(const RelStructure& p)
{
    const auto& base = p.base();
    json carriers = json::object();
    for (Object o = 0; o < base.object_count(); ++o) {
        std::vector<std::string> names;
        for (CellId c : p.carrier(o)) names.push_back(p.name(c));
        std::sort(names.begin(), names.end());
        carriers[base.object_name(o)] = names;
    }
    json relations = json::object();
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        if (p.relation(f).empty()) continue;
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [x, y] : p.relation(f)) pairs.emplace_back(p.name(x), p.name(y));
        std::sort(pairs.begin(), pairs.end());
        json arr = json::array();
        for (const auto& [x, y] : pairs) arr.push_back({x, y});
        relations[detail::arrow_key(base, f)] = arr;
    }
    return {{"base", base_to_json(base)}, {"carriers", carriers}, {"relations", relations}, {"level", to_string(p.level())}};
}

inline RelStructure structure_from_json(const json& j)
{
    return detail::rethrow_as_document([&] {
        auto base = base_from_json(detail::field(j, "base"));
        Level level = j.contains("level") ? parse_level(j.at("level").get<std::string>()) : Level::Family;
        RelStructure p(base, level);
        std::vector<std::pair<std::string, std::string>> cells;
        for (const auto& [obj, names] : detail::field(j, "carriers").items()) {
            for (const auto& n : names) cells.emplace_back(n.get<std::string>(), obj);
        }
        // cells in name order, so ids do not depend on the key order of the file
        std::sort(cells.begin(), cells.end());
        for (const auto& [name, obj] : cells) p.add_cell(std::string_view(obj), name);
        if (j.contains("relations")) {
            for (const auto& [key, pairs] : j.at("relations").items()) {
                Arrow f = base->require_arrow(key);
                for (const auto& pr : pairs) {
                    if (!pr.is_array() || pr.size() != 2) throw DocumentError("relation entries must be pairs");
                    p.relate(f, p.at(pr[0].get<std::string>()), p.at(pr[1].get<std::string>()));
                }
            }
        }
        return p;
    });
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot read '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DocumentError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

inline RelStructure read_structure(const std::filesystem::path& path) { return structure_from_json(read_json_file(path)); }

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DocumentError("cannot write '" + path.string() + "'");
    out << text;
}

inline json components_to_json(const RelStructure& source, const RelStructure& target, const ComponentMap& m)
{
    json out = json::object();
    for (CellId c = 0; c < source.size(); ++c) out[source.name(c)] = target.name(m[c]);
    return out;
}

inline json to_json(const RelMorphism& a)
{
    return {{"source", to_json(a.source())},
            {"target", to_json(a.target())},
            {"components", components_to_json(a.source(), a.target(), a.components())}};
}

inline ComponentMap components_from_json(const RelStructure& source, const RelStructure& target, const json& j)
{
    return detail::rethrow_as_document([&] {
        std::map<std::string, std::string> names;
        for (const auto& [k, v] : j.items()) names[k] = v.get<std::string>();
        return morphism_by_names(source, target, names).components();
    });
}

inline RelMorphism morphism_from_json(const json& j)
{
    return detail::rethrow_as_document([&] {
        auto src = structure_from_json(detail::field(j, "source"));
        auto dst = structure_from_json(detail::field(j, "target"));
        auto map = components_from_json(src, dst, detail::field(j, "components"));
        return RelMorphism(std::move(src), std::move(dst), std::move(map));
    });
}

/// {"level": ..., "objects": [document or file name], "arrows": [{"source":
/// i, "target": j, "components": {cell: cell}}]}. File names resolve against
/// `dir`.
inline std::pair<Diagram, Level> diagram_from_json(const json& j, const std::filesystem::path& dir)
{
    return detail::rethrow_as_document([&] {
        Diagram d;
        Level level = j.contains("level") ? parse_level(j.at("level").get<std::string>()) : Level::Lax;
        for (const auto& o : detail::field(j, "objects")) {
            if (o.is_string()) d.objects.push_back(read_structure(dir / o.get<std::string>()));
            else d.objects.push_back(structure_from_json(o));
        }
        if (j.contains("base")) d.base = base_from_json(j.at("base"));
        if (j.contains("arrows")) {
            for (const auto& a : j.at("arrows")) {
                auto s = a.at("source").get<std::size_t>();
                auto t = a.at("target").get<std::size_t>();
                if (s >= d.objects.size() || t >= d.objects.size()) throw DocumentError("diagram arrow out of range");
                d.arrows.push_back({s, t, components_from_json(d.objects[s], d.objects[t], a.at("components"))});
            }
        }
        return std::make_pair(std::move(d), level);
    });
}

inline json to_json(const ElementsPresheaf& F)
{
    const auto& p = *F.base;
    json fibers = json::object();
    for (CellId x = 0; x < p.size(); ++x) fibers[p.name(x)] = F.fibers[x];
    std::vector<json> transitions;
    for (const auto& [inst, map] : F.transitions) {
        auto [f, x, y] = inst;
        json m = json::object();
        for (std::size_t i = 0; i < map.size(); ++i) m[F.fibers[y][i]] = F.fibers[x][map[i]];
        transitions.push_back(
            {{"morphism", detail::arrow_key(p.base(), f)}, {"from", p.name(y)}, {"to", p.name(x)}, {"map", m}});
    }
    std::sort(transitions.begin(), transitions.end(), [](const json& a, const json& b) {
        return std::tie(a.at("from"), a.at("to"), a.at("morphism")) < std::tie(b.at("from"), b.at("to"), b.at("morphism"));
    });
    return {{"base", to_json(p)}, {"fibers", fibers}, {"transitions", transitions}};
}

inline ElementsPresheaf elements_presheaf_from_json(const json& j)
{
    return detail::rethrow_as_document([&] {
        auto p = std::make_shared<const RelStructure>(structure_from_json(detail::field(j, "base")));
        ElementsPresheaf F{p, std::vector<std::vector<std::string>>(p->size()), {}};
        std::map<std::string, std::pair<CellId, std::size_t>> where;
        for (const auto& [cell, names] : detail::field(j, "fibers").items()) {
            CellId x = p->at(cell);
            for (const auto& n : names) {
                where[n.get<std::string>()] = {x, F.fibers[x].size()};
                F.fibers[x].push_back(n.get<std::string>());
            }
        }
        for (const auto& t : detail::field(j, "transitions")) {
            Arrow f = p->base().require_arrow(t.at("morphism").get<std::string>());
            CellId y = p->at(t.at("from").get<std::string>());
            CellId x = p->at(t.at("to").get<std::string>());
            std::vector<std::size_t> map(F.fibers[y].size(), Category::npos);
            for (const auto& [from, to] : t.at("map").items()) {
                auto a = where.at(from);
                auto b = where.at(to.get<std::string>());
                if (a.first != y || b.first != x) throw DocumentError("transition map leaves its fibers");
                map[a.second] = b.second;
            }
            F.transitions[{f, x, y}] = std::move(map);
        }
        return F;
    });
}

inline json to_json(const CellComplex& k)
{
    json cells = json::array();
    for (const auto& c : k.cells) cells.push_back({{"name", c.name}, {"dim", c.dim}});
    json attachments = json::array();
    for (const auto& a : k.attachments) {
        attachments.push_back({{"big", k.cells[a.big].name},
                               {"small", k.cells[a.small].name},
                               {"word", a.word},
                               {"elementary", a.elementary},
                               {"gluing", a.gluing}});
    }
    return {{"mode", to_string(k.mode)},
            {"cells", cells},
            {"attachments", attachments},
            {"components", components(k).size()},
            {"euler_characteristic", euler_characteristic(k)},
            {"census", cell_census(k)}};
}

inline Rational parse_rational(const std::string& text)
{
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(text));
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw DocumentError("'" + text + "' is not a rational number");
    }
}

inline json to_json(const RelStructure& p, const NeighborhoodDescriptor& d)
{
    json terms = json::array();
    for (const auto& t : d.terms) {
        json factors = json::array();
        for (const auto& f : t.factors) factors.push_back(f.str());
        terms.push_back({{"cell", p.name(t.cell)}, {"word", p.base().arrow_name(t.arrow)}, {"factors", factors}});
    }
    json point = json::array();
    for (const auto& x : d.point) point.push_back(to_string(x));
    return {{"cell", p.name(d.center)}, {"point", point}, {"terms", terms}};
}

} // namespace relpsh
