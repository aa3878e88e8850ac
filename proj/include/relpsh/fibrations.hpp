#pragma once

// Categories of elements, the span category C_Rel with the extended elements
// ∫F(P), and the correspondence between presheaves on (∫P)^op and discrete
// fibrations over P.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "relpsh/morphism.hpp"
#include "relpsh/transforms.hpp"

namespace relpsh {

inline std::string span_object_name(const Category& c, Arrow f) { return "R(" + c.arrow_name(f) + ")"; }

/// C_Rel: the objects of C plus one object R(f) per morphism f, with
/// p0(f) : R(f) -> cod f and p1(f) : R(f) -> dom f. Nothing composes.
inline CategoryPtr span_category(const Category& c)
{
    std::vector<std::string> objects;
    std::vector<Category::ArrowSpec> arrows;
    std::map<std::string, std::string> ids;
    for (Object o = 0; o < c.object_count(); ++o) objects.push_back(c.object_name(o));
    for (Arrow f = 0; f < c.arrow_count(); ++f) objects.push_back(span_object_name(c, f));
    for (const auto& o : objects) {
        arrows.push_back({"id(" + o + ")", o, o});
        ids[o] = "id(" + o + ")";
    }
    for (Arrow f = 0; f < c.arrow_count(); ++f) {
        arrows.push_back({"p0(" + c.arrow_name(f) + ")", span_object_name(c, f), c.object_name(c.cod(f))});
        arrows.push_back({"p1(" + c.arrow_name(f) + ")", span_object_name(c, f), c.object_name(c.dom(f))});
    }
    return Category::table(objects, arrows, ids, {});
}

inline std::string instance_name(const RelStructure& p, Arrow f, CellId x, CellId y)
{
    return "(" + p.base().arrow_name(f) + "," + p.name(x) + "," + p.name(y) + ")";
}

/// ∫P for a lax P: objects are the cells, morphisms y -> x are the instances
/// x ->_f y, composed as in the base.
inline CategoryPtr elements_category(const RelStructure& p)
{
    auto report = validate_level(p, Level::Lax);
    if (!report.ok()) throw std::invalid_argument("category of elements needs a lax structure");
    std::vector<std::string> objects;
    std::vector<Category::ArrowSpec> arrows;
    std::map<std::string, std::string> ids;
    std::vector<Category::CompositionSpec> comps;
    for (CellId x = 0; x < p.size(); ++x) objects.push_back(p.name(x));
    const auto& base = p.base();
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            arrows.push_back({instance_name(p, f, x, y), p.name(y), p.name(x)});
            if (base.is_identity(f) && x == y) ids[p.name(x)] = instance_name(p, f, x, y);
            for (const auto& inc : p.faces(y)) {
                comps.push_back({instance_name(p, f, x, y), instance_name(p, inc.arrow, y, inc.cell),
                                 instance_name(p, base.compose(f, inc.arrow), x, inc.cell)});
            }
        }
    }
    return Category::table(objects, arrows, ids, comps);
}

/// ∫F(P): one object per cell, one per relation instance (identity instances
/// included), and two morphisms from each instance to its endpoints.
struct ExtendedElements {
    struct Instance {
        Arrow arrow;
        CellId big;
        CellId small;
    };
    std::size_t cells = 0;
    std::vector<Instance> instances;

    std::size_t object_count() const { return cells + instances.size(); }
    std::size_t morphism_count() const { return 2 * instances.size(); }
};

inline ExtendedElements extended_elements(const RelStructure& p)
{
    ExtendedElements out;
    out.cells = p.size();
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) out.instances.push_back({f, x, y});
    }
    return out;
}

/// The same data as a category over C_Rel (non-identity arrows only are the
/// instance legs).
inline CategoryPtr extended_elements_category(const RelStructure& p)
{
    auto ext = extended_elements(p);
    std::vector<std::string> objects;
    std::vector<Category::ArrowSpec> arrows;
    std::map<std::string, std::string> ids;
    for (CellId x = 0; x < p.size(); ++x) objects.push_back(p.name(x));
    for (const auto& i : ext.instances) objects.push_back(instance_name(p, i.arrow, i.big, i.small));
    for (const auto& o : objects) {
        arrows.push_back({"id" + o, o, o});
        ids[o] = "id" + o;
    }
    for (const auto& i : ext.instances) {
        std::string n = instance_name(p, i.arrow, i.big, i.small);
        arrows.push_back({"p0" + n, n, p.name(i.big)});
        arrows.push_back({"p1" + n, n, p.name(i.small)});
    }
    return Category::table(objects, arrows, ids, {});
}

/// A presheaf on (∫P)^op: a fiber per cell and, per instance x ->_f y, a map
/// fiber(y) -> fiber(x). Fiber element names are unique across fibers.
struct ElementsPresheaf {
    using Instance = std::tuple<Arrow, CellId, CellId>;

    std::shared_ptr<const RelStructure> base;
    std::vector<std::vector<std::string>> fibers;
    std::map<Instance, std::vector<std::size_t>> transitions;

    bool operator==(const ElementsPresheaf& other) const
    {
        return *base == *other.base && fibers == other.fibers && transitions == other.transitions;
    }
};

/// Problems with shape, names or functoriality; empty when F is a presheaf.
inline std::vector<std::string> check_elements_presheaf(const ElementsPresheaf& F)
{
    std::vector<std::string> out;
    const auto& p = *F.base;
    const auto& base = p.base();
    if (F.fibers.size() != p.size()) return {"fiber count differs from the number of cells"};
    std::set<std::string> names;
    for (const auto& fib : F.fibers) {
        for (const auto& n : fib) {
            if (!names.insert(n).second) out.push_back("duplicate fiber element '" + n + "'");
        }
    }
    std::size_t expected = 0;
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            ++expected;
            auto it = F.transitions.find({f, x, y});
            std::string label = instance_name(p, f, x, y);
            if (it == F.transitions.end()) {
                out.push_back("missing transition for " + label);
                continue;
            }
            if (it->second.size() != F.fibers[y].size()) {
                out.push_back("transition for " + label + " is not total");
                continue;
            }
            for (auto v : it->second) {
                if (v >= F.fibers[x].size()) out.push_back("transition for " + label + " leaves its fiber");
            }
            if (base.is_identity(f) && x == y) {
                for (std::size_t i = 0; i < it->second.size(); ++i) {
                    if (it->second[i] != i) out.push_back("identity instance " + label + " acts nontrivially");
                }
            }
        }
    }
    if (F.transitions.size() != expected) out.push_back("transition for a pair that is not a relation instance");
    if (!out.empty()) return out;
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            for (const auto& inc : p.faces(y)) {
                auto composite = F.transitions.find({base.compose(f, inc.arrow), x, inc.cell});
                if (composite == F.transitions.end()) continue;
                const auto& outer = F.transitions.at({f, x, y});
                const auto& inner = F.transitions.at({inc.arrow, y, inc.cell});
                for (std::size_t i = 0; i < inner.size(); ++i) {
                    if (outer[inner[i]] != composite->second[i]) {
                        out.push_back("not functorial on " + instance_name(p, f, x, y) + " after " +
                                      instance_name(p, inc.arrow, y, inc.cell));
                        break;
                    }
                }
            }
        }
    }
    return out;
}

/// φ(F): upstairs cells are the fiber elements (in fiber order), with
/// a ->_f b iff b lies over y, a over x, x ->_f y and F maps b to a.
inline RelMorphism phi(const ElementsPresheaf& F)
{
    auto problems = check_elements_presheaf(F);
    if (!problems.empty()) throw std::invalid_argument("not an elements presheaf: " + problems.front());
    const auto& p = *F.base;
    RelStructure up(p.base_ptr(), std::min(p.level(), Level::Lax));
    std::vector<std::vector<CellId>> ids(p.size());
    ComponentMap proj;
    for (CellId x = 0; x < p.size(); ++x) {
        for (const auto& n : F.fibers[x]) {
            ids[x].push_back(up.add_cell(p.object(x), n));
            proj.push_back(x);
        }
    }
    for (const auto& [inst, map] : F.transitions) {
        auto [f, x, y] = inst;
        for (std::size_t i = 0; i < map.size(); ++i) up.relate(f, ids[x][map[i]], ids[y][i]);
    }
    return RelMorphism(std::make_shared<const RelStructure>(std::move(up)), F.base, std::move(proj));
}

/// ψ(α): fibers are preimages (in upstairs cell order), transitions are the
/// unique lifts. Throws if α is not a discrete fibration.
inline ElementsPresheaf psi(const RelMorphism& alpha)
{
    auto check = is_discrete_fibration(alpha);
    if (!check.ok()) throw std::invalid_argument("psi needs a discrete fibration");
    const auto& up = alpha.source();
    const auto& p = alpha.target();
    ElementsPresheaf F{alpha.target_ptr(), std::vector<std::vector<std::string>>(p.size()), {}};
    std::vector<std::size_t> index(up.size());
    for (CellId c = 0; c < up.size(); ++c) {
        index[c] = F.fibers[alpha(c)].size();
        F.fibers[alpha(c)].push_back(up.name(c));
    }
    std::vector<std::vector<CellId>> fiber(p.size());
    for (CellId c = 0; c < up.size(); ++c) fiber[alpha(c)].push_back(c);
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            std::vector<std::size_t> map;
            for (CellId b : fiber[y]) {
                for (CellId a : up.cofaces(f, b)) {
                    if (alpha(a) == x) map.push_back(index[a]);
                }
            }
            F.transitions[{f, x, y}] = std::move(map);
        }
    }
    return F;
}

/// Isomorphism of fibrations over the same P: an isomorphism of the upstairs
/// structures commuting with the projections.
inline bool isomorphic_over(const RelMorphism& a, const RelMorphism& b)
{
    if (a.source().size() != b.source().size() || a.target().size() != b.target().size()) return false;
    std::vector<std::size_t> count_a(a.target().size(), 0), count_b(b.target().size(), 0);
    for (CellId c = 0; c < a.source().size(); ++c) ++count_a[a(c)];
    for (CellId c = 0; c < b.source().size(); ++c) ++count_b[b(c)];
    if (count_a != count_b) return false;
    if (!isomorphic(a.source(), b.source())) return false;
    bool found = false;
    HomSearchOptions opts;
    opts.injective = true;
    opts.degree_match = true;
    for_each_morphism(
        a.source(), b.source(),
        [&](const ComponentMap& m) {
            for (CellId c = 0; c < m.size(); ++c) {
                if (b(m[c]) != a(c)) return true;
            }
            found = true;
            return false;
        },
        opts);
    return found;
}

} // namespace relpsh
