#pragma once

// Finite colimits of relational families and lax relational presheaves:
// coproducts, coequalizers, and general finite diagrams built from both.

#include <memory>
#include <string>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "relpsh/morphism.hpp"
#include "relpsh/transforms.hpp"

namespace relpsh {

struct Coproduct {
    RelStructure structure;
    std::vector<RelMorphism> injections;
};

/// Disjoint union; cell x of summand i is named "i:x".
inline Coproduct coproduct(const std::vector<RelStructure>& parts, CategoryPtr base = nullptr)
{
    if (!base) {
        if (parts.empty()) throw std::invalid_argument("coproduct of no structures needs an explicit base");
        base = parts.front().base_ptr();
    }
    Level level = Level::Functional;
    for (const auto& p : parts) {
        if (!same_base(p.base_ptr(), base)) throw std::invalid_argument("coproduct over different bases");
        level = std::min(level, p.level());
    }
    if (parts.empty()) level = Level::Functional;
    RelStructure sum(base, level);
    std::vector<ComponentMap> maps;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        ComponentMap m(p.size());
        for (CellId c = 0; c < p.size(); ++c) m[c] = sum.add_cell(p.object(c), std::to_string(i) + ":" + p.name(c));
        for (Arrow f = 0; f < base->arrow_count(); ++f) {
            for (const auto& [x, y] : p.relation(f)) sum.relate(f, m[x], m[y]);
        }
        maps.push_back(std::move(m));
    }
    Coproduct out{std::move(sum), {}};
    auto target = std::make_shared<const RelStructure>(out.structure);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.injections.emplace_back(std::make_shared<const RelStructure>(parts[i]), target, std::move(maps[i]));
    }
    return out;
}

namespace detail {

inline void check_colimit_level(Level level)
{
    if (level != Level::Family && level != Level::Lax) {
        throw std::invalid_argument("colimits are computed at the family or lax level");
    }
}

/// Quotient of Q by the equivalence generated by `pairs`, classes named after
/// their least member, closed under composition when level is lax.
inline Quotient glue(const RelStructure& q, const std::vector<std::pair<CellId, CellId>>& pairs, Level level)
{
    check_colimit_level(level);
    boost::disjoint_sets_with_storage<> sets(q.size());
    for (const auto& [a, b] : pairs) sets.union_set(a, b);
    std::vector<std::size_t> label(q.size());
    for (CellId c = 0; c < q.size(); ++c) label[c] = sets.find_set(c);
    auto out = quotient_by(q, label, level, by_name(q));
    if (level == Level::Lax) close_in_place(out.structure);
    return out;
}

} // namespace detail

struct Coequalizer {
    RelStructure structure;
    RelMorphism projection;
};

/// Coequalizer of α, β : P => Q at the family level (no closure) or the lax
/// level (closed under composition).
inline Coequalizer coequalizer(const RelMorphism& alpha, const RelMorphism& beta, Level level)
{
    if (alpha.source().size() != beta.source().size() || alpha.target().size() != beta.target().size() ||
        !same_base(alpha.source().base_ptr(), beta.source().base_ptr())) {
        throw std::invalid_argument("coequalizer of morphisms that are not parallel");
    }
    std::vector<std::pair<CellId, CellId>> pairs;
    for (CellId x = 0; x < alpha.source().size(); ++x) pairs.emplace_back(alpha(x), beta(x));
    auto q = detail::glue(alpha.target(), pairs, level);
    auto target = std::make_shared<const RelStructure>(q.structure);
    return {std::move(q.structure), RelMorphism(alpha.target_ptr(), std::move(target), std::move(q.projection))};
}

/// A morphism of a diagram, given by its components.
struct DiagramArrow {
    std::size_t source = 0;
    std::size_t target = 0;
    ComponentMap components;
};

struct Diagram {
    std::vector<RelStructure> objects;
    std::vector<DiagramArrow> arrows;
    /// Needed only when there are no objects.
    CategoryPtr base;
};

struct Colimit {
    RelStructure structure;
    std::vector<RelMorphism> cocone;
};

/// Coequalizer of the two induced maps from the arrows' sources into the
/// coproduct of the objects. Connectedness is not required.
inline Colimit finite_colimit(const Diagram& d, Level level)
{
    auto sum = coproduct(d.objects, d.base);
    std::vector<std::pair<CellId, CellId>> pairs;
    for (const auto& a : d.arrows) {
        const auto& src = d.objects.at(a.source);
        const auto& dst = d.objects.at(a.target);
        RelMorphism check(src, dst, a.components);
        if (!is_morphism(check)) throw std::invalid_argument("diagram arrow does not preserve relations");
        for (CellId x = 0; x < src.size(); ++x) {
            pairs.emplace_back(sum.injections[a.source](x), sum.injections[a.target](a.components[x]));
        }
    }
    auto q = detail::glue(sum.structure, pairs, level);
    Colimit out{std::move(q.structure), {}};
    auto target = std::make_shared<const RelStructure>(out.structure);
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        ComponentMap m(d.objects[i].size());
        for (CellId c = 0; c < m.size(); ++c) m[c] = q.projection[sum.injections[i](c)];
        out.cocone.emplace_back(sum.injections[i].source_ptr(), target, std::move(m));
    }
    return out;
}

/// Pushout of B <- A -> C; cocone[0] : B -> result, cocone[1] : C -> result.
inline Colimit pushout(const RelMorphism& left, const RelMorphism& right, Level level)
{
    Diagram d;
    d.objects = {left.source(), left.target(), right.target()};
    d.arrows = {{0, 1, left.components()}, {0, 2, right.components()}};
    auto full = finite_colimit(d, level);
    return {std::move(full.structure), {full.cocone[1], full.cocone[2]}};
}

} // namespace relpsh
