#pragma once

// Closure under composition, the inclusion U of presheaves, its left and
// right adjoints, the partial reflection, and two structural predicates on
// morphisms (local embeddings, discrete fibrations).

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "relpsh/morphism.hpp"
#include "relpsh/validate.hpp"

namespace relpsh {

inline RelStructure with_level(RelStructure p, Level level)
{
    p.set_level(level);
    return p;
}

namespace detail {

/// Adds the diagonal and every composite pair, in place.
inline void close_in_place(RelStructure& p)
{
    const auto& base = p.base();
    std::deque<std::tuple<Arrow, CellId, CellId>> work;
    auto add = [&](Arrow f, CellId x, CellId y) {
        if (p.relate(f, x, y)) work.emplace_back(f, x, y);
    };
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) work.emplace_back(f, x, y);
    }
    for (CellId x = 0; x < p.size(); ++x) add(base.identity(p.object(x)), x, x);
    while (!work.empty()) {
        auto [f, x, y] = work.front();
        work.pop_front();
        auto below = p.faces(y);
        for (const auto& inc : below) add(base.compose(f, inc.arrow), x, inc.cell);
        auto above = p.cofaces(x);
        for (const auto& inc : above) add(base.compose(inc.arrow, f), inc.cell, y);
    }
}

} // namespace detail

/// Smallest lax structure containing P on the same carriers. Inputs that are
/// already lax come back unchanged.
inline RelStructure close_composition(const RelStructure& p)
{
    if (validate_level(p, Level::Lax).ok()) {
        return with_level(p, std::max(p.level(), Level::Lax));
    }
    RelStructure out = with_level(p, Level::Lax);
    detail::close_in_place(out);
    return out;
}

/// U: an ordinary presheaf seen as a relational presheaf. Throws if P is not
/// functional.
inline RelStructure underlying(const RelStructure& p)
{
    auto report = validate_level(p, Level::Functional);
    if (!report.ok()) {
        throw std::invalid_argument("not an ordinary presheaf: " + format_violation(p, report.violations.front()));
    }
    return with_level(p, Level::Lax);
}

/// Name of the representable cell for a morphism into the represented object.
inline std::string representable_cell_name(const Category& base, Arrow h) { return "[" + base.arrow_name(h) + "]"; }

/// The representable presheaf y(c): cells are the morphisms h : d -> c, and
/// h ->_f h o f.
inline RelStructure representable(const CategoryPtr& base, Object c)
{
    RelStructure out(base, Level::Functional);
    std::map<Arrow, CellId> cell_of;
    for (Arrow h : base->into(c)) cell_of[h] = out.add_cell(base->dom(h), representable_cell_name(*base, h));
    for (const auto& [h, x] : cell_of) {
        for (Arrow f : base->into(base->dom(h))) out.relate(f, x, cell_of.at(base->compose(h, f)));
    }
    return out;
}

/// The cell of y(c) standing for id_c.
inline CellId representable_top(const RelStructure& rep, Object c)
{
    return rep.at(representable_cell_name(rep.base(), rep.base().identity(c)));
}

/// A quotient of P together with its projection.
struct Quotient {
    RelStructure structure;
    ComponentMap projection;
};

/// Quotient of P by a partition given as class labels per cell. Each class is
/// named after its least member under `before` (strict weak order on cells),
/// and [x] ->_f [y] iff some representatives are related. No closure.
template <class Before>
Quotient quotient_by(const RelStructure& p, const std::vector<std::size_t>& label, Level level, Before before)
{
    std::map<std::size_t, CellId> best;
    std::vector<std::size_t> order;
    for (CellId c = 0; c < p.size(); ++c) {
        auto it = best.find(label[c]);
        if (it == best.end()) {
            best.emplace(label[c], c);
            order.push_back(label[c]);
        } else if (before(c, it->second)) {
            it->second = c;
        }
    }
    Quotient q{RelStructure(p.base_ptr(), level), ComponentMap(p.size())};
    std::map<std::size_t, CellId> new_id;
    for (std::size_t cls : order) new_id[cls] = q.structure.add_cell(p.object(best[cls]), p.name(best[cls]));
    for (CellId c = 0; c < p.size(); ++c) q.projection[c] = new_id[label[c]];
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) q.structure.relate(f, q.projection[x], q.projection[y]);
    }
    return q;
}

inline auto by_name(const RelStructure& p)
{
    return [&p](CellId a, CellId b) { return p.name(a) < p.name(b); };
}

namespace detail {

/// Alternates closure and the quotient merging the f-faces of each cell until
/// every relation is single-valued. `original` ranks cells for naming:
/// original cells win over added ones, then the least name.
inline Quotient functional_quotient(RelStructure p, std::vector<bool> original, Level level)
{
    ComponentMap total(p.size());
    for (CellId c = 0; c < p.size(); ++c) total[c] = c;
    for (;;) {
        close_in_place(p);
        boost::disjoint_sets_with_storage<> sets(p.size());
        bool merged = false;
        for (CellId z = 0; z < p.size(); ++z) {
            std::map<Arrow, CellId> first;
            for (const auto& inc : p.faces(z)) {
                auto [it, fresh] = first.emplace(inc.arrow, inc.cell);
                if (!fresh && sets.find_set(it->second) != sets.find_set(inc.cell)) {
                    sets.union_set(it->second, inc.cell);
                    merged = true;
                }
            }
        }
        if (!merged) {
            p.set_level(level);
            return {std::move(p), std::move(total)};
        }
        std::vector<std::size_t> label(p.size());
        for (CellId c = 0; c < p.size(); ++c) label[c] = sets.find_set(c);
        auto q = quotient_by(p, label, level, [&](CellId a, CellId b) {
            return std::tuple(!original[a], p.name(a)) < std::tuple(!original[b], p.name(b));
        });
        std::vector<bool> kept(q.structure.size(), false);
        for (CellId c = 0; c < p.size(); ++c) {
            if (original[c]) kept[q.projection[c]] = true;
        }
        for (auto& t : total) t = q.projection[t];
        p = std::move(q.structure);
        original = std::move(kept);
    }
}

} // namespace detail

/// A reflection into a smaller class, with its unit P -> result.
struct Reflection {
    RelStructure result;
    RelMorphism unit;
};

/// Name of the formal face of x along g.
inline std::string formal_face_name(const RelStructure& p, CellId x, Arrow g)
{
    return p.name(x) + "·" + p.base().arrow_name(g);
}

/// L: freely adds faces, closes under composition, then identifies faces that
/// share a coface along the same morphism. The result is an ordinary
/// presheaf; the unit targets U(L(P)). Fresh cells are named "x·w".
inline Reflection reflect_presheaf(const RelStructure& p)
{
    const auto& base = p.base();
    RelStructure p0(p.base_ptr(), Level::Family);
    for (CellId x = 0; x < p.size(); ++x) p0.add_cell(p.object(x), p.name(x));
    // formal[(x, g)] for non-identity g; (x, id) is x itself
    std::map<std::pair<CellId, Arrow>, CellId> formal;
    for (CellId x = 0; x < p.size(); ++x) {
        for (Arrow g : base.into(p.object(x))) {
            if (!base.is_identity(g)) formal[{x, g}] = p0.add_cell(base.dom(g), formal_face_name(p, x, g));
        }
    }
    auto cell_of = [&](CellId x, Arrow g) { return base.is_identity(g) ? x : formal.at({x, g}); };
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) p0.relate(f, x, y);
    }
    for (CellId x = 0; x < p.size(); ++x) {
        for (Arrow g : base.into(p.object(x))) {
            for (Arrow f : base.into(base.dom(g))) p0.relate(f, cell_of(x, g), cell_of(x, base.compose(g, f)));
        }
    }
    std::vector<bool> original(p0.size(), false);
    for (CellId x = 0; x < p.size(); ++x) original[x] = true;
    auto q = detail::functional_quotient(std::move(p0), std::move(original), Level::Functional);
    ComponentMap unit(q.projection.begin(), q.projection.begin() + static_cast<std::ptrdiff_t>(p.size()));
    auto target = std::make_shared<const RelStructure>(with_level(q.structure, Level::Lax));
    return {std::move(q.structure),
            RelMorphism(std::make_shared<const RelStructure>(p), std::move(target), std::move(unit))};
}

/// Partial reflection: closure and face identification without adding faces.
inline Reflection reflect_partial(const RelStructure& p)
{
    RelStructure work = with_level(p, Level::Family);
    std::vector<bool> original(work.size(), true);
    auto q = detail::functional_quotient(std::move(work), std::move(original), Level::Partial);
    auto target = std::make_shared<const RelStructure>(q.structure);
    return {std::move(q.structure),
            RelMorphism(std::make_shared<const RelStructure>(p), std::move(target), std::move(q.projection))};
}

/// A coreflection with its counit U(result) -> P.
struct Coreflection {
    RelStructure result;
    RelMorphism counit;
};

/// R: R(P)(c) is the set of morphisms U(y(c)) -> P, with faces given by
/// precomposition and the counit evaluating at the top cell. A cell is named
/// after the image of the top cell; when several morphisms share that image
/// the images of the remaining cells follow in brackets.
inline Coreflection coreflect_presheaf(const RelStructure& p)
{
    const auto& base = p.base();
    const std::size_t objects = base.object_count();
    std::vector<RelStructure> reps;
    std::vector<std::vector<ComponentMap>> homs(objects);
    std::vector<std::map<Arrow, CellId>> rep_cell(objects);
    for (Object c = 0; c < objects; ++c) {
        reps.push_back(with_level(representable(p.base_ptr(), c), Level::Lax));
        for (Arrow h : base.into(c)) rep_cell[c][h] = reps[c].at(representable_cell_name(base, h));
        homs[c] = all_morphisms(reps[c], p);
    }

    RelStructure r(p.base_ptr(), Level::Functional);
    std::vector<std::map<ComponentMap, CellId>> id_of(objects);
    ComponentMap counit;
    for (Object c = 0; c < objects; ++c) {
        CellId top = rep_cell[c].at(base.identity(c));
        std::map<CellId, std::size_t> top_count;
        for (const auto& m : homs[c]) ++top_count[m[top]];
        for (const auto& m : homs[c]) {
            std::string name = p.name(m[top]);
            if (top_count[m[top]] > 1) {
                std::string rest;
                for (const auto& [h, cell] : rep_cell[c]) {
                    if (cell == top) continue;
                    rest += (rest.empty() ? "" : ",") + p.name(m[cell]);
                }
                name += "[" + rest + "]";
            }
            id_of[c][m] = r.add_cell(c, name);
            counit.push_back(m[top]);
        }
    }
    for (Object c = 0; c < objects; ++c) {
        for (const auto& [m, x] : id_of[c]) {
            for (Arrow f : base.into(c)) {
                Object d = base.dom(f);
                ComponentMap face(reps[d].size());
                for (const auto& [h, cell] : rep_cell[d]) face[cell] = m[rep_cell[c].at(base.compose(f, h))];
                r.relate(f, x, id_of[d].at(face));
            }
        }
    }
    auto source = std::make_shared<const RelStructure>(with_level(r, Level::Lax));
    return {std::move(r), RelMorphism(std::move(source), std::make_shared<const RelStructure>(p), std::move(counit))};
}

/// True iff a ->_f c and b ->_f c with a != b always gives α(a) != α(b).
inline bool is_local_embedding(const RelStructure& src, const ComponentMap& alpha)
{
    for (CellId c = 0; c < src.size(); ++c) {
        const auto& cof = src.cofaces(c);
        for (std::size_t i = 0; i < cof.size(); ++i) {
            for (std::size_t j = i + 1; j < cof.size(); ++j) {
                if (cof[i].arrow == cof[j].arrow && cof[i].cell != cof[j].cell && alpha[cof[i].cell] == alpha[cof[j].cell]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_local_embedding(const RelMorphism& alpha) { return is_local_embedding(alpha.source(), alpha.components()); }

/// A base relation x ->_f y and an element y' over y with `lifts` (!= 1)
/// elements over x related to it.
struct LiftFailure {
    Arrow arrow;
    CellId x;
    CellId y;
    CellId upstairs;
    std::size_t lifts;
};

struct FibrationCheck {
    std::vector<LiftFailure> failures;
    bool ok() const { return failures.empty(); }
    explicit operator bool() const { return ok(); }
};

/// Unique lifting: for x ->_f y downstairs and y' over y, exactly one x' over
/// x with x' ->_f y'.
inline FibrationCheck is_discrete_fibration(const RelMorphism& alpha)
{
    FibrationCheck out;
    const auto& up = alpha.source();
    const auto& down = alpha.target();
    std::vector<std::vector<CellId>> fiber(down.size());
    for (CellId c = 0; c < up.size(); ++c) fiber[alpha(c)].push_back(c);
    for (Arrow f = 0; f < down.base().arrow_count(); ++f) {
        for (const auto& [x, y] : down.relation(f)) {
            for (CellId y2 : fiber[y]) {
                std::size_t lifts = 0;
                for (CellId x2 : up.cofaces(f, y2)) {
                    if (alpha(x2) == x) ++lifts;
                }
                if (lifts != 1) out.failures.push_back({f, x, y, y2, lifts});
            }
        }
    }
    return out;
}

} // namespace relpsh
