#pragma once

// Independent checks used by the unit tests and the acceptance runner. They
// only rely on morphism enumeration, never on the construction under test.

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "relpsh/relpsh.hpp"

namespace oracle {

using namespace relpsh;

inline ComponentMap after(const ComponentMap& second, const ComponentMap& first)
{
    ComponentMap out(first.size());
    for (CellId c = 0; c < first.size(); ++c) out[c] = second[first[c]];
    return out;
}

/// h ↦ U(h)∘η is a bijection Hom(L P, Q) -> Hom(P, U Q).
inline bool left_adjunction_bijective(const RelStructure& p, const RelStructure& q)
{
    auto refl = reflect_presheaf(p);
    auto uq = with_level(q, Level::Lax);
    auto downstairs = all_morphisms(p, uq);
    std::set<ComponentMap> expected(downstairs.begin(), downstairs.end());
    std::set<ComponentMap> images;
    std::size_t count = 0;
    bool ok = true;
    for_each_morphism(refl.result, q, [&](const ComponentMap& h) {
        ++count;
        auto m = after(h, refl.unit.components());
        ok = ok && expected.count(m) == 1;
        images.insert(m);
        return ok;
    });
    return ok && images.size() == count && images == expected;
}

/// g ↦ ε∘U(g) is a bijection Hom(Q, R P) -> Hom(U Q, P).
inline bool right_adjunction_bijective(const RelStructure& p, const RelStructure& q)
{
    auto core = coreflect_presheaf(p);
    auto uq = with_level(q, Level::Lax);
    auto upstairs = all_morphisms(uq, p);
    std::set<ComponentMap> expected(upstairs.begin(), upstairs.end());
    std::set<ComponentMap> images;
    std::size_t count = 0;
    bool ok = true;
    for_each_morphism(q, core.result, [&](const ComponentMap& g) {
        ++count;
        auto m = after(core.counit.components(), g);
        ok = ok && expected.count(m) == 1;
        images.insert(m);
        return ok;
    });
    return ok && images.size() == count && images == expected;
}

/// Every h : Q -> T with hα = hβ factors uniquely through the coequalizer.
inline bool coequalizer_universal(const RelMorphism& alpha, const RelMorphism& beta, const Coequalizer& coeq,
                                  const RelStructure& t)
{
    const auto& q = alpha.target();
    std::set<ComponentMap> cocones;
    for_each_morphism(q, t, [&](const ComponentMap& h) {
        if (after(h, alpha.components()) == after(h, beta.components())) cocones.insert(h);
        return true;
    });
    std::set<ComponentMap> factored;
    bool injective = true;
    for_each_morphism(coeq.structure, t, [&](const ComponentMap& m) {
        injective = factored.insert(after(m, coeq.projection.components())).second && injective;
        return true;
    });
    return injective && factored == cocones;
}

/// N⁺(c') -> N⁺(α(c')), (a', f) ↦ (α(a'), f), is a bijection for every c'.
inline bool fiber_neighborhoods_bijective(const RelMorphism& alpha)
{
    const auto& up = alpha.source();
    const auto& down = alpha.target();
    for (CellId c = 0; c < up.size(); ++c) {
        std::multiset<std::pair<CellId, Arrow>> image;
        for (const auto& [a, f] : positive_neighborhood(up, c)) image.insert({alpha(a), f});
        auto target = positive_neighborhood(down, alpha(c));
        std::multiset<std::pair<CellId, Arrow>> expected(target.begin(), target.end());
        if (image != expected) return false;
    }
    return true;
}

/// U(J^{⊗n}) built by repeated tensoring, independent of the subdivision code.
inline RelStructure j_power(std::size_t n)
{
    if (n == 0) return with_level(point_complex(), Level::Lax);
    RelStructure t = interval_J();
    for (std::size_t i = 1; i < n; ++i) t = tensor(t, interval_J());
    return with_level(t, Level::Lax);
}

inline std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::size_t power(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

using Gluing = std::set<std::tuple<std::string, std::string, std::string>>;

/// Closed-cube gluing of an ordinary precubical set: each cell glued to its
/// elementary faces d_i^ε x.
inline Gluing classical_elementary_gluing(const RelStructure& p)
{
    Gluing out;
    const auto& base = p.base();
    for (CellId x = 0; x < p.size(); ++x) {
        std::size_t n = p.dim(x);
        if (n == 0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            for (char e : {'-', '+'}) {
                std::string w(n, '0');
                w[i] = e;
                Arrow f = base.require_arrow(w);
                auto faces = p.faces(f, x);
                if (faces.size() != 1) throw std::logic_error("not an ordinary precubical set");
                out.insert({p.name(x), p.name(faces.front()), w});
            }
        }
    }
    return out;
}

inline Gluing complex_elementary_gluing(const CellComplex& k)
{
    Gluing out;
    for (const auto& a : k.attachments) {
        if (a.elementary && a.gluing) out.insert({k.cells[a.big].name, k.cells[a.small].name, a.word});
    }
    return out;
}

inline std::set<std::pair<std::string, std::size_t>> complex_cells(const CellComplex& k)
{
    std::set<std::pair<std::string, std::size_t>> out;
    for (const auto& c : k.cells) out.insert({c.name, c.dim});
    return out;
}

inline std::set<std::pair<std::string, std::size_t>> structure_cells(const RelStructure& p)
{
    std::set<std::pair<std::string, std::size_t>> out;
    for (CellId c = 0; c < p.size(); ++c) out.insert({p.name(c), p.dim(c)});
    return out;
}

} // namespace oracle
