#pragma once

// Morphisms of relational structures (relation-preserving families of
// functions), their predicates, and exhaustive morphism search.

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relpsh/structure.hpp"

namespace relpsh {

/// Components indexed by source cell id, valued in target cell ids.
using ComponentMap = std::vector<CellId>;

class RelMorphism {
public:
    RelMorphism() = default;

    /// Throws std::invalid_argument if the components are not total or do not
    /// respect objects. Relation preservation is checked by is_morphism().
    RelMorphism(RelStructure source, RelStructure target, ComponentMap components)
        : RelMorphism(std::make_shared<const RelStructure>(std::move(source)),
                      std::make_shared<const RelStructure>(std::move(target)), std::move(components))
    {
    }

    RelMorphism(std::shared_ptr<const RelStructure> source, std::shared_ptr<const RelStructure> target,
                ComponentMap components)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(components))
    {
        if (!same_base(source_->base_ptr(), target_->base_ptr())) {
            throw std::invalid_argument("morphism between structures over different bases");
        }
        if (map_.size() != source_->size()) {
            throw std::invalid_argument("morphism components are not total on the source carriers");
        }
        for (CellId c = 0; c < map_.size(); ++c) {
            if (map_[c] >= target_->size()) {
                throw std::invalid_argument("component of '" + source_->name(c) + "' is out of range");
            }
            if (target_->object(map_[c]) != source_->object(c)) {
                throw std::invalid_argument("component of '" + source_->name(c) + "' changes the object");
            }
        }
    }

    const RelStructure& source() const { return *source_; }
    const RelStructure& target() const { return *target_; }
    const std::shared_ptr<const RelStructure>& source_ptr() const { return source_; }
    const std::shared_ptr<const RelStructure>& target_ptr() const { return target_; }
    const ComponentMap& components() const { return map_; }
    CellId operator()(CellId c) const { return map_.at(c); }

private:
    std::shared_ptr<const RelStructure> source_;
    std::shared_ptr<const RelStructure> target_;
    ComponentMap map_;
};

/// Components given by cell names; throws on unknown or missing names.
inline RelMorphism morphism_by_names(const RelStructure& source, const RelStructure& target,
                                     const std::map<std::string, std::string>& names)
{
    ComponentMap map(source.size(), 0);
    std::vector<bool> seen(source.size(), false);
    for (const auto& [from, to] : names) {
        CellId c = source.at(from);
        map[c] = target.at(to);
        seen[c] = true;
    }
    for (CellId c = 0; c < source.size(); ++c) {
        if (!seen[c]) throw std::invalid_argument("component missing for cell '" + source.name(c) + "'");
    }
    return RelMorphism(source, target, std::move(map));
}

inline RelMorphism identity_morphism(const RelStructure& p)
{
    ComponentMap map(p.size());
    for (CellId c = 0; c < p.size(); ++c) map[c] = c;
    auto ptr = std::make_shared<const RelStructure>(p);
    return RelMorphism(ptr, ptr, std::move(map));
}

/// second o first.
inline RelMorphism compose(const RelMorphism& second, const RelMorphism& first)
{
    if (first.target().size() != second.source().size()) {
        throw std::invalid_argument("morphisms are not composable");
    }
    ComponentMap map(first.source().size());
    for (CellId c = 0; c < map.size(); ++c) map[c] = second(first(c));
    return RelMorphism(first.source_ptr(), second.target_ptr(), std::move(map));
}

/// A relation pair of the source that is not preserved.
struct PreservationFailure {
    Arrow arrow;
    CellId big;
    CellId small;
};

struct MorphismCheck {
    std::vector<PreservationFailure> failures;
    bool ok() const { return failures.empty(); }
    explicit operator bool() const { return ok(); }
};

inline MorphismCheck check_morphism(const RelStructure& source, const RelStructure& target, const ComponentMap& map)
{
    MorphismCheck out;
    for (Arrow f = 0; f < source.base().arrow_count(); ++f) {
        for (const auto& [x, y] : source.relation(f)) {
            if (!target.related(f, map[x], map[y])) out.failures.push_back({f, x, y});
        }
    }
    return out;
}

inline MorphismCheck is_morphism(const RelMorphism& a) { return check_morphism(a.source(), a.target(), a.components()); }

inline bool is_mono(const RelMorphism& a)
{
    std::set<CellId> seen(a.components().begin(), a.components().end());
    return seen.size() == a.components().size();
}

/// Injective and relation-reflecting between source cells.
inline bool is_embedding(const RelMorphism& a)
{
    if (!is_mono(a)) return false;
    const auto& src = a.source();
    const auto& dst = a.target();
    std::vector<std::optional<CellId>> preimage(dst.size());
    for (CellId c = 0; c < src.size(); ++c) preimage[a(c)] = c;
    for (Arrow f = 0; f < dst.base().arrow_count(); ++f) {
        for (const auto& [x, y] : dst.relation(f)) {
            if (preimage[x] && preimage[y] && !src.related(f, *preimage[x], *preimage[y])) return false;
        }
    }
    return true;
}

inline bool is_pointwise_surjective(const RelMorphism& a)
{
    std::vector<bool> hit(a.target().size(), false);
    for (CellId c : a.components()) hit[c] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

struct HomSearchOptions {
    bool injective = false;
    /// Match per-morphism face and coface counts (used for isomorphisms).
    bool degree_match = false;
    /// Optional prescribed values, indexed by source cell.
    std::vector<std::optional<CellId>> pinned;
};

namespace detail {

inline std::vector<std::size_t> degree_signature(const RelStructure& p, CellId c)
{
    const std::size_t n = p.base().arrow_count();
    std::vector<std::size_t> sig(2 * n, 0);
    for (const auto& inc : p.faces(c)) ++sig[inc.arrow];
    for (const auto& inc : p.cofaces(c)) ++sig[n + inc.arrow];
    return sig;
}

/// Backtracking search for relation-preserving maps. Cells are visited in an
/// order where each cell after the first of its component is adjacent to an
/// already assigned cell, so candidates come from a face or coface list.
class HomSearch {
public:
    HomSearch(const RelStructure& src, const RelStructure& dst, const HomSearchOptions& opts)
        : src_(src), dst_(dst), opts_(opts), assignment_(src.size()), used_(dst.size(), false)
    {
        if (!same_base(src.base_ptr(), dst.base_ptr())) {
            throw std::invalid_argument("morphism search between structures over different bases");
        }
        if (opts_.degree_match) {
            for (CellId c = 0; c < src.size(); ++c) src_sig_.push_back(degree_signature(src, c));
            for (CellId c = 0; c < dst.size(); ++c) dst_sig_.push_back(degree_signature(dst, c));
        }
        build_order();
    }

    void run(const std::function<bool(const ComponentMap&)>& visit)
    {
        visit_ = &visit;
        stop_ = false;
        for (CellId c = 0; c < src_.size(); ++c) {
            if (c < opts_.pinned.size() && opts_.pinned[c] && dst_.object(*opts_.pinned[c]) != src_.object(c)) return;
        }
        step(0);
    }

private:
    void build_order()
    {
        std::vector<bool> placed(src_.size(), false);
        auto push_component = [&](CellId start) {
            std::vector<CellId> queue{start};
            placed[start] = true;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                CellId c = queue[i];
                order_.push_back(c);
                auto visit = [&](CellId d) {
                    if (!placed[d]) {
                        placed[d] = true;
                        queue.push_back(d);
                    }
                };
                for (const auto& inc : src_.faces(c)) visit(inc.cell);
                for (const auto& inc : src_.cofaces(c)) visit(inc.cell);
            }
        };
        for (CellId c = 0; c < src_.size(); ++c) {
            if (c < opts_.pinned.size() && opts_.pinned[c] && !placed[c]) push_component(c);
        }
        // remaining components start from their highest cell
        std::vector<CellId> rest;
        for (CellId c = 0; c < src_.size(); ++c) rest.push_back(c);
        std::stable_sort(rest.begin(), rest.end(), [&](CellId a, CellId b) {
            return src_.faces(a).size() + src_.cofaces(a).size() > src_.faces(b).size() + src_.cofaces(b).size();
        });
        for (CellId c : rest) {
            if (!placed[c]) push_component(c);
        }
        position_.assign(src_.size(), 0);
        for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = i;
    }

    bool assigned_before(CellId c, std::size_t depth) const { return position_[c] < depth; }

    bool consistent(CellId u, CellId image, std::size_t depth) const
    {
        if (opts_.injective && used_[image]) return false;
        if (opts_.degree_match && src_sig_[u] != dst_sig_[image]) return false;
        for (const auto& inc : src_.faces(u)) {
            CellId v = inc.cell;
            CellId target = v == u ? image : (assigned_before(v, depth) ? assignment_[v] : Category::npos);
            if (target != Category::npos && !dst_.related(inc.arrow, image, target)) return false;
        }
        for (const auto& inc : src_.cofaces(u)) {
            CellId w = inc.cell;
            if (w == u) continue;
            if (assigned_before(w, depth) && !dst_.related(inc.arrow, assignment_[w], image)) return false;
        }
        return true;
    }

    std::vector<CellId> candidates(CellId u, std::size_t depth) const
    {
        if (u < opts_.pinned.size() && opts_.pinned[u]) return {*opts_.pinned[u]};
        for (const auto& inc : src_.faces(u)) {
            if (inc.cell != u && assigned_before(inc.cell, depth)) return dst_.cofaces(inc.arrow, assignment_[inc.cell]);
        }
        for (const auto& inc : src_.cofaces(u)) {
            if (inc.cell != u && assigned_before(inc.cell, depth)) return dst_.faces(inc.arrow, assignment_[inc.cell]);
        }
        return dst_.carrier(src_.object(u));
    }

    void step(std::size_t depth)
    {
        if (stop_) return;
        if (depth == order_.size()) {
            if (!(*visit_)(assignment_)) stop_ = true;
            return;
        }
        CellId u = order_[depth];
        for (CellId image : candidates(u, depth)) {
            if (!consistent(u, image, depth)) continue;
            assignment_[u] = image;
            used_[image] = true;
            step(depth + 1);
            used_[image] = false;
            if (stop_) return;
        }
    }

    const RelStructure& src_;
    const RelStructure& dst_;
    HomSearchOptions opts_;
    std::vector<CellId> order_;
    std::vector<std::size_t> position_;
    ComponentMap assignment_;
    std::vector<bool> used_;
    std::vector<std::vector<std::size_t>> src_sig_;
    std::vector<std::vector<std::size_t>> dst_sig_;
    const std::function<bool(const ComponentMap&)>* visit_ = nullptr;
    bool stop_ = false;
};

} // namespace detail

/// Calls `visit` on every morphism src -> dst (as a component map) until it
/// returns false.
inline void for_each_morphism(const RelStructure& src, const RelStructure& dst,
                              const std::function<bool(const ComponentMap&)>& visit,
                              const HomSearchOptions& opts = {})
{
    detail::HomSearch search(src, dst, opts);
    search.run(visit);
}

inline std::vector<ComponentMap> all_morphisms(const RelStructure& src, const RelStructure& dst,
                                               const HomSearchOptions& opts = {})
{
    std::vector<ComponentMap> out;
    for_each_morphism(
        src, dst,
        [&](const ComponentMap& m) {
            out.push_back(m);
            return true;
        },
        opts);
    return out;
}

inline std::size_t count_morphisms(const RelStructure& src, const RelStructure& dst, const HomSearchOptions& opts = {})
{
    std::size_t n = 0;
    for_each_morphism(
        src, dst,
        [&](const ComponentMap&) {
            ++n;
            return true;
        },
        opts);
    return n;
}

inline std::optional<ComponentMap> find_morphism(const RelStructure& src, const RelStructure& dst,
                                                 const HomSearchOptions& opts = {})
{
    std::optional<ComponentMap> out;
    for_each_morphism(
        src, dst,
        [&](const ComponentMap& m) {
            out = m;
            return false;
        },
        opts);
    return out;
}

/// An isomorphism a -> b, ignoring names and declared levels.
inline std::optional<ComponentMap> find_isomorphism(const RelStructure& a, const RelStructure& b)
{
    if (!same_base(a.base_ptr(), b.base_ptr()) || a.size() != b.size()) return std::nullopt;
    for (Object o = 0; o < a.base().object_count(); ++o) {
        if (a.carrier(o).size() != b.carrier(o).size()) return std::nullopt;
    }
    for (Arrow f = 0; f < a.base().arrow_count(); ++f) {
        if (a.relation(f).size() != b.relation(f).size()) return std::nullopt;
    }
    HomSearchOptions opts;
    opts.injective = true;
    opts.degree_match = true;
    // injective + equal sizes per object => bijective; preserving with equal
    // relation counts per morphism => reflecting
    return find_morphism(a, b, opts);
}

inline bool isomorphic(const RelStructure& a, const RelStructure& b) { return find_isomorphism(a, b).has_value(); }

} // namespace relpsh
