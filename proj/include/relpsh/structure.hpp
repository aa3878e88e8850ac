#pragma once

// Relational structures over a finite base category: carriers per object and
// a relation per morphism, with a declared axiom level.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "relpsh/category.hpp"

namespace relpsh {

/// Axiom levels, weakest first. functional => partial => lax => family.
enum class Level { Family = 0, Lax = 1, Partial = 2, Functional = 3 };

inline std::string to_string(Level level)
{
    switch (level) {
    case Level::Family: return "family";
    case Level::Lax: return "lax";
    case Level::Partial: return "partial";
    case Level::Functional: return "functional";
    }
    return "family";
}

inline Level parse_level(std::string_view text)
{
    if (text == "family") return Level::Family;
    if (text == "lax") return Level::Lax;
    if (text == "partial") return Level::Partial;
    if (text == "functional") return Level::Functional;
    throw std::invalid_argument("unknown level '" + std::string(text) + "'");
}

using CellId = std::size_t;
using Object = Category::Object;
using Arrow = Category::Arrow;

struct Cell {
    std::string name;
    Object object = 0;
};

/// One related pair x ->_f y, with x in P(cod f) and y in P(dom f).
struct Incidence {
    Arrow arrow = 0;
    CellId cell = 0;
    auto operator<=>(const Incidence&) const = default;
};

/// A relational family over a finite category. Cell names are unique across
/// all carriers. A pair (x, y) in relation(f) for f : d -> c has x in P(c) and
/// y in P(d): y is an f-face of x.
class RelStructure {
public:
    RelStructure() = default;
    explicit RelStructure(CategoryPtr base, Level level = Level::Family)
        : base_(std::move(base)), level_(level), carriers_(base_->object_count()), relations_(base_->arrow_count())
    {
    }

    const Category& base() const { return *base_; }
    const CategoryPtr& base_ptr() const { return base_; }
    Level level() const { return level_; }
    void set_level(Level level) { level_ = level; }

    CellId add_cell(Object object, std::string name)
    {
        if (object >= base_->object_count()) {
            throw std::invalid_argument("object index out of range for cell '" + name + "'");
        }
        if (index_.count(name) != 0) {
            throw std::invalid_argument("duplicate cell '" + name + "'");
        }
        CellId id = cells_.size();
        index_.emplace(name, id);
        cells_.push_back({std::move(name), object});
        carriers_[object].push_back(id);
        faces_.emplace_back();
        cofaces_.emplace_back();
        return id;
    }
    CellId add_cell(std::string_view object, std::string name)
    {
        return add_cell(base_->require_object(object), std::move(name));
    }

    /// Adds x ->_f y. Returns false if the pair was already present.
    bool relate(Arrow f, CellId x, CellId y)
    {
        if (cells_.at(x).object != base_->cod(f) || cells_.at(y).object != base_->dom(f)) {
            throw std::invalid_argument("pair (" + cells_.at(x).name + ", " + cells_.at(y).name +
                                        ") does not fit morphism " + arrow_label(*base_, f));
        }
        if (!relations_[f].emplace(x, y).second) {
            return false;
        }
        faces_[x].push_back({f, y});
        cofaces_[y].push_back({f, x});
        ++relation_count_;
        return true;
    }
    bool relate(std::string_view f, std::string_view x, std::string_view y)
    {
        return relate(base_->require_arrow(f), at(x), at(y));
    }

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Cell& cell(CellId c) const { return cells_.at(c); }
    const std::string& name(CellId c) const { return cells_.at(c).name; }
    Object object(CellId c) const { return cells_.at(c).object; }
    /// Dimension of a cell for cube bases (objects are 0..max_dim in order).
    std::size_t dim(CellId c) const { return cells_.at(c).object; }

    std::optional<CellId> find(std::string_view name) const
    {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    CellId at(std::string_view name) const
    {
        auto c = find(name);
        if (!c) {
            throw std::invalid_argument("unknown cell '" + std::string(name) + "'");
        }
        return *c;
    }

    const std::vector<CellId>& carrier(Object o) const { return carriers_.at(o); }
    const std::set<std::pair<CellId, CellId>>& relation(Arrow f) const { return relations_.at(f); }
    bool related(Arrow f, CellId x, CellId y) const { return relations_[f].count({x, y}) != 0; }

    /// All (f, y) with x ->_f y.
    const std::vector<Incidence>& faces(CellId x) const { return faces_.at(x); }
    /// All (f, x) with x ->_f y.
    const std::vector<Incidence>& cofaces(CellId y) const { return cofaces_.at(y); }

    std::vector<CellId> faces(Arrow f, CellId x) const
    {
        std::vector<CellId> out;
        for (const auto& inc : faces_[x]) {
            if (inc.arrow == f) out.push_back(inc.cell);
        }
        return out;
    }
    std::vector<CellId> cofaces(Arrow f, CellId y) const
    {
        std::vector<CellId> out;
        for (const auto& inc : cofaces_[y]) {
            if (inc.arrow == f) out.push_back(inc.cell);
        }
        return out;
    }

    std::size_t relation_count() const { return relation_count_; }

    /// Name-based comparison of the data and the declared level.
    bool operator==(const RelStructure& other) const
    {
        if (!same_base(base_, other.base_) || level_ != other.level_ || cells_.size() != other.cells_.size() ||
            relation_count_ != other.relation_count_) {
            return false;
        }
        for (const auto& c : cells_) {
            auto o = other.find(c.name);
            if (!o || other.object(*o) != c.object) return false;
        }
        for (Arrow f = 0; f < relations_.size(); ++f) {
            for (const auto& [x, y] : relations_[f]) {
                if (!other.related(f, other.at(name(x)), other.at(name(y)))) return false;
            }
        }
        return true;
    }

private:
    CategoryPtr base_;
    Level level_ = Level::Family;
    std::vector<Cell> cells_;
    std::map<std::string, CellId, std::less<>> index_;
    std::vector<std::vector<CellId>> carriers_;
    std::vector<std::set<std::pair<CellId, CellId>>> relations_;
    std::vector<std::vector<Incidence>> faces_;
    std::vector<std::vector<Incidence>> cofaces_;
    std::size_t relation_count_ = 0;
};

/// Restriction to a set of cells with every inherited relation.
inline RelStructure full_substructure(const RelStructure& p, const std::vector<CellId>& cells)
{
    std::vector<bool> keep(p.size(), false);
    for (CellId c : cells) {
        keep.at(c) = true;
    }
    RelStructure out(p.base_ptr(), p.level());
    std::vector<CellId> renumber(p.size(), 0);
    for (CellId c = 0; c < p.size(); ++c) {
        if (keep[c]) renumber[c] = out.add_cell(p.object(c), p.name(c));
    }
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            if (keep[x] && keep[y]) out.relate(f, renumber[x], renumber[y]);
        }
    }
    return out;
}

inline RelStructure full_substructure(const RelStructure& p, const std::vector<std::string>& names)
{
    std::vector<CellId> ids;
    for (const auto& n : names) ids.push_back(p.at(n));
    return full_substructure(p, ids);
}

/// Same data under new names (indexed by cell id).
inline RelStructure rename_cells(const RelStructure& p, const std::vector<std::string>& names)
{
    RelStructure out(p.base_ptr(), p.level());
    for (CellId c = 0; c < p.size(); ++c) out.add_cell(p.object(c), names.at(c));
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) out.relate(f, x, y);
    }
    return out;
}

/// Moves a structure onto another base with the same object and morphism
/// names, e.g. a cube category truncated at a higher dimension.
inline RelStructure with_base(const RelStructure& p, CategoryPtr base)
{
    if (same_base(p.base_ptr(), base)) {
        RelStructure out = p;
        return out;
    }
    RelStructure out(base, p.level());
    for (CellId c = 0; c < p.size(); ++c) {
        out.add_cell(base->require_object(p.base().object_name(p.object(c))), p.name(c));
    }
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        if (p.relation(f).empty()) continue;
        Arrow g = base->require_arrow(p.base().arrow_name(f));
        for (const auto& [x, y] : p.relation(f)) out.relate(g, x, y);
    }
    return out;
}

/// Per-object cell counts.
inline std::vector<std::size_t> census(const RelStructure& p)
{
    std::vector<std::size_t> out(p.base().object_count(), 0);
    for (Object o = 0; o < out.size(); ++o) out[o] = p.carrier(o).size();
    return out;
}

/// Cells sorted by name, for deterministic iteration.
inline std::vector<CellId> cells_by_name(const RelStructure& p)
{
    std::vector<CellId> out(p.size());
    for (CellId c = 0; c < p.size(); ++c) out[c] = c;
    std::sort(out.begin(), out.end(), [&](CellId a, CellId b) { return p.name(a) < p.name(b); });
    return out;
}

/// Largest object index carrying a cell (cube bases: the dimension).
inline std::size_t max_cell_dim(const RelStructure& p)
{
    std::size_t d = 0;
    for (CellId c = 0; c < p.size(); ++c) d = std::max(d, p.object(c));
    return d;
}

} // namespace relpsh
