#pragma once

// Model-driven realization: a model assigns a block to every object and every
// morphism of the base, and P is realized as the colimit of those blocks over
// its extended elements. Ships the barycentric subdivision model and the
// geometric models (standard and sequential), cell complexes, and the local
// neighborhood machinery.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>
#include <boost/rational.hpp>

#include "relpsh/colimits.hpp"
#include "relpsh/fibrations.hpp"

namespace relpsh {

struct ModelAssignment {
    enum class TargetKind {
        Relational, // blocks glued as lax relational presheaves
        CellBlocks, // blocks glued as relational families
    };

    std::string name;
    TargetKind target = TargetKind::Relational;
    CategoryPtr base;
    std::vector<RelStructure> object_blocks;   // M(c)
    std::vector<RelStructure> relation_blocks; // M(R_f)
    std::vector<ComponentMap> iota0;           // M(cod f) -> M(R_f)
    std::vector<ComponentMap> iota1;           // M(dom f) -> M(R_f)

    Level colimit_level() const { return target == TargetKind::Relational ? Level::Lax : Level::Family; }
};

struct ModelFailure {
    int condition = 0;
    /// The morphism (condition 0), the identity (condition 1), or f, g and
    /// f o g (condition 2).
    std::vector<Arrow> arrows;
    std::string witness;
};

struct ModelReport {
    std::vector<ModelFailure> failures;

    bool ok() const { return failures.empty(); }
    bool condition_ok(int k) const
    {
        for (const auto& f : failures) {
            if (f.condition == k) return false;
        }
        return true;
    }
};

namespace detail {

/// Looks for m : source -> target with m(from[i](x)) = to[i](x). Returns the
/// witness text on failure.
inline std::optional<std::string> find_factorization(const RelStructure& source, const RelStructure& target,
                                                     const std::vector<std::pair<const ComponentMap*, ComponentMap>>& pins)
{
    std::vector<std::optional<CellId>> pinned(source.size());
    for (const auto& [from, to] : pins) {
        for (CellId x = 0; x < from->size(); ++x) {
            CellId s = (*from)[x];
            if (pinned[s] && *pinned[s] != to[x]) {
                return "cell " + source.name(s) + " must go to both " + target.name(*pinned[s]) + " and " +
                       target.name(to[x]);
            }
            pinned[s] = to[x];
        }
    }
    bool all_pinned = true;
    for (const auto& p : pinned) all_pinned = all_pinned && p.has_value();
    if (all_pinned) {
        ComponentMap m(source.size());
        for (CellId c = 0; c < m.size(); ++c) m[c] = *pinned[c];
        auto check = check_morphism(source, target, m);
        if (check.ok()) return std::nullopt;
        const auto& bad = check.failures.front();
        return "pair " + source.name(bad.big) + " ->" + arrow_label(source.base(), bad.arrow) + " " +
               source.name(bad.small) + " has no image: " + target.name(m[bad.big]) + " is not related to " +
               target.name(m[bad.small]);
    }
    HomSearchOptions opts;
    opts.pinned = std::move(pinned);
    if (find_morphism(source, target, opts)) return std::nullopt;
    return "no morphism extends the prescribed cells";
}

} // namespace detail

/// Checks the three model conditions: joint pointwise surjectivity of
/// (ι0, ι1), the codiagonal factorization through ι_id, and the
/// transitivity factorization through ι_{f o g} into M(R_f) +_{M(d)} M(R_g),
/// the pushout taken at the model's colimit level.
inline ModelReport check_model(const ModelAssignment& m)
{
    ModelReport report;
    const auto& base = *m.base;
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        const auto& block = m.relation_blocks[f];
        std::vector<bool> hit(block.size(), false);
        for (CellId c : m.iota0[f]) hit[c] = true;
        for (CellId c : m.iota1[f]) hit[c] = true;
        for (CellId c = 0; c < block.size(); ++c) {
            if (!hit[c]) {
                report.failures.push_back({0, {f}, "cell " + block.name(c) + " of M(R" + arrow_label(base, f) +
                                                        ") is hit by neither injection"});
                break;
            }
        }
    }
    for (Object c = 0; c < base.object_count(); ++c) {
        Arrow id = base.identity(c);
        ComponentMap identity(m.object_blocks[c].size());
        for (CellId x = 0; x < identity.size(); ++x) identity[x] = x;
        auto w = detail::find_factorization(m.relation_blocks[id], m.object_blocks[c],
                                            {{&m.iota0[id], identity}, {&m.iota1[id], identity}});
        if (w) report.failures.push_back({1, {id}, *w});
    }
    const Level level = m.colimit_level();
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (Arrow g : base.into(base.dom(f))) {
            Arrow fg = base.compose(f, g);
            const auto& mid = m.object_blocks[base.dom(f)];
            RelMorphism left(mid, m.relation_blocks[f], m.iota1[f]);
            RelMorphism right(mid, m.relation_blocks[g], m.iota0[g]);
            auto po = pushout(left, right, level);
            ComponentMap top(m.iota0[f].size()), bottom(m.iota1[g].size());
            for (CellId x = 0; x < top.size(); ++x) top[x] = po.cocone[0](m.iota0[f][x]);
            for (CellId x = 0; x < bottom.size(); ++x) bottom[x] = po.cocone[1](m.iota1[g][x]);
            auto w = detail::find_factorization(m.relation_blocks[fg], po.structure,
                                                {{&m.iota0[fg], top}, {&m.iota1[fg], bottom}});
            if (w) {
                report.failures.push_back({2, {f, g, fg},
                                           "M(R" + arrow_label(base, fg) + ") -> M(R" + arrow_label(base, f) +
                                               ") +_M(" + base.object_name(base.dom(f)) + ") M(R" +
                                               arrow_label(base, g) + "): " + *w});
            }
        }
    }
    return report;
}

/// The realized structure plus, per cell x of P, the realized cell of each
/// cell of the block M(object x).
struct Realization {
    RelStructure structure;
    std::vector<ComponentMap> cell_of;
};

/// Colimit over the extended elements of P: a copy of M(c) per cell, a copy
/// of M(R_f) per instance x ->_f y, glued by ι0 at x and ι1 at y. Each
/// realized cell is renamed "x:local" after its least preimage in a cell
/// block, or "(f,x,y):local" when only a relation block reaches it.
inline Realization realize(const RelStructure& p, const ModelAssignment& m)
{
    if (!same_base(p.base_ptr(), m.base)) throw std::invalid_argument("model and structure have different bases");
    auto ext = extended_elements(p);
    Diagram d;
    d.base = m.object_blocks.empty() ? m.base : m.object_blocks.front().base_ptr();
    std::vector<std::string> anchor;
    for (CellId x = 0; x < p.size(); ++x) {
        d.objects.push_back(m.object_blocks[p.object(x)]);
        anchor.push_back(p.name(x));
    }
    for (const auto& inst : ext.instances) {
        std::size_t k = d.objects.size();
        d.objects.push_back(m.relation_blocks[inst.arrow]);
        anchor.push_back(instance_name(p, inst.arrow, inst.big, inst.small));
        d.arrows.push_back({inst.big, k, m.iota0[inst.arrow]});
        d.arrows.push_back({inst.small, k, m.iota1[inst.arrow]});
    }
    auto col = finite_colimit(d, m.colimit_level());
    const auto& r = col.structure;

    // least preimage: cell blocks first, then by (anchor, local) names
    std::vector<std::optional<std::tuple<bool, std::string, std::string>>> best(r.size());
    for (std::size_t k = 0; k < d.objects.size(); ++k) {
        bool is_rel = k >= p.size();
        for (CellId c = 0; c < d.objects[k].size(); ++c) {
            CellId t = col.cocone[k](c);
            std::tuple<bool, std::string, std::string> key{is_rel, anchor[k], d.objects[k].name(c)};
            if (!best[t] || key < *best[t]) best[t] = key;
        }
    }
    std::vector<std::string> names(r.size());
    for (CellId c = 0; c < r.size(); ++c) names[c] = std::get<1>(*best[c]) + ":" + std::get<2>(*best[c]);
    Realization out{rename_cells(r, names), {}};
    for (CellId x = 0; x < p.size(); ++x) out.cell_of.push_back(col.cocone[x].components());
    return out;
}

/// The realization of α : P -> Q, using both realizations' lookup tables.
inline RelMorphism realize_morphism(const RelMorphism& alpha, const Realization& rp, const Realization& rq)
{
    ComponentMap map(rp.structure.size(), Category::npos);
    for (CellId x = 0; x < rp.cell_of.size(); ++x) {
        for (CellId local = 0; local < rp.cell_of[x].size(); ++local) {
            map[rp.cell_of[x][local]] = rq.cell_of[alpha(x)][local];
        }
    }
    return RelMorphism(rp.structure, rq.structure, std::move(map));
}

// ---------------------------------------------------------------------------
// barycentric subdivision

namespace detail {

/// Coordinates in quarters, 0..4.
using Quarters = std::vector<int>;

inline std::string quarter_text(int q)
{
    switch (q) {
    case 0: return "0";
    case 1: return "1/4";
    case 2: return "1/2";
    case 3: return "3/4";
    default: return "1";
    }
}

inline std::string tuple_name(const Quarters& t)
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + quarter_text(t[i]);
    return out + ")";
}

inline std::size_t odd_count(const Quarters& t)
{
    std::size_t k = 0;
    for (int q : t) k += static_cast<std::size_t>(q % 2);
    return k;
}

/// The subdivided cells `cells` with every face relation among them: the
/// word letters act on the odd coordinates in order, '-' and '+' moving one
/// quarter down or up.
inline RelStructure subdivided_block(const CategoryPtr& base, const std::vector<Quarters>& cells)
{
    RelStructure out(base, Level::Lax);
    std::map<Quarters, CellId> id;
    for (const auto& t : cells) id[t] = out.add_cell(odd_count(t), tuple_name(t));
    for (const auto& [t, x] : id) {
        std::vector<std::size_t> odd;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] % 2 != 0) odd.push_back(i);
        }
        for (Arrow w : base->into(odd.size())) {
            const auto& word = base->word(w);
            Quarters s = t;
            for (std::size_t i = 0; i < odd.size(); ++i) {
                if (word[i] == '-') --s[odd[i]];
                if (word[i] == '+') ++s[odd[i]];
            }
            auto it = id.find(s);
            if (it != id.end()) out.relate(w, x, it->second);
        }
    }
    return out;
}

inline std::vector<Quarters> open_cube_cells(std::size_t n)
{
    std::vector<Quarters> out{Quarters{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Quarters> next;
        for (const auto& t : out) {
            for (int q = 1; q <= 3; ++q) {
                auto s = t;
                s.push_back(q);
                next.push_back(std::move(s));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Places the coordinates of a face cell into the ambient cube along w.
inline Quarters along(const CofaceWord& w, const Quarters& s)
{
    Quarters t(w.cod());
    std::size_t next = 0;
    for (std::size_t i = 0; i < w.cod(); ++i) {
        if (w[i] == '0') t[i] = s[next++];
        else t[i] = w[i] == '-' ? 0 : 4;
    }
    return t;
}

} // namespace detail

/// The subdivision model on the cube category truncated at max_dim: M(n) is the
/// subdivided open n-cube, cells (t_1..t_n) with t_j in {1/4,1/2,3/4} and
/// dimension the number of t_j != 1/2; M(R_f) adds the subdivided open face
/// selected by f.
inline ModelAssignment subdivision_model(std::size_t max_dim)
{
    auto base = cube_category(max_dim);
    ModelAssignment m;
    m.name = "subdivision";
    m.target = ModelAssignment::TargetKind::Relational;
    m.base = base;
    for (Object n = 0; n <= max_dim; ++n) m.object_blocks.push_back(detail::subdivided_block(base, detail::open_cube_cells(n)));
    for (Arrow f = 0; f < base->arrow_count(); ++f) {
        const auto& w = base->word(f);
        auto cells = detail::open_cube_cells(w.cod());
        std::set<detail::Quarters> seen(cells.begin(), cells.end());
        for (const auto& s : detail::open_cube_cells(w.dom())) {
            auto t = detail::along(w, s);
            if (seen.insert(t).second) cells.push_back(t);
        }
        auto block = detail::subdivided_block(base, cells);
        ComponentMap i0, i1;
        for (const auto& t : detail::open_cube_cells(w.cod())) i0.push_back(block.at(detail::tuple_name(t)));
        for (const auto& s : detail::open_cube_cells(w.dom())) i1.push_back(block.at(detail::tuple_name(detail::along(w, s))));
        m.relation_blocks.push_back(std::move(block));
        m.iota0.push_back(std::move(i0));
        m.iota1.push_back(std::move(i1));
    }
    return m;
}

/// Barycentric subdivision: realization in the subdivision model.
inline RelStructure subdivide(const RelStructure& p)
{
    if (p.base().kind() == Category::Kind::Table) throw std::invalid_argument("subdivision needs a cube base");
    auto m = subdivision_model(p.base().max_dim());
    return realize(with_base(p, m.base), m).structure;
}

// ---------------------------------------------------------------------------
// geometric realization

enum class GeometricMode { Standard, Sequential };

inline std::string to_string(GeometricMode mode) { return mode == GeometricMode::Standard ? "standard" : "sequential"; }

inline GeometricMode parse_mode(std::string_view text)
{
    if (text == "standard") return GeometricMode::Standard;
    if (text == "sequential") return GeometricMode::Sequential;
    throw std::invalid_argument("unknown realization mode '" + std::string(text) + "'");
}

/// One open cell per object. M(R_f) is the big cell with the small one in its
/// boundary, related by f; in sequential mode composite f leave the two cells
/// apart. Glued as families. The standard model is also the unmodified
/// construction that fails transitivity.
inline ModelAssignment geometric_model(const CategoryPtr& base, GeometricMode mode)
{
    if (!base->has_words()) throw std::invalid_argument("geometric realization needs a cube base");
    ModelAssignment m;
    m.name = to_string(mode);
    m.target = ModelAssignment::TargetKind::CellBlocks;
    m.base = base;
    for (Object n = 0; n < base->object_count(); ++n) {
        RelStructure block(base, Level::Family);
        CellId o = block.add_cell(n, "o");
        block.relate(base->identity(n), o, o);
        m.object_blocks.push_back(std::move(block));
    }
    for (Arrow f = 0; f < base->arrow_count(); ++f) {
        if (base->is_identity(f)) {
            m.relation_blocks.push_back(m.object_blocks[base->cod(f)]);
            m.iota0.push_back({0});
            m.iota1.push_back({0});
            continue;
        }
        RelStructure block(base, Level::Family);
        CellId big = block.add_cell(base->cod(f), "big");
        CellId small = block.add_cell(base->dom(f), "small");
        block.relate(base->identity(base->cod(f)), big, big);
        block.relate(base->identity(base->dom(f)), small, small);
        if (mode == GeometricMode::Standard || base->word(f).is_elementary()) block.relate(f, big, small);
        m.relation_blocks.push_back(std::move(block));
        m.iota0.push_back({big});
        m.iota1.push_back({small});
    }
    return m;
}

/// Open cells and their attachments. An attachment records a relation
/// instance big ->_w small; it glues unless it is composite in sequential
/// mode.
struct CellComplex {
    struct Cell {
        std::string name;
        std::size_t dim = 0;
    };
    struct Attachment {
        std::size_t big = 0;
        std::size_t small = 0;
        std::string word;
        bool elementary = false;
        bool gluing = true;
    };

    GeometricMode mode = GeometricMode::Standard;
    std::vector<Cell> cells;
    std::vector<Attachment> attachments;
};

/// Realizes P in the geometric model and reads off the cell complex; cells
/// keep the names of P. Identity instances attach nothing.
inline CellComplex geometric_realization(const RelStructure& p, GeometricMode mode)
{
    auto m = geometric_model(p.base_ptr(), mode);
    auto r = realize(p, m);
    CellComplex k;
    k.mode = mode;
    std::vector<std::size_t> index(r.structure.size(), Category::npos);
    for (CellId x = 0; x < p.size(); ++x) {
        index[r.cell_of[x][0]] = k.cells.size();
        k.cells.push_back({p.name(x), p.dim(x)});
    }
    if (k.cells.size() != r.structure.size()) throw std::logic_error("geometric realization merged cells");
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        if (p.base().is_identity(f)) continue;
        bool elementary = p.base().word(f).is_elementary();
        for (const auto& [x, y] : p.relation(f)) {
            bool gluing = mode == GeometricMode::Standard || elementary;
            if (gluing != r.structure.related(f, r.cell_of[x][0], r.cell_of[y][0])) {
                throw std::logic_error("realized gluing disagrees with the model");
            }
            k.attachments.push_back({x, y, p.base().arrow_name(f), elementary, gluing});
        }
    }
    return k;
}

/// Partition of the cells by connectivity through gluing attachments; each
/// part lists cell indices in increasing order, parts ordered by least member.
inline std::vector<std::vector<std::size_t>> components(const CellComplex& k)
{
    boost::disjoint_sets_with_storage<> sets(k.cells.size());
    for (const auto& a : k.attachments) {
        if (a.gluing) sets.union_set(a.big, a.small);
    }
    std::map<std::size_t, std::vector<std::size_t>> parts;
    std::vector<std::vector<std::size_t>> out;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t c = 0; c < k.cells.size(); ++c) {
        auto root = sets.find_set(c);
        auto [it, fresh] = slot.emplace(root, out.size());
        if (fresh) out.emplace_back();
        out[it->second].push_back(c);
    }
    return out;
}

inline long euler_characteristic(const CellComplex& k)
{
    long chi = 0;
    for (const auto& c : k.cells) chi += c.dim % 2 == 0 ? 1 : -1;
    return chi;
}

inline std::vector<std::size_t> cell_census(const CellComplex& k)
{
    std::vector<std::size_t> out;
    for (const auto& c : k.cells) {
        if (out.size() <= c.dim) out.resize(c.dim + 1, 0);
        ++out[c.dim];
    }
    return out;
}

/// Adjacency graph; composite attachments are dashed, non-gluing ones dotted.
inline std::string to_dot(const CellComplex& k)
{
    std::ostringstream out;
    out << "digraph complex {\n";
    for (std::size_t c = 0; c < k.cells.size(); ++c) {
        out << "  n" << c << " [label=\"" << k.cells[c].name << " (" << k.cells[c].dim << ")\"];\n";
    }
    for (const auto& a : k.attachments) {
        out << "  n" << a.big << " -> n" << a.small << " [label=\"" << a.word << "\"";
        if (!a.gluing) out << ", style=dotted";
        else if (!a.elementary) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// neighborhoods

/// N⁺(c): the pairs (a, f) with a ->_f c, sorted.
inline std::vector<std::pair<CellId, Arrow>> positive_neighborhood(const RelStructure& p, CellId c)
{
    std::vector<std::pair<CellId, Arrow>> out;
    for (const auto& inc : p.cofaces(c)) out.emplace_back(inc.cell, inc.arrow);
    std::sort(out.begin(), out.end());
    return out;
}

/// N(c): the full substructure on the cells a with a ->_f c for some f.
inline RelStructure neighborhood(const RelStructure& p, CellId c)
{
    std::set<CellId> cells;
    for (const auto& inc : p.cofaces(c)) cells.insert(inc.cell);
    return full_substructure(p, std::vector<CellId>(cells.begin(), cells.end()));
}

using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// One factor of a basis box, with k symbolic: ]0,2/k[, ]1-2/k,1[ or
/// ]x_p-1/k, x_p+1/k[.
struct BasisInterval {
    enum class Kind { Lower, Upper, Around };
    Kind kind = Kind::Lower;
    std::size_t coordinate = 0; // p(i), 1-based, only for Around
    Rational center;            // x_{p(i)}, only for Around

    std::pair<Rational, Rational> at(long long k) const
    {
        switch (kind) {
        case Kind::Lower: return {Rational(0), Rational(2, k)};
        case Kind::Upper: return {Rational(1) - Rational(2, k), Rational(1)};
        default: return {center - Rational(1, k), center + Rational(1, k)};
        }
    }

    std::string str() const
    {
        switch (kind) {
        case Kind::Lower: return "]0,2/k[";
        case Kind::Upper: return "]1-2/k,1[";
        default: {
            auto c = to_string(center);
            return "]" + c + "-1/k," + c + "+1/k[";
        }
        }
    }

    bool operator==(const BasisInterval&) const = default;
};

struct BasisTerm {
    CellId cell = 0;
    Arrow arrow = 0;
    std::vector<BasisInterval> factors;
};

struct NeighborhoodDescriptor {
    CellId center = 0;
    std::vector<Rational> point;
    std::vector<BasisTerm> terms;
};

/// U_k(x) for x in the open cube of c: one box per (a, w) in N⁺(c), the i-th
/// factor chosen by w_i, with p(i) the number of zeros among w_1..w_i.
inline NeighborhoodDescriptor basis_neighborhood(const RelStructure& p, CellId c, const std::vector<Rational>& x)
{
    if (!p.base().has_words()) throw std::invalid_argument("basis neighborhoods need a cube base");
    if (x.size() != p.dim(c)) throw std::invalid_argument("sample point has the wrong number of coordinates");
    for (const auto& t : x) {
        if (t <= 0 || t >= 1) throw std::invalid_argument("sample point is not in the open cube");
    }
    NeighborhoodDescriptor out{c, x, {}};
    for (const auto& [a, f] : positive_neighborhood(p, c)) {
        const auto& w = p.base().word(f);
        BasisTerm term{a, f, {}};
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < w.cod(); ++i) {
            BasisInterval iv;
            if (w[i] == '-') iv.kind = BasisInterval::Kind::Lower;
            else if (w[i] == '+') iv.kind = BasisInterval::Kind::Upper;
            else {
                ++zeros;
                iv.kind = BasisInterval::Kind::Around;
                iv.coordinate = zeros;
                iv.center = x[zeros - 1];
            }
            term.factors.push_back(iv);
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

inline std::string to_string(const RelStructure& p, const BasisTerm& t)
{
    std::string out = "{" + p.name(t.cell) + "}";
    for (const auto& f : t.factors) out += " x " + f.str();
    return out;
}

} // namespace relpsh
