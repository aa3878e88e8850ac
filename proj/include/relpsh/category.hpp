#pragma once

// Finite base categories: explicit composition tables, the cube category
// truncated at a maximal dimension, and coface-word arithmetic.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace relpsh {

/// Normal form of a morphism n -> m of the cube category: a word of length m
/// over {-, 0, +} with exactly n zero letters. Zero letters are the free
/// directions, nonzero letters pin a direction to its lower or upper face.
class CofaceWord {
public:
    CofaceWord() = default;

    explicit CofaceWord(std::string_view text) : letters_(text)
    {
        for (char c : letters_) {
            if (c != '-' && c != '0' && c != '+') {
                throw std::invalid_argument("coface word '" + letters_ + "' has a letter outside -0+");
            }
        }
    }

    static CofaceWord identity(std::size_t n) { return CofaceWord(std::string(n, '0')); }

    std::size_t dom() const { return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), '0')); }
    std::size_t cod() const { return letters_.size(); }
    std::size_t codim() const { return cod() - dom(); }
    bool is_identity() const { return codim() == 0; }
    bool is_elementary() const { return codim() == 1; }

    char operator[](std::size_t i) const { return letters_[i]; }
    const std::string& str() const { return letters_; }

    auto operator<=>(const CofaceWord&) const = default;

private:
    std::string letters_;
};

/// The generator d^sign_{n,i} : n -> n+1.
struct ElementaryCoface {
    std::size_t n = 0;
    std::size_t i = 0;
    char sign = '-';

    CofaceWord word() const
    {
        std::string w(n + 1, '0');
        w[i] = sign;
        return CofaceWord(w);
    }

    auto operator<=>(const ElementaryCoface&) const = default;
};

/// outer o inner. The zero positions of `outer` receive, in order, the letters
/// of `inner`; the nonzero letters of `outer` stay in place.
inline CofaceWord compose_words(const CofaceWord& inner, const CofaceWord& outer)
{
    if (inner.cod() != outer.dom()) {
        throw std::invalid_argument("cannot compose '" + outer.str() + "' after '" + inner.str() +
                                    "': dimension mismatch");
    }
    std::string out = outer.str();
    std::size_t next = 0;
    for (char& c : out) {
        if (c == '0') {
            c = inner[next++];
        }
    }
    return CofaceWord(out);
}

/// Unique factorisation w = d^{e_k}_{n+k-1,i_k} o ... o d^{e_1}_{n,i_1} with
/// i_1 < ... < i_k. The list is returned innermost first.
inline std::vector<ElementaryCoface> decompose(const CofaceWord& w)
{
    std::vector<ElementaryCoface> out;
    std::size_t dim = w.dom();
    for (std::size_t pos = 0; pos < w.cod(); ++pos) {
        if (w[pos] != '0') {
            out.push_back({dim, pos, w[pos]});
            ++dim;
        }
    }
    return out;
}

/// Composes a list of generators, innermost first.
inline CofaceWord compose_elementary(std::size_t dom, const std::vector<ElementaryCoface>& gens)
{
    CofaceWord acc = CofaceWord::identity(dom);
    for (const auto& g : gens) {
        acc = compose_words(acc, g.word());
    }
    return acc;
}

class Category;
using CategoryPtr = std::shared_ptr<const Category>;

/// A finite category given by objects, morphisms with domain and codomain,
/// identities and a total composition table on composable pairs.
class Category {
public:
    using Object = std::size_t;
    using Arrow = std::size_t;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    enum class Kind { Cube, Graph, Table };

    struct ArrowSpec {
        std::string name;
        std::string dom;
        std::string cod;
    };
    struct CompositionSpec {
        std::string outer;
        std::string inner;
        std::string result;
    };

    /// Builds a category from an explicit table. Throws std::invalid_argument
    /// if the table is incomplete or violates the category axioms.
    static CategoryPtr table(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                             const std::map<std::string, std::string>& identities,
                             const std::vector<CompositionSpec>& compositions)
    {
        auto cat = std::shared_ptr<Category>(new Category(Kind::Table));
        for (const auto& o : objects) {
            cat->add_object(o);
        }
        for (const auto& a : arrows) {
            cat->add_arrow(a.name, cat->require_object(a.dom), cat->require_object(a.cod), std::nullopt);
        }
        cat->identity_.assign(cat->objects_.size(), npos);
        for (const auto& [obj, arrow] : identities) {
            Object o = cat->require_object(obj);
            Arrow a = cat->require_arrow(arrow);
            if (cat->dom_[a] != o || cat->cod_[a] != o) {
                throw std::invalid_argument("identity '" + arrow + "' is not an endomorphism of '" + obj + "'");
            }
            cat->identity_[o] = a;
        }
        for (Object o = 0; o < cat->objects_.size(); ++o) {
            if (cat->identity_[o] == npos) {
                throw std::invalid_argument("object '" + cat->objects_[o] + "' has no identity");
            }
        }
        cat->compose_.assign(cat->names_.size() * cat->names_.size(), npos);
        for (Object o = 0; o < cat->objects_.size(); ++o) {
            for (Arrow f = 0; f < cat->names_.size(); ++f) {
                if (cat->cod_[f] == o) {
                    cat->set_compose(cat->identity_[o], f, f);
                }
                if (cat->dom_[f] == o) {
                    cat->set_compose(f, cat->identity_[o], f);
                }
            }
        }
        for (const auto& c : compositions) {
            Arrow outer = cat->require_arrow(c.outer);
            Arrow inner = cat->require_arrow(c.inner);
            Arrow result = cat->require_arrow(c.result);
            if (cat->cod_[inner] != cat->dom_[outer]) {
                throw std::invalid_argument("composition " + c.outer + " o " + c.inner + " is not composable");
            }
            if (cat->dom_[result] != cat->dom_[inner] || cat->cod_[result] != cat->cod_[outer]) {
                throw std::invalid_argument("composition " + c.outer + " o " + c.inner + " has the wrong type");
            }
            Arrow existing = cat->compose_[outer * cat->names_.size() + inner];
            if (existing != npos && existing != result) {
                throw std::invalid_argument("composition " + c.outer + " o " + c.inner + " is given twice");
            }
            cat->set_compose(outer, inner, result);
        }
        cat->finish();
        auto problems = cat->check_axioms();
        if (!problems.empty()) {
            throw std::invalid_argument("invalid category table: " + problems.front());
        }
        return cat;
    }

    /// The cube category restricted to the objects 0..max_dim.
    static CategoryPtr cube(std::size_t max_dim) { return make_cube(max_dim, Kind::Cube); }

    /// The full subcategory of the cube category on 0 and 1: vertices, edges,
    /// source s = "-" and target t = "+".
    static CategoryPtr graph() { return make_cube(1, Kind::Graph); }

    Kind kind() const { return kind_; }
    bool has_words() const { return kind_ != Kind::Table; }
    std::size_t max_dim() const { return objects_.empty() ? 0 : objects_.size() - 1; }

    std::size_t object_count() const { return objects_.size(); }
    std::size_t arrow_count() const { return names_.size(); }

    const std::string& object_name(Object o) const { return objects_.at(o); }
    std::optional<Object> find_object(std::string_view name) const
    {
        auto it = object_index_.find(std::string(name));
        if (it == object_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const std::string& arrow_name(Arrow f) const { return names_.at(f); }
    /// Arrow lookup by name. Graph categories also accept s, t, id0, id1.
    std::optional<Arrow> find_arrow(std::string_view name) const
    {
        std::string key(name);
        if (kind_ == Kind::Graph) {
            if (key == "s") key = "-";
            else if (key == "t") key = "+";
            else if (key == "id0") key = "";
            else if (key == "id1") key = "0";
        }
        auto it = arrow_index_.find(key);
        if (it == arrow_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }
    Arrow require_arrow(std::string_view name) const
    {
        auto a = find_arrow(name);
        if (!a) {
            throw std::invalid_argument("unknown morphism '" + std::string(name) + "'");
        }
        return *a;
    }
    Object require_object(std::string_view name) const
    {
        auto o = find_object(name);
        if (!o) {
            throw std::invalid_argument("unknown object '" + std::string(name) + "'");
        }
        return *o;
    }

    Object dom(Arrow f) const { return dom_.at(f); }
    Object cod(Arrow f) const { return cod_.at(f); }
    Arrow identity(Object o) const { return identity_.at(o); }
    bool is_identity(Arrow f) const { return identity_[dom_[f]] == f; }

    /// outer o inner, or npos when cod(inner) != dom(outer).
    Arrow compose(Arrow outer, Arrow inner) const { return compose_[outer * names_.size() + inner]; }

    /// Arrows d -> c.
    const std::vector<Arrow>& hom(Object d, Object c) const { return hom_[d * objects_.size() + c]; }
    /// Arrows with codomain c / domain d.
    const std::vector<Arrow>& into(Object c) const { return into_[c]; }
    const std::vector<Arrow>& out_of(Object d) const { return out_of_[d]; }

    /// Only for cube and graph categories.
    const CofaceWord& word(Arrow f) const
    {
        if (!has_words()) {
            throw std::logic_error("table categories carry no coface words");
        }
        return words_[f];
    }

    /// Exhaustive check of identities, closure and associativity.
    std::vector<std::string> check_axioms() const
    {
        std::vector<std::string> out;
        const std::size_t n = names_.size();
        for (Arrow f = 0; f < n; ++f) {
            if (compose(identity_[cod_[f]], f) != f || compose(f, identity_[dom_[f]]) != f) {
                out.push_back("identities are not neutral for '" + names_[f] + "'");
            }
            for (Arrow g = 0; g < n; ++g) {
                if (cod_[g] != dom_[f]) {
                    continue;
                }
                Arrow fg = compose(f, g);
                if (fg == npos) {
                    out.push_back("missing composite " + names_[f] + " o " + names_[g]);
                    continue;
                }
                for (Arrow h = 0; h < n; ++h) {
                    if (cod_[h] != dom_[g]) {
                        continue;
                    }
                    Arrow gh = compose(g, h);
                    if (gh == npos) {
                        continue;
                    }
                    Arrow left = compose(fg, h);
                    Arrow right = compose(f, gh);
                    if (left == npos || left != right) {
                        out.push_back("composition is not associative on " + names_[f] + ", " + names_[g] + ", " +
                                      names_[h]);
                    }
                }
            }
        }
        return out;
    }

    /// Structural equality: same objects, arrows, identities and composition.
    /// The graph category and the cube category truncated at 1 are equal.
    bool operator==(const Category& other) const
    {
        return kind_ == other.kind_ && objects_ == other.objects_ && names_ == other.names_ && dom_ == other.dom_ && cod_ == other.cod_ &&
               identity_ == other.identity_ && compose_ == other.compose_;
    }

private:
    explicit Category(Kind kind) : kind_(kind) {}

    static CategoryPtr make_cube(std::size_t max_dim, Kind kind)
    {
        auto cat = std::shared_ptr<Category>(new Category(kind));
        for (std::size_t m = 0; m <= max_dim; ++m) {
            cat->add_object(std::to_string(m));
        }
        std::vector<CofaceWord> all;
        for (std::size_t m = 0; m <= max_dim; ++m) {
            // all words of length m, enumerated in base 3
            std::size_t total = 1;
            for (std::size_t i = 0; i < m; ++i) total *= 3;
            for (std::size_t code = 0; code < total; ++code) {
                std::string w(m, '0');
                std::size_t c = code;
                for (std::size_t i = m; i-- > 0;) {
                    w[i] = "-0+"[c % 3];
                    c /= 3;
                }
                all.emplace_back(w);
            }
        }
        std::sort(all.begin(), all.end(), [](const CofaceWord& a, const CofaceWord& b) {
            return std::tuple(a.cod(), a.dom(), a.str()) < std::tuple(b.cod(), b.dom(), b.str());
        });
        for (const auto& w : all) {
            cat->add_arrow(w.str(), w.dom(), w.cod(), w);
        }
        cat->identity_.resize(max_dim + 1);
        for (std::size_t m = 0; m <= max_dim; ++m) {
            cat->identity_[m] = cat->arrow_index_.at(std::string(m, '0'));
        }
        const std::size_t n = cat->names_.size();
        cat->compose_.assign(n * n, npos);
        for (Arrow outer = 0; outer < n; ++outer) {
            for (Arrow inner = 0; inner < n; ++inner) {
                if (cat->cod_[inner] == cat->dom_[outer]) {
                    auto w = compose_words(cat->words_[inner], cat->words_[outer]);
                    cat->set_compose(outer, inner, cat->arrow_index_.at(w.str()));
                }
            }
        }
        cat->finish();
        return cat;
    }

    void add_object(const std::string& name)
    {
        if (!object_index_.emplace(name, objects_.size()).second) {
            throw std::invalid_argument("duplicate object '" + name + "'");
        }
        objects_.push_back(name);
    }

    void add_arrow(const std::string& name, Object d, Object c, std::optional<CofaceWord> w)
    {
        if (!arrow_index_.emplace(name, names_.size()).second) {
            throw std::invalid_argument("duplicate morphism '" + name + "'");
        }
        names_.push_back(name);
        dom_.push_back(d);
        cod_.push_back(c);
        if (w) {
            words_.push_back(*w);
        }
    }

    void set_compose(Arrow outer, Arrow inner, Arrow result) { compose_[outer * names_.size() + inner] = result; }

    void finish()
    {
        const std::size_t k = objects_.size();
        hom_.assign(k * k, {});
        into_.assign(k, {});
        out_of_.assign(k, {});
        for (Arrow f = 0; f < names_.size(); ++f) {
            hom_[dom_[f] * k + cod_[f]].push_back(f);
            into_[cod_[f]].push_back(f);
            out_of_[dom_[f]].push_back(f);
        }
    }

    Kind kind_;
    std::vector<std::string> objects_;
    std::map<std::string, Object> object_index_;
    std::vector<std::string> names_;
    std::map<std::string, Arrow> arrow_index_;
    std::vector<Object> dom_;
    std::vector<Object> cod_;
    std::vector<CofaceWord> words_;
    std::vector<Arrow> identity_;
    std::vector<Arrow> compose_;
    std::vector<std::vector<Arrow>> hom_;
    std::vector<std::vector<Arrow>> into_;
    std::vector<std::vector<Arrow>> out_of_;
};

inline CategoryPtr cube_category(std::size_t max_dim) { return Category::cube(max_dim); }
inline CategoryPtr graph_category() { return Category::graph(); }

inline bool same_base(const CategoryPtr& a, const CategoryPtr& b) { return a == b || (a && b && *a == *b); }

/// Printable label for a morphism; the empty word (identity of 0) shows as "".
inline std::string arrow_label(const Category& c, Category::Arrow f) { return "\"" + c.arrow_name(f) + "\""; }

} // namespace relpsh
