#pragma once

// Tensor products of precubical structures, euclidean bricks, surjective
// local embeddings, the combinatorial blowup P̃ with β : P̃ -> P, and its
// completion to a discrete fibration.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "relpsh/morphism.hpp"
#include "relpsh/realization.hpp"
#include "relpsh/transforms.hpp"

namespace relpsh {

/// P ⊗ Q over the cube category of the summed dimensions: cells (p, q) of
/// dimension dim p + dim q, and (p,q) ->_w (p',q') iff p ->_u p' and
/// q ->_v q' where w = uv with |u| = dim p.
inline RelStructure tensor(const RelStructure& p, const RelStructure& q)
{
    if (!p.base().has_words() || !q.base().has_words()) throw std::invalid_argument("tensor needs cube bases");
    auto base = cube_category(p.base().max_dim() + q.base().max_dim());
    RelStructure out(base, std::min(p.level(), q.level()));
    std::vector<std::vector<CellId>> id(p.size(), std::vector<CellId>(q.size()));
    for (CellId a = 0; a < p.size(); ++a) {
        for (CellId b = 0; b < q.size(); ++b) {
            id[a][b] = out.add_cell(p.dim(a) + q.dim(b), "(" + p.name(a) + "," + q.name(b) + ")");
        }
    }
    for (CellId a = 0; a < p.size(); ++a) {
        for (const auto& fa : p.faces(a)) {
            const auto& u = p.base().word(fa.arrow).str();
            for (CellId b = 0; b < q.size(); ++b) {
                for (const auto& fb : q.faces(b)) {
                    Arrow w = base->require_arrow(u + q.base().word(fb.arrow).str());
                    out.relate(w, id[a][b], id[fa.cell][fb.cell]);
                }
            }
        }
    }
    return out;
}

/// The point, the interval I (a -> b along edge "ab") and the subdivided
/// interval J (l -> m -> r along "lm" and "mr"), as ordinary precubical sets.
inline RelStructure point_complex()
{
    RelStructure out(cube_category(0), Level::Functional);
    out.add_cell(Object{0}, "*");
    out.relate("", "*", "*");
    return out;
}

namespace detail {

inline RelStructure path_complex(const std::vector<std::string>& vertices, const std::vector<std::string>& edges)
{
    RelStructure out(cube_category(1), Level::Functional);
    for (const auto& v : vertices) {
        out.add_cell(Object{0}, v);
        out.relate("", v, v);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out.add_cell(Object{1}, edges[i]);
        out.relate("0", edges[i], edges[i]);
        out.relate("-", edges[i], vertices[i]);
        out.relate("+", edges[i], vertices[i + 1]);
    }
    return out;
}

} // namespace detail

inline RelStructure interval_I() { return detail::path_complex({"a", "b"}, {"ab"}); }
inline RelStructure interval_J() { return detail::path_complex({"l", "m", "r"}, {"lm", "mr"}); }

/// n ambient dimensions, k of them along I; `axes` orders the factors.
struct BrickSignature {
    std::size_t n = 0;
    std::size_t k = 0;
    std::string axes;

    static BrickSignature from_axes(std::string axes)
    {
        for (char c : axes) {
            if (c != 'I' && c != 'J') throw std::invalid_argument("brick axes must be over I and J");
        }
        auto k = static_cast<std::size_t>(std::count(axes.begin(), axes.end(), 'I'));
        return {axes.size(), k, std::move(axes)};
    }

    /// I^k J^(n-k) in that order.
    static BrickSignature standard(std::size_t n, std::size_t k)
    {
        if (k > n) throw std::invalid_argument("brick level exceeds the dimension");
        return from_axes(std::string(k, 'I') + std::string(n - k, 'J'));
    }

    auto operator<=>(const BrickSignature&) const = default;
};

/// Every ordering of k I-factors among n.
inline std::vector<BrickSignature> all_axes(std::size_t n, std::size_t k)
{
    std::string s = std::string(k, 'I') + std::string(n - k, 'J');
    std::sort(s.begin(), s.end());
    std::vector<BrickSignature> out;
    do {
        out.push_back(BrickSignature::from_axes(s));
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
}

struct Brick {
    BrickSignature signature;
    RelStructure structure;
    CellId min = 0;
};

/// N(min) inside the tensor of the axes, min being the cell built from the
/// I-edges and the middle vertex of each J.
inline Brick standard_brick(const BrickSignature& sig)
{
    RelStructure t = point_complex();
    std::string min_name = "*";
    bool first = true;
    for (char axis : sig.axes) {
        const RelStructure factor = axis == 'I' ? interval_I() : interval_J();
        const std::string centre = axis == 'I' ? "ab" : "m";
        if (first) {
            t = factor;
            min_name = centre;
            first = false;
        } else {
            t = tensor(t, factor);
            min_name = "(" + min_name + "," + centre + ")";
        }
    }
    auto n = neighborhood(t, t.at(min_name));
    n.set_level(Level::Lax);
    CellId min = n.at(min_name);
    return {sig, std::move(n), min};
}

struct Witness {
    BrickSignature signature;
    ComponentMap alpha;
};

struct EmbeddingImage {
    std::vector<CellId> cells; // sorted ids in P
    std::vector<Witness> witnesses;
};

namespace detail {

inline std::size_t require_dim(const RelStructure& p, std::size_t n)
{
    if (!p.base().has_words()) throw std::invalid_argument("blowup needs a cube base");
    if (max_cell_dim(p) > n && !p.empty()) {
        throw std::invalid_argument("structure has cells above dimension " + std::to_string(n));
    }
    return n;
}

/// Bricks by axes word, built once.
class BrickCache {
public:
    const Brick& get(const BrickSignature& sig)
    {
        auto it = bricks_.find(sig.axes);
        if (it == bricks_.end()) it = bricks_.emplace(sig.axes, standard_brick(sig)).first;
        return it->second;
    }

private:
    std::map<std::string, Brick> bricks_;
};

inline std::vector<EmbeddingImage> local_embedding_images(const RelStructure& p, std::size_t n, std::size_t k,
                                                          BrickCache& cache)
{
    std::map<std::vector<CellId>, std::vector<Witness>> images;
    for (const auto& sig : all_axes(n, k)) {
        const auto& brick = cache.get(sig);
        for_each_morphism(brick.structure, p, [&](const ComponentMap& m) {
            if (!is_local_embedding(brick.structure, m)) return true;
            std::set<CellId> image(m.begin(), m.end());
            images[std::vector<CellId>(image.begin(), image.end())].push_back({sig, m});
            return true;
        });
    }
    std::vector<EmbeddingImage> out;
    for (auto& [cells, ws] : images) out.push_back({cells, std::move(ws)});
    std::sort(out.begin(), out.end(), [&](const EmbeddingImage& a, const EmbeddingImage& b) {
        std::vector<std::string> na, nb;
        for (CellId c : a.cells) na.push_back(p.name(c));
        for (CellId c : b.cells) nb.push_back(p.name(c));
        std::sort(na.begin(), na.end());
        std::sort(nb.begin(), nb.end());
        return na < nb;
    });
    return out;
}

} // namespace detail

/// Images S of local embeddings B -> P out of every (n, k) brick, each
/// surjective onto S as a full substructure. Deduplicated by S, all
/// witnesses kept. P is read over the cube category truncated at n.
inline std::vector<EmbeddingImage> surjective_local_embeddings(std::size_t n, std::size_t k, const RelStructure& p)
{
    detail::require_dim(p, n);
    detail::BrickCache cache;
    return detail::local_embedding_images(with_base(p, cube_category(n)), n, k, cache);
}

struct BlowupResult {
    std::size_t n = 0;
    RelStructure base;  // P over the cube category truncated at n
    RelStructure tilde; // P̃
    RelMorphism beta;   // β : P̃ -> P
    std::vector<EmbeddingImage> subsets; // per cell of P̃
    /// Laxity of P̃, reported rather than forced.
    ValidationReport lax_report;
};

inline std::string subset_name(const RelStructure& p, const std::vector<CellId>& cells)
{
    std::vector<std::string> names;
    for (CellId c : cells) names.push_back(p.name(c));
    std::sort(names.begin(), names.end());
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    return out + "}";
}

/// P̃(k): the images S of surjective local embeddings from (n,k) bricks,
/// named "{cells}". (S, S') in P̃(f) when witnesses α : B -> S, α' : B' -> S'
/// and a monic ι : B -> B' satisfy α(min B) ->_f α'(min B') and α' ι = α.
/// β(S) = α(min B). Throws if P is not an ordinary precubical set of
/// dimension at most n.
inline BlowupResult blowup(const RelStructure& input, std::size_t n)
{
    detail::require_dim(input, n);
    auto report = validate_level(input, Level::Functional);
    if (!report.ok()) throw std::invalid_argument("blowup needs an ordinary precubical set");
    auto cube = cube_category(n);
    RelStructure p = with_base(input, cube);

    detail::BrickCache cache;
    BlowupResult out;
    out.n = n;
    std::vector<std::size_t> dim_of;
    RelStructure tilde(cube, Level::Family);
    for (std::size_t k = 0; k <= n; ++k) {
        for (auto& img : detail::local_embedding_images(p, n, k, cache)) {
            tilde.add_cell(Object{k}, subset_name(p, img.cells));
            out.subsets.push_back(std::move(img));
            dim_of.push_back(k);
        }
    }
    ComponentMap beta;
    for (CellId s = 0; s < out.subsets.size(); ++s) {
        const auto& w = out.subsets[s].witnesses.front();
        beta.push_back(w.alpha[cache.get(w.signature).min]);
    }

    std::map<std::pair<std::string, std::string>, std::vector<ComponentMap>> monics;
    auto monics_between = [&](const BrickSignature& a, const BrickSignature& b) -> const std::vector<ComponentMap>& {
        auto key = std::make_pair(a.axes, b.axes);
        auto it = monics.find(key);
        if (it == monics.end()) {
            HomSearchOptions opts;
            opts.injective = true;
            it = monics.emplace(key, all_morphisms(cache.get(a).structure, cache.get(b).structure, opts)).first;
        }
        return it->second;
    };

    for (CellId s = 0; s < out.subsets.size(); ++s) {
        const auto& big = out.subsets[s];
        for (CellId t = 0; t < out.subsets.size(); ++t) {
            const auto& small = out.subsets[t];
            if (!std::includes(small.cells.begin(), small.cells.end(), big.cells.begin(), big.cells.end())) continue;
            for (Arrow f : cube->hom(dim_of[t], dim_of[s])) {
                if (!p.related(f, beta[s], beta[t])) continue;
                bool found = false;
                for (const auto& wa : big.witnesses) {
                    CellId top = wa.alpha[cache.get(wa.signature).min];
                    for (const auto& wb : small.witnesses) {
                        CellId bottom = wb.alpha[cache.get(wb.signature).min];
                        if (!p.related(f, top, bottom)) continue;
                        for (const auto& iota : monics_between(wa.signature, wb.signature)) {
                            bool commutes = true;
                            for (CellId c = 0; c < iota.size() && commutes; ++c) {
                                commutes = wb.alpha[iota[c]] == wa.alpha[c];
                            }
                            if (commutes) {
                                found = true;
                                break;
                            }
                        }
                        if (found) break;
                    }
                    if (found) break;
                }
                if (found) tilde.relate(f, s, t);
            }
        }
    }
    out.lax_report = validate_level(tilde, Level::Lax);
    if (out.lax_report.ok()) tilde.set_level(Level::Lax);
    out.base = p;
    out.tilde = tilde;
    out.beta = RelMorphism(std::move(tilde), std::move(p), std::move(beta));
    return out;
}

struct Completion {
    RelStructure structure; // P̃⁺
    RelMorphism beta;       // β⁺ : P̃⁺ -> P
};

/// P̃⁺ = P̃ ⊔ P. Pairs of P̃ stay; a copy of a cell a of P gets a ->_f b
/// whenever a ->_f β⁺(b) in P and no cell of P̃ over a is f-related to b.
inline Completion blowup_completion(const BlowupResult& r)
{
    const auto& p = r.base;
    const auto& tilde = r.tilde;
    const auto& base = p.base();
    RelStructure plus(p.base_ptr(), Level::Family);
    ComponentMap beta;
    for (CellId s = 0; s < tilde.size(); ++s) {
        plus.add_cell(tilde.object(s), tilde.name(s));
        beta.push_back(r.beta(s));
    }
    std::vector<CellId> copy(p.size());
    for (CellId c = 0; c < p.size(); ++c) {
        copy[c] = plus.add_cell(p.object(c), p.name(c));
        beta.push_back(c);
    }
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : tilde.relation(f)) plus.relate(f, x, y);
    }
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [a, below] : p.relation(f)) {
            for (CellId b = 0; b < plus.size(); ++b) {
                if (beta[b] != below) continue;
                bool lifted = false;
                if (b < tilde.size()) {
                    for (CellId a2 : tilde.cofaces(f, b)) lifted = lifted || r.beta(a2) == a;
                }
                if (!lifted) plus.relate(f, copy[a], b);
            }
        }
    }
    if (validate_level(plus, Level::Lax).ok()) plus.set_level(Level::Lax);
    auto src = std::make_shared<const RelStructure>(plus);
    return {std::move(plus), RelMorphism(std::move(src), std::make_shared<const RelStructure>(p), std::move(beta))};
}

} // namespace relpsh
