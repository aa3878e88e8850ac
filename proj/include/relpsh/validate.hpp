#pragma once

// Axiom checks for the four levels. Reports are lists of violations, one per
// offending instance; nothing here throws on bad data.

#include <sstream>
#include <string>
#include <vector>

#include "relpsh/structure.hpp"

namespace relpsh {

/// Which transpose of the functionality axiom the partial level checks.
enum class PartialReading {
    FaceFunctional,   // R_f(x,y) and R_f(x,z) imply y = z
    CofaceFunctional, // R_f(x,z) and R_f(y,z) imply x = y
};

struct Violation {
    enum class Kind { MissingIdentity, MissingComposite, FaceNotUnique, CofaceNotUnique, MissingFace };

    Kind kind;
    std::vector<Arrow> arrows;
    std::vector<CellId> cells;
};

inline std::string to_string(Violation::Kind k)
{
    switch (k) {
    case Violation::Kind::MissingIdentity: return "missing-identity";
    case Violation::Kind::MissingComposite: return "missing-composite";
    case Violation::Kind::FaceNotUnique: return "face-not-unique";
    case Violation::Kind::CofaceNotUnique: return "coface-not-unique";
    case Violation::Kind::MissingFace: return "missing-face";
    }
    return "unknown";
}

struct ValidationReport {
    Level level = Level::Family;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
};

/// One line per violation: kind, then morphisms and cells as key=value
/// fields. Morphism names are quoted since the identity of 0 is "".
inline std::string format_violation(const RelStructure& p, const Violation& v)
{
    std::ostringstream out;
    out << to_string(v.kind);
    for (std::size_t i = 0; i < v.arrows.size(); ++i) {
        out << " f" << i << "=" << arrow_label(p.base(), v.arrows[i]);
    }
    for (std::size_t i = 0; i < v.cells.size(); ++i) {
        out << " x" << i << "=" << p.name(v.cells[i]);
    }
    return out.str();
}

namespace detail {

inline void check_lax(const RelStructure& p, std::vector<Violation>& out)
{
    const auto& base = p.base();
    for (CellId x = 0; x < p.size(); ++x) {
        Arrow id = base.identity(p.object(x));
        if (!p.related(id, x, x)) out.push_back({Violation::Kind::MissingIdentity, {id}, {x}});
    }
    // x ->_f y and y ->_g z must give x ->_{f o g} z
    for (Arrow f = 0; f < base.arrow_count(); ++f) {
        for (const auto& [x, y] : p.relation(f)) {
            for (const auto& inc : p.faces(y)) {
                Arrow fg = base.compose(f, inc.arrow);
                if (!p.related(fg, x, inc.cell)) {
                    out.push_back({Violation::Kind::MissingComposite, {f, inc.arrow, fg}, {x, y, inc.cell}});
                }
            }
        }
    }
}

inline void check_face_functional(const RelStructure& p, std::vector<Violation>& out)
{
    for (CellId x = 0; x < p.size(); ++x) {
        const auto& faces = p.faces(x);
        for (std::size_t i = 0; i < faces.size(); ++i) {
            for (std::size_t j = i + 1; j < faces.size(); ++j) {
                if (faces[i].arrow == faces[j].arrow) {
                    out.push_back({Violation::Kind::FaceNotUnique, {faces[i].arrow}, {x, faces[i].cell, faces[j].cell}});
                }
            }
        }
    }
}

inline void check_coface_functional(const RelStructure& p, std::vector<Violation>& out)
{
    for (CellId z = 0; z < p.size(); ++z) {
        const auto& cofaces = p.cofaces(z);
        for (std::size_t i = 0; i < cofaces.size(); ++i) {
            for (std::size_t j = i + 1; j < cofaces.size(); ++j) {
                if (cofaces[i].arrow == cofaces[j].arrow) {
                    out.push_back(
                        {Violation::Kind::CofaceNotUnique, {cofaces[i].arrow}, {cofaces[i].cell, cofaces[j].cell, z}});
                }
            }
        }
    }
}

inline void check_total(const RelStructure& p, std::vector<Violation>& out)
{
    const auto& base = p.base();
    for (CellId x = 0; x < p.size(); ++x) {
        for (Arrow f : base.into(p.object(x))) {
            if (p.faces(f, x).empty()) out.push_back({Violation::Kind::MissingFace, {f}, {x}});
        }
    }
}

} // namespace detail

/// Checks exactly the axioms of `level`: nothing for family; identities and
/// composites for lax; plus functionality for partial; plus single-valued
/// total face maps for functional.
inline ValidationReport validate_level(const RelStructure& p, Level level,
                                       PartialReading reading = PartialReading::FaceFunctional)
{
    ValidationReport report;
    report.level = level;
    if (level == Level::Family) return report;
    detail::check_lax(p, report.violations);
    if (level == Level::Lax) return report;
    if (level == Level::Partial && reading == PartialReading::CofaceFunctional) {
        detail::check_coface_functional(p, report.violations);
    } else {
        detail::check_face_functional(p, report.violations);
    }
    if (level == Level::Functional) detail::check_total(p, report.violations);
    return report;
}

/// Validation at the structure's own declared level.
inline ValidationReport validate(const RelStructure& p) { return validate_level(p, p.level()); }

/// The strongest level whose axioms hold.
inline Level strongest_level(const RelStructure& p)
{
    if (!validate_level(p, Level::Lax).ok()) return Level::Family;
    if (!validate_level(p, Level::Partial).ok()) return Level::Lax;
    if (!validate_level(p, Level::Functional).ok()) return Level::Partial;
    return Level::Functional;
}

} // namespace relpsh
