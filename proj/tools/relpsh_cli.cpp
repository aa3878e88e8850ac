#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relpsh/relpsh.hpp"

namespace fs = std::filesystem;
using namespace relpsh;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
    std::vector<std::string> lines;
};

struct Output {
    std::string dir;
    std::string file;

    void emit(const std::string& default_name, const std::string& text) const
    {
        if (dir.empty() && file.empty()) {
            std::cout << text;
            return;
        }
        fs::path path = file.empty() ? fs::path(default_name) : fs::path(file);
        if (!dir.empty() && path.is_relative()) path = fs::path(dir) / path;
        write_text(path, text);
    }
};

std::vector<std::string> violation_lines(const RelStructure& p, const ValidationReport& r)
{
    std::vector<std::string> out;
    for (const auto& v : r.violations) out.push_back(format_violation(p, v));
    return out;
}

[[noreturn]] void reject(const std::string& what, std::vector<std::string> lines)
{
    InvalidInput e(what);
    e.lines = std::move(lines);
    throw e;
}

/// Reads a structure and checks it against its declared level.
RelStructure load(const std::string& path)
{
    auto p = read_structure(path);
    auto report = validate_level(p, p.level());
    if (!report.ok()) reject("'" + path + "' violates its declared level " + to_string(p.level()), violation_lines(p, report));
    return p;
}

RelMorphism load_morphism(const std::string& path)
{
    auto a = morphism_from_json(read_json_file(path));
    for (const RelStructure* s : {&a.source(), &a.target()}) {
        auto report = validate_level(*s, s->level());
        if (!report.ok()) reject("'" + path + "' contains a structure violating its level", violation_lines(*s, report));
    }
    auto check = is_morphism(a);
    if (!check.ok()) {
        std::vector<std::string> lines;
        for (const auto& f : check.failures) {
            lines.push_back("not-preserved f=" + arrow_label(a.source().base(), f.arrow) + " x=" + a.source().name(f.big) +
                            " y=" + a.source().name(f.small));
        }
        reject("'" + path + "' is not a morphism", lines);
    }
    return a;
}

RelStructure require_level(const RelStructure& p, Level level, const std::string& verb)
{
    auto report = validate_level(p, level);
    if (!report.ok()) reject(verb + " needs a " + to_string(level) + " structure", violation_lines(p, report));
    return p;
}

std::string structure_dot(const RelStructure& p)
{
    std::ostringstream out;
    out << "digraph structure {\n";
    for (CellId c = 0; c < p.size(); ++c) {
        out << "  \"" << p.name(c) << "\" [label=\"" << p.name(c) << "\\n" << p.base().object_name(p.object(c)) << "\"];\n";
    }
    for (Arrow f = 0; f < p.base().arrow_count(); ++f) {
        if (p.base().is_identity(f)) continue;
        for (const auto& [x, y] : p.relation(f)) {
            out << "  \"" << p.name(x) << "\" -> \"" << p.name(y) << "\" [label=\"" << p.base().arrow_name(f) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

json info_json(const RelStructure& p)
{
    json census_j = json::object();
    auto counts = census(p);
    for (Object o = 0; o < counts.size(); ++o) census_j[p.base().object_name(o)] = counts[o];
    json levels = json::object();
    for (Level l : {Level::Family, Level::Lax, Level::Partial, Level::Functional}) {
        levels[to_string(l)] = validate_level(p, l).ok();
    }
    return {{"declared_level", to_string(p.level())},
            {"strongest_level", to_string(strongest_level(p))},
            {"levels", levels},
            {"cells", p.size()},
            {"relations", p.relation_count()},
            {"census", census_j}};
}

std::vector<Rational> parse_point(const std::string& text)
{
    std::vector<Rational> out;
    if (text.empty()) return out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(parse_rational(part));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Relational presheaves over cube-like categories"};
    app.require_subcommand(1);
    Output output;
    app.add_option("--out-dir", output.dir, "Write results into this directory instead of stdout");
    app.add_option("-o,--output", output.file, "Output file name");

    std::string input;
    auto add_input = [&](CLI::App* sub) { sub->add_option("input", input, "Input document")->required(); };

    auto* validate_cmd = app.add_subcommand("validate", "Check a structure against a level");
    add_input(validate_cmd);
    std::string level_text;
    std::string reading_text = "face";
    validate_cmd->add_option("--level", level_text, "family, lax, partial or functional (default: declared)");
    validate_cmd->add_option("--reading", reading_text, "Partial reading: face or coface")
        ->check(CLI::IsMember({"face", "coface"}));

    auto* info_cmd = app.add_subcommand("info", "Summarize a structure");
    add_input(info_cmd);
    auto* complete_cmd = app.add_subcommand("complete", "Close a family under composition");
    add_input(complete_cmd);
    auto* reflect_cmd = app.add_subcommand("reflect", "Left adjoint to the inclusion of presheaves");
    add_input(reflect_cmd);
    auto* coreflect_cmd = app.add_subcommand("coreflect", "Right adjoint to the inclusion of presheaves");
    add_input(coreflect_cmd);
    auto* reflect_partial_cmd = app.add_subcommand("reflect-partial", "Reflect into partial structures");
    add_input(reflect_partial_cmd);

    auto* colimit_cmd = app.add_subcommand("colimit", "Colimit of a finite diagram");
    std::string diagram_path;
    colimit_cmd->add_option("--diagram", diagram_path, "Diagram document")->required();

    auto* subdivide_cmd = app.add_subcommand("subdivide", "Barycentric subdivision");
    add_input(subdivide_cmd);

    auto* realize_cmd = app.add_subcommand("realize", "Geometric realization as a cell complex");
    add_input(realize_cmd);
    std::string mode_text = "standard";
    std::string format_text = "json";
    realize_cmd->add_option("--mode", mode_text, "standard or sequential")
        ->check(CLI::IsMember({"standard", "sequential"}));
    realize_cmd->add_option("--format", format_text, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    auto* neighborhoods_cmd = app.add_subcommand("neighborhoods", "N+(c) and N(c) of a cell");
    add_input(neighborhoods_cmd);
    std::string cell_name;
    neighborhoods_cmd->add_option("--cell", cell_name, "Cell name")->required();

    auto* basis_cmd = app.add_subcommand("basis", "Basis neighborhoods of a point in an open cube");
    add_input(basis_cmd);
    std::string point_text;
    basis_cmd->add_option("--cell", cell_name, "Cell name")->required();
    basis_cmd->add_option("--point", point_text, "Comma separated rational coordinates");

    auto* blowup_cmd = app.add_subcommand("blowup", "Blow-up of a precubical set");
    add_input(blowup_cmd);
    std::size_t dim = 0;
    bool complete_flag = false;
    blowup_cmd->add_option("--dim", dim, "Ambient dimension n")->required();
    blowup_cmd->add_flag("--complete", complete_flag, "Emit the completion and its projection");

    auto* psh2fib_cmd = app.add_subcommand("psh2fib", "Elements presheaf to discrete fibration");
    add_input(psh2fib_cmd);
    auto* fib2psh_cmd = app.add_subcommand("fib2psh", "Discrete fibration to elements presheaf");
    add_input(fib2psh_cmd);
    auto* check_fib_cmd = app.add_subcommand("check-fibration", "Check the discrete fibration property");
    add_input(check_fib_cmd);
    auto* check_le_cmd = app.add_subcommand("check-local-embedding", "Check the local embedding property");
    add_input(check_le_cmd);

    auto* export_cmd = app.add_subcommand("export", "Re-emit a structure");
    add_input(export_cmd);
    std::string export_format = "json";
    export_cmd->add_option("--format", export_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kIoError;
    }

    try {
        if (validate_cmd->parsed()) {
            auto p = read_structure(input);
            Level level = level_text.empty() ? p.level() : parse_level(level_text);
            auto reading = reading_text == "coface" ? PartialReading::CofaceFunctional : PartialReading::FaceFunctional;
            auto report = validate_level(p, level, reading);
            if (!report.ok()) {
                for (const auto& line : violation_lines(p, report)) std::cout << line << "\n";
                return kInvalid;
            }
            std::cout << "ok " << to_string(level) << "\n";
        } else if (info_cmd->parsed()) {
            output.emit("info.json", dump(info_json(read_structure(input))));
        } else if (complete_cmd->parsed()) {
            output.emit("complete.json", dump(to_json(close_composition(load(input)))));
        } else if (reflect_cmd->parsed()) {
            auto p = require_level(load(input), Level::Lax, "reflect");
            output.emit("reflect.json", dump(to_json(reflect_presheaf(p).result)));
        } else if (coreflect_cmd->parsed()) {
            auto p = require_level(load(input), Level::Lax, "coreflect");
            output.emit("coreflect.json", dump(to_json(coreflect_presheaf(p).result)));
        } else if (reflect_partial_cmd->parsed()) {
            output.emit("reflect-partial.json", dump(to_json(reflect_partial(load(input)).result)));
        } else if (colimit_cmd->parsed()) {
            auto [d, level] = diagram_from_json(read_json_file(diagram_path), fs::path(diagram_path).parent_path());
            for (const auto& o : d.objects) {
                auto report = validate_level(o, level);
                if (!report.ok()) reject("diagram object below the colimit level", violation_lines(o, report));
            }
            output.emit("colimit.json", dump(to_json(finite_colimit(d, level).structure)));
        } else if (subdivide_cmd->parsed()) {
            auto p = require_level(load(input), Level::Lax, "subdivide");
            output.emit("subdivide.json", dump(to_json(subdivide(p))));
        } else if (realize_cmd->parsed()) {
            auto p = require_level(load(input), Level::Lax, "realize");
            auto k = geometric_realization(p, parse_mode(mode_text));
            if (format_text == "dot") output.emit("realize.dot", to_dot(k));
            else output.emit("realize.json", dump(to_json(k)));
        } else if (neighborhoods_cmd->parsed()) {
            auto p = load(input);
            CellId c = p.at(cell_name);
            json positive = json::array();
            for (const auto& [a, f] : positive_neighborhood(p, c)) {
                positive.push_back({{"cell", p.name(a)}, {"morphism", p.base().arrow_name(f)}});
            }
            output.emit("neighborhoods.json",
                        dump({{"cell", cell_name}, {"positive", positive}, {"neighborhood", to_json(neighborhood(p, c))}}));
        } else if (basis_cmd->parsed()) {
            auto p = load(input);
            auto d = basis_neighborhood(p, p.at(cell_name), parse_point(point_text));
            output.emit("basis.json", dump(to_json(p, d)));
        } else if (blowup_cmd->parsed()) {
            auto p = require_level(load(input), Level::Functional, "blowup");
            auto r = blowup(p, dim);
            if (!r.lax_report.ok()) {
                std::cerr << "note: the blow-up is not lax\n";
                for (const auto& line : violation_lines(r.tilde, r.lax_report)) std::cerr << "  " << line << "\n";
            }
            if (complete_flag) output.emit("blowup-complete.json", dump(to_json(blowup_completion(r).beta)));
            else output.emit("blowup.json", dump(to_json(r.beta)));
        } else if (psh2fib_cmd->parsed()) {
            auto F = elements_presheaf_from_json(read_json_file(input));
            auto problems = check_elements_presheaf(F);
            if (!problems.empty()) reject("not an elements presheaf", problems);
            output.emit("psh2fib.json", dump(to_json(phi(F))));
        } else if (fib2psh_cmd->parsed()) {
            auto a = load_morphism(input);
            auto check = is_discrete_fibration(a);
            if (!check.ok()) reject("not a discrete fibration", {});
            output.emit("fib2psh.json", dump(to_json(psi(a))));
        } else if (check_fib_cmd->parsed()) {
            auto a = load_morphism(input);
            auto check = is_discrete_fibration(a);
            if (!check.ok()) {
                for (const auto& f : check.failures) {
                    std::cout << "lift-count f=" << arrow_label(a.target().base(), f.arrow)
                              << " x=" << a.target().name(f.x) << " y=" << a.target().name(f.y)
                              << " over=" << a.source().name(f.upstairs) << " lifts=" << f.lifts << "\n";
                }
                return kInvalid;
            }
            std::cout << "ok discrete fibration\n";
        } else if (check_le_cmd->parsed()) {
            auto a = load_morphism(input);
            if (!is_local_embedding(a)) {
                std::cout << "not a local embedding\n";
                return kInvalid;
            }
            std::cout << "ok local embedding\n";
        } else if (export_cmd->parsed()) {
            auto p = load(input);
            if (export_format == "dot") output.emit("export.dot", structure_dot(p));
            else output.emit("export.json", dump(to_json(p)));
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& line : e.lines) std::cout << line << "\n";
        return kInvalid;
    } catch (const DocumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoError;
    }
    return kOk;
}
