#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "toric/document.hpp"
#include "toric/errors.hpp"
#include "toric/exporters.hpp"

namespace toric {

namespace detail {

inline void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

/// Patch with inner values resolved: document-provided if complete,
/// otherwise solved under the document's functional.
inline ToricPatch resolved_patch(const PatchDocument& doc) {
    const AssembledPatch assembled = build_patch(doc);
    if (assembled.inner_from_document || assembled.patch.inner_keys().empty())
        return assembled.patch;
    return solve_inner(assembled.patch, doc.functional, doc.weight_mode, doc.exact_solve).patch;
}

}  // namespace detail

/// Command-line entry point. Returns the process exit code:
/// 0 success, 2 validation error, 3 singular system, 4 i/o error.
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"toric Bezier patches over lattice polygons: bases, quasi-harmonic solves, "
                 "meshes, and energy reports"};
    app.require_subcommand(1);

    std::string doc_path, out_path;
    int subdivisions_override = 0;

    const auto add_doc = [&](CLI::App* cmd) {
        cmd->add_option("document", doc_path, "PatchDocument JSON file")->required();
        cmd->add_option("-o,--output", out_path, "output file (default: stdout)");
        return cmd;
    };

    CLI::App* cmd_basis =
        add_doc(app.add_subcommand("basis", "write the basis polynomials in canonical text form"));
    CLI::App* cmd_constraints =
        add_doc(app.add_subcommand("constraints", "write the inner-point constraint table as CSV"));
    CLI::App* cmd_solve =
        add_doc(app.add_subcommand("solve", "solve inner mass-points; write solved document"));
    CLI::App* cmd_mesh = add_doc(app.add_subcommand("mesh", "tessellate and write a Wavefront OBJ"));
    CLI::App* cmd_energy =
        add_doc(app.add_subcommand("energy", "print both functional values and the area"));
    CLI::App* cmd_compare = add_doc(
        app.add_subcommand("compare", "solve under both functionals and report side by side"));
    cmd_mesh->add_option("--subdivisions", subdivisions_override,
                         "override the document's mesh subdivision count")
        ->check(CLI::PositiveNumber);

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const PatchDocument doc = load_document(doc_path);
        std::ostringstream text;

        if (cmd_basis->parsed()) {
            const auto basis =
                depth_basis(toric_basis(convex_hull(doc.points), doc.normalization), doc.depth);
            write_basis_dump(basis, text);
        } else if (cmd_constraints->parsed()) {
            const auto assembled = build_patch(doc);
            const auto result =
                solve_inner(assembled.patch, doc.functional, doc.weight_mode, doc.exact_solve);
            write_constraint_csv(result.table, text);
        } else if (cmd_solve->parsed()) {
            const auto start = std::chrono::steady_clock::now();
            const auto assembled = build_patch(doc);
            const GramMatrix g = gram(assembled.patch.basis(), doc.functional);
            const double before = energy(assembled.patch, g, doc.weight_mode);
            const auto result =
                solve_inner(assembled.patch, doc.functional, doc.weight_mode, doc.exact_solve);
            RunReport report{normalization_tag(doc.normalization),
                             to_string(doc.functional),
                             to_string(doc.weight_mode),
                             before,
                             energy(result.patch, g, doc.weight_mode),
                             result.residual,
                             result.condition,
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                 .count()};
            text << document_to_json(doc, &result.patch, &report).dump(2) << "\n";
        } else if (cmd_mesh->parsed()) {
            const ToricPatch patch = detail::resolved_patch(doc);
            const int subdivisions =
                subdivisions_override > 0 ? subdivisions_override : doc.subdivisions;
            write_obj(tessellate(patch, subdivisions), text);
        } else if (cmd_energy->parsed()) {
            write_energy_report(detail::resolved_patch(doc), doc.quadrature_order, text);
        } else if (cmd_compare->parsed()) {
            const auto assembled = build_patch(doc);
            write_comparison_report(
                compare_functionals(assembled.patch, doc.weight_mode, doc.quadrature_order), text);
        }

        detail::write_output(text.str(), out_path);
        return 0;
    } catch (const SingularSystem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_cli(int argc, char** argv) {
    return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace toric
