#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>

#include "toric/basis.hpp"
#include "toric/document.hpp"
#include "toric/patch.hpp"
#include "toric/solver.hpp"

namespace toric {

namespace detail {

/// Locale-independent double formatting. precision < 0 gives the shortest
/// round-trip representation.
inline std::string format_double(double value, int precision = -1) {
    char buf[64];
    const auto result =
        precision < 0 ? std::to_chars(buf, buf + sizeof(buf), value)
                      : std::to_chars(buf, buf + sizeof(buf), value,
                                      std::chars_format::general, precision);
    return std::string(buf, result.ptr);
}

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

/// One line per basis function, keys in index order, terms in canonical
/// (a,b) order with exact "num/den" coefficients.
inline void write_basis_dump(const BasisFunctionSet& basis, std::ostream& out) {
    out << "# depth " << basis.depth() << ", normalization " << normalization_tag(basis.normalization())
        << ", " << basis.functions().size() << " functions\n";
    out << "# edges:";
    for (const auto& e : basis.domain().edges())
        out << " (" << e.alpha << "," << e.beta << "," << e.gamma << ")";
    out << "\n";
    for (const auto& [pt, fn] : basis.functions())
        out << "beta[" << to_string(pt) << "] = " << fn.to_string() << "\n";
}

/// Constraint table as CSV: one row per inner point, one column per boundary
/// point, coefficients with 10 significant digits.
inline void write_constraint_csv(const ConstraintTable& table, std::ostream& out) {
    out << "inner";
    for (const auto& pt : table.boundary_keys) out << "," << detail::csv_quote(to_string(pt));
    out << "\n";
    for (std::size_t r = 0; r < table.inner_keys.size(); ++r) {
        out << detail::csv_quote(to_string(table.inner_keys[r]));
        for (const double c : table.coefficients[r]) out << "," << detail::format_double(c, 10);
        out << "\n";
    }
}

/// Wavefront OBJ: v/vt lines per vertex, f lines with 1-based v/vt indices,
/// CCW winding inherited from the mesh.
inline void write_obj(const TriangleMesh& mesh, std::ostream& out) {
    for (const auto& v : mesh.vertices)
        out << "v " << detail::format_double(v.position.x) << " "
            << detail::format_double(v.position.y) << " " << detail::format_double(v.position.z)
            << "\n";
    for (const auto& v : mesh.vertices)
        out << "vt " << detail::format_double(v.u) << " " << detail::format_double(v.v) << "\n";
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << "/" << t[0] + 1 << " " << t[1] + 1 << "/" << t[1] + 1 << " "
            << t[2] + 1 << "/" << t[2] + 1 << "\n";
}

inline void write_energy_report(const ToricPatch& patch, int quadrature_order, std::ostream& out) {
    out << "energy quasi-harmonic = "
        << detail::format_double(energy(patch, EnergyFunctional::quasi_harmonic)) << "\n";
    out << "energy dirichlet      = "
        << detail::format_double(energy(patch, EnergyFunctional::dirichlet)) << "\n";
    out << "area                  = " << detail::format_double(area(patch, quadrature_order))
        << "\n";
}

inline void write_comparison_report(const FunctionalComparison& cmp, std::ostream& out) {
    const auto row = [&](const std::string& label, double qh, double dir) {
        out << label << detail::format_double(qh) << "  |  " << detail::format_double(dir) << "\n";
    };
    out << "                        quasi-harmonic solve  |  dirichlet solve\n";
    row("energy quasi-harmonic   ", cmp.quasi_harmonic.energy_quasi_harmonic,
        cmp.dirichlet.energy_quasi_harmonic);
    row("energy dirichlet        ", cmp.quasi_harmonic.energy_dirichlet,
        cmp.dirichlet.energy_dirichlet);
    row("area                    ", cmp.quasi_harmonic.area, cmp.dirichlet.area);
    row("gradient residual       ", cmp.quasi_harmonic.residual, cmp.dirichlet.residual);
    const std::size_t samples = std::min(cmp.quasi_harmonic.curvature_samples.size(),
                                         cmp.dirichlet.curvature_samples.size());
    for (std::size_t k = 0; k < samples; ++k) {
        const auto& a = cmp.quasi_harmonic.curvature_samples[k];
        const auto& b = cmp.dirichlet.curvature_samples[k];
        out << "H(" << detail::format_double(a.u) << "," << detail::format_double(a.v) << ")"
            << "  " << detail::format_double(a.mean_curvature) << "  |  "
            << detail::format_double(b.mean_curvature) << "\n";
    }
}

}  // namespace toric
