#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/basis.hpp"
#include "toric/errors.hpp"
#include "toric/integrate.hpp"
#include "toric/patch.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"

namespace toric {

enum class EnergyFunctional { quasi_harmonic, dirichlet };

inline std::string to_string(EnergyFunctional f) {
    return f == EnergyFunctional::quasi_harmonic ? "quasi-harmonic" : "dirichlet";
}

enum class WeightMode { fixed_weights_points_only, full_mass_points };

inline std::string to_string(WeightMode m) {
    return m == WeightMode::fixed_weights_points_only ? "fixed_weights_points_only"
                                                      : "full_mass_points";
}

/// Exact Gram matrix of a differential operator applied to the basis:
/// quasi-harmonic: entry(l,g) = ∬ Δβ_l Δβ_g; Dirichlet:
/// entry(l,g) = ∬ (∂u β_l ∂u β_g + ∂v β_l ∂v β_g). Symmetric PSD.
class GramMatrix {
public:
    GramMatrix(std::vector<LatticePoint> keys, std::vector<Rational> entries)
        : keys_(std::move(keys)), entries_(std::move(entries)) {}

    const std::vector<LatticePoint>& keys() const { return keys_; }
    std::size_t size() const { return keys_.size(); }

    const Rational& entry(std::size_t row, std::size_t col) const {
        return entries_[row * keys_.size() + col];
    }
    const Rational& entry(LatticePoint row, LatticePoint col) const {
        return entry(index_of(row), index_of(col));
    }

    std::size_t index_of(LatticePoint key) const {
        const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
        if (it == keys_.end() || *it != key)
            throw Error("Gram matrix has no row for (" + to_string(key) + ")");
        return static_cast<std::size_t>(it - keys_.begin());
    }

    Eigen::MatrixXd to_dense_double() const {
        const auto n = static_cast<Eigen::Index>(keys_.size());
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                m(r, c) = to_double(entry(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
        return m;
    }

private:
    std::vector<LatticePoint> keys_;   // sorted
    std::vector<Rational> entries_;    // dense row-major
};

/// Assembles the exact Gram matrix of the chosen functional over the basis
/// index hull. Entries are exact rationals; floating point enters only at
/// the linear solve.
inline GramMatrix gram(const BasisFunctionSet& basis, EnergyFunctional functional) {
    std::vector<LatticePoint> keys = basis.keys();  // map order: already sorted
    const std::size_t n = keys.size();

    // operator images of each basis function
    std::vector<std::vector<Poly2>> images(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Poly2& beta = basis.at(keys[k]);
        if (functional == EnergyFunctional::quasi_harmonic) {
            images[k] = {beta.derivative(Var::u, 2) + beta.derivative(Var::v, 2)};
        } else {
            images[k] = {beta.derivative(Var::u), beta.derivative(Var::v)};
        }
    }

    const PolygonIntegrator integrator(basis.domain());
    std::vector<Rational> entries(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            Rational value = 0;
            for (std::size_t part = 0; part < images[r].size(); ++part)
                value += integrator.integrate(images[r][part] * images[c][part]);
            entries[r * n + c] = value;
            entries[c * n + r] = std::move(value);
        }
    }
    return GramMatrix(std::move(keys), std::move(entries));
}

/// Per inner point, the affine expression giving it in terms of boundary
/// points after jointly eliminating all inner unknowns. In
/// fixed_weights_points_only mode rows relate control points p; in
/// full_mass_points mode they relate whole mass-points.
struct ConstraintTable {
    std::vector<LatticePoint> inner_keys;
    std::vector<LatticePoint> boundary_keys;
    std::vector<std::vector<double>> coefficients;  // [inner][boundary]

    bool empty() const { return inner_keys.empty(); }

    double coefficient(LatticePoint inner, LatticePoint boundary) const {
        const auto ri = std::find(inner_keys.begin(), inner_keys.end(), inner);
        const auto ci = std::find(boundary_keys.begin(), boundary_keys.end(), boundary);
        if (ri == inner_keys.end() || ci == boundary_keys.end())
            throw Error("constraint table lookup outside its key sets");
        return coefficients[static_cast<std::size_t>(ri - inner_keys.begin())]
                           [static_cast<std::size_t>(ci - boundary_keys.begin())];
    }
};

struct SolveResult {
    ToricPatch patch;
    ConstraintTable table;
    double residual = 0;   // relative max-norm of the inner gradient rows
    double condition = 0;  // SVD condition estimate of G_II
};

inline constexpr double kSingularConditionLimit = 1e14;

namespace detail {

/// Exact Gaussian elimination solving A X = B over the rationals.
/// Returns nullopt if A is singular.
inline std::optional<std::vector<std::vector<Rational>>> solve_exact(
    std::vector<std::vector<Rational>> a, std::vector<std::vector<Rational>> b) {
    const std::size_t n = a.size();
    const std::size_t m = b.empty() ? 0 : b[0].size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            for (std::size_t k = 0; k < m; ++k) b[row][k] -= factor * b[col][k];
        }
    }
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t k = 0; k < m; ++k) b[row][k] /= a[row][row];
    return b;
}

inline double condition_estimate(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 1.0;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double smax = svd.singularValues()(0);
    if (smin <= 0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

inline int free_coordinate_count(WeightMode mode) {
    return mode == WeightMode::fixed_weights_points_only ? 3 : 4;
}

/// Relative max-norm of the gradient rows at the inner points: each row's
/// |sum_g G(l,g) M_g,a| is scaled by the largest magnitude among its terms.
inline double inner_gradient_residual(const GramMatrix& g, const ToricPatch& patch,
                                      WeightMode mode) {
    double worst = 0;
    const int coords = free_coordinate_count(mode);
    for (const auto& inner : patch.inner_keys()) {
        const std::size_t row = g.index_of(inner);
        for (int a = 0; a < coords; ++a) {
            double sum = 0, scale = 0;
            for (std::size_t col = 0; col < g.size(); ++col) {
                const double term =
                    to_double(g.entry(row, col)) * patch.mass_point(g.keys()[col]).coordinate(a);
                sum += term;
                scale = std::max(scale, std::abs(term));
            }
            if (scale > 0) worst = std::max(worst, std::abs(sum) / scale);
        }
    }
    return worst;
}

}  // namespace detail

/// Energy of the patch under the functional: the quadratic form M^T G M
/// summed over the free mass-point coordinates (spatial only in fixed-weights
/// mode, where the weight coordinate is constant data).
inline double energy(const ToricPatch& patch, const GramMatrix& g,
                     WeightMode mode = WeightMode::fixed_weights_points_only) {
    const std::size_t n = g.size();
    const int coords = detail::free_coordinate_count(mode);
    std::vector<MassPoint> m(n);
    for (std::size_t k = 0; k < n; ++k) m[k] = patch.mass_point(g.keys()[k]);
    double total = 0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double grc = to_double(g.entry(r, c));
            if (grc == 0) continue;
            for (int a = 0; a < coords; ++a) total += grc * m[r].coordinate(a) * m[c].coordinate(a);
        }
    }
    return total;
}

inline double energy(const ToricPatch& patch, EnergyFunctional functional,
                     WeightMode mode = WeightMode::fixed_weights_points_only) {
    return energy(patch, gram(patch.basis(), functional), mode);
}

inline double gradient_residual(const ToricPatch& patch, const GramMatrix& g,
                                WeightMode mode = WeightMode::fixed_weights_points_only) {
    return detail::inner_gradient_residual(g, patch, mode);
}

inline double gradient_residual(const ToricPatch& patch, EnergyFunctional functional,
                                WeightMode mode = WeightMode::fixed_weights_points_only) {
    return detail::inner_gradient_residual(gram(patch.basis(), functional), patch, mode);
}

/// Solves the vanishing-gradient system for the inner mass-points:
/// G_II X_I = -G_IB X_B per free coordinate, jointly over all inner
/// unknowns. Returns the solved patch, the constraint table (inner points as
/// affine combinations of boundary points), the gradient residual, and the
/// condition estimate of G_II. Throws SingularSystem when G_II is not
/// reliably invertible.
inline SolveResult solve_inner(const ToricPatch& patch, EnergyFunctional functional,
                               WeightMode mode = WeightMode::fixed_weights_points_only,
                               bool exact_elimination = false) {
    const GramMatrix g = gram(patch.basis(), functional);
    const auto& inner = patch.inner_keys();
    const auto& boundary = patch.boundary_keys();

    if (inner.empty()) return {patch, ConstraintTable{{}, boundary, {}}, 0.0, 1.0};

    const auto ni = static_cast<Eigen::Index>(inner.size());
    const auto nb = static_cast<Eigen::Index>(boundary.size());

    Eigen::MatrixXd gii(ni, ni), gib(ni, nb);
    for (Eigen::Index r = 0; r < ni; ++r) {
        const std::size_t row = g.index_of(inner[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < ni; ++c)
            gii(r, c) = to_double(g.entry(row, g.index_of(inner[static_cast<std::size_t>(c)])));
        for (Eigen::Index c = 0; c < nb; ++c)
            gib(r, c) = to_double(g.entry(row, g.index_of(boundary[static_cast<std::size_t>(c)])));
    }

    const double condition = detail::condition_estimate(gii);
    if (!(condition < kSingularConditionLimit))
        throw SingularSystem("inner Gram block condition estimate " + std::to_string(condition));

    // elimination matrix E = -G_II^{-1} G_IB, rows indexed by inner points
    Eigen::MatrixXd elimination(ni, nb);
    if (exact_elimination) {
        std::vector<std::vector<Rational>> a(inner.size(), std::vector<Rational>(inner.size()));
        std::vector<std::vector<Rational>> b(inner.size(), std::vector<Rational>(boundary.size()));
        for (std::size_t r = 0; r < inner.size(); ++r) {
            const std::size_t row = g.index_of(inner[r]);
            for (std::size_t c = 0; c < inner.size(); ++c)
                a[r][c] = g.entry(row, g.index_of(inner[c]));
            for (std::size_t c = 0; c < boundary.size(); ++c)
                b[r][c] = -g.entry(row, g.index_of(boundary[c]));
        }
        const auto solved = detail::solve_exact(std::move(a), std::move(b));
        if (!solved) throw SingularSystem("inner Gram block is exactly singular");
        for (Eigen::Index r = 0; r < ni; ++r)
            for (Eigen::Index c = 0; c < nb; ++c)
                elimination(r, c) =
                    to_double((*solved)[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    } else {
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(gii);
        elimination = lu.solve(-gib);
    }

    // apply to the free coordinates of the boundary mass-points
    const int coords = detail::free_coordinate_count(mode);
    Eigen::MatrixXd boundary_coords(nb, 4);
    for (Eigen::Index c = 0; c < nb; ++c) {
        const MassPoint& m = patch.mass_point(boundary[static_cast<std::size_t>(c)]);
        boundary_coords.row(c) << m.wx, m.wy, m.wz, m.w;
    }
    const Eigen::MatrixXd solved_coords = elimination * boundary_coords;

    std::map<LatticePoint, MassPoint> control = patch.control();
    for (Eigen::Index r = 0; r < ni; ++r) {
        MassPoint& m = control.at(inner[static_cast<std::size_t>(r)]);
        m.wx = solved_coords(r, 0);
        m.wy = solved_coords(r, 1);
        m.wz = solved_coords(r, 2);
        if (coords == 4) m.w = solved_coords(r, 3);
    }

    // constraint table: in fixed-weights mode rows express control points,
    // so each elimination entry is scaled by the weight ratio w_g / w_l.
    ConstraintTable table{inner, boundary,
                          std::vector<std::vector<double>>(
                              inner.size(), std::vector<double>(boundary.size(), 0.0))};
    for (std::size_t r = 0; r < inner.size(); ++r) {
        for (std::size_t c = 0; c < boundary.size(); ++c) {
            double coeff = elimination(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (mode == WeightMode::fixed_weights_points_only) {
                const double wl = control.at(inner[r]).w;
                const double wg = patch.mass_point(boundary[c]).w;
                coeff *= wg / wl;
            }
            table.coefficients[r][c] = coeff;
        }
    }

    ToricPatch solved_patch = patch.with_control(std::move(control));
    const double residual = detail::inner_gradient_residual(g, solved_patch, mode);
    return {std::move(solved_patch), std::move(table), residual, condition};
}

/// Diagnostics for one functional's solve, used by the side-by-side report.
struct SolveDiagnostics {
    EnergyFunctional functional = EnergyFunctional::quasi_harmonic;
    ToricPatch patch;
    double energy_quasi_harmonic = 0;
    double energy_dirichlet = 0;
    double area = 0;
    double residual = 0;
    std::vector<SurfaceSample> curvature_samples;  // inner lattice points + centroid
};

struct FunctionalComparison {
    SolveDiagnostics quasi_harmonic;
    SolveDiagnostics dirichlet;
};

/// Solves the same boundary data under both functionals and reports
/// energies, area, and curvature samples side by side. Samples sit at the
/// inner lattice points and the hull centroid; samples with a degenerate
/// metric are skipped.
inline FunctionalComparison compare_functionals(
    const ToricPatch& patch, WeightMode mode = WeightMode::fixed_weights_points_only,
    int quadrature_order = 8) {
    const GramMatrix g_qh = gram(patch.basis(), EnergyFunctional::quasi_harmonic);
    const GramMatrix g_dir = gram(patch.basis(), EnergyFunctional::dirichlet);

    const auto diagnose = [&](EnergyFunctional functional) {
        SolveDiagnostics diag{functional, solve_inner(patch, functional, mode).patch};
        diag.residual = gradient_residual(
            diag.patch, functional == EnergyFunctional::quasi_harmonic ? g_qh : g_dir, mode);
        diag.energy_quasi_harmonic = energy(diag.patch, g_qh, mode);
        diag.energy_dirichlet = energy(diag.patch, g_dir, mode);
        diag.area = area(diag.patch, quadrature_order);

        std::vector<std::pair<double, double>> params;
        for (const auto& pt : diag.patch.inner_keys())
            params.emplace_back(double(pt.i), double(pt.j));
        const auto [cu, cv] = patch.basis().domain().hull_vertex_centroid();
        params.emplace_back(to_double(cu), to_double(cv));
        for (const auto& [u, v] : params) {
            try {
                diag.curvature_samples.push_back(surface_sample(diag.patch, u, v));
            } catch (const DegenerateMetric&) {
                // skip irregular samples; the report simply omits them
            }
        }
        return diag;
    };

    return {diagnose(EnergyFunctional::quasi_harmonic), diagnose(EnergyFunctional::dirichlet)};
}

}  // namespace toric
