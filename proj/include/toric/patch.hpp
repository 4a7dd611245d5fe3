#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "toric/basis.hpp"
#include "toric/errors.hpp"
#include "toric/integrate.hpp"
#include "toric/lattice.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"

namespace toric {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;

    double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(Vec3 o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// Mass-point (w*p, w): a weighted control point in R^4. Solvers may emit
/// any real weight; validation of user input enforces w >= 0 at the io layer.
struct MassPoint {
    double wx = 0, wy = 0, wz = 0, w = 0;

    static MassPoint from_point(Vec3 p, double weight = 1.0) {
        return {weight * p.x, weight * p.y, weight * p.z, weight};
    }
    Vec3 weighted_position() const { return {wx, wy, wz}; }
    Vec3 point() const { return {wx / w, wy / w, wz / w}; }

    double coordinate(int a) const {
        switch (a) {
            case 0: return wx;
            case 1: return wy;
            case 2: return wz;
            default: return w;
        }
    }

    friend bool operator==(const MassPoint&, const MassPoint&) = default;
};

/// The four polynomial components of a patch in mass-point space:
/// (sum beta*wx, sum beta*wy, sum beta*wz, sum beta*w).
struct PatchPolynomials {
    Poly2 x, y, z, w;

    const Poly2& component(int a) const {
        switch (a) {
            case 0: return x;
            case 1: return y;
            case 2: return z;
            default: return w;
        }
    }
    PatchPolynomials derivative(Var var, int order = 1) const {
        return {x.derivative(var, order), y.derivative(var, order), z.derivative(var, order),
                w.derivative(var, order)};
    }
    friend bool operator==(const PatchPolynomials&, const PatchPolynomials&) = default;
};

/// Toric Bezier patch: a basis set plus one mass-point per index point,
/// with the boundary/inner split precomputed from the index polygon.
class ToricPatch {
public:
    ToricPatch(BasisFunctionSet basis, std::map<LatticePoint, MassPoint> control)
        : basis_(std::move(basis)), control_(std::move(control)) {
        if (control_.size() != basis_.functions().size())
            throw Error("patch control net must assign exactly the basis index points");
        for (const auto& [pt, fn] : basis_.functions())
            if (!control_.contains(pt))
                throw Error("patch control net missing mass-point for (" + to_string(pt) + ")");
        const auto split = classify(basis_.domain());
        boundary_keys_ = split.boundary;
        inner_keys_ = split.inner;
    }

    const BasisFunctionSet& basis() const { return basis_; }
    const std::map<LatticePoint, MassPoint>& control() const { return control_; }
    const std::vector<LatticePoint>& boundary_keys() const { return boundary_keys_; }
    const std::vector<LatticePoint>& inner_keys() const { return inner_keys_; }

    const MassPoint& mass_point(LatticePoint key) const { return control_.at(key); }

    ToricPatch with_control(std::map<LatticePoint, MassPoint> control) const {
        return ToricPatch(basis_, std::move(control));
    }

private:
    BasisFunctionSet basis_;
    std::map<LatticePoint, MassPoint> control_;
    std::vector<LatticePoint> boundary_keys_;
    std::vector<LatticePoint> inner_keys_;
};

/// Assembles the four mass-point component polynomials. Control coordinates
/// are doubles and convert to rationals exactly, so the result is exact.
inline PatchPolynomials patch_map(const ToricPatch& patch) {
    PatchPolynomials out;
    for (const auto& [pt, beta] : patch.basis().functions()) {
        const MassPoint& m = patch.mass_point(pt);
        if (m.wx != 0) out.x += beta * rational_from_double(m.wx);
        if (m.wy != 0) out.y += beta * rational_from_double(m.wy);
        if (m.wz != 0) out.z += beta * rational_from_double(m.wz);
        if (m.w != 0) out.w += beta * rational_from_double(m.w);
    }
    return out;
}

inline constexpr double kDefaultZeroWeightEps = 1e-12;

/// Evaluates the rational patch at an exact parameter point: the four
/// components are evaluated in exact arithmetic and only the final division
/// result is rounded to double. Hull corners therefore reproduce their
/// control points bit-exactly under corner-unital normalizations.
inline Vec3 evaluate(const ToricPatch& patch, const Rational& u, const Rational& v,
                     double zero_weight_eps = kDefaultZeroWeightEps) {
    Rational x = 0, y = 0, z = 0, w = 0;
    for (const auto& [pt, beta] : patch.basis().functions()) {
        const Rational b = beta(u, v);
        if (b == 0) continue;
        const MassPoint& m = patch.mass_point(pt);
        x += b * rational_from_double(m.wx);
        y += b * rational_from_double(m.wy);
        z += b * rational_from_double(m.wz);
        w += b * rational_from_double(m.w);
    }
    if (abs(w) < rational_from_double(zero_weight_eps))
        throw ZeroWeight("weight component vanishes at (u,v) = (" + to_fraction_string(u) + ", " +
                         to_fraction_string(v) + ")");
    return {to_double(x / w), to_double(y / w), to_double(z / w)};
}

inline Vec3 evaluate(const ToricPatch& patch, double u, double v,
                     double zero_weight_eps = kDefaultZeroWeightEps) {
    return evaluate(patch, rational_from_double(u), rational_from_double(v), zero_weight_eps);
}

/// First derivative of the patch components via the depth-convolution
/// formula: P_w = d * sum_gamma first[gamma] * M_gamma.
inline PatchPolynomials patch_first_derivative_paper(const ToricPatch& patch, Var var) {
    const auto coeffs = derivative_coefficients(patch.basis(), var);
    const Rational d(patch.basis().depth());
    PatchPolynomials out;
    for (const auto& [gamma, first] : coeffs.first) {
        const MassPoint& m = patch.mass_point(gamma);
        const Poly2 scaled = first * d;
        if (m.wx != 0) out.x += scaled * rational_from_double(m.wx);
        if (m.wy != 0) out.y += scaled * rational_from_double(m.wy);
        if (m.wz != 0) out.z += scaled * rational_from_double(m.wz);
        if (m.w != 0) out.w += scaled * rational_from_double(m.w);
    }
    return out;
}

/// Second derivatives (P_uu, P_vv) via the convolution coefficient split:
/// P_ww = d * sum xi[gamma] M_gamma + d(d-1) * sum eta[gamma] M_gamma.
inline std::pair<PatchPolynomials, PatchPolynomials> patch_second_derivatives_paper(
    const ToricPatch& patch) {
    const int d = patch.basis().depth();
    std::pair<PatchPolynomials, PatchPolynomials> out;
    for (const Var var : {Var::u, Var::v}) {
        const auto coeffs = derivative_coefficients(patch.basis(), var);
        PatchPolynomials& target = (var == Var::u) ? out.first : out.second;
        for (const auto& [gamma, xi] : coeffs.xi) {
            Poly2 combined = xi * Rational(d);
            if (d >= 2) combined += coeffs.eta.at(gamma) * Rational(std::int64_t(d) * (d - 1));
            const MassPoint& m = patch.mass_point(gamma);
            if (m.wx != 0) target.x += combined * rational_from_double(m.wx);
            if (m.wy != 0) target.y += combined * rational_from_double(m.wy);
            if (m.wz != 0) target.z += combined * rational_from_double(m.wz);
            if (m.w != 0) target.w += combined * rational_from_double(m.w);
        }
    }
    return out;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [0,1], computed by Newton iteration on
/// the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(int n) {
    std::vector<double> nodes(n), weights(n);
    for (int i = 0; i < n; ++i) {
        // initial guess on [-1,1]
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = 0.5 * (x + 1.0);
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return {std::move(nodes), std::move(weights)};
}

struct ProjectedDerivatives {
    Vec3 position;
    Vec3 du, dv;        // first derivatives of the projected surface
    Vec3 duu, duv, dvv; // second derivatives of the projected surface
    double weight = 0;
};

/// Symbolic derivative numerators of the projected surface P = N/w:
///   P_u  = A / w^2,            A = N_u w - N w_u
///   P_uu = (A_u w - 2 A w_u) / w^3, and analogously for v and mixed terms.
struct ProjectedDerivativeCache {
    PatchPolynomials n;       // mass-point components
    PatchPolynomials nu, nv;  // component derivatives
    PatchPolynomials a, b;    // first-derivative numerators (A, B)
    PatchPolynomials auu, auv, bvv;

    explicit ProjectedDerivativeCache(const ToricPatch& patch) : n(patch_map(patch)) {
        nu = n.derivative(Var::u);
        nv = n.derivative(Var::v);
        const auto combine = [](const PatchPolynomials& f, const PatchPolynomials& g,
                                const Poly2& gw, const Poly2& fw) {
            PatchPolynomials out;
            out.x = f.x * gw - g.x * fw;
            out.y = f.y * gw - g.y * fw;
            out.z = f.z * gw - g.z * fw;
            out.w = f.w * gw - g.w * fw;
            return out;
        };
        a = combine(nu, n, n.w, nu.w);  // A = N_u w - N w_u (w-component is 0)
        b = combine(nv, n, n.w, nv.w);
        const auto second = [&](const PatchPolynomials& first, Var var) {
            const PatchPolynomials fd = first.derivative(var);
            const Poly2& wd = (var == Var::u) ? nu.w : nv.w;
            PatchPolynomials out;
            out.x = fd.x * n.w - Rational(2) * (first.x * wd);
            out.y = fd.y * n.w - Rational(2) * (first.y * wd);
            out.z = fd.z * n.w - Rational(2) * (first.z * wd);
            out.w = fd.w * n.w - Rational(2) * (first.w * wd);
            return out;
        };
        auu = second(a, Var::u);
        auv = second(a, Var::v);
        bvv = second(b, Var::v);
    }

    ProjectedDerivatives evaluate_at(double u, double v, double zero_weight_eps) const {
        const double w = n.w(u, v);
        if (std::abs(w) < zero_weight_eps)
            throw ZeroWeight("weight component vanishes at sample point");
        const double w2 = w * w, w3 = w2 * w;
        const auto eval3 = [&](const PatchPolynomials& p, double scale) {
            return Vec3{p.x(u, v) / scale, p.y(u, v) / scale, p.z(u, v) / scale};
        };
        ProjectedDerivatives out;
        out.weight = w;
        out.position = eval3(n, w);
        out.du = eval3(a, w2);
        out.dv = eval3(b, w2);
        out.duu = eval3(auu, w3);
        out.duv = eval3(auv, w3);
        out.dvv = eval3(bvv, w3);
        return out;
    }
};

}  // namespace detail

struct SurfaceSample {
    double u = 0, v = 0;
    Vec3 position;
    Vec3 unit_normal;
    double mean_curvature = 0;
};

inline constexpr double kDefaultMetricEps = 1e-12;

/// Mean curvature H = (E*e2 - 2F*f2 + G*g2) / (2(EG - F^2)) of the projected
/// surface, with all derivatives taken symbolically on the mass-point
/// components and projected by the quotient rule (never by differencing).
/// Here (e2,f2,g2) is the second fundamental form against the unit normal.
inline SurfaceSample surface_sample(const ToricPatch& patch, double u, double v,
                                    double zero_weight_eps = kDefaultZeroWeightEps,
                                    double metric_eps = kDefaultMetricEps) {
    const detail::ProjectedDerivativeCache cache(patch);
    const auto dv = cache.evaluate_at(u, v, zero_weight_eps);

    const double E = dv.du.dot(dv.du);
    const double F = dv.du.dot(dv.dv);
    const double G = dv.dv.dot(dv.dv);
    const double denom = E * G - F * F;
    const Vec3 normal = dv.du.cross(dv.dv);
    if (denom < metric_eps || normal.norm() < metric_eps)
        throw DegenerateMetric("first fundamental form is singular at the sample point");
    const Vec3 unit_normal = normal / normal.norm();

    const double e2 = dv.duu.dot(unit_normal);
    const double f2 = dv.duv.dot(unit_normal);
    const double g2 = dv.dvv.dot(unit_normal);
    const double H = (E * g2 - 2.0 * F * f2 + G * e2) / (2.0 * denom);
    return {u, v, dv.position, unit_normal, H};
}

inline double mean_curvature(const ToricPatch& patch, double u, double v) {
    return surface_sample(patch, u, v).mean_curvature;
}

/// Surface area by fixed-order Gauss quadrature over the fan triangulation
/// of the index hull (the integrand contains a square root, so this is
/// numerical by necessity).
inline double area(const ToricPatch& patch, int quadrature_order = 8) {
    if (quadrature_order < 1) throw Error("area: quadrature order must be >= 1");
    const detail::ProjectedDerivativeCache cache(patch);
    const auto [nodes, weights] = detail::gauss_legendre_unit(quadrature_order);

    const auto& hull = patch.basis().domain().hull_vertices();
    double total = 0;
    for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
        const auto p0 = hull[0], p1 = hull[k], p2 = hull[k + 1];
        const double d1x = double(p1.i - p0.i), d1y = double(p1.j - p0.j);
        const double d2x = double(p2.i - p0.i), d2y = double(p2.j - p0.j);
        const double jac = std::abs(d1x * d2y - d2x * d1y);
        // Duffy transform: (s,t) in the unit square maps to the triangle via
        // t -> (1-s)t with Jacobian (1-s).
        for (int is = 0; is < quadrature_order; ++is) {
            for (int it = 0; it < quadrature_order; ++it) {
                const double s = nodes[is];
                const double t = (1.0 - s) * nodes[it];
                const double u = double(p0.i) + s * d1x + t * d2x;
                const double v = double(p0.j) + s * d1y + t * d2y;
                const auto dv = cache.evaluate_at(u, v, kDefaultZeroWeightEps);
                // chain rule via the affine map only scales du x dv by jac
                const double integrand = dv.du.cross(dv.dv).norm();
                total += weights[is] * weights[it] * (1.0 - s) * jac * integrand;
            }
        }
    }
    return total;
}

struct TriangleMesh {
    struct Vertex {
        double u = 0, v = 0;
        Vec3 position;
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<std::size_t, 3>> triangles;  // CCW in parameter space
};

/// Fan-triangulates the index hull and refines each triangle into
/// subdivisions^2 sub-triangles; vertices shared between fan triangles are
/// deduplicated by their exact rational parameter coordinates.
inline TriangleMesh tessellate(const ToricPatch& patch, int subdivisions,
                               double zero_weight_eps = kDefaultZeroWeightEps) {
    if (subdivisions < 1) throw Error("tessellate: subdivisions must be >= 1");
    const auto& hull = patch.basis().domain().hull_vertices();
    const int n = subdivisions;

    TriangleMesh mesh;
    std::map<std::pair<Rational, Rational>, std::size_t> vertex_index;
    const auto vertex_at = [&](const Rational& u, const Rational& v) {
        const auto key = std::make_pair(u, v);
        const auto it = vertex_index.find(key);
        if (it != vertex_index.end()) return it->second;
        const Vec3 pos = evaluate(patch, u, v, zero_weight_eps);
        mesh.vertices.push_back({to_double(u), to_double(v), pos});
        const std::size_t idx = mesh.vertices.size() - 1;
        vertex_index.emplace(key, idx);
        return idx;
    };

    for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
        const auto p0 = hull[0], p1 = hull[k], p2 = hull[k + 1];
        const auto param = [&](int i, int j) {
            const Rational s(i, n), t(j, n);
            const Rational u = Rational(p0.i) + s * (p1.i - p0.i) + t * (p2.i - p0.i);
            const Rational v = Rational(p0.j) + s * (p1.j - p0.j) + t * (p2.j - p0.j);
            return std::make_pair(u, v);
        };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                const auto [u00, v00] = param(i, j);
                const auto [u10, v10] = param(i + 1, j);
                const auto [u01, v01] = param(i, j + 1);
                mesh.triangles.push_back(
                    {vertex_at(u00, v00), vertex_at(u10, v10), vertex_at(u01, v01)});
                if (i + j < n - 1) {
                    const auto [u11, v11] = param(i + 1, j + 1);
                    mesh.triangles.push_back(
                        {vertex_at(u10, v10), vertex_at(u11, v11), vertex_at(u01, v01)});
                }
            }
        }
    }
    return mesh;
}

}  // namespace toric
