#pragma once

// Independent oracles used to check the library's computational routes.
// Nothing here may share an algorithm with the implementation it checks:
// integration goes through the boundary integral instead of triangulation,
// expansions through direct multinomial formulas instead of Poly2::pow.

#include <random>
#include <vector>

#include "toric/integrate.hpp"
#include "toric/lattice.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"

namespace oracles {

using toric::BigInt;
using toric::LatticePoint;
using toric::LatticePolygon;
using toric::Poly2;
using toric::Rational;

/// ∬_P u^a v^b via Green's theorem: with Q = u^{a+1} v^b / (a+1),
/// ∬ ∂Q/∂u = ∮ Q dv, summed over the CCW boundary edges.
inline Rational greens_monomial_integral(int a, int b, const LatticePolygon& polygon) {
    const auto& hull = polygon.hull_vertices();
    Rational total = 0;
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const LatticePoint p0 = hull[k];
        const LatticePoint p1 = hull[(k + 1) % hull.size()];
        const std::int64_t dx = p1.i - p0.i;
        const std::int64_t dy = p1.j - p0.j;
        if (dy == 0) continue;  // dv = 0 along horizontal edges
        // edge parameterization u = x0 + t dx, v = y0 + t dy, t in [0,1]
        Rational edge = 0;
        for (int p = 0; p <= a + 1; ++p) {
            if (p0.i == 0 && a + 1 - p > 0) continue;  // x0^(a+1-p) = 0
            for (int q = 0; q <= b; ++q) {
                if (p0.j == 0 && b - q > 0) continue;
                Rational term(toric::binomial(a + 1, p) * toric::binomial(b, q));
                term *= toric::rational_pow(Rational(p0.i), a + 1 - p) *
                        toric::rational_pow(Rational(dx), p);
                term *= toric::rational_pow(Rational(p0.j), b - q) *
                        toric::rational_pow(Rational(dy), q);
                edge += term / (p + q + 1);  // ∫ t^{p+q} dt
            }
        }
        total += edge * dy;
    }
    return total / (a + 1);
}

inline Rational greens_integral(const Poly2& poly, const LatticePolygon& polygon) {
    Rational total = 0;
    for (const auto& [m, c] : poly.terms()) total += c * greens_monomial_integral(m.a, m.b, polygon);
    return total;
}

/// Coefficient of u^q v^r in (c0 + c1 u + c2 v)^n by the multinomial formula.
inline Rational multinomial_coefficient(int n, long long c0, long long c1, long long c2, int q,
                                        int r) {
    if (q < 0 || r < 0 || q + r > n) return Rational(0);
    const int p = n - q - r;
    Rational coeff(toric::factorial(n), toric::factorial(p) * toric::factorial(q) * toric::factorial(r));
    coeff *= toric::rational_pow(Rational(c0), p) * toric::rational_pow(Rational(c1), q) *
             toric::rational_pow(Rational(c2), r);
    return coeff;
}

/// Random convex lattice polygon: hull of a handful of random points.
inline LatticePolygon random_polygon(std::mt19937& rng, int span = 5) {
    std::uniform_int_distribution<int> count(4, 10);
    std::uniform_int_distribution<std::int64_t> coord(-span, span);
    for (;;) {
        std::vector<LatticePoint> pts(count(rng));
        for (auto& p : pts) p = {coord(rng), coord(rng)};
        try {
            return toric::convex_hull(pts);
        } catch (const toric::DegenerateHull&) {
            // resample
        }
    }
}

/// Random sparse polynomial with small integer support and coefficients.
inline Poly2 random_poly(std::mt19937& rng, int max_degree = 4, int max_terms = 6) {
    std::uniform_int_distribution<int> terms(1, max_terms);
    std::uniform_int_distribution<int> expo(0, max_degree);
    std::uniform_int_distribution<long long> num(-9, 9);
    std::uniform_int_distribution<long long> den(1, 9);
    Poly2 p;
    const int n = terms(rng);
    for (int k = 0; k < n; ++k)
        p += Poly2::monomial(expo(rng), expo(rng), Rational(num(rng), den(rng)));
    return p;
}

inline std::vector<LatticePoint> random_point_set(std::mt19937& rng, int span = 4) {
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<std::int64_t> coord(-span, span);
    std::vector<LatticePoint> pts(count(rng));
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Shoelace area of the hull (for Pick's theorem checks).
inline Rational shoelace_area(const LatticePolygon& polygon) {
    const auto& hull = polygon.hull_vertices();
    std::int64_t twice = 0;
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const auto& a = hull[k];
        const auto& b = hull[(k + 1) % hull.size()];
        twice += a.i * b.j - b.i * a.j;
    }
    return Rational(twice, 2);
}

}  // namespace oracles
