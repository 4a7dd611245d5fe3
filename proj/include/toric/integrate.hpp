#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"

namespace toric {

namespace detail {

/// Exact integral of u^a v^b over the triangle (p0,p1,p2), via the affine
/// change of variables to the reference triangle and the closed form
/// ∬ s^m t^n ds dt = m! n! / (m+n+2)!. The result is signed by the triangle
/// orientation (positive for CCW).
inline Rational monomial_integral_over_triangle(int a, int b, LatticePoint p0, LatticePoint p1,
                                                LatticePoint p2) {
    const std::int64_t d1x = p1.i - p0.i, d1y = p1.j - p0.j;
    const std::int64_t d2x = p2.i - p0.i, d2y = p2.j - p0.j;
    const std::int64_t det = d1x * d2y - d2x * d1y;
    if (det == 0) return Rational(0);

    // u^a = sum over p+q+r=a of a!/(p!q!r!) x0^p (d1x s)^q (d2x t)^r, same for
    // v^b; collect coefficients of s^m t^n.
    const auto trinomial = [](int n, std::int64_t c0, std::int64_t c1, std::int64_t c2) {
        std::vector<std::vector<BigInt>> coeff(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
        for (int q = 0; q <= n; ++q)
            for (int r = 0; q + r <= n; ++r) {
                const int p = n - q - r;
                BigInt term = factorial(n) / (factorial(p) * factorial(q) * factorial(r));
                term *= pow(BigInt(c0), p) * pow(BigInt(c1), q) * pow(BigInt(c2), r);
                coeff[q][r] += term;
            }
        return coeff;
    };
    const auto cu = trinomial(a, p0.i, d1x, d2x);
    const auto cv = trinomial(b, p0.j, d1y, d2y);

    Rational sum = 0;
    for (int qu = 0; qu <= a; ++qu)
        for (int ru = 0; qu + ru <= a; ++ru) {
            if (cu[qu][ru] == 0) continue;
            for (int qv = 0; qv <= b; ++qv)
                for (int rv = 0; qv + rv <= b; ++rv) {
                    if (cv[qv][rv] == 0) continue;
                    const int m = qu + qv, n = ru + rv;
                    sum += Rational(cu[qu][ru] * cv[qv][rv] * factorial(m) * factorial(n),
                                    factorial(m + n + 2));
                }
        }
    return sum * det;
}

inline Rational monomial_integral_over_hull(int a, int b, const LatticePolygon& domain,
                                            std::size_t fan_root) {
    const auto& hull = domain.hull_vertices();
    const LatticePoint root = hull[fan_root % hull.size()];
    Rational total = 0;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const LatticePoint b1 = hull[(fan_root + 1 + k) % hull.size()];
        const LatticePoint b2 = hull[(fan_root + 2 + k) % hull.size()];
        if (b2 == root) break;
        total += monomial_integral_over_triangle(a, b, root, b1, b2);
    }
    return total;
}

}  // namespace detail

/// Exact ∬_hull p(u,v) du dv, fan-triangulating the hull from the vertex at
/// `fan_root` (default: the first, lexicographically smallest, vertex). The
/// result is independent of the fan root; tests rely on that.
inline Rational integrate_over_polygon(const Poly2& p, const LatticePolygon& domain,
                                       std::size_t fan_root = 0) {
    Rational total = 0;
    for (const auto& [m, c] : p.terms())
        total += c * detail::monomial_integral_over_hull(m.a, m.b, domain, fan_root);
    return total;
}

/// Caches monomial integrals over one polygon. Gram assembly integrates a few
/// hundred polynomials over the same hull; the cache makes each one a sparse
/// dot product.
class PolygonIntegrator {
public:
    explicit PolygonIntegrator(LatticePolygon domain) : domain_(std::move(domain)) {}

    const LatticePolygon& domain() const { return domain_; }

    Rational integrate(const Poly2& p) const {
        Rational total = 0;
        for (const auto& [m, c] : p.terms()) total += c * monomial_integral(m);
        return total;
    }

private:
    const Rational& monomial_integral(Monomial m) const {
        const auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(m, detail::monomial_integral_over_hull(m.a, m.b, domain_, 0))
            .first->second;
    }

    LatticePolygon domain_;
    mutable std::map<Monomial, Rational> cache_;
};

}  // namespace toric
