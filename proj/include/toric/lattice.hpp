#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "toric/errors.hpp"
#include "toric/rational.hpp"

namespace toric {

/// Integer lattice point. Coordinates are exact; there are no floating-point
/// lattice points anywhere in the library.
struct LatticePoint {
    std::int64_t i = 0;  // u-direction index
    std::int64_t j = 0;  // v-direction index

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.i + b.i, a.j + b.j}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.i - b.i, a.j - b.j}; }

inline std::string to_string(LatticePoint p) {
    return std::to_string(p.i) + "," + std::to_string(p.j);
}

/// Affine edge function L(u,v) = alpha*u + beta*v + gamma with a primitive
/// integer normal (alpha,beta) pointing into the hull. L >= 0 on the hull and
/// L = 0 exactly on the edge.
struct EdgeLine {
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    std::int64_t gamma = 0;

    std::int64_t value_at(LatticePoint p) const { return alpha * p.i + beta * p.j + gamma; }
    double value_at(double u, double v) const {
        return static_cast<double>(alpha) * u + static_cast<double>(beta) * v +
               static_cast<double>(gamma);
    }
    Rational value_at(const Rational& u, const Rational& v) const {
        return Rational(alpha) * u + Rational(beta) * v + Rational(gamma);
    }

    friend bool operator==(const EdgeLine&, const EdgeLine&) = default;
};

/// A finite integer point set together with its convex hull. `points` keeps
/// every input point (collinear boundary points included); `hull_vertices`
/// holds only the extreme points, counterclockwise, starting at the
/// lexicographically smallest vertex. `edges[k]` vanishes on the segment
/// hull_vertices[k] -> hull_vertices[k+1].
class LatticePolygon {
public:
    LatticePolygon() = default;
    LatticePolygon(std::vector<LatticePoint> points, std::vector<LatticePoint> hull,
                   std::vector<EdgeLine> edges)
        : points_(std::move(points)), hull_vertices_(std::move(hull)), edges_(std::move(edges)) {}

    const std::vector<LatticePoint>& points() const { return points_; }
    const std::vector<LatticePoint>& hull_vertices() const { return hull_vertices_; }
    const std::vector<EdgeLine>& edges() const { return edges_; }

    bool contains(LatticePoint p) const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [&](const EdgeLine& e) { return e.value_at(p) >= 0; });
    }
    bool contains(double u, double v) const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [&](const EdgeLine& e) { return e.value_at(u, v) >= -1e-12; });
    }

    /// Centroid of the hull vertices; strictly interior for every convex hull.
    std::pair<Rational, Rational> hull_vertex_centroid() const {
        Rational cu = 0, cv = 0;
        for (const auto& h : hull_vertices_) {
            cu += h.i;
            cv += h.j;
        }
        const auto n = static_cast<std::int64_t>(hull_vertices_.size());
        return {cu / n, cv / n};
    }

private:
    std::vector<LatticePoint> points_;
    std::vector<LatticePoint> hull_vertices_;
    std::vector<EdgeLine> edges_;
};

namespace detail {

inline std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
    return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

/// Andrew's monotone chain; returns extreme points only, counterclockwise,
/// starting at the lexicographically smallest point.
inline std::vector<LatticePoint> monotone_chain(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return {};

    std::vector<LatticePoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
        hull[k++] = pts[idx];
    }
    for (std::size_t idx = n - 1, t = k + 1; idx-- > 0;) {  // upper hull
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[idx]) <= 0) --k;
        hull[k++] = pts[idx];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

}  // namespace detail

/// Builds the convex hull of a lattice point set. All input points are kept
/// in `points()`; extreme points become the CCW hull cycle; each hull edge
/// gets its primitive inward edge line. Throws DegenerateHull for empty,
/// collinear, or sub-2-dimensional input.
inline LatticePolygon convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw DegenerateHull("convex_hull: empty point set");

    auto hull = detail::monotone_chain(pts);
    if (hull.size() < 3) throw DegenerateHull("convex_hull: all points collinear");

    std::vector<EdgeLine> edges;
    edges.reserve(hull.size());
    for (std::size_t k = 0; k < hull.size(); ++k) {
        const LatticePoint a = hull[k];
        const LatticePoint b = hull[(k + 1) % hull.size()];
        const std::int64_t dx = b.i - a.i;
        const std::int64_t dy = b.j - a.j;
        // CCW edge direction (dx,dy) has inward normal (-dy,dx); reduce to the
        // shortest integer normal.
        const std::int64_t g = std::gcd(std::abs(dx), std::abs(dy));
        EdgeLine e;
        e.alpha = -dy / g;
        e.beta = dx / g;
        e.gamma = -(e.alpha * a.i + e.beta * a.j);
        edges.push_back(e);
    }
    return LatticePolygon(std::move(pts), std::move(hull), std::move(edges));
}

struct Classification {
    std::vector<LatticePoint> boundary;  // on at least one edge line
    std::vector<LatticePoint> inner;     // strictly inside the hull
};

/// Splits the polygon's point set by hull-boundary membership. Operates on
/// the given set only; the set need not contain every lattice point of the
/// hull.
inline Classification classify(const LatticePolygon& polygon) {
    Classification result;
    for (const auto& p : polygon.points()) {
        const bool on_edge =
            std::any_of(polygon.edges().begin(), polygon.edges().end(),
                        [&](const EdgeLine& e) { return e.value_at(p) == 0; });
        (on_edge ? result.boundary : result.inner).push_back(p);
    }
    return result;
}

/// A ⊕ B = {a + b}, deduplicated and sorted.
inline std::vector<LatticePoint> minkowski_sum(const std::vector<LatticePoint>& a,
                                               const std::vector<LatticePoint>& b) {
    std::vector<LatticePoint> sum;
    sum.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) sum.push_back(x + y);
    std::sort(sum.begin(), sum.end());
    sum.erase(std::unique(sum.begin(), sum.end()), sum.end());
    return sum;
}

/// d-fold Minkowski sum of sigma with itself; dilate(sigma, 1) = sigma.
inline std::vector<LatticePoint> dilate(const std::vector<LatticePoint>& sigma, int d) {
    if (d < 1) throw InvalidDepth("dilate: depth must be >= 1, got " + std::to_string(d));
    std::vector<LatticePoint> result = sigma;
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    for (int k = 1; k < d; ++k) result = minkowski_sum(result, sigma);
    return result;
}

}  // namespace toric
