#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "toric/errors.hpp"
#include "toric/lattice.hpp"
#include "toric/poly2.hpp"
#include "toric/rational.hpp"

namespace toric {

/// c = 1 for every basis function.
struct UnitNormalization {};

/// c = prod_k e_k^{-e_k} with e_k the lattice distance to edge k and 0^0 = 1.
/// Makes every basis function equal to 1 at its own hull corner.
struct SelfExponentNormalization {};

/// Tensor-style constants for the trapezoid family
/// sigma = {(i,j) : 0 <= j <= n, 0 <= i <= m + p*n - p*j}:
/// c_ij = [C(n,j)/n^n] * [C(w_j,i)/w_j^{w_j}], w_j = m + p*n - p*j.
struct TrapezoidTensorNormalization {
    int n = 1;
    int m = 0;
    int p = 1;
};

/// User-supplied positive constant per lattice point.
struct ExplicitNormalization {
    std::map<LatticePoint, Rational> constants;
};

using NormalizationStrategy = std::variant<UnitNormalization, SelfExponentNormalization,
                                           TrapezoidTensorNormalization, ExplicitNormalization>;

inline std::string normalization_tag(const NormalizationStrategy& norm) {
    struct Visitor {
        std::string operator()(const UnitNormalization&) const { return "unit"; }
        std::string operator()(const SelfExponentNormalization&) const { return "self_exponent"; }
        std::string operator()(const TrapezoidTensorNormalization&) const {
            return "trapezoid_tensor";
        }
        std::string operator()(const ExplicitNormalization&) const { return "explicit"; }
    };
    return std::visit(Visitor{}, norm);
}

/// The lattice points of the trapezoid family for parameters (n,m,p).
inline std::vector<LatticePoint> trapezoid_points(int n, int m, int p) {
    std::vector<LatticePoint> pts;
    for (std::int64_t j = 0; j <= n; ++j)
        for (std::int64_t i = 0; i <= m + std::int64_t(p) * n - std::int64_t(p) * j; ++i)
            pts.push_back({i, j});
    return pts;
}

/// Recovers (n,m,p) if `points` is exactly a trapezoid-family index set.
inline std::optional<TrapezoidTensorNormalization> infer_trapezoid_parameters(
    std::vector<LatticePoint> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return std::nullopt;

    std::int64_t n = 0;
    for (const auto& pt : points) {
        if (pt.i < 0 || pt.j < 0) return std::nullopt;
        n = std::max(n, pt.j);
    }
    std::vector<std::int64_t> row_max(n + 1, -1);
    for (const auto& pt : points) row_max[pt.j] = std::max(row_max[pt.j], pt.i);
    if (n < 1 || row_max[0] < 0 || row_max[1] < 0) return std::nullopt;

    const std::int64_t p = row_max[0] - row_max[1];
    const std::int64_t m = row_max[0] - p * n;
    if (p < 1 || m < 0) return std::nullopt;

    TrapezoidTensorNormalization params{static_cast<int>(n), static_cast<int>(m),
                                        static_cast<int>(p)};
    auto expected = trapezoid_points(params.n, params.m, params.p);
    std::sort(expected.begin(), expected.end());
    if (expected != points) return std::nullopt;
    return params;
}

namespace detail {

inline Rational normalizing_constant(const NormalizationStrategy& norm, const LatticePolygon& domain,
                                     LatticePoint sigma_i) {
    struct Visitor {
        const LatticePolygon& domain;
        LatticePoint pt;

        Rational operator()(const UnitNormalization&) const { return Rational(1); }

        Rational operator()(const SelfExponentNormalization&) const {
            BigInt den = 1;
            for (const auto& edge : domain.edges()) {
                const std::int64_t e = edge.value_at(pt);
                if (e > 0) den *= pow(BigInt(e), static_cast<unsigned>(e));
            }
            return Rational(1, den);
        }

        Rational operator()(const TrapezoidTensorNormalization& t) const {
            const std::int64_t w = t.m + std::int64_t(t.p) * t.n - std::int64_t(t.p) * pt.j;
            if (pt.j < 0 || pt.j > t.n || pt.i < 0 || pt.i > w)
                throw NormalizationNotApplicable("trapezoid constant requested off the family");
            Rational c(binomial(t.n, static_cast<unsigned>(pt.j)),
                       pow(BigInt(t.n), static_cast<unsigned>(t.n)));
            if (w > 0)
                c *= Rational(binomial(static_cast<unsigned>(w), static_cast<unsigned>(pt.i)),
                              pow(BigInt(w), static_cast<unsigned>(w)));
            return c;
        }

        Rational operator()(const ExplicitNormalization& ex) const {
            const auto it = ex.constants.find(pt);
            if (it == ex.constants.end())
                throw NormalizationNotApplicable("explicit normalization missing constant for (" +
                                                 to_string(pt) + ")");
            if (it->second <= 0)
                throw NormalizationNotApplicable("normalizing constants must be positive");
            return it->second;
        }
    };
    return std::visit(Visitor{domain, sigma_i}, norm);
}

inline void check_normalization_applicable(const NormalizationStrategy& norm,
                                           const LatticePolygon& domain) {
    if (const auto* t = std::get_if<TrapezoidTensorNormalization>(&norm)) {
        if (t->n < 1 || t->p < 1 || t->m < 0)
            throw NormalizationNotApplicable("trapezoid parameters require n>=1, p>=1, m>=0");
        auto expected = trapezoid_points(t->n, t->m, t->p);
        std::sort(expected.begin(), expected.end());
        if (expected != domain.points())
            throw NormalizationNotApplicable(
                "domain is not the trapezoid family for (n,m,p) = (" + std::to_string(t->n) + "," +
                std::to_string(t->m) + "," + std::to_string(t->p) + ")");
    }
    if (const auto* ex = std::get_if<ExplicitNormalization>(&norm)) {
        for (const auto& pt : domain.points()) {
            const auto it = ex->constants.find(pt);
            if (it == ex->constants.end())
                throw NormalizationNotApplicable("explicit normalization missing constant for (" +
                                                 to_string(pt) + ")");
            if (it->second <= 0)
                throw NormalizationNotApplicable("normalizing constants must be positive");
        }
    }
}

}  // namespace detail

/// Basis functions for a lattice polygon at a given depth. `functions` is
/// keyed exactly by the depth-dilated index set; the depth-1 data it was
/// built from is kept so derivative formulas can recurse on it.
class BasisFunctionSet {
public:
    BasisFunctionSet(LatticePolygon base_domain, std::map<LatticePoint, Poly2> base_functions,
                     NormalizationStrategy norm)
        : base_domain_(std::move(base_domain)),
          base_functions_(std::move(base_functions)),
          normalization_(std::move(norm)),
          depth_(1),
          index_domain_(base_domain_),
          functions_(base_functions_) {}

    BasisFunctionSet(LatticePolygon base_domain, std::map<LatticePoint, Poly2> base_functions,
                     NormalizationStrategy norm, int depth, LatticePolygon index_domain,
                     std::map<LatticePoint, Poly2> functions)
        : base_domain_(std::move(base_domain)),
          base_functions_(std::move(base_functions)),
          normalization_(std::move(norm)),
          depth_(depth),
          index_domain_(std::move(index_domain)),
          functions_(std::move(functions)) {}

    /// Index/parameter domain of the depth-d patch (the polygon of sigma^d).
    const LatticePolygon& domain() const { return index_domain_; }
    /// Depth-1 domain sigma the set was generated from.
    const LatticePolygon& base_domain() const { return base_domain_; }

    int depth() const { return depth_; }
    const std::map<LatticePoint, Poly2>& functions() const { return functions_; }
    const std::map<LatticePoint, Poly2>& base_functions() const { return base_functions_; }
    const NormalizationStrategy& normalization() const { return normalization_; }

    const Poly2& at(LatticePoint key) const {
        const auto it = functions_.find(key);
        if (it == functions_.end())
            throw Error("basis function requested for a point outside the index set: (" +
                        to_string(key) + ")");
        return it->second;
    }

    std::vector<LatticePoint> keys() const {
        std::vector<LatticePoint> k;
        k.reserve(functions_.size());
        for (const auto& [pt, fn] : functions_) k.push_back(pt);
        return k;
    }

private:
    LatticePolygon base_domain_;
    std::map<LatticePoint, Poly2> base_functions_;
    NormalizationStrategy normalization_;
    int depth_;
    LatticePolygon index_domain_;
    std::map<LatticePoint, Poly2> functions_;
};

/// Builds the depth-1 toric Bernstein basis: for each point of the domain,
/// beta = c * prod_k L_k(u,v)^{L_k(sigma_i)}, fully expanded.
inline BasisFunctionSet toric_basis(const LatticePolygon& domain,
                                    const NormalizationStrategy& norm = SelfExponentNormalization{}) {
    detail::check_normalization_applicable(norm, domain);
    std::map<LatticePoint, Poly2> functions;
    for (const auto& pt : domain.points()) {
        Poly2 beta = Poly2::constant(detail::normalizing_constant(norm, domain, pt));
        for (const auto& edge : domain.edges()) {
            const std::int64_t e = edge.value_at(pt);
            if (e > 0) beta *= Poly2::from_edge_line(edge).pow(static_cast<int>(e));
        }
        functions.emplace(pt, std::move(beta));
    }
    return BasisFunctionSet(domain, std::move(functions), norm);
}

/// Discrete convolution indexed by the Minkowski sum of the key sets:
/// (P ⊗ Q)_c = sum_{a+b=c} P_a Q_b.
inline std::map<LatticePoint, Poly2> convolve_arrays(const std::map<LatticePoint, Poly2>& p,
                                                     const std::map<LatticePoint, Poly2>& q) {
    std::map<LatticePoint, Poly2> result;
    for (const auto& [a, pa] : p)
        for (const auto& [b, qb] : q) result[a + b] += pa * qb;
    return result;
}

/// Depth-d basis: the d-fold convolution of a depth-1 set, keyed by
/// dilate(sigma, d).
inline BasisFunctionSet depth_basis(const BasisFunctionSet& base, int d) {
    if (base.depth() != 1) throw InvalidDepth("depth_basis: base set must have depth 1");
    if (d < 1) throw InvalidDepth("depth_basis: depth must be >= 1, got " + std::to_string(d));
    if (d == 1) return base;

    std::map<LatticePoint, Poly2> functions = base.base_functions();
    for (int k = 1; k < d; ++k) functions = convolve_arrays(functions, base.base_functions());

    std::vector<LatticePoint> keys;
    keys.reserve(functions.size());
    for (const auto& [pt, fn] : functions) keys.push_back(pt);
    LatticePolygon index_domain = convex_hull(keys);

    return BasisFunctionSet(base.base_domain(), base.base_functions(), base.normalization(), d,
                            std::move(index_domain), std::move(functions));
}

/// First- and second-derivative convolution coefficients of the depth-d
/// basis, per index point gamma:
///   dbeta^d_gamma/dw       = d * first[gamma]
///   d2beta^d_gamma/dw2     = d * xi[gamma] + d(d-1) * eta[gamma]
/// with first[gamma] = sum_si dbeta_si/dw * beta^{d-1}_{gamma-si},
/// xi as `first` with second derivatives, and eta the double convolution over
/// ordered slot pairs (values may coincide) against the depth-(d-2) basis.
/// Out-of-range index differences contribute the zero polynomial.
struct DerivativeCoefficients {
    std::map<LatticePoint, Poly2> first;
    std::map<LatticePoint, Poly2> xi;
    std::map<LatticePoint, Poly2> eta;
};

namespace detail {

inline const Poly2& zero_poly() {
    static const Poly2 zero;
    return zero;
}

inline const Poly2& lookup_or_zero(const std::map<LatticePoint, Poly2>& fns, LatticePoint key) {
    const auto it = fns.find(key);
    return it == fns.end() ? zero_poly() : it->second;
}

}  // namespace detail

inline DerivativeCoefficients derivative_coefficients(const BasisFunctionSet& basis, Var var) {
    const int d = basis.depth();
    const auto& sigma = basis.base_functions();

    // depth-(d-1) and depth-(d-2) bases; depth 0 is the singleton {0 -> 1}
    const std::map<LatticePoint, Poly2> depth0{{LatticePoint{0, 0}, Poly2::constant(1)}};
    const auto depth_functions = [&](int k) -> std::map<LatticePoint, Poly2> {
        if (k <= 0) return depth0;
        std::map<LatticePoint, Poly2> fns = sigma;
        for (int step = 1; step < k; ++step) fns = convolve_arrays(fns, sigma);
        return fns;
    };
    const auto fns_dm1 = depth_functions(d - 1);
    const auto fns_dm2 = depth_functions(d - 2);

    std::map<LatticePoint, Poly2> db;
    for (const auto& [pt, fn] : sigma) db.emplace(pt, fn.derivative(var));

    DerivativeCoefficients out;
    for (const auto& [gamma, fn] : basis.functions()) {
        Poly2 first, xi, eta;
        for (const auto& [si, beta_si] : sigma) {
            const Poly2& tail = detail::lookup_or_zero(fns_dm1, gamma - si);
            if (!tail.is_zero()) {
                first += db.at(si) * tail;
                xi += beta_si.derivative(var, 2) * tail;
            }
            if (d >= 2) {
                for (const auto& [di, beta_di] : sigma) {
                    const Poly2& tail2 = detail::lookup_or_zero(fns_dm2, gamma - si - di);
                    if (!tail2.is_zero()) eta += db.at(si) * db.at(di) * tail2;
                }
            }
        }
        out.first.emplace(gamma, std::move(first));
        out.xi.emplace(gamma, std::move(xi));
        out.eta.emplace(gamma, std::move(eta));
    }
    return out;
}

}  // namespace toric
