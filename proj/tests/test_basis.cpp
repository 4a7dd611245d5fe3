#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "reference_cases.hpp"
#include "toric/basis.hpp"

using namespace toric;
using cases::C;
using cases::U;
using cases::V;

namespace {

bool vanishes_on_edge(const Poly2& fn, LatticePoint a, LatticePoint b) {
    const auto coeffs = fn.substitute_line(Rational(a.i), Rational(b.i - a.i), Rational(a.j),
                                           Rational(b.j - a.j));
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

Poly2 basis_sum(const std::map<LatticePoint, Poly2>& fns) {
    Poly2 total;
    for (const auto& [pt, fn] : fns) total += fn;
    return total;
}

}  // namespace

TEST_CASE("trapezoid (2,1,1) basis matches its closed form exactly", "[basis]") {
    const auto basis =
        toric_basis(convex_hull(trapezoid_points(2, 1, 1)), SelfExponentNormalization{});
    const auto expected = cases::trapezoid211_basis();
    REQUIRE(basis.functions().size() == expected.size());
    for (const auto& [pt, fn] : expected) CHECK(basis.at(pt) == fn);
}

TEST_CASE("trapezoid (2,3,1) basis matches its closed form exactly", "[basis]") {
    const auto basis = toric_basis(convex_hull(trapezoid_points(2, 3, 1)),
                                   TrapezoidTensorNormalization{2, 3, 1});
    const auto expected = cases::trapezoid231_basis();
    REQUIRE(basis.functions().size() == expected.size());
    for (const auto& [pt, fn] : expected) CHECK(basis.at(pt) == fn);
}

TEST_CASE("unit square gives the bilinear basis", "[basis]") {
    const auto basis =
        toric_basis(convex_hull(cases::unit_square_points()), SelfExponentNormalization{});
    const Poly2 one_u = C(1) - U(), one_v = C(1) - V();
    CHECK(basis.at({0, 0}) == one_u * one_v);
    CHECK(basis.at({1, 0}) == U() * one_v);
    CHECK(basis.at({0, 1}) == one_u * V());
    CHECK(basis.at({1, 1}) == U() * V());
}

TEST_CASE("trapezoid parameter inference", "[basis]") {
    const auto params = infer_trapezoid_parameters(trapezoid_points(2, 3, 1));
    REQUIRE(params.has_value());
    CHECK(params->n == 2);
    CHECK(params->m == 3);
    CHECK(params->p == 1);
    CHECK_FALSE(infer_trapezoid_parameters(cases::hexagon_points()).has_value());
}

TEST_CASE("inapplicable normalizations are rejected", "[basis]") {
    const auto hex = convex_hull(cases::hexagon_points());
    CHECK_THROWS_AS(toric_basis(hex, TrapezoidTensorNormalization{2, 1, 1}),
                    NormalizationNotApplicable);

    ExplicitNormalization partial;
    partial.constants[{0, 0}] = Rational(1);
    CHECK_THROWS_AS(toric_basis(hex, partial), NormalizationNotApplicable);

    ExplicitNormalization negative;
    for (const auto& pt : hex.points()) negative.constants[pt] = Rational(-1);
    CHECK_THROWS_AS(toric_basis(hex, negative), NormalizationNotApplicable);
}

TEST_CASE("discrete convolution", "[basis]") {
    const auto hex_basis =
        toric_basis(convex_hull(cases::hexagon_points()), SelfExponentNormalization{});

    SECTION("convolution identity") {
        const std::map<LatticePoint, Poly2> identity{{LatticePoint{0, 0}, C(1)}};
        CHECK(convolve_arrays(hex_basis.functions(), identity) == hex_basis.functions());
    }

    SECTION("degree-1 pair self-convolves to the degree-2 triple") {
        const std::map<LatticePoint, Poly2> pair{{LatticePoint{0, 0}, C(1) - U()},
                                                 {LatticePoint{1, 0}, U()}};
        const auto squared = convolve_arrays(pair, pair);
        REQUIRE(squared.size() == 3);
        CHECK(squared.at({0, 0}) == (C(1) - U()).pow(2));
        CHECK(squared.at({1, 0}) == C(2) * U() * (C(1) - U()));
        CHECK(squared.at({2, 0}) == U().pow(2));
    }

    SECTION("total sum factorizes") {
        const auto product = convolve_arrays(hex_basis.functions(), hex_basis.functions());
        CHECK(basis_sum(product) == basis_sum(hex_basis.functions()) * basis_sum(hex_basis.functions()));
    }
}

TEST_CASE("depth basis", "[basis]") {
    const auto hex_basis =
        toric_basis(convex_hull(cases::hexagon_points()), SelfExponentNormalization{});

    SECTION("depth one returns the same set") {
        const auto same = depth_basis(hex_basis, 1);
        CHECK(same.functions() == hex_basis.functions());
        CHECK(same.depth() == 1);
    }

    SECTION("hexagon depth two has 19 functions") {
        const auto d2 = depth_basis(hex_basis, 2);
        CHECK(d2.functions().size() == 19);
        CHECK(d2.depth() == 2);
        CHECK(d2.domain().hull_vertices().size() == 6);
    }

    SECTION("total mass is multiplicative in depth") {
        const Poly2 total = basis_sum(hex_basis.functions());
        CHECK(basis_sum(depth_basis(hex_basis, 2).functions()) == total.pow(2));

        const auto square =
            toric_basis(convex_hull(cases::unit_square_points()), SelfExponentNormalization{});
        const Poly2 square_total = basis_sum(square.functions());
        CHECK(basis_sum(depth_basis(square, 2).functions()) == square_total.pow(2));
        CHECK(basis_sum(depth_basis(square, 3).functions()) == square_total.pow(3));
    }

    SECTION("unit square depth two is the biquadratic tensor basis") {
        const auto square =
            toric_basis(convex_hull(cases::unit_square_points()), SelfExponentNormalization{});
        const auto d2 = depth_basis(square, 2);
        REQUIRE(d2.functions().size() == 9);
        for (std::int64_t i = 0; i <= 2; ++i) {
            for (std::int64_t j = 0; j <= 2; ++j) {
                const Poly2 bu = C(binomial(2, unsigned(i)).convert_to<long long>()) *
                                 U().pow(int(i)) * (C(1) - U()).pow(int(2 - i));
                const Poly2 bv = C(binomial(2, unsigned(j)).convert_to<long long>()) *
                                 V().pow(int(j)) * (C(1) - V()).pow(int(2 - j));
                CHECK(d2.at({i, j}) == bu * bv);
            }
        }
    }

    SECTION("invalid depths") {
        CHECK_THROWS_AS(depth_basis(hex_basis, 0), InvalidDepth);
        CHECK_THROWS_AS(depth_basis(depth_basis(hex_basis, 2), 2), InvalidDepth);
    }
}

TEST_CASE("basis functions vanish on an edge iff their index is off it", "[basis][property]") {
    for (const auto& pts :
         {cases::hexagon_points(), trapezoid_points(2, 1, 1), cases::unit_square_points()}) {
        const auto domain = convex_hull(pts);
        const auto basis = toric_basis(domain, SelfExponentNormalization{});
        const auto& hull = domain.hull_vertices();
        for (const auto& [pt, fn] : basis.functions()) {
            for (std::size_t k = 0; k < hull.size(); ++k) {
                const LatticePoint a = hull[k];
                const LatticePoint b = hull[(k + 1) % hull.size()];
                const bool on_edge = domain.edges()[k].value_at(pt) == 0;
                CHECK(vanishes_on_edge(fn, a, b) == !on_edge);
            }
        }
    }
}

TEST_CASE("corner values", "[basis]") {
    SECTION("self-exponent basis is 1 at its own corner") {
        for (const auto& pts : {cases::hexagon_points(), trapezoid_points(2, 1, 1)}) {
            const auto domain = convex_hull(pts);
            const auto basis = toric_basis(domain, SelfExponentNormalization{});
            for (const auto& corner : domain.hull_vertices())
                CHECK(basis.at(corner)(Rational(corner.i), Rational(corner.j)) == Rational(1));
        }
    }
    SECTION("general normalization gives c times the edge-value product") {
        const auto domain = convex_hull(cases::hexagon_points());
        const auto basis = toric_basis(domain, UnitNormalization{});
        for (const auto& corner : domain.hull_vertices()) {
            Rational expected = 1;
            for (const auto& e : domain.edges()) {
                const auto value = e.value_at(corner);
                expected *= rational_pow(Rational(value), value);
            }
            CHECK(basis.at(corner)(Rational(corner.i), Rational(corner.j)) == expected);
        }
    }
}

TEST_CASE("basis functions are positive at the hull centroid", "[basis][property]") {
    for (const auto& pts : {cases::hexagon_points(), trapezoid_points(2, 1, 1),
                            trapezoid_points(2, 3, 1)}) {
        const auto domain = convex_hull(pts);
        const auto basis = toric_basis(domain, SelfExponentNormalization{});
        const auto [cu, cv] = domain.hull_vertex_centroid();
        for (const auto& [pt, fn] : basis.functions()) CHECK(fn(cu, cv) > 0);
    }
}
