#pragma once

// Frozen reference data shared by the unit tests and the acceptance suite:
// closed-form bases for the worked trapezoid domains and the inner-point
// coefficient tables they must reproduce.

#include <map>
#include <utility>
#include <vector>

#include "toric/basis.hpp"
#include "toric/lattice.hpp"
#include "toric/poly2.hpp"

namespace cases {

using toric::LatticePoint;
using toric::Poly2;
using toric::Rational;
using toric::Var;

inline Poly2 U() { return Poly2::variable(Var::u); }
inline Poly2 V() { return Poly2::variable(Var::v); }
inline Poly2 C(long long num, long long den = 1) { return Poly2::constant(Rational(num, den)); }

/// a*u + b*v + c
inline Poly2 linear(long long a, long long b, long long c) {
    return C(a) * U() + C(b) * V() + C(c);
}

inline std::vector<LatticePoint> hexagon_points() {
    return {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
}

inline std::vector<LatticePoint> unit_square_points() {
    return {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
}

/// Self-exponent basis of the (n,m,p) = (2,1,1) trapezoid in closed form.
inline std::map<LatticePoint, Poly2> trapezoid211_basis() {
    const Poly2 u = U(), v = V();
    const Poly2 tv = linear(0, -1, 2);   // 2 - v
    const Poly2 s = linear(-1, -1, 3);   // 3 - u - v
    std::map<LatticePoint, Poly2> b;
    b[{0, 0}] = C(1, 108) * tv.pow(2) * s.pow(3);
    b[{1, 0}] = C(1, 16) * u * tv.pow(2) * s.pow(2);
    b[{2, 0}] = C(1, 16) * u.pow(2) * tv.pow(2) * s;
    b[{3, 0}] = C(1, 108) * u.pow(3) * tv.pow(2);
    b[{0, 1}] = C(1, 4) * tv * v * s.pow(2);
    b[{0, 2}] = C(1, 4) * v.pow(2) * s;
    b[{1, 2}] = C(1, 4) * u * v.pow(2);
    b[{2, 1}] = C(1, 4) * u.pow(2) * tv * v;
    b[{1, 1}] = u * tv * v * s;
    return b;
}

/// Tensor-normalized basis of the (n,m,p) = (2,3,1) trapezoid in closed form.
inline std::map<LatticePoint, Poly2> trapezoid231_basis() {
    const Poly2 u = U(), v = V();
    const Poly2 tv = linear(0, -1, 2);   // 2 - v
    const Poly2 s = linear(-1, -1, 5);   // 5 - u - v
    std::map<LatticePoint, Poly2> b;
    b[{0, 0}] = C(1, 12500) * tv.pow(2) * s.pow(5);
    b[{1, 0}] = C(1, 2500) * u * tv.pow(2) * s.pow(4);
    b[{2, 0}] = C(1, 1250) * u.pow(2) * tv.pow(2) * s.pow(3);
    b[{3, 0}] = C(1, 1250) * u.pow(3) * tv.pow(2) * s.pow(2);
    b[{4, 0}] = C(1, 2500) * u.pow(4) * tv.pow(2) * s;
    b[{5, 0}] = C(1, 12500) * u.pow(5) * tv.pow(2);
    b[{0, 1}] = C(1, 512) * tv * s.pow(4) * v;
    b[{0, 2}] = C(1, 108) * s.pow(3) * v.pow(2);
    b[{1, 1}] = C(1, 128) * u * tv * s.pow(3) * v;
    b[{2, 1}] = C(3, 256) * u.pow(2) * tv * s.pow(2) * v;
    b[{3, 1}] = C(1, 128) * u.pow(3) * tv * s * v;
    b[{4, 1}] = C(1, 512) * u.pow(4) * tv * v;
    b[{1, 2}] = C(1, 36) * u * s.pow(2) * v.pow(2);
    b[{2, 2}] = C(1, 36) * u.pow(2) * s * v.pow(2);
    b[{3, 2}] = C(1, 108) * u.pow(3) * v.pow(2);
    return b;
}

using CoefficientRow = std::map<LatticePoint, double>;

/// Reference inner-point coefficients for the (2,1,1) trapezoid under the
/// quasi-harmonic functional (self-exponent basis, equal weights).
inline std::map<LatticePoint, CoefficientRow> trapezoid211_constraints() {
    return {{{1, 1},
             {{{0, 0}, 0.0904},
              {{0, 1}, -0.1973},
              {{0, 2}, 0.01430},
              {{1, 0}, 0.1970},
              {{1, 2}, 0.1006},
              {{2, 0}, 0.09269},
              {{2, 1}, -0.1390},
              {{3, 0}, 0.0438}}}};
}

/// Reference inner-point coefficients for the (2,3,1) trapezoid
/// (tensor-normalized basis, equal weights).
inline std::map<LatticePoint, CoefficientRow> trapezoid231_constraints() {
    std::map<LatticePoint, CoefficientRow> rows;
    rows[{1, 1}] = {{{0, 0}, 0.8157},  {{0, 1}, -1.027},   {{0, 2}, 0.3170},
                    {{1, 0}, 0.1815},  {{1, 2}, 0.2146},   {{2, 0}, 0.1106},
                    {{2, 2}, -0.0981}, {{3, 0}, 0.06520},  {{3, 2}, 0.1122},
                    {{4, 0}, 0.0210},  {{4, 1}, -0.07081}, {{5, 0}, 0.02990}};
    rows[{2, 1}] = {{{0, 0}, -0.4561}, {{0, 1}, 0.5450},   {{0, 2}, -0.1718},
                    {{1, 0}, 0.2450},  {{1, 2}, 0.0246},   {{2, 0}, 0.2527},
                    {{2, 2}, 0.7647},  {{3, 0}, 0.03338},  {{3, 2}, -0.3465},
                    {{4, 0}, 0.02031}, {{4, 1}, 0.2384},   {{5, 0}, -0.09169}};
    rows[{3, 1}] = {{{0, 0}, 0.0871},  {{0, 1}, -0.0955},  {{0, 2}, 0.0341},
                    {{1, 0}, -0.0211}, {{1, 2}, -0.0221},  {{2, 0}, 0.1053},
                    {{2, 2}, -0.3099}, {{3, 0}, 0.3448},   {{3, 2}, 0.6595},
                    {{4, 0}, 0.1629},  {{4, 1}, -0.4250},  {{5, 0}, 0.2278}};
    return rows;
}

/// Reported depth-2 hexagon coefficients. The depth-1 normalization behind
/// them is not recoverable, so these are compared informationally only,
/// never asserted.
inline std::map<LatticePoint, CoefficientRow> hexagon_d2_reported_constraints() {
    std::map<LatticePoint, CoefficientRow> rows;
    rows[{1, 1}] = {{{0, 0}, -0.1986}, {{0, 1}, -0.0264}, {{0, 2}, -0.8067},
                    {{1, 0}, 0.1294},  {{1, 3}, -5.9296}, {{2, 0}, -0.4091},
                    {{2, 4}, -19.2105}, {{3, 1}, -5.8759}, {{3, 4}, -38.9767},
                    {{4, 2}, -41.2599}, {{4, 4}, 23.8580}};
    rows[{2, 1}] = {{{0, 0}, -0.0018}, {{0, 1}, 0.0033},  {{0, 2}, -0.0582},
                    {{1, 0}, 0.0045},  {{1, 3}, -1.9341}, {{2, 0}, -0.0698},
                    {{2, 4}, -0.9901}, {{3, 1}, -0.2803}, {{3, 4}, 10.1815},
                    {{4, 2}, -1.1566}, {{4, 4}, 2.804}};
    rows[{1, 2}] = {{{0, 0}, 0.1143},  {{0, 1}, -0.5075}, {{0, 2}, 5.7024},
                    {{1, 0}, -0.3095}, {{1, 3}, 25.0159}, {{2, 0}, 6.2165},
                    {{2, 4}, 110.1030}, {{3, 1}, 25.0099}, {{3, 4}, -3.9603},
                    {{4, 2}, 104.0531}, {{4, 4}, -142.3752}};
    rows[{2, 2}] = {{{0, 1}, 0.0004},  {{0, 2}, -0.0434}, {{1, 0}, 0.0034},
                    {{1, 3}, -0.1725}, {{2, 0}, -0.0285}, {{2, 4}, -0.3504},
                    {{3, 1}, -0.1228}, {{3, 4}, -0.41809}, {{4, 2}, -0.4812},
                    {{4, 4}, -0.0297}};
    rows[{3, 2}] = {{{0, 0}, -0.0010}, {{0, 1}, 0.0020},  {{0, 2}, 0.4605},
                    {{1, 0}, -0.0834}, {{1, 3}, 2.6567},  {{2, 0}, 0.1535},
                    {{2, 4}, 8.5203},  {{3, 1}, 1.1316},  {{3, 4}, -0.0712},
                    {{4, 2}, 6.7355},  {{4, 4}, 4.4061}};
    rows[{2, 3}] = {{{0, 0}, -0.0168}, {{0, 1}, 0.0555},  {{0, 2}, -0.9415},
                    {{1, 0}, 0.0297},  {{1, 3}, -4.0360}, {{2, 0}, -0.8251},
                    {{2, 4}, -19.3765}, {{3, 1}, -3.0281}, {{3, 4}, -2.3478},
                    {{4, 2}, -11.6685}, {{4, 4}, 10.8462}};
    rows[{3, 3}] = {{{0, 0}, 0.0005},  {{0, 1}, -0.0007}, {{0, 2}, -0.0393},
                    {{1, 0}, 0.0060},  {{1, 3}, -0.2230}, {{2, 0}, -0.0299},
                    {{2, 4}, -0.9192}, {{3, 1}, -0.1673}, {{3, 4}, 0.2163},
                    {{4, 2}, -0.9267}, {{4, 3}, -1.0000}, {{4, 4}, -2.9665}};
    return rows;
}

}  // namespace cases
