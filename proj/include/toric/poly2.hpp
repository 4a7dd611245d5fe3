#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toric/errors.hpp"
#include "toric/lattice.hpp"
#include "toric/rational.hpp"

namespace toric {

enum class Var { u, v };

/// Exponent pair of a bivariate monomial u^a v^b.
struct Monomial {
    int a = 0;
    int b = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse bivariate polynomial in (u,v) with exact rational coefficients.
/// Zero coefficients are never stored; term order is (a,b)-lexicographic,
/// which makes iteration, printing, and equality deterministic.
class Poly2 {
public:
    Poly2() = default;

    static Poly2 constant(Rational c) {
        Poly2 p;
        if (c != 0) p.terms_.emplace(Monomial{0, 0}, std::move(c));
        return p;
    }
    static Poly2 monomial(int a, int b, Rational c) {
        Poly2 p;
        if (c != 0) p.terms_.emplace(Monomial{a, b}, std::move(c));
        return p;
    }
    static Poly2 variable(Var var) {
        return var == Var::u ? monomial(1, 0, 1) : monomial(0, 1, 1);
    }
    static Poly2 from_edge_line(const EdgeLine& e) {
        Poly2 p;
        p.add_term({1, 0}, Rational(e.alpha));
        p.add_term({0, 1}, Rational(e.beta));
        p.add_term({0, 0}, Rational(e.gamma));
        return p;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int total_degree() const {
        int deg = 0;
        for (const auto& [m, c] : terms_) deg = std::max(deg, m.a + m.b);
        return deg;
    }

    Rational coefficient(int a, int b) const {
        const auto it = terms_.find(Monomial{a, b});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly2& operator+=(const Poly2& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(m, c);
        return *this;
    }
    Poly2& operator-=(const Poly2& rhs) {
        for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly2 operator+(Poly2 lhs, const Poly2& rhs) { return lhs += rhs; }
    friend Poly2 operator-(Poly2 lhs, const Poly2& rhs) { return lhs -= rhs; }
    friend Poly2 operator-(const Poly2& p) {
        Poly2 r;
        for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Poly2 operator*(const Poly2& lhs, const Poly2& rhs) {
        Poly2 r;
        for (const auto& [ml, cl] : lhs.terms_)
            for (const auto& [mr, cr] : rhs.terms_)
                r.add_term({ml.a + mr.a, ml.b + mr.b}, cl * cr);
        return r;
    }
    Poly2& operator*=(const Poly2& rhs) { return *this = *this * rhs; }

    friend Poly2 operator*(const Poly2& p, const Rational& s) {
        Poly2 r;
        if (s == 0) return r;
        for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, c * s);
        return r;
    }
    friend Poly2 operator*(const Rational& s, const Poly2& p) { return p * s; }

    friend bool operator==(const Poly2&, const Poly2&) = default;

    /// p^e with p^0 = 1.
    Poly2 pow(int exponent) const {
        if (exponent < 0) throw Error("Poly2::pow: negative exponent");
        Poly2 r = constant(1);
        for (int k = 0; k < exponent; ++k) r *= *this;
        return r;
    }

    Poly2 derivative(Var var, int order = 1) const {
        if (order < 1) throw Error("Poly2::derivative: order must be >= 1");
        Poly2 r = *this;
        for (int k = 0; k < order; ++k) r = r.derivative_once(var);
        return r;
    }

    /// Exact evaluation at a rational point.
    Rational operator()(const Rational& u, const Rational& v) const {
        if (terms_.empty()) return Rational(0);
        const auto [ua, vb] = power_tables(u, v);
        Rational sum = 0;
        for (const auto& [m, c] : terms_) sum += c * ua[m.a] * vb[m.b];
        return sum;
    }

    /// Double-precision term sum; for diagnostics where exactness is not
    /// required.
    double operator()(double u, double v) const {
        int max_a = 0, max_b = 0;
        for (const auto& [m, c] : terms_) {
            max_a = std::max(max_a, m.a);
            max_b = std::max(max_b, m.b);
        }
        std::vector<double> ua(max_a + 1, 1.0), vb(max_b + 1, 1.0);
        for (int k = 1; k <= max_a; ++k) ua[k] = ua[k - 1] * u;
        for (int k = 1; k <= max_b; ++k) vb[k] = vb[k - 1] * v;
        double sum = 0;
        for (const auto& [m, c] : terms_) sum += to_double(c) * ua[m.a] * vb[m.b];
        return sum;
    }

    /// Substitutes the line u = u0 + t*du, v = v0 + t*dv; returns the dense
    /// coefficient vector of the resulting univariate polynomial in t.
    std::vector<Rational> substitute_line(const Rational& u0, const Rational& du,
                                          const Rational& v0, const Rational& dv) const {
        std::vector<Rational> out(static_cast<std::size_t>(total_degree()) + 1, Rational(0));
        for (const auto& [m, c] : terms_) {
            // (u0 + du t)^a (v0 + dv t)^b via two binomial expansions
            std::vector<Rational> ua(static_cast<std::size_t>(m.a) + 1);
            for (int k = 0; k <= m.a; ++k)
                ua[k] = Rational(binomial(m.a, k)) * rational_pow(u0, m.a - k) * rational_pow(du, k);
            std::vector<Rational> vb(static_cast<std::size_t>(m.b) + 1);
            for (int k = 0; k <= m.b; ++k)
                vb[k] = Rational(binomial(m.b, k)) * rational_pow(v0, m.b - k) * rational_pow(dv, k);
            for (int p = 0; p <= m.a; ++p)
                for (int q = 0; q <= m.b; ++q) out[p + q] += c * ua[p] * vb[q];
        }
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        return out;
    }

    /// Canonical text form: terms sorted by (a,b), coefficients as "num/den".
    std::string to_string() const {
        if (terms_.empty()) return "0/1";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += to_fraction_string(c);
            if (m.a > 0) s += " u^" + std::to_string(m.a);
            if (m.b > 0) s += " v^" + std::to_string(m.b);
        }
        return s;
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        const auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly2 derivative_once(Var var) const {
        Poly2 r;
        for (const auto& [m, c] : terms_) {
            if (var == Var::u && m.a > 0) r.terms_.emplace(Monomial{m.a - 1, m.b}, c * m.a);
            if (var == Var::v && m.b > 0) r.terms_.emplace(Monomial{m.a, m.b - 1}, c * m.b);
        }
        return r;
    }

    std::pair<std::vector<Rational>, std::vector<Rational>> power_tables(const Rational& u,
                                                                         const Rational& v) const {
        int max_a = 0, max_b = 0;
        for (const auto& [m, c] : terms_) {
            max_a = std::max(max_a, m.a);
            max_b = std::max(max_b, m.b);
        }
        std::vector<Rational> ua(max_a + 1, Rational(1)), vb(max_b + 1, Rational(1));
        for (int k = 1; k <= max_a; ++k) ua[k] = ua[k - 1] * u;
        for (int k = 1; k <= max_b; ++k) vb[k] = vb[k - 1] * v;
        return {std::move(ua), std::move(vb)};
    }

    std::map<Monomial, Rational> terms_;
};

}  // namespace toric
