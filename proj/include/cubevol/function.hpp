#pragma once

#include "cubevol/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace cubevol {

struct Monomial {
    Rational coeff;
    std::int64_t exponent = 1;
};

struct PwlPoint {
    Rational x;
    Rational y;
};

// A univariate constraint term: sum of monomials plus an optional convex
// piecewise-linear part. The representation certifies syntactically that the
// function is nonnegative, nondecreasing and convex on [0, inf):
//   - monomial coefficients >= 0, integer exponents >= 1,
//   - pwl: x strictly increasing from x0 = 0, y nonnegative nondecreasing,
//     slopes nondecreasing; past the last point the final slope extends.
struct UnivariateFn {
    std::vector<Monomial> poly;
    std::vector<PwlPoint> pwl;

    bool has_pwl() const { return !pwl.empty(); }

    bool is_zero() const {
        for (const auto& m : poly)
            if (!m.coeff.is_zero()) return false;
        if (!pwl.empty()) {
            for (const auto& p : pwl)
                if (!p.y.is_zero()) return false;
            if (pwl.size() >= 2) {
                // nonzero extension slope makes the function nonzero eventually
                const auto& a = pwl[pwl.size() - 2];
                const auto& b = pwl.back();
                if (a.y != b.y) return false;
            }
        }
        return true;
    }

    // Single monomial c*x (or identically zero): the linear shape every
    // halfspace path expects.
    bool is_linear() const {
        if (!pwl.empty()) return false;
        if (poly.empty()) return true;
        if (poly.size() != 1) return false;
        return poly[0].exponent == 1;
    }

    Rational linear_coefficient() const {
        if (poly.empty()) return Rational(0);
        return poly[0].coeff;
    }

    Rational value_at_zero() const {
        if (pwl.empty()) return Rational(0);
        return pwl.front().y;
    }

    Rational evaluate(const Rational& x) const {
        if (x.is_negative()) fail(errc::negative_input, "function evaluated at negative input");
        Rational total(0);
        for (const auto& m : poly) total += m.coeff * x.pow(m.exponent);
        if (!pwl.empty()) total += evaluate_pwl(x);
        return total;
    }

    // Subtracts the value at zero; the pwl part carries the whole offset.
    void drop_offset() {
        if (pwl.empty()) return;
        const Rational y0 = pwl.front().y;
        if (y0.is_zero()) return;
        for (auto& p : pwl) p.y -= y0;
    }

    // Largest single-parameter encoding length in this description; monomials
    // account the exponent additively so that values on an Lx-bit input stay
    // within L*Lx bits.
    std::int64_t input_encoding_length() const {
        std::int64_t L = 1;
        for (const auto& m : poly)
            L = std::max(L, encoding_length(m.coeff) + m.exponent);
        for (const auto& p : pwl)
            L = std::max({L, encoding_length(p.x), encoding_length(p.y)});
        return L;
    }

  private:
    Rational evaluate_pwl(const Rational& x) const {
        if (pwl.size() == 1) return pwl.front().y;
        // find segment: largest i with pwl[i].x <= x
        std::size_t i = 0;
        while (i + 1 < pwl.size() && pwl[i + 1].x <= x) ++i;
        if (i + 1 == pwl.size()) i = pwl.size() - 2;  // extend last slope
        const auto& a = pwl[i];
        const auto& b = pwl[i + 1];
        const Rational slope = (b.y - a.y) / (b.x - a.x);
        return a.y + slope * (x - a.x);
    }
};

// Checks the representation invariants. allow_negative_linear admits a single
// monomial c*x with c < 0 (only the one-halfspace path uses this; the sign is
// removed by canonicalization before any counting happens).
inline void validate_fn(const UnivariateFn& f, bool allow_negative_linear) {
    for (const auto& m : f.poly) {
        if (m.exponent < 1) fail(errc::invalid_function, "monomial exponent must be >= 1");
        if (m.coeff.is_negative()) {
            const bool tolerated = allow_negative_linear && f.is_linear();
            if (!tolerated) fail(errc::negative_coefficient, "negative monomial coefficient");
        }
    }
    if (!f.pwl.empty()) {
        if (!f.pwl.front().x.is_zero()) fail(errc::invalid_function, "pwl part must start at x = 0");
        if (f.pwl.front().y.is_negative()) fail(errc::invalid_function, "pwl part must start with y >= 0");
        bool have_prev_slope = false;
        Rational prev_slope(0);
        for (std::size_t i = 0; i + 1 < f.pwl.size(); ++i) {
            const auto& a = f.pwl[i];
            const auto& b = f.pwl[i + 1];
            if (!(a.x < b.x)) fail(errc::invalid_function, "pwl x-coordinates must strictly increase");
            if (b.y < a.y) fail(errc::invalid_function, "pwl must be nondecreasing");
            const Rational slope = (b.y - a.y) / (b.x - a.x);
            if (have_prev_slope && slope < prev_slope)
                fail(errc::non_convex_pwl, "pwl slopes must be nondecreasing");
            prev_slope = slope;
            have_prev_slope = true;
        }
    }
}

}  // namespace cubevol
