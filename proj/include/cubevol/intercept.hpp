#pragma once

#include "cubevol/instance.hpp"

#include <cstdint>
#include <vector>

namespace cubevol {

struct InterceptResult {
    Rational ell_prime;               // min_j per_axis[j]
    std::vector<Rational> per_axis;   // each a power of 1/2, or 1
    int iterations_used = 0;
};

// Repeated halving per axis: the first z in {1, 1/2, 1/4, ...} with
// f_ij(z) <= b_i for every i. Guarantees l(K)/2 <= ell_prime <= l(K).
// Other coordinates sit at 0 and contribute nothing (normalized instance),
// so each axis test evaluates only that coordinate's functions.
inline InterceptResult find_intercept(const Instance& inst, int max_bits = 128) {
    if (!inst.normalized) fail(errc::internal, "find_intercept requires a normalized instance");
    if (inst.empty) fail(errc::internal, "find_intercept requires a nonempty instance");
    if (max_bits < 1) fail(errc::out_of_range, "max_bits must be >= 1");

    InterceptResult out;
    out.per_axis.reserve(inst.n);
    const auto feasible_on_axis = [&](int j, const Rational& z) {
        for (const auto& c : inst.constraints)
            if (c.fns[j].evaluate(z) > c.bound) return false;
        return true;
    };
    for (int j = 0; j < inst.n; ++j) {
        Rational z(1);
        bool found = false;
        for (int m = 0; m <= max_bits; ++m) {
            ++out.iterations_used;
            if (feasible_on_axis(j, z)) {
                out.per_axis.push_back(z);
                found = true;
                break;
            }
            z = z / Rational(2);
        }
        if (!found)
            fail(errc::intercept_below_budget,
                 "axis " + std::to_string(j) + " infeasible down to 2^-" + std::to_string(max_bits));
    }
    out.ell_prime = out.per_axis[0];
    for (const auto& l : out.per_axis)
        if (l < out.ell_prime) out.ell_prime = l;
    return out;
}

// ceil(n^{2.5}) computed exactly as ceil(sqrt(n^5)).
inline BigInt ceil_n25(int n) {
    const BigInt n5 = pow_int(BigInt(n), 5);
    BigInt s = isqrt(n5);
    if (s * s < n5) s += 1;
    return s;
}

struct ScalePlan {
    BigInt u;
    bool power_of_two = false;
    Rational epsilon;
    Rational delta;  // the counting error epsilon/9
};

// Single-halfspace path: the unique power of two in [9 n^{2.5} M / eps, 2x),
// with M = max{1, max_j w_j / c}.
inline ScalePlan choose_scale_halfspace(int n, const std::vector<BigInt>& w, const BigInt& c,
                                        const Rational& epsilon) {
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");
    if (c <= 0) fail(errc::zero_bound, "canonical capacity must be positive");
    Rational m_ratio(1);
    for (const auto& wj : w) {
        const Rational r = Rational(wj) / Rational(c);
        if (r > m_ratio) m_ratio = r;
    }
    const Rational target = Rational(9 * ceil_n25(n)) * m_ratio / epsilon;
    ScalePlan plan;
    plan.u = next_pow2(target.ceil());
    plan.power_of_two = true;
    plan.epsilon = epsilon;
    plan.delta = epsilon / Rational(9);
    return plan;
}

// Convex paths: u = ceil(9 n^{2.5} / (eps * ell')).
inline ScalePlan choose_scale_convex(int n, const Rational& epsilon, const InterceptResult& intercept) {
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");
    if (!(intercept.ell_prime > Rational(0))) fail(errc::out_of_range, "intercept must be positive");
    const Rational target = Rational(9 * ceil_n25(n)) / (epsilon * intercept.ell_prime);
    ScalePlan plan;
    plan.u = target.ceil();
    if (plan.u < 1) plan.u = 1;
    plan.power_of_two = false;
    plan.epsilon = epsilon;
    plan.delta = epsilon / Rational(9);
    return plan;
}

// Multi-halfspace path: u = ceil((9 n^{2.5} / eps) * max{1, max_ij a_ij / b_i}).
inline ScalePlan choose_scale_multi_linear(int n, const std::vector<std::vector<BigInt>>& a,
                                           const std::vector<BigInt>& b, const Rational& epsilon) {
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");
    Rational m_ratio(1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool nonzero_row = false;
        for (const auto& aij : a[i])
            if (aij != 0) nonzero_row = true;
        if (b[i] == 0 && nonzero_row) fail(errc::zero_bound, "zero bound with a nonzero row");
        if (b[i] <= 0) continue;  // empty/trivial rows are resolved by the caller
        for (const auto& aij : a[i]) {
            const Rational r = Rational(aij) / Rational(b[i]);
            if (r > m_ratio) m_ratio = r;
        }
    }
    const Rational target = Rational(9 * ceil_n25(n)) * m_ratio / epsilon;
    ScalePlan plan;
    plan.u = target.ceil();
    plan.power_of_two = false;
    plan.epsilon = epsilon;
    plan.delta = epsilon / Rational(9);
    return plan;
}

// Upper bound on sqrt(n), exact when n is a perfect square, otherwise within
// 2^-64 of the true root.
inline Rational sqrt_upper(int n) {
    const BigInt scaled = BigInt(n) << 128;
    BigInt s = isqrt(scaled);
    if (s * s < scaled) s += 1;
    return Rational(s, BigInt(1) << 64);
}

// Exact rational upper bound >= (1 + 2 n sqrt(n) / (u * ell))^n, the cube-cover
// inflation factor. Test-side only. Precondition (rational-safe): (u*ell)^2 > 4 n^3.
inline Rational cube_cover_bound(int n, const BigInt& u, const Rational& ell) {
    const Rational ul = Rational(u) * ell;
    if (!(ul * ul > Rational(4 * pow_int(BigInt(n), 3))))
        fail(errc::too_narrow, "cube cover bound needs u*ell > 2 n sqrt(n)");
    const Rational base = Rational(1) + Rational(2 * n) * sqrt_upper(n) / ul;
    return base.pow(n);
}

}  // namespace cubevol
