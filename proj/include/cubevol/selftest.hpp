#pragma once

#include "cubevol/oracles.hpp"
#include "cubevol/volume.hpp"

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace cubevol {

// Compact oracle-vs-estimator corpus behind `cubevol selftest`. Each check
// recomputes its expected value from an independent oracle at run time; the
// budget caps enumeration sizes.
struct SelftestResult {
    int run = 0;
    int passed = 0;
    int skipped = 0;
    std::vector<std::string> lines;

    bool ok() const { return passed == run; }
};

namespace detail {

inline Instance linear_instance(int n, const std::vector<std::vector<long long>>& A,
                                const std::vector<std::string>& b) {
    Instance inst;
    inst.n = n;
    for (std::size_t i = 0; i < A.size(); ++i) {
        SeparableConstraint c;
        c.bound = parse_rational(b[i]);
        for (int j = 0; j < n; ++j) {
            UnivariateFn f;
            if (A[i][j] != 0) f.poly.push_back({Rational(A[i][j]), 1});
            c.fns.push_back(std::move(f));
        }
        inst.constraints.push_back(std::move(c));
    }
    return normalize_offsets(validate(std::move(inst)));
}

inline Instance power_instance(int n, const std::vector<std::vector<int>>& exps,
                               const std::vector<std::string>& b) {
    Instance inst;
    inst.n = n;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        SeparableConstraint c;
        c.bound = parse_rational(b[i]);
        for (int j = 0; j < n; ++j) {
            UnivariateFn f;
            f.poly.push_back({Rational(1), exps[i][j]});
            c.fns.push_back(std::move(f));
        }
        inst.constraints.push_back(std::move(c));
    }
    return normalize_offsets(validate(std::move(inst)));
}

}  // namespace detail

inline SelftestResult run_selftest(double budget = 1e6) {
    SelftestResult res;
    const auto check = [&](const std::string& name, const std::function<bool()>& fn) {
        ++res.run;
        bool ok = false;
        std::string note;
        try {
            ok = fn();
        } catch (const Error& e) {
            if (e.code() == errc::budget_exceeded) {
                --res.run;
                ++res.skipped;
                res.lines.push_back("SKIP " + name + " (budget)");
                return;
            }
            note = std::string(" [") + e.what() + "]";
        }
        if (ok) ++res.passed;
        res.lines.push_back((ok ? "PASS " : "FAIL ") + name + note);
    };

    check("halfspace sandwich a=(1,1) b=1 eps=1/4", [&] {
        const std::vector<BigInt> a{1, 1};
        const auto est = volume_halfspace(a, 1, Rational(1, 4));
        const Rational v = exact_halfspace_volume(a, Rational(1));
        return v <= est.estimate && est.estimate <= (Rational(1) + est.epsilon) * v;
    });

    check("halfspace sandwich a=(-2) b=-1 eps=1/4", [&] {
        const auto est = volume_halfspace({BigInt(-2)}, -1, Rational(1, 4));
        const Rational v(1, 2);
        return v <= est.estimate && est.estimate <= (Rational(1) + est.epsilon) * v;
    });

    check("robp counter vs enumeration (n=2, u=4, x1+x2<=3)", [&] {
        auto inst = detail::linear_instance(2, {{1, 1}}, {"3/4"});
        const auto rows = tabulate_instance(inst, 4);
        const BigInt z = enumerate_integer_points(rows, budget);
        const auto rr = round_robp_single(rows[0], Rational(1, 10), {false, 0});
        return Rational(z) <= rr.zprime && rr.zprime <= Rational(11, 10) * Rational(z) && z == 10;
    });

    check("binary expansion counts match (a=3, u=4, cap=7)", [&] {
        const auto exp = binary_expand({BigInt(3)}, 7, 4);
        BigInt direct = 0;
        for (int x = 0; x < 4; ++x)
            if (3 * x <= 7) ++direct;
        BigInt expanded = 0;
        for (int mask = 0; mask < 4; ++mask) {
            BigInt s = 0;
            for (int j = 0; j < 2; ++j)
                if (mask & (1 << j)) s += exp.w[j];
            if (s <= exp.cap) ++expanded;
        }
        return direct == expanded && direct == 3;
    });

    check("convex pipeline inside riemann bracket (x^2<=1/4)", [&] {
        auto inst = detail::power_instance(1, {{2}}, {"1/4"});
        const auto est = volume_convex(inst, Rational(1, 2));
        const auto bracket = riemann_volume_bounds(inst, 256, budget);
        return bracket.lower <= est.estimate &&
               est.estimate <= (Rational(1) + est.epsilon) * bracket.upper;
    });

    check("multi-halfspace sandwich (triangle 1/4)", [&] {
        const std::vector<std::vector<BigInt>> A{{1, 1}, {2, 1}};
        const std::vector<BigInt> b{1, 1};
        const auto est = volume_multi_halfspace(A, b, Rational(1, 2));
        const Rational v(1, 4);
        return v <= est.estimate && est.estimate <= (Rational(1) + est.epsilon) * v;
    });

    check("dyer sandwich |Z| <= |S| <= 2 n^k |Z| (n=2, k=2, u=8)", [&] {
        auto inst = detail::linear_instance(2, {{1, 1}, {2, 1}}, {"3/4", "1/1"});
        const auto rows = tabulate_instance(inst, 8);
        const BigInt z = enumerate_integer_points(rows, budget);
        const auto src = build_source(dyer_round(rows));
        const BigInt s = src.total();
        const BigInt limit = 2 * pow_int(BigInt(2), 2);
        return z <= s && s <= limit * z;
    });

    check("round_robps sandwich vs enumeration (k=2, n=2)", [&] {
        auto inst = detail::linear_instance(2, {{1, 1}, {2, 1}}, {"3/4", "1/1"});
        const auto rows = tabulate_instance(inst, 8);
        const BigInt z = enumerate_integer_points(rows, budget);
        const auto rr = round_robps(rows, Rational(1, 4));
        return Rational(z) <= rr.zprime && rr.zprime <= Rational(5, 4) * Rational(z);
    });

    check("determinism: repeated runs byte-identical", [&] {
        const std::vector<BigInt> a{3, -1, 2};
        const auto e1 = volume_halfspace(a, 2, Rational(1, 3));
        const auto e2 = volume_halfspace(a, 2, Rational(1, 3));
        return e1.estimate.str() == e2.estimate.str();
    });

    return res;
}

}  // namespace cubevol
