#pragma once

#include "cubevol/function.hpp"
#include "cubevol/instance.hpp"

#include <cstdint>
#include <vector>

namespace cubevol {

// A separable constraint tabulated on the labels {0,...,u-1}. All values and
// the bound are brought to one common denominator q, so the counting core can
// work on integer grid indices: a rational value v is stored as v*q.
//
// Every partial sum of table values and the bound itself sit exactly on this
// grid, which is what makes monotone bisection for breakpoints exact.
struct ScaledConstraint {
    int n = 0;              // coordinates (= layers of the branching program)
    std::int64_t u = 0;     // labels per coordinate
    BigInt q = 1;           // common denominator
    BigInt bound = 0;       // b*q, may be negative
    std::vector<std::vector<BigInt>> values;  // [coord][label], nondecreasing per coord
    std::int64_t input_length = 1;   // L: max encoding length over constraint inputs
    std::int64_t value_length = 1;   // L' = L*ceil(log2 u) + ceil(log2 n)

    Rational value_rational(int j, std::int64_t z) const { return Rational(values[j][z], q); }
    Rational bound_rational() const { return Rational(bound, q); }

    bool violates(const std::vector<std::int64_t>& x) const {
        BigInt total = 0;
        for (int j = 0; j < n; ++j) total += values[j][x[j]];
        return total > bound;
    }
};

namespace detail {

inline std::int64_t value_length_for(std::int64_t input_length, std::int64_t u, int n,
                                     const BigInt& q) {
    std::int64_t lp = input_length * ceil_log2(BigInt(u)) + ceil_log2(BigInt(n));
    if (lp < 1) lp = 1;
    // the zero-probability sentinel b + 1/2^(2L') must clear the value grid
    const std::int64_t grid_bits = ceil_log2(q + 1);
    if (2 * lp < grid_bits) lp = (grid_bits + 1) / 2;
    return lp;
}

}  // namespace detail

// Tabulates one constraint row at lattice scale u: values f_j(x/u) against the
// bound b. Expects the row normalized (f_j(0) = 0).
inline ScaledConstraint tabulate_scaled(const std::vector<UnivariateFn>& fns, const Rational& b,
                                        const BigInt& u, std::int64_t max_labels = (1 << 22)) {
    ScaledConstraint sc;
    sc.n = static_cast<int>(fns.size());
    if (sc.n < 1) fail(errc::dimension_mismatch, "constraint row is empty");
    if (u < 1) fail(errc::out_of_range, "scale u must be >= 1");
    if (u > max_labels)
        fail(errc::budget_exceeded, "scale u = " + u.str() + " exceeds the tabulation budget " +
                                        std::to_string(max_labels));
    sc.u = to_int64(u);

    std::vector<std::vector<Rational>> grid(sc.n);
    BigInt q = b.den();
    for (int j = 0; j < sc.n; ++j) {
        grid[j].reserve(sc.u);
        for (std::int64_t z = 0; z < sc.u; ++z) {
            Rational v = fns[j].evaluate(Rational(BigInt(z), u));
            q = boost::multiprecision::lcm(q, v.den());
            grid[j].push_back(std::move(v));
        }
        if (!grid[j][0].is_zero())
            fail(errc::internal, "tabulate_scaled requires normalized functions (f(0) = 0)");
    }
    sc.q = q;
    sc.bound = b.num() * (q / b.den());
    sc.values.resize(sc.n);
    for (int j = 0; j < sc.n; ++j) {
        sc.values[j].reserve(sc.u);
        for (const auto& v : grid[j]) sc.values[j].push_back(v.num() * (q / v.den()));
    }

    sc.input_length = encoding_length(b);
    for (const auto& f : fns) sc.input_length = std::max(sc.input_length, f.input_encoding_length());
    sc.value_length = detail::value_length_for(sc.input_length, sc.u, sc.n, sc.q);
    return sc;
}

// A 0-1 knapsack w.x <= b as a branching-program table: one coordinate per
// item, labels {0,1}, values {0, w_j}.
inline ScaledConstraint from_weights(const std::vector<BigInt>& w, const BigInt& b) {
    ScaledConstraint sc;
    sc.n = static_cast<int>(w.size());
    if (sc.n < 1) fail(errc::dimension_mismatch, "empty weight vector");
    sc.u = 2;
    sc.q = 1;
    sc.bound = b;
    sc.values.resize(sc.n);
    sc.input_length = encoding_length(Rational(b));
    for (int j = 0; j < sc.n; ++j) {
        if (w[j] < 0) fail(errc::negative_coefficient, "knapsack weights must be nonnegative");
        sc.values[j] = {BigInt(0), w[j]};
        sc.input_length = std::max(sc.input_length, encoding_length(Rational(w[j])));
    }
    sc.value_length = detail::value_length_for(sc.input_length, sc.u, sc.n, sc.q);
    return sc;
}

// Tabulates the scaled rows of a whole instance: g_ij(x) = f_ij(x/u) vs b_i.
inline std::vector<ScaledConstraint> tabulate_instance(const Instance& inst, const BigInt& u,
                                                       std::int64_t max_labels = (1 << 22)) {
    std::vector<ScaledConstraint> rows;
    rows.reserve(inst.constraints.size());
    for (const auto& c : inst.constraints) rows.push_back(tabulate_scaled(c.fns, c.bound, u, max_labels));
    return rows;
}

}  // namespace cubevol
