#pragma once

#include "cubevol/intercept.hpp"
#include "cubevol/table.hpp"

#include <cstdint>
#include <vector>

namespace cubevol {

// Exact |{ x in {0..u-1}^n : every tabulated constraint holds }| by full
// iteration. Prunes a subtree as soon as the prefix sum alone violates some
// bound; valid because the remaining coordinates can only add >= 0.
inline BigInt enumerate_integer_points(const std::vector<ScaledConstraint>& rows,
                                       double budget = 1e7) {
    if (rows.empty()) fail(errc::dimension_mismatch, "no constraints to enumerate");
    const int n = rows[0].n;
    const std::int64_t u = rows[0].u;
    for (const auto& r : rows)
        if (r.n != n || r.u != u) fail(errc::mismatched_shapes, "tables disagree on n or u");
    double points = 1;
    for (int j = 0; j < n; ++j) {
        points *= static_cast<double>(u);
        if (points > budget)
            fail(errc::budget_exceeded, "u^n exceeds the enumeration budget");
    }

    const int k = static_cast<int>(rows.size());
    std::vector<std::vector<BigInt>> prefix(k, std::vector<BigInt>(n + 1, BigInt(0)));
    BigInt total = 0;

    std::vector<std::int64_t> x(n, 0);
    int depth = 0;
    while (depth >= 0) {
        if (x[depth] >= u) {
            --depth;
            if (depth >= 0) ++x[depth];
            continue;
        }
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            prefix[i][depth + 1] = prefix[i][depth] + rows[i].values[depth][x[depth]];
            if (prefix[i][depth + 1] > rows[i].bound) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            // values are nondecreasing in the label: every larger label fails too
            x[depth] = u;
            continue;
        }
        if (depth == n - 1) {
            total += 1;
            ++x[depth];
        } else {
            ++depth;
            x[depth] = 0;
        }
    }
    return total;
}

inline BigInt enumerate_integer_points(const Instance& inst, const BigInt& u, double budget = 1e7) {
    return enumerate_integer_points(tabulate_instance(inst, u), budget);
}

// vol([0,1]^n cap {a.x <= b}) for strictly positive integer a, by
// inclusion-exclusion over the cube vertices:
//   (1 / (n! prod a_j)) * sum_{S subset [n]} (-1)^|S| max(0, b - sum_{j in S} a_j)^n
inline Rational exact_halfspace_volume(const std::vector<BigInt>& a, const Rational& b) {
    const int n = static_cast<int>(a.size());
    if (n < 1) fail(errc::dimension_mismatch, "empty coefficient vector");
    if (n > 20) fail(errc::too_many_subsets, "inclusion-exclusion limited to n <= 20");
    for (const auto& aj : a)
        if (aj <= 0) fail(errc::negative_coefficient, "oracle requires strictly positive a_j");

    Rational sum(0);
    const std::uint64_t masks = std::uint64_t(1) << n;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        BigInt subset_sum = 0;
        int bits = 0;
        for (int j = 0; j < n; ++j)
            if (mask & (std::uint64_t(1) << j)) {
                subset_sum += a[j];
                ++bits;
            }
        const Rational rest = b - Rational(subset_sum);
        if (rest <= Rational(0)) continue;
        const Rational term = rest.pow(n);
        sum += (bits % 2 == 0) ? term : -term;
    }
    BigInt den = 1;
    for (int j = 2; j <= n; ++j) den *= j;
    for (const auto& aj : a) den *= aj;
    return sum / Rational(den);
}

struct VolumeBracket {
    Rational lower;
    Rational upper;
};

// Riemann bracket at resolution m: a cell counts toward `lower` when its
// max-corner is feasible and toward `upper` when its min-corner is. Monotone
// constraints make these exact under/over counts.
inline VolumeBracket riemann_volume_bounds(const Instance& inst, std::int64_t m,
                                           double budget = 1e7) {
    if (!inst.normalized) fail(errc::internal, "riemann_volume_bounds requires a normalized instance");
    if (m < 1) fail(errc::out_of_range, "resolution must be >= 1");
    double cells = 1;
    for (int j = 0; j < inst.n; ++j) {
        cells *= static_cast<double>(m);
        if (cells > budget) fail(errc::budget_exceeded, "m^n exceeds the grid budget");
    }

    const int n = inst.n;
    const int k = inst.k();
    // corner values f_ij(g/m) for g = 0..m on a per-constraint common
    // denominator, so the sweep below runs on integers
    std::vector<std::vector<std::vector<BigInt>>> corner(k);
    std::vector<BigInt> bound(k);
    for (int i = 0; i < k; ++i) {
        std::vector<std::vector<Rational>> grid(n);
        BigInt q = inst.constraints[i].bound.den();
        for (int j = 0; j < n; ++j) {
            grid[j].reserve(m + 1);
            for (std::int64_t g = 0; g <= m; ++g) {
                Rational v = inst.constraints[i].fns[j].evaluate(Rational(BigInt(g), BigInt(m)));
                q = boost::multiprecision::lcm(q, v.den());
                grid[j].push_back(std::move(v));
            }
        }
        corner[i].assign(n, {});
        for (int j = 0; j < n; ++j) {
            corner[i][j].reserve(m + 1);
            for (const auto& v : grid[j]) corner[i][j].push_back(v.num() * (q / v.den()));
        }
        bound[i] = inst.constraints[i].bound.num() * (q / inst.constraints[i].bound.den());
    }

    BigInt lower_cells = 0, upper_cells = 0;
    std::vector<std::int64_t> x(n, 0);
    std::vector<std::vector<BigInt>> lo_prefix(k, std::vector<BigInt>(n + 1, BigInt(0)));
    std::vector<std::vector<BigInt>> hi_prefix(k, std::vector<BigInt>(n + 1, BigInt(0)));
    int depth = 0;
    while (depth >= 0) {
        if (x[depth] >= m) {
            --depth;
            if (depth >= 0) ++x[depth];
            continue;
        }
        bool lo_ok = true;  // min corners feasible so far
        for (int i = 0; i < k; ++i) {
            lo_prefix[i][depth + 1] = lo_prefix[i][depth] + corner[i][depth][x[depth]];
            hi_prefix[i][depth + 1] = hi_prefix[i][depth] + corner[i][depth][x[depth] + 1];
            if (lo_prefix[i][depth + 1] > bound[i]) lo_ok = false;
        }
        if (!lo_ok) {
            x[depth] = m;  // larger labels only increase the prefix
            continue;
        }
        if (depth == n - 1) {
            upper_cells += 1;
            bool hi_ok = true;
            for (int i = 0; i < k; ++i)
                if (hi_prefix[i][depth + 1] > bound[i]) hi_ok = false;
            if (hi_ok) lower_cells += 1;
            ++x[depth];
        } else {
            ++depth;
            x[depth] = 0;
        }
    }
    const BigInt total = pow_int(BigInt(m), n);
    return {Rational(lower_cells, total), Rational(upper_cells, total)};
}

struct CubeCoverReport {
    BigInt lattice_points;     // |Z| at scale u
    Rational scaled_volume;    // u^n * vol (exact or bracketed)
    Rational bound;            // cube_cover_bound(n, u, ell)
    Rational ratio;            // |Z| / scaled volume
    bool pass = false;
};

// Checks vol(K_u) <= |Z| <= bound * vol(K_u) with the exact volume supplied by
// the caller (linear oracle, or a bracket midpoint for convex with the slack
// folded into `volume`).
inline CubeCoverReport check_cube_cover(const std::vector<ScaledConstraint>& rows, int n,
                                        const BigInt& u, const Rational& ell,
                                        const Rational& volume, double budget = 1e7) {
    CubeCoverReport rep;
    rep.lattice_points = enumerate_integer_points(rows, budget);
    rep.scaled_volume = Rational(pow_int(u, n)) * volume;
    rep.bound = cube_cover_bound(n, u, ell);
    if (rep.scaled_volume.is_zero()) fail(errc::too_narrow, "zero volume has no cover ratio");
    rep.ratio = Rational(rep.lattice_points) / rep.scaled_volume;
    rep.pass = Rational(rep.lattice_points) >= rep.scaled_volume && rep.ratio <= rep.bound;
    return rep;
}

}  // namespace cubevol
