// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every expected value comes from an independent oracle (exact
// inclusion-exclusion volume, exhaustive lattice enumeration, Riemann
// bracketing, 64-bit bisection); every comparison is exact rational.

#include "cubevol/cubevol.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

using namespace cubevol;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto [res, msg] = fn();
        ok = res;
        detail = msg;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ", " << ms << " ms)"
              << std::endl;
    if (!ok) ++failures;
}

UnivariateFn monomial(const Rational& c, std::int64_t e) {
    UnivariateFn f;
    f.poly.push_back({c, e});
    return f;
}

Instance prepare(int n, std::vector<SeparableConstraint> cs) {
    Instance inst;
    inst.n = n;
    inst.constraints = std::move(cs);
    return normalize_offsets(validate(std::move(inst)));
}

Rational canonical_volume(const std::vector<BigInt>& w, const BigInt& c) {
    std::vector<BigInt> pos;
    for (const auto& wj : w)
        if (wj > 0) pos.push_back(wj);
    if (pos.empty()) return Rational(c >= 0 ? 1 : 0);
    if (c <= 0) return Rational(0);
    return exact_halfspace_volume(pos, Rational(c));
}

// w . x <= cap on {0..u-1}^n as a tabulated row
ScaledConstraint linear_lattice_row(const std::vector<BigInt>& w, const BigInt& cap,
                                    std::int64_t u) {
    ScaledConstraint sc;
    sc.n = static_cast<int>(w.size());
    sc.u = u;
    sc.q = 1;
    sc.bound = cap;
    sc.values.resize(sc.n);
    sc.input_length = 1;
    for (int j = 0; j < sc.n; ++j) {
        sc.values[j].reserve(u);
        for (std::int64_t z = 0; z < u; ++z) sc.values[j].push_back(w[j] * z);
    }
    sc.value_length = 8;
    return sc;
}

// ---- shared corpora -------------------------------------------------------

struct HalfspaceCase {
    std::vector<BigInt> a;
    BigInt b;
};

std::vector<HalfspaceCase> halfspace_corpus() {
    std::vector<HalfspaceCase> cases;
    const auto add = [&](std::vector<long long> a, long long b) {
        HalfspaceCase c;
        for (auto v : a) c.a.push_back(v);
        c.b = b;
        cases.push_back(std::move(c));
    };
    // n = 1..6 with coefficients up to the +-20 limit
    add({1}, 0);
    add({2}, 1);
    add({-2}, -1);
    add({20}, 7);
    add({-20}, -13);
    add({1, 1}, 1);
    add({3, 2}, 2);
    add({-3, 2}, 0);
    add({20, -11}, 4);
    add({17, 19}, 23);
    add({1, 1, 1}, 1);
    add({5, 3, 2}, 4);
    add({-4, 7, -2}, 1);
    add({20, 20, 20}, 29);
    add({1, -1, 1}, 0);
    add({1, 2, 3, 4}, 5);
    add({-5, 4, -3, 2}, 0);
    add({11, 7, 13, 5}, 17);
    add({2, 2, 2, 2}, 3);
    add({1, 1, 1, 1, 1}, 2);
    add({6, -2, 5, -4, 3}, 2);
    add({19, 3, 7, 11, 2}, 20);
    add({1, 2, 1, 2, 1, 2}, 4);
    add({-3, 3, -3, 3, -3, 3}, 0);
    add({9, 1, 4, 1, 6, 2}, 10);
    // n = 7..10 kept gentle so the suite stays inside its budget
    add({1, 1, 1, 1, 1, 1, 1}, 3);
    add({2, -1, 2, -1, 2, -1, 2}, 2);
    add({1, 1, 1, 1, 1, 1, 1, 1}, 3);
    add({1, -1, 1, -1, 1, -1, 1, -1}, 0);
    add({1, 1, 1, 1, 1, 1, 1, 1, 1}, 4);
    add({1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 4);
    add({2, 1, 2, 1, 2, 1, 2, 1, 2, 1}, 5);
    return cases;
}

struct ConvexCase {
    Instance inst;
    Rational epsilon;
    std::int64_t resolution;  // Riemann grid for the bracket
    bool multi;
};

std::vector<ConvexCase> convex_corpus() {
    std::vector<ConvexCase> cases;
    UnivariateFn x1 = monomial(Rational(1), 1);
    UnivariateFn x2 = monomial(Rational(1), 2);
    UnivariateFn x3 = monomial(Rational(1), 3);
    UnivariateFn half_x2 = monomial(Rational(1, 2), 2);
    UnivariateFn hinge;
    hinge.pwl = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(1), Rational(1)}};
    UnivariateFn ramp;
    ramp.pwl = {{Rational(0), Rational(0)}, {Rational(1), Rational(2)}};

    // single-constraint bodies
    cases.push_back({prepare(1, {{{x2}, Rational(1, 4)}}), Rational(1, 2), 4096, false});
    cases.push_back({prepare(1, {{{x3}, Rational(1, 8)}}), Rational(1, 2), 4096, false});
    cases.push_back({prepare(2, {{{x2, x2}, Rational(1)}}), Rational(1, 2), 1024, false});
    cases.push_back({prepare(2, {{{x3, x3}, Rational(1, 2)}}), Rational(1, 2), 1024, false});
    cases.push_back({prepare(2, {{{hinge, x1}, Rational(1, 2)}}), Rational(1, 2), 1024, false});
    cases.push_back({prepare(2, {{{ramp, x2}, Rational(1)}}), Rational(1, 2), 1024, false});
    cases.push_back({prepare(3, {{{x2, x2, x2}, Rational(1)}}), Rational(1), 192, false});
    cases.push_back({prepare(3, {{{x1, x2, x3}, Rational(1)}}), Rational(1), 192, false});

    // intersections
    cases.push_back({prepare(2, {{{x1, x1}, Rational(1)}, {{x2, x2}, Rational(1, 2)}}),
                     Rational(1), 1024, true});
    cases.push_back({prepare(2, {{{hinge, x1}, Rational(1, 2)}, {{x2, half_x2}, Rational(1, 2)}}),
                     Rational(1), 1024, true});
    cases.push_back({prepare(2, {{{x2, x3}, Rational(1, 2)}, {{x1, x1}, Rational(3, 2)}}),
                     Rational(1), 1024, true});
    cases.push_back({prepare(3, {{{x2, x2, x2}, Rational(1)}, {{x1, x1, x1}, Rational(2)}}),
                     Rational(3), 192, true});
    return cases;
}

// ---- criteria -------------------------------------------------------------

std::pair<bool, std::string> crit1_halfspace_sandwich() {
    int checks = 0;
    for (const auto& c : halfspace_corpus()) {
        const auto canon = canonicalize_halfspace(c.a, c.b);
        const Rational vol = canonical_volume(canon.w, canon.c);
        for (const Rational& eps : {Rational(1, 2), Rational(1, 4)}) {
            const auto est = volume_halfspace(c.a, c.b, eps);
            if (!(Rational(vol) <= est.estimate && est.estimate <= (Rational(1) + eps) * vol)) {
                std::ostringstream os;
                os << "violated at a[0]=" << c.a[0] << " b=" << c.b << " eps=" << eps
                   << " vol=" << vol << " est=" << est.estimate;
                return {false, os.str()};
            }
            ++checks;
        }
    }
    return {checks >= 60, std::to_string(checks) + " sandwiches over " +
                              std::to_string(halfspace_corpus().size()) + " instances"};
}

std::pair<bool, std::string> crit2_counting_core() {
    int checks = 0;

    // single path, forced small with large debug epsilon
    const std::vector<std::pair<std::vector<long long>, long long>> lin = {
        {{1, 1}, 1}, {{3, -2}, 1}, {{5, 2}, 3}, {{1, 1, 1}, 1}, {{2, -3, 4}, 2}};
    for (const auto& [av, bv] : lin) {
        std::vector<BigInt> a;
        for (auto v : av) a.push_back(v);
        for (const Rational& eps : {Rational(8), Rational(4)}) {
            const auto est = volume_halfspace(a, BigInt(bv), eps);
            const auto canon = canonicalize_halfspace(a, BigInt(bv));
            const int n = static_cast<int>(a.size());
            double points = 1;
            for (int j = 0; j < n; ++j) points *= static_cast<double>(to_int64(est.u));
            if (points > 1e6 || est.u == 0) continue;
            const BigInt z = enumerate_integer_points(
                {linear_lattice_row(canon.w, est.u * canon.c, to_int64(est.u))});
            const Rational zprime = est.estimate * Rational(pow_int(est.u, n));
            if (!(Rational(z) <= zprime && zprime <= (Rational(1) + est.delta) * Rational(z)))
                return {false, "single-path violation at u=" + est.u.str()};
            ++checks;
        }
    }

    // convex single path
    {
        auto inst = prepare(2, {{{monomial(Rational(1), 2), monomial(Rational(1), 2)}, Rational(1)}});
        const auto est = volume_convex(inst, Rational(4));
        const auto rows = tabulate_instance(inst, est.u);
        const BigInt z = enumerate_integer_points(rows);
        const Rational zprime = est.estimate * Rational(pow_int(est.u, 2));
        if (!(Rational(z) <= zprime && zprime <= (Rational(1) + est.delta) * Rational(z)))
            return {false, "convex-path violation"};
        ++checks;
    }

    // multi paths
    {
        const std::vector<std::vector<BigInt>> A{{BigInt(1), BigInt(1)}, {BigInt(2), BigInt(1)}};
        const std::vector<BigInt> b{BigInt(1), BigInt(1)};
        const auto est = volume_multi_halfspace(A, b, Rational(4));
        std::vector<ScaledConstraint> rows;
        for (std::size_t i = 0; i < A.size(); ++i)
            rows.push_back(linear_lattice_row(A[i], est.u * b[i], to_int64(est.u)));
        const BigInt z = enumerate_integer_points(rows);
        const Rational zprime = est.estimate * Rational(pow_int(est.u, 2));
        if (!(Rational(z) <= zprime && zprime <= (Rational(1) + est.delta) * Rational(z)))
            return {false, "multi-halfspace violation"};
        ++checks;

        auto inst = prepare(2, {{{monomial(Rational(1), 1), monomial(Rational(1), 1)}, Rational(1)},
                                {{monomial(Rational(1), 2), monomial(Rational(1), 2)}, Rational(1)}});
        const auto est2 = volume_multi_convex(inst, Rational(4));
        const auto rows2 = tabulate_instance(inst, est2.u);
        const BigInt z2 = enumerate_integer_points(rows2);
        const Rational zprime2 = est2.estimate * Rational(pow_int(est2.u, 2));
        if (!(Rational(z2) <= zprime2 && zprime2 <= (Rational(1) + est2.delta) * Rational(z2)))
            return {false, "multi-convex violation"};
        ++checks;
    }
    return {checks >= 10, std::to_string(checks) + " pipeline counts vs enumeration"};
}

std::pair<bool, std::string> crit3_binary_expansion() {
    long long checks = 0;
    for (int n = 1; n <= 3; ++n) {
        for (std::int64_t u : {2, 4, 8, 16}) {
            std::vector<std::int64_t> a(n, 0);
            while (true) {
                // lattice counts per cap 0..40
                std::vector<long long> lattice(41, 0);
                std::vector<std::int64_t> x(n, 0);
                while (true) {
                    std::int64_t s = 0;
                    for (int j = 0; j < n; ++j) s += a[j] * x[j];
                    if (s <= 40) ++lattice[s];
                    int d = n - 1;
                    while (d >= 0 && ++x[d] == u) x[d--] = 0;
                    if (d < 0) break;
                }
                // expanded 0-1 counts per cap
                std::vector<BigInt> abig;
                for (auto v : a) abig.push_back(v);
                const auto exp = binary_expand(abig, BigInt(40), BigInt(u));
                const int bits = static_cast<int>(exp.w.size());
                std::vector<long long> expanded(41, 0);
                for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
                    std::int64_t s = 0;
                    for (int j = 0; j < bits; ++j)
                        if (mask & (std::uint64_t(1) << j)) s += to_int64(exp.w[j]);
                    if (s <= 40) ++expanded[s];
                }
                long long lc = 0, ec = 0;
                for (int cap = 0; cap <= 40; ++cap) {
                    lc += lattice[cap];
                    ec += expanded[cap];
                    if (lc != ec)
                        return {false, "mismatch at n=" + std::to_string(n) +
                                           " u=" + std::to_string(u) + " cap=" + std::to_string(cap)};
                    ++checks;
                }
                int d = n - 1;
                while (d >= 0 && ++a[d] == 8) a[d--] = 0;
                if (d < 0) break;
            }
        }
    }
    return {checks > 0, std::to_string(checks) + " (a, u, cap) cells, all exact"};
}

std::pair<bool, std::string> crit4_dyer_sandwich() {
    int checks = 0;
    std::vector<std::pair<Instance, std::int64_t>> corpus;
    UnivariateFn x1 = monomial(Rational(1), 1);
    UnivariateFn x2 = monomial(Rational(1), 2);
    UnivariateFn dbl = monomial(Rational(2), 1);
    UnivariateFn hinge;
    hinge.pwl = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(1), Rational(1)}};

    for (std::int64_t u : {8, 16, 32}) {
        corpus.push_back({prepare(2, {{{x1, x1}, Rational(1)}}), u});
        corpus.push_back({prepare(2, {{{x2, x2}, Rational(1, 2)}}), u});
        corpus.push_back({prepare(2, {{{x1, dbl}, Rational(1)}, {{x2, x2}, Rational(1)}}), u});
        corpus.push_back({prepare(2, {{{hinge, x1}, Rational(1, 2)}, {{x1, x1}, Rational(3, 2)}}), u});
        corpus.push_back({prepare(3, {{{x1, x1, x1}, Rational(2)}}), u});
        corpus.push_back({prepare(3, {{{x2, x1, x2}, Rational(1)}, {{x1, x1, x1}, Rational(5, 2)}}), u});
        corpus.push_back({prepare(3, {{{x2, x2, x2}, Rational(3, 4)}}), u});
    }
    for (const auto& [inst, u] : corpus) {
        const auto rows = tabulate_instance(inst, u);
        const auto rcs = dyer_round(rows);
        const BigInt z = enumerate_integer_points(rows);
        BigInt s = 0;
        {
            std::vector<std::int64_t> x(inst.n, 0);
            while (true) {
                bool ok = true;
                for (int i = 0; i < rcs.k && ok; ++i) {
                    BigInt sum = 0;
                    for (int j = 0; j < rcs.n; ++j) sum += rcs.h[i][j][x[j]];
                    if (sum > rcs.cap) ok = false;
                }
                if (ok) s += 1;
                int d = inst.n - 1;
                while (d >= 0 && ++x[d] == u) x[d--] = 0;
                if (d < 0) break;
            }
        }
        const BigInt limit = 2 * pow_int(BigInt(inst.n), inst.k());
        if (!(z <= s && s <= limit * z))
            return {false, "|Z|=" + z.str() + " |S|=" + s.str() + " limit=" + BigInt(limit * z).str()};
        ++checks;
    }
    return {checks >= 20, std::to_string(checks) + " instances, |Z| <= |S| <= 2 n^k |Z|"};
}

std::pair<bool, std::string> crit5_cube_cover() {
    int checks = 0;
    const std::vector<std::pair<std::vector<long long>, std::string>> corpus = {
        {{1, 1}, "1"},   {{2, 1}, "1"},   {{1, 3}, "2"},  {{4, 5}, "3"}, {{1, 1}, "3/2"},
        {{5, 2}, "2"},   {{3, 3}, "2"},   {{7, 2}, "4"},  {{2, 5}, "3"}, {{1, 2}, "1"},
        {{6, 1}, "5"},   {{2, 2}, "1"}};
    for (const auto& [av, bs] : corpus) {
        std::vector<BigInt> a;
        std::vector<SeparableConstraint> cs(1);
        for (auto v : av) {
            a.push_back(v);
            cs[0].fns.push_back(monomial(Rational(v), 1));
        }
        cs[0].bound = parse_rational(bs);
        auto inst = prepare(2, std::move(cs));
        const Rational vol = exact_halfspace_volume(a, inst.constraints[0].bound);

        // true minimum axis intercept of the body
        Rational ell(1);
        for (auto v : av) {
            const Rational axis = inst.constraints[0].bound / Rational(v);
            if (axis < ell) ell = axis;
        }

        const BigInt u = 64;
        const auto rep1 = check_cube_cover(tabulate_instance(inst, u), 2, u, ell, vol);
        const auto rep2 = check_cube_cover(tabulate_instance(inst, 2 * u), 2, 2 * u, ell, vol);
        if (!rep1.pass || !rep2.pass) return {false, "cover bound violated"};
        if (!(rep2.ratio <= rep1.ratio)) return {false, "ratio did not shrink with scale"};
        ++checks;
    }
    return {checks >= 10, std::to_string(checks) + " instances at u and 2u"};
}

std::pair<bool, std::string> crit6_robp_invariants() {
    int checks = 0;

    // (a) + (b) + (c) on single-constraint programs
    std::vector<std::pair<Instance, std::int64_t>> singles;
    UnivariateFn x1 = monomial(Rational(1), 1);
    UnivariateFn x2 = monomial(Rational(1), 2);
    singles.push_back({prepare(2, {{{x1, x1}, Rational(1)}}), 16});
    singles.push_back({prepare(2, {{{x2, x2}, Rational(1)}}), 24});
    singles.push_back({prepare(3, {{{x1, x2, x1}, Rational(3, 2)}}), 10});
    for (const auto& [inst, u] : singles) {
        const auto rows = tabulate_instance(inst, u);
        const Rational delta(1, 8);
        const auto rr = round_robp_single(rows[0], delta);
        const BigInt z = enumerate_integer_points(rows);
        const Rational eta = rr.robp.eta;

        // (a) every exactly feasible point accepted
        std::vector<std::int64_t> x(inst.n, 0);
        while (true) {
            if (!rows[0].violates(x) && evaluate_robp(rr.robp, x) != 1)
                return {false, "feasible point rejected by the rounded program"};
            int d = inst.n - 1;
            while (d >= 0 && ++x[d] == u) x[d--] = 0;
            if (d < 0) break;
        }
        // (b) start-probability inflation
        if (!(rr.zprime >= Rational(z) &&
              rr.zprime <= (Rational(1) + eta).pow(inst.n) * Rational(z)))
            return {false, "start probability inflated beyond (1+eta)^n"};
        // (c) widths
        const Rational width_cap =
            Rational(1) + Rational(2 * inst.n * ceil_log2(BigInt(u))) / eta;
        for (const auto& layer : rr.robp.layers)
            if (Rational(BigInt(layer.breakpoints.size())) > width_cap)
                return {false, "layer width above 1 + 2 n log2(u)/eta"};
        ++checks;
    }

    // (b) under the source distribution, plus (d)
    std::vector<std::pair<Instance, std::int64_t>> multis;
    multis.push_back({prepare(2, {{{x1, x1}, Rational(1)}, {{monomial(Rational(2), 1), x1}, Rational(1)}}), 16});
    multis.push_back({prepare(2, {{{x2, x2}, Rational(1)}, {{x1, x1}, Rational(3, 2)}}), 20});
    multis.push_back({prepare(3, {{{x1, x1, x1}, Rational(2)}, {{x2, x2, x2}, Rational(1)}}), 8});
    for (const auto& [inst, u] : multis) {
        const auto rows = tabulate_instance(inst, u);
        const auto rcs = dyer_round(rows);
        const auto src = build_source(rcs);

        // (d) source width and exact count
        if (src.width() > to_int64(pow_int(BigInt(2) * inst.n * inst.n * inst.n, inst.k())))
            return {false, "source width above (2 n^3)^k"};
        BigInt s_count = 0;
        std::vector<std::int64_t> x(inst.n, 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < rcs.k && ok; ++i) {
                BigInt sum = 0;
                for (int j = 0; j < rcs.n; ++j) sum += rcs.h[i][j][x[j]];
                if (sum > rcs.cap) ok = false;
            }
            if (ok) s_count += 1;
            int d = inst.n - 1;
            while (d >= 0 && ++x[d] == u) x[d--] = 0;
            if (d < 0) break;
        }
        if (src.total() != s_count) return {false, "A_D(root) != |S|"};

        // (b) measured inflation under D for each constraint
        const Rational eta(1, 50);
        for (int i = 0; i < inst.k(); ++i) {
            const auto part = round_robp_vs_source(rows[i], src, eta);
            BigInt exact_in_s = 0, rounded_in_s = 0;
            x.assign(inst.n, 0);
            while (true) {
                bool in_s = true;
                for (int c = 0; c < rcs.k && in_s; ++c) {
                    BigInt sum = 0;
                    for (int j = 0; j < rcs.n; ++j) sum += rcs.h[c][j][x[j]];
                    if (sum > rcs.cap) in_s = false;
                }
                if (in_s) {
                    const bool exact_ok = !rows[i].violates(x);
                    const bool rounded_ok = part.evaluate(x) == 1;
                    if (exact_ok && !rounded_ok) return {false, "monotone rounding violated"};
                    if (exact_ok) exact_in_s += 1;
                    if (rounded_ok) rounded_in_s += 1;
                }
                int d = inst.n - 1;
                while (d >= 0 && ++x[d] == u) x[d--] = 0;
                if (d < 0) break;
            }
            if (!(Rational(exact_in_s) <= Rational(rounded_in_s) &&
                  Rational(rounded_in_s) <= (Rational(1) + eta).pow(inst.n) * Rational(exact_in_s)))
                return {false, "source-measured inflation out of range"};
        }
        ++checks;
    }
    return {checks >= 6, std::to_string(checks) + " programs over (a)-(d)"};
}

std::pair<bool, std::string> crit7_convex_pipelines() {
    int checks = 0;
    for (const auto& c : convex_corpus()) {
        const auto bracket = riemann_volume_bounds(c.inst, c.resolution);
        if (!(bracket.upper - bracket.lower < c.epsilon / Rational(4) * bracket.lower))
            return {false, "oracle bracket too wide at resolution " + std::to_string(c.resolution)};
        const VolumeEstimate est =
            c.multi ? volume_multi_convex(c.inst, c.epsilon) : volume_convex(c.inst, c.epsilon);
        if (!(bracket.lower <= est.estimate &&
              est.estimate <= (Rational(1) + c.epsilon) * bracket.upper)) {
            std::ostringstream os;
            os << "estimate " << est.estimate << " outside [" << bracket.lower << ", "
               << (Rational(1) + c.epsilon) * bracket.upper << "]";
            return {false, os.str()};
        }
        ++checks;
    }
    return {checks >= 10, std::to_string(checks) + " convex bodies inside their brackets"};
}

std::pair<bool, std::string> crit8_determinism() {
    int checks = 0;
    const auto same = [](const VolumeEstimate& a, const VolumeEstimate& b) {
        return a.estimate.str() == b.estimate.str() && a.u == b.u;
    };
    const std::vector<BigInt> a{BigInt(3), BigInt(-2), BigInt(7)};
    if (!same(volume_halfspace(a, BigInt(2), Rational(1, 3)),
              volume_halfspace(a, BigInt(2), Rational(1, 3))))
        return {false, "halfspace estimates differ"};
    ++checks;

    auto ball = prepare(2, {{{monomial(Rational(1), 2), monomial(Rational(1), 2)}, Rational(1)}});
    if (!same(volume_convex(ball, Rational(1, 2)), volume_convex(ball, Rational(1, 2))))
        return {false, "convex estimates differ"};
    ++checks;

    const std::vector<std::vector<BigInt>> A{{BigInt(1), BigInt(1)}, {BigInt(2), BigInt(1)}};
    const std::vector<BigInt> b{BigInt(1), BigInt(1)};
    if (!same(volume_multi_halfspace(A, b, Rational(1, 2)),
              volume_multi_halfspace(A, b, Rational(1, 2))))
        return {false, "multi-halfspace estimates differ"};
    ++checks;

    auto mixed = prepare(2, {{{monomial(Rational(1), 1), monomial(Rational(1), 1)}, Rational(1)},
                             {{monomial(Rational(1), 2), monomial(Rational(1), 2)}, Rational(1)}});
    if (!same(volume_multi_convex(mixed, Rational(1)), volume_multi_convex(mixed, Rational(1))))
        return {false, "multi-convex estimates differ"};
    ++checks;
    return {checks == 4, "4 estimators run twice, byte-identical"};
}

std::pair<bool, std::string> crit9_intercept_contract() {
    int checks = 0;
    std::vector<Instance> corpus;
    UnivariateFn x1 = monomial(Rational(1), 1);
    UnivariateFn x2 = monomial(Rational(1), 2);
    UnivariateFn x3 = monomial(Rational(1), 3);
    UnivariateFn hinge;
    hinge.pwl = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}, {Rational(1), Rational(1)}};
    const std::vector<std::string> bounds = {"1", "1/2", "1/3", "2/3", "1/7", "5/4", "3"};
    for (const auto& bs : bounds) {
        corpus.push_back(prepare(1, {{{x2}, parse_rational(bs)}}));
        corpus.push_back(prepare(2, {{{x1, monomial(Rational(3), 1)}, parse_rational(bs)}}));
        corpus.push_back(prepare(2, {{{x3, x2}, parse_rational(bs)}, {{x1, x1}, Rational(3, 2)}}));
        corpus.push_back(prepare(3, {{{hinge, x2, monomial(Rational(2), 1)}, parse_rational(bs)}}));
    }
    for (const auto& inst : corpus) {
        const auto r = find_intercept(inst);
        // independent 64-bit bisection bracket for the true minimum intercept
        Rational lo_min(2), hi_min(2);
        for (int j = 0; j < inst.n; ++j) {
            const auto feasible = [&](const Rational& z) {
                for (const auto& c : inst.constraints)
                    if (c.fns[j].evaluate(z) > c.bound) return false;
                return true;
            };
            Rational lo(0), hi(1);
            if (feasible(Rational(1))) {
                lo = Rational(1);
            } else {
                for (int i = 0; i < 64; ++i) {
                    const Rational mid = (lo + hi) / Rational(2);
                    (feasible(mid) ? lo : hi) = mid;
                }
            }
            if (lo < lo_min) lo_min = lo;
            if (hi < hi_min) hi_min = hi;
        }
        if (!(lo_min <= Rational(2) * r.ell_prime && r.ell_prime <= hi_min))
            return {false, "intercept outside the bisected bracket"};
        ++checks;
    }
    return {checks >= 20, std::to_string(checks) + " instances against 64-bit bisection"};
}

}  // namespace

int main() {
    criterion("criterion-1 single-halfspace sandwich", crit1_halfspace_sandwich);
    criterion("criterion-2 counting core vs enumeration", crit2_counting_core);
    criterion("criterion-3 binary expansion exactness", crit3_binary_expansion);
    criterion("criterion-4 dyer sandwich", crit4_dyer_sandwich);
    criterion("criterion-5 cube cover", crit5_cube_cover);
    criterion("criterion-6 robp structural invariants", crit6_robp_invariants);
    criterion("criterion-7 convex pipelines", crit7_convex_pipelines);
    criterion("criterion-8 determinism", crit8_determinism);
    criterion("criterion-9 intercept contract", crit9_intercept_contract);
    if (failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
    return 1;
}
