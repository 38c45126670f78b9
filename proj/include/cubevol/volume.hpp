#pragma once

#include "cubevol/intercept.hpp"
#include "cubevol/multi.hpp"
#include "cubevol/oracles.hpp"
#include "cubevol/robp.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace cubevol {

enum class Mode { halfspace, convex, multi_halfspace, multi_convex };

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::halfspace: return "halfspace";
        case Mode::convex: return "convex";
        case Mode::multi_halfspace: return "multi-halfspace";
        case Mode::multi_convex: return "multi-convex";
    }
    return "?";
}

// A certified sandwich estimate: vol <= estimate <= (1+epsilon) vol. The raw
// value is never clamped to [0,1]; tests assert the bound instead.
struct VolumeEstimate {
    Rational estimate;
    Rational epsilon;
    BigInt u = 0;
    Mode mode = Mode::halfspace;

    std::optional<Rational> intercept;  // ell' where the pipeline used one
    Rational delta;                     // counting error epsilon/9
    Rational eta;                       // per-layer rounding factor
    int robp_width = 0;
    int source_width = 0;
    int product_width = 0;
    std::int64_t elapsed_ms = 0;
    std::vector<std::string> warnings;
};

struct EstimateOptions {
    int max_intercept_bits = 128;
    std::int64_t max_labels = (1 << 22);  // tabulation budget per coordinate
    bool materialize_robp = false;        // keep the single-constraint program for dumping
    BigInt scale_override = 0;            // debug: raise u beyond the plan (0 = off)
};

namespace detail {

// Any u at least as large as the plan keeps the sandwich valid.
inline void apply_scale_override(ScalePlan& plan, const EstimateOptions& opts) {
    if (opts.scale_override == 0) return;
    if (opts.scale_override < plan.u)
        fail(errc::out_of_range, "scale override below the planned u");
    if (plan.power_of_two && !is_pow2(opts.scale_override))
        fail(errc::not_power_of_two, "this pipeline requires a power-of-two scale");
    plan.u = opts.scale_override;
}

}  // namespace detail

namespace detail {

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Estimator for [0,1]^n cap {a.x <= b} with integer data of any sign:
// canonicalize to nonnegative weights, scale by a power of two, reduce to 0-1
// knapsack by binary expansion, count with the one-sided ROBP counter.
inline VolumeEstimate volume_halfspace(const std::vector<BigInt>& a, const BigInt& b,
                                       const Rational& epsilon, const EstimateOptions& opts = {},
                                       IntervalROBP* debug_robp = nullptr) {
    if (a.empty()) fail(errc::dimension_mismatch, "empty coefficient vector");
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");
    detail::Stopwatch timer;
    const int n = static_cast<int>(a.size());

    VolumeEstimate est;
    est.mode = Mode::halfspace;
    est.epsilon = epsilon;
    est.delta = epsilon / Rational(9);

    const CanonicalHalfspace canon = canonicalize_halfspace(a, b);
    bool all_zero = true;
    for (const auto& wj : canon.w)
        if (wj != 0) all_zero = false;

    if (all_zero) {
        est.estimate = Rational(canon.c >= 0 ? 1 : 0);
        if (canon.c < 0) est.warnings.push_back("empty");
        est.elapsed_ms = timer.ms();
        return est;
    }
    if (canon.c <= 0) {
        est.estimate = Rational(0);
        est.warnings.push_back(canon.c < 0 ? "empty" : "degenerate: zero capacity");
        est.elapsed_ms = timer.ms();
        return est;
    }

    ScalePlan plan = choose_scale_halfspace(n, canon.w, canon.c, epsilon);
    detail::apply_scale_override(plan, opts);
    est.u = plan.u;
    const BinaryExpansion exp = binary_expand(canon.w, plan.u * canon.c, plan.u);

    const ScaledConstraint knap = from_weights(exp.w, exp.cap);
    est.eta = plan.delta / Rational(2 * knap.n);
    BuildOptions build;
    build.materialize = opts.materialize_robp && debug_robp != nullptr;
    RoundResult rr = round_robp_single(knap, plan.delta, build);
    est.robp_width = rr.max_width;
    if (debug_robp && build.materialize) *debug_robp = std::move(rr.robp);

    est.estimate = rr.zprime / Rational(pow_int(plan.u, n));
    est.elapsed_ms = timer.ms();
    return est;
}

namespace detail {

inline Instance prepared(Instance inst) {
    if (!inst.validated) inst = validate(std::move(inst));
    if (!inst.normalized) inst = normalize_offsets(std::move(inst));
    return inst;
}

// Resolves zero bounds ahead of scaling: a zero bound with a nonzero row pins
// the volume to 0; all-zero rows with nonnegative bounds are dropped.
// Returns false when the volume is already known to be 0.
inline bool resolve_trivial_rows(Instance& inst, std::vector<std::string>& warnings) {
    std::vector<SeparableConstraint> kept;
    for (auto& c : inst.constraints) {
        bool zero_row = true;
        for (const auto& f : c.fns)
            if (!f.is_zero()) zero_row = false;
        if (zero_row) {
            if (c.bound.is_negative()) {
                warnings.push_back("empty");
                return false;
            }
            continue;
        }
        if (c.bound.is_zero()) {
            warnings.push_back("degenerate: zero bound");
            return false;
        }
        if (c.bound.is_negative()) {
            warnings.push_back("empty");
            return false;
        }
        kept.push_back(std::move(c));
    }
    inst.constraints = std::move(kept);
    return true;
}

}  // namespace detail

// Estimator for one separable convex constraint: approximate the least
// axis-intercept, scale so the lattice is fine enough, count with ROUND_ROBP.
inline VolumeEstimate volume_convex(const Instance& instance, const Rational& epsilon,
                                    const EstimateOptions& opts = {},
                                    IntervalROBP* debug_robp = nullptr) {
    detail::Stopwatch timer;
    Instance inst = detail::prepared(instance);
    if (inst.k() != 1) fail(errc::dimension_mismatch, "volume_convex expects exactly one constraint");
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");

    VolumeEstimate est;
    est.mode = Mode::convex;
    est.epsilon = epsilon;
    est.delta = epsilon / Rational(9);

    if (inst.empty) {
        est.estimate = Rational(0);
        est.warnings.push_back("empty");
        est.elapsed_ms = timer.ms();
        return est;
    }
    if (!detail::resolve_trivial_rows(inst, est.warnings)) {
        est.estimate = Rational(0);
        est.elapsed_ms = timer.ms();
        return est;
    }
    if (inst.constraints.empty()) {
        est.estimate = Rational(1);  // every constraint was trivial
        est.elapsed_ms = timer.ms();
        return est;
    }

    InterceptResult intercept;
    try {
        intercept = find_intercept(inst, opts.max_intercept_bits);
    } catch (const Error& e) {
        if (e.code() != errc::intercept_below_budget) throw;
        est.estimate = Rational(0);
        est.warnings.push_back("volume < 2^-" + std::to_string(opts.max_intercept_bits));
        est.elapsed_ms = timer.ms();
        return est;
    }
    est.intercept = intercept.ell_prime;

    ScalePlan plan = choose_scale_convex(inst.n, epsilon, intercept);
    detail::apply_scale_override(plan, opts);
    est.u = plan.u;
    const ScaledConstraint row =
        tabulate_scaled(inst.constraints[0].fns, inst.constraints[0].bound, plan.u, opts.max_labels);
    est.eta = plan.delta / Rational(2 * row.n);

    BuildOptions build;
    build.materialize = opts.materialize_robp && debug_robp != nullptr;
    RoundResult rr = round_robp_single(row, plan.delta, build);
    est.robp_width = rr.max_width;
    if (debug_robp && build.materialize) *debug_robp = std::move(rr.robp);

    est.estimate = rr.zprime / Rational(pow_int(plan.u, inst.n));
    est.elapsed_ms = timer.ms();
    return est;
}

// Estimator for k nonnegative halfspaces: scale, Dyer-round, count the
// intersection through the small-space source.
inline VolumeEstimate volume_multi_halfspace(const std::vector<std::vector<BigInt>>& A,
                                             const std::vector<BigInt>& b, const Rational& epsilon,
                                             const EstimateOptions& opts = {}) {
    detail::Stopwatch timer;
    if (A.empty() || A.size() != b.size()) fail(errc::dimension_mismatch, "A and b disagree");
    const int n = static_cast<int>(A[0].size());
    for (const auto& row : A) {
        if (static_cast<int>(row.size()) != n) fail(errc::dimension_mismatch, "ragged matrix");
        for (const auto& aij : row)
            if (aij < 0)
                fail(errc::negative_coefficient,
                     "multiple halfspaces require nonnegative coefficients");
    }
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");

    VolumeEstimate est;
    est.mode = Mode::multi_halfspace;
    est.epsilon = epsilon;
    est.delta = epsilon / Rational(9);

    // resolve rows that cannot be scaled: negative or zero bounds, zero rows
    std::vector<std::vector<BigInt>> rows_a;
    std::vector<BigInt> rows_b;
    for (std::size_t i = 0; i < A.size(); ++i) {
        bool zero_row = true;
        for (const auto& aij : A[i])
            if (aij != 0) zero_row = false;
        if (b[i] < 0) {
            est.estimate = Rational(0);
            est.warnings.push_back("empty");
            est.elapsed_ms = timer.ms();
            return est;
        }
        if (zero_row) continue;
        if (b[i] == 0) {
            est.estimate = Rational(0);
            est.warnings.push_back("degenerate: zero bound");
            est.elapsed_ms = timer.ms();
            return est;
        }
        rows_a.push_back(A[i]);
        rows_b.push_back(b[i]);
    }
    if (rows_a.empty()) {
        est.estimate = Rational(1);
        est.elapsed_ms = timer.ms();
        return est;
    }

    ScalePlan plan = choose_scale_multi_linear(n, rows_a, rows_b, epsilon);
    detail::apply_scale_override(plan, opts);
    est.u = plan.u;

    // tabulate a_i . x <= u b_i directly on the integer lattice
    std::vector<ScaledConstraint> rows;
    rows.reserve(rows_a.size());
    const std::int64_t u64 = to_int64(plan.u);
    if (plan.u > opts.max_labels) fail(errc::budget_exceeded, "scale exceeds tabulation budget");
    for (std::size_t i = 0; i < rows_a.size(); ++i) {
        ScaledConstraint sc;
        sc.n = n;
        sc.u = u64;
        sc.q = 1;
        sc.bound = plan.u * rows_b[i];
        sc.values.resize(n);
        sc.input_length = encoding_length(Rational(rows_b[i]));
        for (int j = 0; j < n; ++j) {
            sc.values[j].reserve(u64);
            for (std::int64_t z = 0; z < u64; ++z) sc.values[j].push_back(rows_a[i][j] * z);
            sc.input_length = std::max(sc.input_length, encoding_length(Rational(rows_a[i][j])));
        }
        sc.value_length = detail::value_length_for(sc.input_length, sc.u, sc.n, sc.q);
        rows.push_back(std::move(sc));
    }

    const RoundRobpsResult rr = round_robps(rows, plan.delta);
    est.eta = rr.eta;
    est.robp_width = rr.robp_width;
    est.source_width = rr.source_width;
    est.product_width = rr.product_width;
    est.estimate = rr.zprime / Rational(pow_int(plan.u, n));
    est.elapsed_ms = timer.ms();
    return est;
}

// Estimator for k separable convex constraints.
inline VolumeEstimate volume_multi_convex(const Instance& instance, const Rational& epsilon,
                                          const EstimateOptions& opts = {}) {
    detail::Stopwatch timer;
    Instance inst = detail::prepared(instance);
    if (inst.k() < 1) fail(errc::dimension_mismatch, "at least one constraint required");
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");

    VolumeEstimate est;
    est.mode = Mode::multi_convex;
    est.epsilon = epsilon;
    est.delta = epsilon / Rational(9);

    if (inst.empty) {
        est.estimate = Rational(0);
        est.warnings.push_back("empty");
        est.elapsed_ms = timer.ms();
        return est;
    }
    if (!detail::resolve_trivial_rows(inst, est.warnings)) {
        est.estimate = Rational(0);
        est.elapsed_ms = timer.ms();
        return est;
    }
    if (inst.constraints.empty()) {
        est.estimate = Rational(1);
        est.elapsed_ms = timer.ms();
        return est;
    }

    InterceptResult intercept;
    try {
        intercept = find_intercept(inst, opts.max_intercept_bits);
    } catch (const Error& e) {
        if (e.code() != errc::intercept_below_budget) throw;
        est.estimate = Rational(0);
        est.warnings.push_back("volume < 2^-" + std::to_string(opts.max_intercept_bits));
        est.elapsed_ms = timer.ms();
        return est;
    }
    est.intercept = intercept.ell_prime;

    ScalePlan plan = choose_scale_convex(inst.n, epsilon, intercept);
    detail::apply_scale_override(plan, opts);
    est.u = plan.u;
    const std::vector<ScaledConstraint> rows = tabulate_instance(inst, plan.u, opts.max_labels);

    const RoundRobpsResult rr = round_robps(rows, plan.delta);
    est.eta = rr.eta;
    est.robp_width = rr.robp_width;
    est.source_width = rr.source_width;
    est.product_width = rr.product_width;
    est.estimate = rr.zprime / Rational(pow_int(plan.u, inst.n));
    est.elapsed_ms = timer.ms();
    return est;
}

}  // namespace cubevol
