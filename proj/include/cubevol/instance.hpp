#pragma once

#include "cubevol/function.hpp"

#include <string>
#include <vector>

namespace cubevol {

// One row "sum_j f_ij(x_j) <= bound" of a truncated-cube instance.
struct SeparableConstraint {
    std::vector<UnivariateFn> fns;
    Rational bound;
};

enum class InstanceKind { linear, convex };

inline const char* kind_name(InstanceKind k) {
    return k == InstanceKind::linear ? "linear" : "convex";
}

// The unit cube [0,1]^n intersected with k separable constraints.
struct Instance {
    int n = 0;
    std::vector<SeparableConstraint> constraints;
    InstanceKind kind = InstanceKind::convex;
    bool validated = false;
    bool normalized = false;
    bool empty = false;  // some bound is violated already at the origin

    int k() const { return static_cast<int>(constraints.size()); }
};

inline InstanceKind classify(const Instance& inst) {
    for (const auto& c : inst.constraints)
        for (const auto& f : c.fns)
            if (!f.is_linear()) return InstanceKind::convex;
    return InstanceKind::linear;
}

// Checks representation invariants, computes the kind tag, and flags empty
// instances (some b_i below the value at the origin). Multi-constraint linear
// instances must have nonnegative coefficients: with mixed signs even deciding
// emptiness of the lattice set is NP-hard, so such inputs are rejected rather
// than transformed.
inline Instance validate(Instance inst) {
    if (inst.n < 1) fail(errc::dimension_mismatch, "dimension must be >= 1");
    for (const auto& c : inst.constraints) {
        if (static_cast<int>(c.fns.size()) != inst.n)
            fail(errc::dimension_mismatch, "constraint row has " + std::to_string(c.fns.size()) +
                                               " functions, expected " + std::to_string(inst.n));
    }
    inst.kind = classify(inst);
    const bool single_linear = inst.kind == InstanceKind::linear && inst.k() == 1;
    for (const auto& c : inst.constraints)
        for (const auto& f : c.fns) validate_fn(f, /*allow_negative_linear=*/single_linear);

    inst.empty = false;
    for (const auto& c : inst.constraints) {
        Rational at_zero(0);
        for (const auto& f : c.fns) at_zero += f.value_at_zero();
        if (c.bound < at_zero) inst.empty = true;
    }
    inst.validated = true;
    return inst;
}

// Shifts every f_ij by -f_ij(0) and each bound by -sum_j f_ij(0). The feasible
// set is unchanged and afterwards every function vanishes at the origin.
inline Instance normalize_offsets(Instance inst) {
    if (!inst.validated) fail(errc::internal, "normalize_offsets requires a validated instance");
    for (auto& c : inst.constraints) {
        Rational shift(0);
        for (auto& f : c.fns) {
            shift += f.value_at_zero();
            f.drop_offset();
        }
        c.bound -= shift;
    }
    inst.normalized = true;
    return inst;
}

struct CanonicalHalfspace {
    std::vector<BigInt> w;       // |a_j|
    BigInt c;                    // b + sum over negative coordinates of |a_j|
    std::vector<int> flip_set;   // J = { j : a_j < 0 }
};

// Affine change of coordinates x_j -> 1 - x_j on the flip set J turns
// a.x <= b into w.x <= c with w >= 0 and identical volume.
inline CanonicalHalfspace canonicalize_halfspace(const std::vector<BigInt>& a, const BigInt& b) {
    CanonicalHalfspace out;
    out.w.reserve(a.size());
    out.c = b;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] < 0) {
            out.w.push_back(-a[j]);
            out.c += -a[j];
            out.flip_set.push_back(static_cast<int>(j));
        } else {
            out.w.push_back(a[j]);
        }
    }
    return out;
}

// Exact membership test x in K, mostly for oracles and property tests.
inline bool contains(const Instance& inst, const std::vector<Rational>& x) {
    for (const auto& c : inst.constraints) {
        Rational total(0);
        for (int j = 0; j < inst.n; ++j) total += c.fns[j].evaluate(x[j]);
        if (total > c.bound) return false;
    }
    return true;
}

}  // namespace cubevol
