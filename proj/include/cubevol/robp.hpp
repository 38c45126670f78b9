#pragma once

#include "cubevol/table.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace cubevol {

// Labels [lo, hi] out of one vertex all lead to breakpoint index `target` of
// the next layer. Targets are monotone in the label, so the intervals out of a
// vertex partition {0,...,u-1} in order.
struct EdgeInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    int target = 0;
};

namespace detail {

// Breakpoints of one vertex layer on the value grid, ascending. counts[m] is
// the number of accepting suffixes from breakpoints[m]; the zero-probability
// sentinel is implicit with index size(). values start at 0 and stay <= bound.
struct GridLayer {
    std::vector<BigInt> value;
    std::vector<BigInt> count;

    int sentinel() const { return static_cast<int>(value.size()); }

    // index of the last breakpoint with value <= x; sentinel if x > bound
    int assign(const BigInt& x, const BigInt& bound) const {
        if (x > bound) return sentinel();
        auto it = std::upper_bound(value.begin(), value.end(), x);
        return static_cast<int>(it - value.begin()) - 1;
    }

    const BigInt& count_at(int idx) const {
        static const BigInt zero = 0;
        return idx == sentinel() ? zero : count[idx];
    }
};

struct Event {
    BigInt at;      // walk value where label z switches to breakpoint m
    std::int32_t z;
    std::int32_t m;  // new target; == next.sentinel() for the sentinel crossing
};

// Suffix count at walk value 0 of the layer above `next`, reading the label
// values V. Two-pointer: V is nondecreasing, so assignments are too.
inline BigInt probe_at_zero(const std::vector<BigInt>& V, const GridLayer& next,
                            const BigInt& bound) {
    BigInt total = 0;
    int m = 0;
    for (std::size_t z = 0; z < V.size(); ++z) {
        if (V[z] > bound) break;  // later labels only grow
        while (m + 1 < static_cast<int>(next.value.size()) && next.value[m + 1] <= V[z]) ++m;
        total += next.count[m];
    }
    return total;
}

// Streams, per label z, the ascending values at which z's breakpoint target
// advances: next.value[m] - V[z] for growing m, then the sentinel crossing at
// bound - V[z] + 1. A k-way merge over the labels yields all drop points of
// P(v) = sum_z count(assign(v + V[z])) in ascending order without sorting.
class EventMerge {
  public:
    EventMerge(const std::vector<BigInt>& V, const GridLayer& next, const BigInt& bound)
        : V_(V), next_(next), bound_(bound) {
        for (std::size_t z = 0; z < V_.size(); ++z) {
            Cursor c{static_cast<std::int32_t>(z), 0};
            c.m = static_cast<std::int32_t>(
                std::upper_bound(next_.value.begin(), next_.value.end(), V_[z]) -
                next_.value.begin());
            if (load(c)) heap_.push_back(c);
        }
        std::make_heap(heap_.begin(), heap_.end(), Greater{this});
    }

    bool empty() const { return heap_.empty(); }

    // pops every event with the smallest pending value; calls fn(z, m) per event
    template <typename Fn>
    BigInt pop_group(Fn&& fn) {
        BigInt at = value_of(heap_.front());
        while (!heap_.empty() && value_of(heap_.front()) == at) {
            std::pop_heap(heap_.begin(), heap_.end(), Greater{this});
            Cursor c = heap_.back();
            heap_.pop_back();
            fn(c.z, c.m);
            ++c.m;
            if (load(c)) {
                heap_.push_back(c);
                std::push_heap(heap_.begin(), heap_.end(), Greater{this});
            }
        }
        return at;
    }

  private:
    struct Cursor {
        std::int32_t z;
        std::int32_t m;  // next target index; == next.sentinel() for the sentinel crossing
    };

    BigInt value_of(const Cursor& c) const {
        if (c.m == next_.sentinel()) return bound_ - V_[c.z] + 1;
        return next_.value[c.m] - V_[c.z];
    }

    // skips events outside (0, bound]; returns whether the cursor still yields one
    bool load(Cursor& c) {
        while (c.m <= next_.sentinel()) {
            if (c.m > static_cast<std::int32_t>(next_.value.size())) return false;
            const BigInt at = value_of(c);
            if (at > bound_) return false;
            if (at > 0) return true;
            ++c.m;
        }
        return false;
    }

    struct Greater {
        const EventMerge* self;
        bool operator()(const Cursor& a, const Cursor& b) const {
            return self->value_of(a) > self->value_of(b);
        }
    };

    const std::vector<BigInt>& V_;
    const GridLayer& next_;
    const BigInt& bound_;
    std::vector<Cursor> heap_;
};

// Selects the breakpoints of the layer above `next` by walking all values at
// which the step function P(v) = sum_z count(assign(v + V[z])) can drop, in
// ascending order, and retaining v whenever P falls below the last retained
// probability by more than a (1+eta) factor. eta = eta_num/eta_den.
inline GridLayer select_layer(const std::vector<BigInt>& V, const GridLayer& next,
                              const BigInt& bound, const BigInt& eta_num, const BigInt& eta_den,
                              std::int64_t width_cap) {
    GridLayer out;
    BigInt cur = probe_at_zero(V, next, bound);
    out.value.push_back(0);
    out.count.push_back(cur);
    BigInt last = cur;

    const BigInt one_plus_eta_num = eta_den + eta_num;  // P(v) < P(beta)/(1+eta)
    EventMerge merge(V, next, bound);
    while (!merge.empty()) {
        BigInt at = merge.pop_group([&](std::int32_t, std::int32_t m) {
            cur += next.count_at(m);
            cur -= next.count_at(m - 1);
        });
        if (cur > 0 && cur * one_plus_eta_num < last * eta_den) {
            out.value.push_back(std::move(at));
            out.count.push_back(cur);
            last = cur;
            if (static_cast<std::int64_t>(out.value.size()) > width_cap)
                fail(errc::width_cap_exceeded,
                     "rounded layer exceeds width cap " + std::to_string(width_cap));
        }
    }
    return out;
}

inline std::int64_t default_width_cap(int n_layers, std::int64_t u, const Rational& eta) {
    // 1 + 2 n log2(u) / eta, the theoretical layer-width bound
    const BigInt cap =
        1 + (BigInt(2 * n_layers) * ceil_log2(BigInt(u)) * eta.den() + eta.num() - 1) / eta.num();
    return cap > (BigInt(1) << 31) ? (std::int64_t(1) << 31) : to_int64(cap);
}

}  // namespace detail

// One rounded vertex layer of the public program. The last breakpoint is the
// zero-probability sentinel b + 1/2^(2L'); probabilities strictly decrease.
struct RoundedLayer {
    std::vector<Rational> breakpoints;
    std::vector<Rational> probabilities;
    std::vector<std::vector<EdgeInterval>> edges;  // per vertex, into the next layer
};

// Rounded interval read-once branching program for one separable constraint.
// Layer 0 is the start vertex; layer t of breakpoints is reached after reading
// x_1..x_t. Transitions follow the tabulated values: from value v via label z
// to the last breakpoint <= v + table.values[t][z].
struct IntervalROBP {
    int n = 0;
    std::int64_t u = 0;
    Rational eta;
    Rational bound;
    ScaledConstraint table;
    std::vector<RoundedLayer> layers;          // 0..n
    std::vector<detail::GridLayer> grid_layers;  // same data on the value grid

    std::string dump() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            os << "layer " << i << ":";
            for (std::size_t m = 0; m < layers[i].breakpoints.size(); ++m)
                os << " [" << layers[i].breakpoints[m].str() << ":"
                   << layers[i].probabilities[m].str() << "]";
            os << "\n";
        }
        return os.str();
    }
};

struct RoundResult {
    Rational zprime;
    int max_width = 0;  // largest rounded layer, sentinel included
    IntervalROBP robp;  // layers populated only when materialize was requested
};

struct BuildOptions {
    bool materialize = true;
    std::int64_t width_cap = 0;  // 0: use the theoretical bound
};

namespace detail {

inline void materialize_program(IntervalROBP& robp, const ScaledConstraint& sc,
                                std::vector<GridLayer>&& grids, const BigInt& zcount) {
    const Rational sentinel_value = sc.bound_rational() + min_gap(sc.value_length);
    robp.grid_layers = std::move(grids);
    robp.layers.assign(sc.n + 1, RoundedLayer{});

    // layer 0: the start vertex
    robp.layers[0].breakpoints = {Rational(0)};
    robp.layers[0].probabilities = {Rational(zcount, pow_int(BigInt(sc.u), sc.n))};

    for (int t = 1; t <= sc.n; ++t) {
        const GridLayer& g = robp.grid_layers[t];
        RoundedLayer& pub = robp.layers[t];
        const BigInt suffix_den = pow_int(BigInt(sc.u), sc.n - t);
        for (std::size_t m = 0; m < g.value.size(); ++m) {
            pub.breakpoints.emplace_back(g.value[m], sc.q);
            pub.probabilities.emplace_back(g.count[m], suffix_den);
        }
        pub.breakpoints.push_back(sentinel_value);
        pub.probabilities.push_back(Rational(0));
    }

    // edge intervals, layer t -> t+1
    for (int t = 0; t < sc.n; ++t) {
        const GridLayer& next = robp.grid_layers[t + 1];
        const std::vector<BigInt>& V = sc.values[t];
        auto edges_from = [&](const BigInt& from_value) {
            std::vector<EdgeInterval> out;
            int prev_target = -1;
            for (std::int64_t z = 0; z < sc.u; ++z) {
                const int tgt = next.assign(from_value + V[z], sc.bound);
                if (tgt == prev_target) {
                    out.back().hi = z;
                } else {
                    out.push_back({z, z, tgt});
                    prev_target = tgt;
                }
            }
            return out;
        };
        RoundedLayer& pub = robp.layers[t];
        if (t == 0) {
            pub.edges.push_back(edges_from(BigInt(0)));
        } else {
            const GridLayer& g = robp.grid_layers[t];
            for (const auto& v : g.value) pub.edges.push_back(edges_from(v));
            // the sentinel is absorbing: every label stays on the next sentinel
            pub.edges.push_back({{0, sc.u - 1, next.sentinel()}});
        }
    }
}

}  // namespace detail

// ROUND_ROBP: deterministic one-sided counter for
// Z = { x in {0..u-1}^n : sum_j f_j(x_j) <= b } given the tabulated values.
// Returns Z' with |Z| <= Z' <= (1+delta)|Z|. Layers are rounded last-to-first
// with per-layer factor eta = delta/(2n).
inline RoundResult round_robp_single(const ScaledConstraint& sc, const Rational& delta,
                                     const BuildOptions& opts = {}) {
    if (!(delta > Rational(0)) || !(delta < Rational(1)))
        fail(errc::bad_delta, "delta must lie in (0,1)");
    for (int j = 0; j < sc.n; ++j)
        if (sc.values[j][0] != 0) fail(errc::internal, "table not normalized: f_j(0) != 0");

    RoundResult res;
    res.robp.n = sc.n;
    res.robp.u = sc.u;
    res.robp.bound = sc.bound_rational();
    res.robp.table = sc;
    const Rational eta = delta / Rational(2 * sc.n);
    res.robp.eta = eta;

    if (sc.bound < 0) {
        res.zprime = Rational(0);
        return res;  // empty program: every input rejects
    }

    const std::int64_t cap =
        opts.width_cap > 0 ? opts.width_cap : detail::default_width_cap(sc.n, sc.u, eta);

    std::vector<detail::GridLayer> grids(sc.n + 1);
    grids[sc.n].value = {BigInt(0)};
    grids[sc.n].count = {BigInt(1)};
    res.max_width = 2;
    for (int t = sc.n - 1; t >= 1; --t) {
        grids[t] = detail::select_layer(sc.values[t], grids[t + 1], sc.bound, eta.num(), eta.den(),
                                        cap);
        res.max_width = std::max(res.max_width, static_cast<int>(grids[t].value.size()) + 1);
    }
    const BigInt zcount = detail::probe_at_zero(sc.values[0], grids[1], sc.bound);
    res.zprime = Rational(zcount);

    if (opts.materialize)
        detail::materialize_program(res.robp, sc, std::move(grids), zcount);
    return res;
}

// COUNT_KNAPSACK contract: Z' with |Z| <= Z' <= (1+delta)|Z| for
// Z = { x in {0,1}^n : w.x <= b }, via the interval-ROBP counter at u = 2.
inline Rational count_binary_knapsack(const std::vector<BigInt>& w, const BigInt& b,
                                      const Rational& delta, const BuildOptions& opts = {false, 0}) {
    if (w.empty()) return Rational(b >= 0 ? 1 : 0);
    if (b < 0) return Rational(0);
    return round_robp_single(from_weights(w, b), delta, opts).zprime;
}

// Binary expansion of a bounded integer knapsack: with u = 2^t, the 0-1 set
// { y : sum_i sum_j 2^(j-1) a_i y_ij <= cap } has exactly as many solutions as
// { x in {0..u-1}^n : a.x <= cap }.
struct BinaryExpansion {
    std::vector<BigInt> w;
    BigInt cap;
};

inline BinaryExpansion binary_expand(const std::vector<BigInt>& a, const BigInt& cap,
                                     const BigInt& u) {
    if (!is_pow2(u) || u < 2) fail(errc::not_power_of_two, "u must be a power of two >= 2");
    const std::int64_t t = ceil_log2(u);
    BinaryExpansion out;
    out.cap = cap;
    out.w.reserve(a.size() * static_cast<std::size_t>(t));
    for (const auto& ai : a) {
        if (ai < 0) fail(errc::negative_coefficient, "binary_expand requires nonnegative weights");
        for (std::int64_t j = 0; j < t; ++j) out.w.push_back(ai << static_cast<unsigned>(j));
    }
    return out;
}

// Walks the rounded program on one input; 1 iff the reached terminal vertex
// accepts. One-sided: any x feasible for the exact constraint is accepted.
inline int evaluate_robp(const IntervalROBP& robp, const std::vector<std::int64_t>& x) {
    if (static_cast<int>(x.size()) != robp.n) fail(errc::out_of_range, "input length mismatch");
    for (auto z : x)
        if (z < 0 || z >= robp.u) fail(errc::out_of_range, "label out of range");
    if (robp.grid_layers.empty()) {
        if (robp.table.bound < 0) return 0;
        fail(errc::internal, "evaluate_robp requires a materialized program");
    }
    BigInt value = 0;
    for (int t = 0; t < robp.n; ++t) {
        const detail::GridLayer& next = robp.grid_layers[t + 1];
        const int idx = next.assign(value + robp.table.values[t][x[t]], robp.table.bound);
        if (idx == next.sentinel()) return 0;
        value = next.value[idx];
    }
    return 1;
}

}  // namespace cubevol
