#pragma once

#include "cubevol/robp.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace cubevol {

// Dyer-rounded constraint tables: h_ij(x) = floor(2 n^2 f_ij(x/u) / b_i) with
// the common capacity 2 n^2. Inflates the solution set by at most 2 n^k.
struct RoundedConstraintSet {
    int n = 0;
    int k = 0;
    std::int64_t u = 0;
    BigInt cap;                                      // 2 n^2
    std::vector<std::vector<std::vector<BigInt>>> h;  // [constraint][coord][label]
};

inline RoundedConstraintSet dyer_round(const std::vector<ScaledConstraint>& rows) {
    if (rows.empty()) fail(errc::dimension_mismatch, "no constraints");
    RoundedConstraintSet out;
    out.n = rows[0].n;
    out.u = rows[0].u;
    out.k = static_cast<int>(rows.size());
    out.cap = BigInt(2) * out.n * out.n;
    out.h.resize(out.k);
    for (int i = 0; i < out.k; ++i) {
        const auto& r = rows[i];
        if (r.n != out.n || r.u != out.u) fail(errc::mismatched_shapes, "tables disagree on n or u");
        if (r.bound <= 0) fail(errc::zero_bound, "Dyer rounding requires positive bounds");
        out.h[i].resize(out.n);
        for (int j = 0; j < out.n; ++j) {
            out.h[i][j].reserve(out.u);
            for (std::int64_t z = 0; z < out.u; ++z)
                out.h[i][j].push_back(out.cap * r.values[j][z] / r.bound);  // exact floor: both >= 0
        }
    }
    return out;
}

inline RoundedConstraintSet dyer_round(const Instance& inst, const BigInt& u) {
    return dyer_round(tabulate_instance(inst, u));
}

// Layered exact-counting DAG over Dyer-rounded partial-sum tuples. Walking it
// with the derived per-label probabilities samples the uniform distribution
// over S; we use it only for exact aggregation.
struct SourceVertex {
    std::vector<std::int32_t> tuple;        // partial sums, each <= cap
    BigInt accepting;                       // A_D(v)
    std::vector<EdgeInterval> edges;        // retained labels, to next-layer vertex ids
};

struct SmallSpaceSource {
    int n = 0;
    int k = 0;
    std::int64_t u = 0;
    BigInt cap;
    std::vector<std::vector<SourceVertex>> layers;  // 0..n

    const BigInt& total() const { return layers[0][0].accepting; }  // |S|

    int width() const {
        std::size_t w = 0;
        for (const auto& l : layers) w = std::max(w, l.size());
        return static_cast<int>(w);
    }

    // child vertex id for (layer, vertex, label); -1 when the label was removed
    int child(int layer, int vertex, std::int64_t label) const {
        for (const auto& e : layers[layer][vertex].edges)
            if (label >= e.lo && label <= e.hi) return e.target;
        return -1;
    }

    // p_v(label) of the uniform-over-S walk
    Rational sample_probability(int layer, int vertex, std::int64_t label) const {
        const int c = child(layer, vertex, label);
        if (c < 0) return Rational(0);
        return Rational(layers[layer + 1][c].accepting, layers[layer][vertex].accepting);
    }
};

inline SmallSpaceSource build_source(const RoundedConstraintSet& rcs) {
    SmallSpaceSource src;
    src.n = rcs.n;
    src.k = rcs.k;
    src.u = rcs.u;
    src.cap = rcs.cap;
    src.layers.resize(src.n + 1);
    src.layers[0].push_back({std::vector<std::int32_t>(rcs.k, 0), BigInt(0), {}});

    // forward pass: reachable tuples, pruning any component above the capacity
    for (int t = 0; t < src.n; ++t) {
        std::map<std::vector<std::int32_t>, int> index;
        auto& next = src.layers[t + 1];
        for (auto& v : src.layers[t]) {
            int prev_target = -2;
            std::vector<std::int32_t> child(rcs.k);
            for (std::int64_t z = 0; z < src.u; ++z) {
                bool alive = true;
                for (int i = 0; i < rcs.k && alive; ++i) {
                    const BigInt c = BigInt(v.tuple[i]) + rcs.h[i][t][z];
                    if (c > rcs.cap)
                        alive = false;
                    else
                        child[i] = static_cast<std::int32_t>(c);
                }
                if (!alive) break;  // h is nondecreasing in the label: later ones die too
                auto [it, inserted] = index.try_emplace(child, static_cast<int>(next.size()));
                if (inserted) next.push_back({child, BigInt(0), {}});
                if (it->second == prev_target) {
                    v.edges.back().hi = z;
                } else {
                    v.edges.push_back({z, z, it->second});
                    prev_target = it->second;
                }
            }
        }
        if (next.empty()) fail(errc::empty_source, "no feasible tuples survive layer " + std::to_string(t + 1));
    }

    // backward pass: accepting-suffix counts; drop edges into dead vertices
    for (auto& v : src.layers[src.n]) v.accepting = 1;
    for (int t = src.n - 1; t >= 0; --t) {
        for (auto& v : src.layers[t]) {
            BigInt total = 0;
            std::vector<EdgeInterval> kept;
            for (const auto& e : v.edges) {
                const BigInt& a = src.layers[t + 1][e.target].accepting;
                if (a == 0) continue;
                total += BigInt(e.hi - e.lo + 1) * a;
                kept.push_back(e);
            }
            v.edges = std::move(kept);
            v.accepting = std::move(total);
        }
    }
    if (src.total() == 0) fail(errc::empty_source, "|S| = 0");

    // compact each layer to the vertices that still count
    for (int t = 1; t <= src.n; ++t) {
        std::vector<int> remap(src.layers[t].size(), -1);
        std::vector<SourceVertex> kept;
        for (std::size_t i = 0; i < src.layers[t].size(); ++i) {
            if (src.layers[t][i].accepting == 0) continue;
            remap[i] = static_cast<int>(kept.size());
            kept.push_back(std::move(src.layers[t][i]));
        }
        src.layers[t] = std::move(kept);
        for (auto& v : src.layers[t - 1])
            for (auto& e : v.edges) e.target = remap[e.target];
    }
    return src;
}

// Uniform distribution on all of {0..u-1}^n as a degenerate one-vertex-per-layer
// source; rounding against it reproduces the single-constraint path exactly.
inline SmallSpaceSource make_uniform_source(int n, std::int64_t u) {
    SmallSpaceSource src;
    src.n = n;
    src.k = 0;
    src.u = u;
    src.cap = 0;
    src.layers.resize(n + 1);
    for (int t = n; t >= 0; --t) {
        SourceVertex v;
        v.accepting = pow_int(BigInt(u), n - t);
        if (t < n) v.edges.push_back({0, u - 1, 0});
        src.layers[t].push_back(std::move(v));
    }
    return src;
}

// Per-constraint program rounded against a source: union-of-breakpoints layers
// with accepting-suffix counts per (breakpoint, source vertex). The count
// N[t][m][w] sits over the denominator A_D(w), so P_{M,w}(beta) = N / A_D(w).
struct SourcedROBP {
    int n = 0;
    std::int64_t u = 0;
    Rational eta;
    ScaledConstraint table;

    struct Layer {
        std::vector<BigInt> value;                  // ascending, value[0] = 0
        std::vector<std::vector<BigInt>> counts;    // [breakpoint][source vertex]

        int sentinel() const { return static_cast<int>(value.size()); }
        int assign(const BigInt& x, const BigInt& bound) const {
            if (x > bound) return sentinel();
            auto it = std::upper_bound(value.begin(), value.end(), x);
            return static_cast<int>(it - value.begin()) - 1;
        }
    };
    std::vector<Layer> layers;  // 1..n (index 0 unused)
    BigInt start_count;         // accepted weight at the start vertex, over A_D(root)

    int max_width() const {
        std::size_t w = 0;
        for (const auto& l : layers) w = std::max(w, l.value.size());
        return static_cast<int>(w);
    }

    Rational accept_probability(const SmallSpaceSource& src) const {
        return Rational(start_count, src.total());
    }

    // one-sided rounded evaluation of this constraint alone
    int evaluate(const std::vector<std::int64_t>& x) const {
        if (static_cast<int>(x.size()) != n) fail(errc::out_of_range, "input length mismatch");
        BigInt value = 0;
        for (int t = 0; t < n; ++t) {
            if (x[t] < 0 || x[t] >= u) fail(errc::out_of_range, "label out of range");
            const Layer& next = layers[t + 1];
            const int idx = next.assign(value + table.values[t][x[t]], table.bound);
            if (idx == next.sentinel()) return 0;
            value = next.value[idx];
        }
        return 1;
    }
};

namespace detail {

// per-w label-to-child table for one source layer
inline std::vector<std::vector<std::int32_t>> source_children(const SmallSpaceSource& src, int t) {
    const auto& layer = src.layers[t];
    std::vector<std::vector<std::int32_t>> out(layer.size(),
                                               std::vector<std::int32_t>(src.u, -1));
    for (std::size_t w = 0; w < layer.size(); ++w)
        for (const auto& e : layer[w].edges)
            for (std::int64_t z = e.lo; z <= e.hi; ++z) out[w][z] = e.target;
    return out;
}

}  // namespace detail

// ROUND_ROBPS building block: rounds the exact program for one constraint row
// so that acceptance probabilities under every suffix distribution D^w stay
// within a (1+eta) factor per layer. One-sided: exact-feasible inputs stay
// accepted.
inline SourcedROBP round_robp_vs_source(const ScaledConstraint& sc, const SmallSpaceSource& src,
                                        const Rational& eta, std::int64_t per_w_width_cap = 0) {
    if (sc.n != src.n || sc.u != src.u) fail(errc::mismatched_shapes, "table and source disagree");
    if (!(eta > Rational(0)) || !(eta < Rational(1))) fail(errc::bad_delta, "eta must lie in (0,1)");
    for (int j = 0; j < sc.n; ++j)
        if (sc.values[j][0] != 0) fail(errc::internal, "table not normalized: f_j(0) != 0");

    SourcedROBP out;
    out.n = sc.n;
    out.u = sc.u;
    out.eta = eta;
    out.table = sc;
    out.layers.resize(sc.n + 1);
    if (sc.bound < 0) {
        out.start_count = 0;
        return out;
    }
    const std::int64_t w_cap =
        per_w_width_cap > 0 ? per_w_width_cap : detail::default_width_cap(sc.n, sc.u, eta);
    const BigInt one_plus_eta_num = eta.den() + eta.num();

    // terminal layer: single accepting breakpoint at value 0
    out.layers[sc.n].value = {BigInt(0)};
    out.layers[sc.n].counts = {std::vector<BigInt>(src.layers[sc.n].size(), BigInt(1))};

    for (int t = sc.n - 1; t >= 1; --t) {
        const auto& V = sc.values[t];
        const SourcedROBP::Layer& next = out.layers[t + 1];
        const auto w_children = detail::source_children(src, t);
        const std::size_t n_w = src.layers[t].size();

        if (static_cast<std::int64_t>(V.size()) * static_cast<std::int64_t>(next.value.size() + 1) >
            (std::int64_t(1) << 25))
            fail(errc::budget_exceeded, "rounding event budget exceeded");
        std::vector<detail::Event> events;
        for (std::size_t z = 0; z < V.size(); ++z) {
            for (std::size_t m = 1; m < next.value.size(); ++m) {
                BigInt at = next.value[m] - V[z];
                if (at > 0 && at <= sc.bound)
                    events.push_back({std::move(at), static_cast<std::int32_t>(z),
                                      static_cast<std::int32_t>(m)});
            }
            BigInt at = sc.bound - V[z] + 1;
            if (at > 0 && at <= sc.bound)
                events.push_back({std::move(at), static_cast<std::int32_t>(z), next.sentinel()});
        }
        std::sort(events.begin(), events.end(),
                  [](const detail::Event& a, const detail::Event& b) { return a.at < b.at; });

        const auto count_of = [&](int m, int w_child) -> const BigInt& {
            static const BigInt zero = 0;
            if (m == next.sentinel() || m < 0) return zero;
            return next.counts[m][w_child];
        };
        const auto initial_count = [&](std::size_t w) {
            BigInt total = 0;
            int m = 0;
            for (std::int64_t z = 0; z < sc.u; ++z) {
                const std::int32_t wc = w_children[w][z];
                if (wc < 0) continue;
                if (V[z] > sc.bound) continue;
                while (m + 1 < static_cast<int>(next.value.size()) && next.value[m + 1] <= V[z]) ++m;
                total += next.counts[m][wc];
            }
            return total;
        };

        // first pass: per-w breakpoint selection
        std::vector<BigInt> union_values{BigInt(0)};
        for (std::size_t w = 0; w < n_w; ++w) {
            BigInt cur = initial_count(w);
            BigInt last = cur;
            std::int64_t retained = 1;
            std::size_t i = 0;
            while (i < events.size()) {
                std::size_t j = i;
                while (j < events.size() && events[j].at == events[i].at) {
                    const auto& e = events[j];
                    const std::int32_t wc = w_children[w][e.z];
                    if (wc >= 0) cur += count_of(e.m, wc) - count_of(e.m - 1, wc);
                    ++j;
                }
                if (cur > 0 && cur * one_plus_eta_num < last * eta.den()) {
                    union_values.push_back(events[i].at);
                    last = cur;
                    if (++retained > w_cap)
                        fail(errc::width_cap_exceeded, "per-vertex breakpoint cap exceeded");
                }
                i = j;
            }
        }
        std::sort(union_values.begin(), union_values.end());
        union_values.erase(std::unique(union_values.begin(), union_values.end()),
                           union_values.end());

        // second pass: counts for every (union breakpoint, source vertex) pair
        SourcedROBP::Layer built;
        built.value = std::move(union_values);
        built.counts.assign(built.value.size(), std::vector<BigInt>(n_w));
        for (std::size_t w = 0; w < n_w; ++w) {
            BigInt cur = initial_count(w);
            built.counts[0][w] = cur;
            std::size_t i = 0;
            for (std::size_t b = 1; b < built.value.size(); ++b) {
                while (i < events.size() && events[i].at <= built.value[b]) {
                    const auto& e = events[i];
                    const std::int32_t wc = w_children[w][e.z];
                    if (wc >= 0) cur += count_of(e.m, wc) - count_of(e.m - 1, wc);
                    ++i;
                }
                built.counts[b][w] = cur;
            }
        }
        out.layers[t] = std::move(built);
    }

    // start vertex: value 0 under the root's suffix distribution
    {
        const auto w_children = detail::source_children(src, 0);
        const auto& V = sc.values[0];
        const SourcedROBP::Layer& next = out.layers[1];
        BigInt total = 0;
        int m = 0;
        for (std::int64_t z = 0; z < sc.u; ++z) {
            const std::int32_t wc = w_children[0][z];
            if (wc < 0) continue;
            if (V[z] > sc.bound) continue;
            while (m + 1 < static_cast<int>(next.value.size()) && next.value[m + 1] <= V[z]) ++m;
            total += next.counts[m][wc];
        }
        out.start_count = std::move(total);
    }
    return out;
}

// Product program over k sourced ROBPs: accepts exactly when every component
// accepts. Vertices are k-tuples of breakpoint indices; rejecting tuples (any
// component on its sentinel) are pruned immediately.
struct ProductROBP {
    int n = 0;
    std::int64_t u = 0;
    int k = 0;

    struct Vertex {
        std::vector<std::int32_t> bp;            // per constraint: breakpoint index
        std::vector<EdgeInterval> edges;         // to next-layer vertex ids; target -1 = reject
        std::vector<BigInt> counts;              // per source vertex w, over A_D(w)
    };
    std::vector<std::vector<Vertex>> layers;     // 0..n
    BigInt accepted;                             // count at the start vertex over A_D(root)

    int max_width() const {
        std::size_t w = 0;
        for (const auto& l : layers) w = std::max(w, l.size());
        return static_cast<int>(w);
    }

    int evaluate(const std::vector<SourcedROBP>& parts, const std::vector<std::int64_t>& x) const {
        for (const auto& p : parts)
            if (!p.evaluate(x)) return 0;
        return 1;
    }
};

inline ProductROBP intersect_robps(const std::vector<SourcedROBP>& parts,
                                   const SmallSpaceSource& src) {
    if (parts.empty()) fail(errc::dimension_mismatch, "no programs to intersect");
    ProductROBP prod;
    prod.n = parts[0].n;
    prod.u = parts[0].u;
    prod.k = static_cast<int>(parts.size());
    for (const auto& p : parts)
        if (p.n != prod.n || p.u != prod.u) fail(errc::mismatched_shapes, "programs disagree on n or u");
    if (src.n != prod.n || src.u != prod.u) fail(errc::mismatched_shapes, "source disagrees on n or u");

    for (const auto& p : parts)
        if (p.table.bound < 0) {  // one empty component empties the intersection
            prod.layers.assign(1, {});
            prod.accepted = 0;
            return prod;
        }

    prod.layers.resize(prod.n + 1);
    prod.layers[0].push_back({std::vector<std::int32_t>(prod.k, 0), {}, {}});
    // value of component i at a vertex: parts[i].layers[t].value[bp[i]] (layer 0: 0)

    for (int t = 0; t < prod.n; ++t) {
        std::map<std::vector<std::int32_t>, int> index;
        auto& next_layer = prod.layers[t + 1];
        for (auto& v : prod.layers[t]) {
            int prev_target = -2;
            for (std::int64_t z = 0; z < prod.u; ++z) {
                std::vector<std::int32_t> child(prod.k);
                bool alive = true;
                for (int i = 0; i < prod.k; ++i) {
                    const BigInt value =
                        (t == 0 ? BigInt(0) : parts[i].layers[t].value[v.bp[i]]) +
                        parts[i].table.values[t][z];
                    const int idx = parts[i].layers[t + 1].assign(value, parts[i].table.bound);
                    if (idx == parts[i].layers[t + 1].sentinel()) {
                        alive = false;
                        break;
                    }
                    child[i] = static_cast<std::int32_t>(idx);
                }
                int target = -1;
                if (alive) {
                    auto [it, inserted] = index.try_emplace(child, static_cast<int>(next_layer.size()));
                    if (inserted) next_layer.push_back({child, {}, {}});
                    target = it->second;
                }
                if (target == prev_target) {
                    v.edges.back().hi = z;
                } else {
                    v.edges.push_back({z, z, target});
                    prev_target = target;
                }
            }
        }
    }

    // bottom-up accepting counts per source vertex
    for (auto& v : prod.layers[prod.n])
        v.counts.assign(src.layers[prod.n].size(), BigInt(1));
    for (int t = prod.n - 1; t >= 0; --t) {
        const auto& src_layer = src.layers[t];
        for (auto& v : prod.layers[t]) {
            v.counts.assign(src_layer.size(), BigInt(0));
            for (std::size_t w = 0; w < src_layer.size(); ++w) {
                BigInt total = 0;
                // merge this vertex's intervals with w's source intervals
                auto pi = v.edges.begin();
                for (const auto& se : src_layer[w].edges) {
                    std::int64_t z = se.lo;
                    while (z <= se.hi) {
                        while (pi != v.edges.end() && pi->hi < z) ++pi;
                        if (pi == v.edges.end()) break;
                        const std::int64_t hi = std::min(se.hi, pi->hi);
                        if (pi->target >= 0) {
                            const BigInt& c = prod.layers[t + 1][pi->target].counts[se.target];
                            total += BigInt(hi - z + 1) * c;
                        }
                        z = hi + 1;
                    }
                }
                v.counts[w] = std::move(total);
            }
        }
    }
    prod.accepted = prod.layers[0][0].counts[0];
    return prod;
}

// ROUND_ROBPS: deterministic one-sided counter for the intersection
// Z = cap_i { x in {0..u-1}^n : sum_j f_ij(x_j) <= b_i }. Returns Z' with
// |Z| <= Z' <= (1+epsilon)|Z|. The per-layer rounding factor is
// epsilon / (4 k n^k) spread over the n layers.
struct RoundRobpsResult {
    Rational zprime;
    BigInt dyer_count;      // |S|
    int source_width = 0;
    int robp_width = 0;     // max union layer width over the k programs
    int product_width = 0;
    Rational eta;           // per-layer rounding factor actually used
};

inline RoundRobpsResult round_robps(const std::vector<ScaledConstraint>& rows,
                                    const Rational& epsilon) {
    if (rows.empty()) fail(errc::dimension_mismatch, "no constraints");
    if (!(epsilon > Rational(0))) fail(errc::out_of_range, "epsilon must be positive");
    const int n = rows[0].n;
    const int k = static_cast<int>(rows.size());

    RoundRobpsResult res;
    for (const auto& r : rows)
        if (r.bound < 0) {
            res.zprime = Rational(0);
            return res;
        }

    const Rational eta_total = epsilon / Rational(BigInt(4) * k * pow_int(BigInt(n), k));
    Rational eta_layer = eta_total / Rational(2 * n);
    if (!(eta_layer < Rational(1))) eta_layer = Rational(1, 2);
    res.eta = eta_layer;

    const RoundedConstraintSet rcs = dyer_round(rows);
    const SmallSpaceSource src = build_source(rcs);
    res.dyer_count = src.total();
    res.source_width = src.width();

    const BigInt source_cap = pow_int(BigInt(2) * n * n * n, k);
    if (res.source_width > source_cap)
        fail(errc::width_cap_exceeded, "source width exceeds (2 n^3)^k");

    std::vector<SourcedROBP> parts;
    parts.reserve(rows.size());
    for (const auto& r : rows) {
        parts.push_back(round_robp_vs_source(r, src, eta_layer));
        res.robp_width = std::max(res.robp_width, parts.back().max_width());
    }
    const ProductROBP prod = intersect_robps(parts, src);
    res.product_width = prod.max_width();
    res.zprime = Rational(prod.accepted);
    return res;
}

inline RoundRobpsResult round_robps(const Instance& inst, const BigInt& u, const Rational& epsilon) {
    return round_robps(tabulate_instance(inst, u), epsilon);
}

}  // namespace cubevol
