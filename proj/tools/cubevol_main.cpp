// Command line front door: parse an instance file, run the selected volume
// estimator, print a machine-readable report.
//
// Exit codes: 0 success, 2 validation/parse error, 3 budget exhaustion.

#include "cubevol/cubevol.hpp"
#include "cubevol/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace cubevol;

// Multiplies one linear constraint row by the lcm of its denominators; the
// feasible set is unchanged and the data becomes integral.
void extract_integer_row(const SeparableConstraint& c, std::vector<BigInt>& a, BigInt& b) {
    BigInt scale = c.bound.den();
    for (const auto& f : c.fns) scale = boost::multiprecision::lcm(scale, f.linear_coefficient().den());
    a.clear();
    for (const auto& f : c.fns) {
        const Rational coeff = f.linear_coefficient();
        a.push_back(coeff.num() * (scale / coeff.den()));
    }
    b = c.bound.num() * (scale / c.bound.den());
}

Mode resolve_mode(const std::string& requested, const Instance& inst) {
    if (requested == "halfspace") return Mode::halfspace;
    if (requested == "convex") return Mode::convex;
    if (requested == "multi-halfspace") return Mode::multi_halfspace;
    if (requested == "multi-convex") return Mode::multi_convex;
    if (requested != "auto") fail(errc::parse_error, "unknown mode '" + requested + "'");
    if (inst.kind == InstanceKind::linear)
        return inst.k() == 1 ? Mode::halfspace : Mode::multi_halfspace;
    return inst.k() == 1 ? Mode::convex : Mode::multi_convex;
}

void require_nonnegative(const Instance& inst, const char* mode) {
    for (const auto& c : inst.constraints)
        for (const auto& f : c.fns)
            for (const auto& m : f.poly)
                if (m.coeff.is_negative())
                    fail(errc::negative_coefficient,
                         std::string(mode) + " mode requires nonnegative coefficients");
}

std::string dump_multi_programs(const Instance& inst, const BigInt& u, const Rational& delta) {
    Instance prepared = normalize_offsets(validate(inst));
    const auto rows = tabulate_instance(prepared, u);
    const int n = rows[0].n;
    const int k = static_cast<int>(rows.size());
    const Rational eta_total = delta / Rational(BigInt(4) * k * pow_int(BigInt(n), k));
    Rational eta_layer = eta_total / Rational(2 * n);
    if (!(eta_layer < Rational(1))) eta_layer = Rational(1, 2);
    const auto src = build_source(dyer_round(rows));
    std::ostringstream os;
    for (int i = 0; i < k; ++i) {
        const auto part = round_robp_vs_source(rows[i], src, eta_layer);
        os << "constraint " << i << ":\n";
        for (int t = 1; t <= part.n; ++t) {
            os << "layer " << t << ":";
            const auto& layer = part.layers[t];
            for (std::size_t m = 0; m < layer.value.size(); ++m) {
                os << " [" << Rational(layer.value[m], rows[i].q).str();
                for (std::size_t w = 0; w < layer.counts[m].size(); ++w)
                    os << " w" << w << ":"
                       << Rational(layer.counts[m][w], src.layers[t][w].accepting).str();
                os << "]";
            }
            os << "\n";
        }
    }
    return os.str();
}

int run_estimate(const std::string& instance_path, const std::string& epsilon_text,
                 const std::string& mode_text, int max_intercept_bits,
                 const std::string& debug_robp_path) {
    const Rational epsilon = parse_rational(epsilon_text);
    const Instance inst = parse_instance(instance_path);
    const Mode mode = resolve_mode(mode_text, inst);

    EstimateOptions opts;
    opts.max_intercept_bits = max_intercept_bits;
    opts.materialize_robp = !debug_robp_path.empty();

    VolumeEstimate est;
    IntervalROBP debug_robp;
    switch (mode) {
        case Mode::halfspace: {
            if (inst.kind != InstanceKind::linear || inst.k() != 1)
                fail(errc::mismatched_shapes, "halfspace mode expects one linear constraint");
            std::vector<BigInt> a;
            BigInt b;
            extract_integer_row(inst.constraints[0], a, b);
            est = volume_halfspace(a, b, epsilon, opts, &debug_robp);
            break;
        }
        case Mode::convex: {
            require_nonnegative(inst, "convex");
            est = volume_convex(inst, epsilon, opts, &debug_robp);
            break;
        }
        case Mode::multi_halfspace: {
            if (inst.kind != InstanceKind::linear)
                fail(errc::mismatched_shapes, "multi-halfspace mode expects linear constraints");
            std::vector<std::vector<BigInt>> A;
            std::vector<BigInt> b;
            for (const auto& c : inst.constraints) {
                std::vector<BigInt> row;
                BigInt bi;
                extract_integer_row(c, row, bi);
                A.push_back(std::move(row));
                b.push_back(std::move(bi));
            }
            est = volume_multi_halfspace(A, b, epsilon, opts);
            break;
        }
        case Mode::multi_convex: {
            require_nonnegative(inst, "multi-convex");
            est = volume_multi_convex(inst, epsilon, opts);
            break;
        }
    }

    if (!debug_robp_path.empty()) {
        std::ofstream out(debug_robp_path);
        if (!out) fail(errc::parse_error, "cannot write '" + debug_robp_path + "'");
        if (mode == Mode::halfspace || mode == Mode::convex) {
            out << debug_robp.dump();
        } else {
            out << dump_multi_programs(inst, est.u, est.delta);
        }
    }

    std::cout << serialize_report(make_report(est)) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic volume estimation for constraint-truncated unit hypercubes"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string epsilon_text = "1/2";
    std::string mode_text = "auto";
    int max_intercept_bits = 128;
    std::string debug_robp_path;

    auto* estimate = app.add_subcommand("estimate", "estimate the volume of one instance");
    estimate->add_option("--instance", instance_path, "instance file (JSON)")->required();
    estimate->add_option("--epsilon", epsilon_text, "relative error, a rational like 1/4");
    estimate->add_option("--mode", mode_text,
                         "auto|halfspace|convex|multi-halfspace|multi-convex");
    estimate->add_option("--max-intercept-bits", max_intercept_bits,
                         "give up on the axis-intercept search below 2^-N");
    estimate->add_option("--emit-debug-robp", debug_robp_path,
                         "write the rounded branching program to this path");

    double budget = 1e6;
    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle corpus");
    selftest->add_option("--budget", budget, "enumeration budget (points)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (estimate->parsed())
            return run_estimate(instance_path, epsilon_text, mode_text, max_intercept_bits,
                                debug_robp_path);
        const cubevol::SelftestResult res = cubevol::run_selftest(budget);
        for (const auto& line : res.lines) std::cout << line << "\n";
        std::cout << "selftest: " << res.passed << "/" << res.run << " passed, " << res.skipped
                  << " skipped\n";
        return res.ok() ? 0 : 1;
    } catch (const cubevol::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.is_validation()) return 2;
        if (e.is_budget()) return 3;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
