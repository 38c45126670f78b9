#pragma once

#include "cubevol/volume.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>

namespace cubevol {

// Instance file schema (JSON, UTF-8):
//   { "n": int,
//     "constraints": [
//        { "b": "p/q", "linear": ["p/q", ... n entries] }
//      | { "b": "p/q", "fns": [ { "poly": [["coeff", exponent], ...],
//                                 "pwl": [["x", "y"], ...] }, ... n entries ] }
//     ] }
// Rationals cross this boundary only as "p/q" strings.
inline Instance parse_instance_json(const nlohmann::json& doc) {
    const auto ctx_fail = [](const std::string& where, const std::string& what) {
        fail(errc::parse_error, where + ": " + what);
    };
    if (!doc.is_object()) ctx_fail("$", "expected a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) ctx_fail("n", "missing integer field");
    if (!doc.contains("constraints") || !doc["constraints"].is_array())
        ctx_fail("constraints", "missing array field");

    Instance inst;
    inst.n = doc["n"].get<int>();
    int ci = 0;
    for (const auto& cj : doc["constraints"]) {
        const std::string where = "constraints[" + std::to_string(ci++) + "]";
        if (!cj.is_object()) ctx_fail(where, "expected an object");
        if (!cj.contains("b") || !cj["b"].is_string()) ctx_fail(where + ".b", "missing rational string");
        SeparableConstraint c;
        c.bound = parse_rational(cj["b"].get<std::string>());
        if (cj.contains("linear")) {
            if (!cj["linear"].is_array()) ctx_fail(where + ".linear", "expected an array");
            for (const auto& aj : cj["linear"]) {
                if (!aj.is_string()) ctx_fail(where + ".linear", "coefficients are rational strings");
                UnivariateFn f;
                const Rational coeff = parse_rational(aj.get<std::string>());
                if (!coeff.is_zero()) f.poly.push_back({coeff, 1});
                c.fns.push_back(std::move(f));
            }
        } else if (cj.contains("fns")) {
            if (!cj["fns"].is_array()) ctx_fail(where + ".fns", "expected an array");
            int fi = 0;
            for (const auto& fj : cj["fns"]) {
                const std::string fwhere = where + ".fns[" + std::to_string(fi++) + "]";
                if (!fj.is_object()) ctx_fail(fwhere, "expected an object");
                UnivariateFn f;
                if (fj.contains("poly")) {
                    for (const auto& term : fj["poly"]) {
                        if (!term.is_array() || term.size() != 2 || !term[0].is_string() ||
                            !term[1].is_number_integer())
                            ctx_fail(fwhere + ".poly", "terms are [\"coeff\", exponent] pairs");
                        f.poly.push_back({parse_rational(term[0].get<std::string>()),
                                          term[1].get<std::int64_t>()});
                    }
                }
                if (fj.contains("pwl")) {
                    for (const auto& pt : fj["pwl"]) {
                        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_string() ||
                            !pt[1].is_string())
                            ctx_fail(fwhere + ".pwl", "points are [\"x\", \"y\"] pairs");
                        f.pwl.push_back({parse_rational(pt[0].get<std::string>()),
                                         parse_rational(pt[1].get<std::string>())});
                    }
                }
                c.fns.push_back(std::move(f));
            }
        } else {
            ctx_fail(where, "expected either \"linear\" or \"fns\"");
        }
        inst.constraints.push_back(std::move(c));
    }
    return validate(std::move(inst));
}

inline Instance parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open instance file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
    return parse_instance_json(doc);
}

// Machine-readable run report, one JSON document per invocation. Rationals are
// "p/q" strings so that re-parsing reproduces the exact values; elapsed_ms is
// the only field excluded from reproducibility comparisons.
struct RunReport {
    Rational estimate;
    Rational epsilon;
    std::string mode;
    BigInt u = 0;
    Rational delta;
    Rational eta;
    std::optional<Rational> intercept;
    int robp_width = 0;
    int source_width = 0;
    int product_width = 0;
    std::int64_t elapsed_ms = 0;
    std::vector<std::string> warnings;
};

inline RunReport make_report(const VolumeEstimate& est) {
    RunReport r;
    r.estimate = est.estimate;
    r.epsilon = est.epsilon;
    r.mode = mode_name(est.mode);
    r.u = est.u;
    r.delta = est.delta;
    r.eta = est.eta;
    r.intercept = est.intercept;
    r.robp_width = est.robp_width;
    r.source_width = est.source_width;
    r.product_width = est.product_width;
    r.elapsed_ms = est.elapsed_ms;
    r.warnings = est.warnings;
    return r;
}

inline nlohmann::ordered_json report_to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["estimate"] = r.estimate.str();
    j["epsilon"] = r.epsilon.str();
    j["mode"] = r.mode;
    j["u"] = r.u.str();
    j["delta"] = r.delta.str();
    j["eta"] = r.eta.str();
    j["intercept"] = r.intercept ? nlohmann::ordered_json(r.intercept->str())
                                 : nlohmann::ordered_json(nullptr);
    j["widths"] = {{"robp", r.robp_width}, {"source", r.source_width}, {"product", r.product_width}};
    j["elapsed_ms"] = r.elapsed_ms;
    j["warnings"] = r.warnings;
    return j;
}

inline std::string serialize_report(const RunReport& r) { return report_to_json(r).dump(); }

inline RunReport parse_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(errc::parse_error, std::string("invalid report JSON: ") + e.what());
    }
    RunReport r;
    r.estimate = parse_rational(j.at("estimate").get<std::string>());
    r.epsilon = parse_rational(j.at("epsilon").get<std::string>());
    r.mode = j.at("mode").get<std::string>();
    r.u = BigInt(j.at("u").get<std::string>());
    r.delta = parse_rational(j.at("delta").get<std::string>());
    r.eta = parse_rational(j.at("eta").get<std::string>());
    if (!j.at("intercept").is_null())
        r.intercept = parse_rational(j.at("intercept").get<std::string>());
    r.robp_width = j.at("widths").at("robp").get<int>();
    r.source_width = j.at("widths").at("source").get<int>();
    r.product_width = j.at("widths").at("product").get<int>();
    r.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
    return r;
}

}  // namespace cubevol
