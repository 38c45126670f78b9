#pragma once

#include <stdexcept>
#include <string>

namespace cubevol {

// Reasons an instance or a request can be rejected. Validation failures map to
// CLI exit code 2, budget failures to exit code 3.
enum class errc {
    parse_error,
    dimension_mismatch,
    non_convex_pwl,
    invalid_function,
    negative_coefficient,
    negative_input,
    not_power_of_two,
    bad_delta,
    zero_bound,
    too_narrow,
    too_many_subsets,
    budget_exceeded,
    width_cap_exceeded,
    intercept_below_budget,
    empty_source,
    mismatched_shapes,
    out_of_range,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::parse_error: return "ParseError";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::non_convex_pwl: return "NonConvexPWL";
        case errc::invalid_function: return "InvalidFunction";
        case errc::negative_coefficient: return "NegativeCoefficient";
        case errc::negative_input: return "NegativeInput";
        case errc::not_power_of_two: return "NotPowerOfTwo";
        case errc::bad_delta: return "BadDelta";
        case errc::zero_bound: return "ZeroBound";
        case errc::too_narrow: return "TooNarrow";
        case errc::too_many_subsets: return "TooManySubsets";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::width_cap_exceeded: return "WidthCapExceeded";
        case errc::intercept_below_budget: return "InterceptBelowBudget";
        case errc::empty_source: return "EmptySource";
        case errc::mismatched_shapes: return "MismatchedShapes";
        case errc::out_of_range: return "OutOfRange";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

    bool is_validation() const {
        switch (code_) {
            case errc::parse_error:
            case errc::dimension_mismatch:
            case errc::non_convex_pwl:
            case errc::invalid_function:
            case errc::negative_coefficient:
            case errc::negative_input:
            case errc::not_power_of_two:
            case errc::bad_delta:
            case errc::zero_bound:
            case errc::mismatched_shapes:
            case errc::out_of_range:
                return true;
            default:
                return false;
        }
    }

    bool is_budget() const {
        switch (code_) {
            case errc::budget_exceeded:
            case errc::width_cap_exceeded:
            case errc::too_many_subsets:
            case errc::intercept_below_budget:
                return true;
            default:
                return false;
        }
    }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cubevol
