#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace cubevol {

using BigInt = boost::multiprecision::cpp_int;

// Number of bits needed for x >= 1, i.e. ceil(log2(x)). ceil_log2(1) == 0.
inline std::int64_t ceil_log2(const BigInt& x) {
    if (x <= 0) throw std::invalid_argument("ceil_log2: argument must be positive");
    if (x == 1) return 0;
    const BigInt y = x - 1;
    return static_cast<std::int64_t>(boost::multiprecision::msb(y)) + 1;
}

// Largest s with s*s <= x.
inline BigInt isqrt(const BigInt& x) {
    if (x < 0) throw std::invalid_argument("isqrt: argument must be nonnegative");
    return boost::multiprecision::sqrt(x);
}

inline BigInt pow_int(const BigInt& base, std::int64_t exp) {
    if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
    BigInt result = 1;
    BigInt b = base;
    std::int64_t e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

// Smallest power of two >= x (x >= 1).
inline BigInt next_pow2(const BigInt& x) {
    return BigInt(1) << static_cast<unsigned>(ceil_log2(x));
}

inline bool is_pow2(const BigInt& x) {
    return x > 0 && (x & (x - 1)) == 0;
}

inline std::int64_t to_int64(const BigInt& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("to_int64: value out of range");
    return static_cast<std::int64_t>(x);
}

}  // namespace cubevol
