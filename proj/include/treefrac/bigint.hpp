#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace treefrac {

// Exact integer arithmetic everywhere values can outgrow machine words;
// no fixed-width fast path is exposed at the API level.
using BigInt = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;

inline std::string to_decimal(const BigInt& x) { return x.str(); }

/// Natural log of a positive BigInt, computed from the top bits so it stays
/// finite far beyond double range.
inline double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: nonpositive argument");
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 62) return std::log(x.convert_to<double>());
    unsigned shift = bits - 62;
    BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

inline bool fits_int64(const BigInt& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace treefrac
