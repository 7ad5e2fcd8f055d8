#pragma once

#include "treefrac/bigint.hpp"

#include <string>
#include <tuple>
#include <utility>

namespace treefrac {

/// 2x2 exact integer matrix, row-major: [[a, b], [c, d]].
struct Mat2 {
    BigInt a, b, c, d;

    Mat2() : a(1), b(0), c(0), d(1) {}
    Mat2(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Mat2 identity() { return Mat2(); }

    /// One continued-fraction step [[0,1],[1,q]]; determinant -1.
    static Mat2 cf_step(const BigInt& q) { return Mat2(0, 1, 1, q); }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d);
    }

    bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

    /// Total order for use in sets; compares entries lexicographically.
    bool operator<(const Mat2& o) const {
        return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
    }

    BigInt det() const { return a * d - b * c; }

    BigInt frobenius_sq() const { return a * a + b * b + c * c + d * d; }

    bool entries_positive() const { return a > 0 && b > 0 && c > 0 && d > 0; }
    bool entries_nonnegative() const { return a >= 0 && b >= 0 && c >= 0 && d >= 0; }

    /// Row vector times matrix: (x, y) * M.
    std::pair<BigInt, BigInt> row_mul(const BigInt& x, const BigInt& y) const {
        return {x * a + y * c, x * b + y * d};
    }

    std::string str() const {
        return "[[" + to_decimal(a) + "," + to_decimal(b) + "],[" + to_decimal(c) + "," +
               to_decimal(d) + "]]";
    }
};

}  // namespace treefrac
