#pragma once

#include "treefrac/bigint.hpp"
#include "treefrac/errors.hpp"

#include <string>
#include <utility>

namespace treefrac {

/// Nonnegative exact fraction, kept in lowest terms at all times.
struct Rational {
    BigInt num;  // >= 0
    BigInt den;  // >= 1

    Rational() : num(0), den(1) {}
    Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    void reduce() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (num < 0 || den < 0) throw std::domain_error("Rational: negative component");
        if (num == 0) {
            den = 1;
            return;
        }
        BigInt g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    bool in_open_unit_interval() const { return num > 0 && num < den; }

    double to_double() const { return num == 0 ? 0.0 : std::exp(log_big(num) - log_big(den)); }

    std::string str() const { return to_decimal(num) + "/" + to_decimal(den); }

    /// Parse "t/u" or a bare integer "t".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        auto parse_int = [&](const std::string& part, std::size_t offset) -> BigInt {
            if (part.empty()) throw ParseError("empty integer", offset);
            for (std::size_t i = 0; i < part.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(part[i])))
                    throw ParseError("expected digit", offset + i);
            return BigInt(part);
        };
        if (slash == std::string::npos) return Rational(parse_int(s, 0), 1);
        return Rational(parse_int(s.substr(0, slash), 0), parse_int(s.substr(slash + 1), slash + 1));
    }
};

}  // namespace treefrac
