#include "treefrac/cfrac.hpp"

#include "treefrac/errors.hpp"

#include <cctype>
#include <stdexcept>

namespace treefrac {

bool CFExpansion::is_canonical() const {
    if (quotients.empty()) return true;
    if (quotients.back() >= 2) return true;
    return quotients.size() == 1 && a0 == 0 && quotients[0] == 1;  // [0;1] = 1
}

CFExpansion CFExpansion::with_trailing_one() const {
    CFExpansion out = *this;
    if (quotients.empty()) {
        if (a0 < 1) throw std::domain_error("with_trailing_one: no rewrite for [0]");
        out.a0 -= 1;
        out.quotients = {BigInt(1)};
        return out;
    }
    if (quotients.back() >= 2) {
        out.quotients.back() -= 1;
        out.quotients.push_back(1);
        return out;
    }
    // trailing 1: merge it back into the previous quotient (or a0)
    out.quotients.pop_back();
    if (out.quotients.empty())
        out.a0 += 1;
    else
        out.quotients.back() += 1;
    return out;
}

std::string CFExpansion::str() const {
    std::string s = "[" + to_decimal(a0);
    for (std::size_t i = 0; i < quotients.size(); ++i)
        s += (i == 0 ? ";" : ",") + to_decimal(quotients[i]);
    return s + "]";
}

CFExpansion CFExpansion::parse(const std::string& s) {
    std::size_t i = 0;
    auto expect = [&](char c) {
        if (i >= s.size() || s[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
        ++i;
    };
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_int = [&]() -> BigInt {
        skip_ws();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected integer", i);
        BigInt v(s.substr(start, i - start));
        skip_ws();
        return v;
    };
    skip_ws();
    expect('[');
    CFExpansion cf;
    BigInt first = read_int();
    if (i < s.size() && s[i] == ';') {
        ++i;
        cf.a0 = first;
        cf.quotients.push_back(read_int());
    } else {
        // "[a1,a2,...]" form means a0 = 0
        cf.a0 = 0;
        cf.quotients.push_back(first);
    }
    while (i < s.size() && s[i] == ',') {
        ++i;
        cf.quotients.push_back(read_int());
    }
    expect(']');
    skip_ws();
    if (i != s.size()) throw ParseError("trailing input", i);
    for (const auto& q : cf.quotients)
        if (q < 1) throw ParseError("partial quotients must be >= 1", 0);
    if (cf.a0 < 0) throw ParseError("a0 must be >= 0", 0);
    return cf;
}

CFExpansion AlternatingCF::to_cf() const {
    CFExpansion cf;
    cf.a0 = 0;
    cf.quotients.reserve(2 * bs.size());
    for (const auto& b : bs) {
        cf.quotients.push_back(b);
        cf.quotients.push_back(1);
    }
    return cf;
}

std::string AlternatingCF::str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (i) s += ",";
        s += to_decimal(bs[i]) + ",1";
    }
    return s + "]";
}

Rational cf_eval(const CFExpansion& cf) {
    for (const auto& q : cf.quotients)
        if (q < 1) throw std::domain_error("cf_eval: quotient < 1");
    // Evaluate the tail [al; ...; a1] bottom-up as num/den, then add a0.
    BigInt num = 1, den = 0;  // empty tail = +infinity treated via den 0
    for (auto it = cf.quotients.rbegin(); it != cf.quotients.rend(); ++it) {
        // x -> a + 1/x
        BigInt nnum = *it * num + den;
        den = num;
        num = nnum;
    }
    if (den == 0) return Rational(cf.a0, 1);
    return Rational(cf.a0 * num + den, num);
}

CFExpansion cf_expand(const Rational& x) {
    CFExpansion cf;
    BigInt num = x.num, den = x.den;
    cf.a0 = num / den;
    BigInt rem = num % den;
    num = den;
    den = rem;
    while (den != 0) {
        cf.quotients.push_back(num / den);
        BigInt r = num % den;
        num = den;
        den = r;
    }
    return cf;  // Euclidean output is canonical: final quotient >= 2 when present
}

namespace {

// bs from a quotient sequence if it matches [b1,1,b2,1,...,bm,1].
std::optional<AlternatingCF> match_alternating(const CFExpansion& cf) {
    if (cf.a0 != 0) return std::nullopt;
    const auto& q = cf.quotients;
    if (q.empty() || q.size() % 2 != 0) return std::nullopt;
    AlternatingCF acf;
    for (std::size_t i = 0; i < q.size(); i += 2) {
        if (q[i + 1] != 1) return std::nullopt;
        acf.bs.push_back(q[i]);
    }
    return acf;
}

}  // namespace

std::optional<AlternatingCF> to_alternating(const Rational& x) {
    if (!x.in_open_unit_interval())
        throw std::domain_error("to_alternating: argument must lie in (0,1)");
    CFExpansion canonical = cf_expand(x);
    if (auto hit = match_alternating(canonical)) return hit;
    return match_alternating(canonical.with_trailing_one());
}

Mat2 generator_matrix(const BigInt& b) {
    if (b < 1) throw std::domain_error("generator_matrix: b must be >= 1");
    return Mat2(1, b, 1, b + 1);
}

bool commutation_identity_check(const BigInt& k) {
    if (k < 1) throw std::domain_error("commutation_identity_check: k must be >= 1");
    Mat2 lhs = Mat2(1, 0, 1, 1) * Mat2(1, k, 0, 1);
    Mat2 rhs = Mat2(0, 1, 1, 1) * Mat2(0, 1, 1, k);
    return lhs == rhs;
}

Mat2 quotient_product(std::span<const BigInt> quotients) {
    Mat2 p = Mat2::identity();
    for (const auto& a : quotients) p = Mat2::cf_step(a) * p;  // step for al lands leftmost
    return p;
}

Mat2 alternating_product(const AlternatingCF& acf) {
    if (acf.bs.empty()) throw std::domain_error("alternating_product: empty sequence");
    Mat2 p = Mat2::identity();
    for (auto it = acf.bs.rbegin(); it != acf.bs.rend(); ++it) p = p * generator_matrix(*it);
    return p;
}

Rational alternating_eval(const AlternatingCF& acf) {
    Mat2 p = alternating_product(acf);
    // Bottom row (t, u) is already coprime: det(p) = 1.
    Rational r(p.c, p.d);
    if (r.num != p.c || r.den != p.d)
        throw std::logic_error("alternating_eval: bottom row was not coprime");
    return r;
}

}  // namespace treefrac
