#pragma once

#include "treefrac/mat2.hpp"
#include "treefrac/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treefrac {

/// Finite continued fraction a0 + 1/(a1 + 1/(... + 1/al)), all quotients >= 1.
///
/// Canonical form: the final quotient is >= 2 whenever quotients are present
/// (with the lone exception [0;1] for the value 1). The non-canonical twin
/// with a trailing 1 is representable and reachable via with_trailing_one().
struct CFExpansion {
    BigInt a0;
    std::vector<BigInt> quotients;

    bool is_canonical() const;

    /// The [..., a] <-> [..., a-1, 1] rewrite. Applies whichever direction the
    /// current form admits; involution between the two representations.
    CFExpansion with_trailing_one() const;

    std::string str() const;
    static CFExpansion parse(const std::string& s);

    bool operator==(const CFExpansion& o) const { return a0 == o.a0 && quotients == o.quotients; }
};

/// The expansion [b1,1,b2,1,...,bm,1], stored by its odd-position quotients.
/// Every such value lies strictly in (0, 1).
struct AlternatingCF {
    std::vector<BigInt> bs;  // nonempty, all >= 1

    CFExpansion to_cf() const;
    std::string str() const;

    bool operator==(const AlternatingCF& o) const { return bs == o.bs; }
};

/// Exact value of a continued fraction.
Rational cf_eval(const CFExpansion& cf);

/// Canonical expansion by the Euclidean algorithm; cf_eval(cf_expand(x)) == x.
CFExpansion cf_expand(const Rational& x);

/// The alternating form of x in (0,1), if one exists. Non-representability is
/// an ordinary outcome, not an error.
std::optional<AlternatingCF> to_alternating(const Rational& x);

/// Value of [b1,1,...,bm,1] via the matrix product (0,1) * M_{b_m} ... M_{b_1}.
Rational alternating_eval(const AlternatingCF& acf);

/// M_b = [[0,1],[1,1]] * [[0,1],[1,b]] = [[1,b],[1,b+1]]; determinant +1.
Mat2 generator_matrix(const BigInt& b);

/// Checks [[1,0],[1,1]]*[[1,k],[0,1]] == [[0,1],[1,1]]*[[0,1],[1,k]] exactly.
bool commutation_identity_check(const BigInt& k);

/// Product [[0,1],[1,al]] ... [[0,1],[1,a1]] over a quotient sequence.
/// NOTE the index reversal: later quotients multiply on the LEFT, so the
/// bottom row of the result is (t, u) with t/u = [0; a1,...,al].
Mat2 quotient_product(std::span<const BigInt> quotients);

/// M_{b_m} ... M_{b_1}; bottom row is (t, u) for the alternating value t/u.
Mat2 alternating_product(const AlternatingCF& acf);

}  // namespace treefrac
