#pragma once

#include "treefrac/cfrac.hpp"
#include "treefrac/config.hpp"
#include "treefrac/mat2.hpp"
#include "treefrac/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace treefrac {

/// All nonempty generator-word products with Frobenius norm <= N.
/// Complete by construction: the norm strictly increases under
/// right-multiplication by any generator (asserted per product).
struct SemigroupBall {
    int A = 0;
    std::uint64_t N = 0;
    std::vector<Mat2> elements;  // sorted, duplicate-free
    std::string norm_kind = "frobenius";

    double growth_exponent() const;  // log |ball| / log N
};

SemigroupBall ball(int A, std::uint64_t N, const Limits& limits = {});

/// Inner products <v1 * gamma, v2> over the ball, deduplicated and sorted.
/// v1 = (0,1), v2 = (1,0) gives the numerator orbit; v2 = (0,1) the
/// denominators.
std::vector<BigInt> numerators(const SemigroupBall& b, std::pair<BigInt, BigInt> v1 = {0, 1},
                               std::pair<BigInt, BigInt> v2 = {1, 0});

/// Multiplicity of n among the ball's orbit inner products.
std::uint64_t representation_number(const SemigroupBall& b, const BigInt& n,
                                    std::pair<BigInt, BigInt> v1 = {0, 1},
                                    std::pair<BigInt, BigInt> v2 = {1, 0});

/// Closure of the generators mod q under multiplication, with the comparison
/// against |SL(2, Z/qZ)| = q^3 * prod_{p | q} (1 - p^-2).
struct CongruenceQuotient {
    int q = 0;
    std::uint64_t reached = 0;
    bool full = false;
    bool contains_identity = false;
};

CongruenceQuotient congruence_quotient(int A, int q);

std::uint64_t sl2_order(int q);

/// Residues <v1*g, v2> mod q over the whole congruence quotient.
std::vector<int> orbit_residues(int A, int q);

/// (t+u)/(t+2u) in lowest terms; prepending one more unit block to t/u.
Rational sumset_witness(const BigInt& t, const BigInt& u);

}  // namespace treefrac
