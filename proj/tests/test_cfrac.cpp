#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treefrac/cfrac.hpp"
#include "treefrac/errors.hpp"
#include "treefrac/rational.hpp"

using namespace treefrac;

namespace {

struct Rng {
    std::uint64_t s = 0x243F6A8885A308D3ull;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int uniform(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
};

AlternatingCF make_bs(std::initializer_list<long> xs) {
    AlternatingCF a;
    for (long x : xs) a.bs.emplace_back(x);
    return a;
}

CFExpansion make_cf(long a0, std::initializer_list<long> qs) {
    CFExpansion cf;
    cf.a0 = a0;
    for (long q : qs) cf.quotients.emplace_back(q);
    return cf;
}

}  // namespace

TEST_CASE("rational reduction and parsing") {
    CHECK(Rational(BigInt(4), BigInt(6)) == Rational(BigInt(2), BigInt(3)));
    CHECK(Rational(BigInt(0), BigInt(7)).den == 1);
    CHECK(Rational::parse("4/11").str() == "4/11");
    CHECK(Rational::parse("12") == Rational(BigInt(12), BigInt(1)));
    CHECK(Rational::parse("4/11").in_open_unit_interval());
    CHECK_FALSE(Rational::parse("7/3").in_open_unit_interval());
    CHECK_THROWS_AS(Rational::parse("4/"), ParseError);
    CHECK_THROWS_AS(Rational::parse("x/3"), ParseError);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("mat2 algebra") {
    Mat2 a(1, 2, 3, 4), b(5, 6, 7, 8);
    Mat2 p = a * b;
    CHECK(p == Mat2(19, 22, 43, 50));
    CHECK(a.det() == -2);
    CHECK(Mat2::cf_step(5).det() == -1);
    CHECK(Mat2::identity().det() == 1);
    CHECK(Mat2(1, 1, 1, 2).frobenius_sq() == 7);
    auto [x, y] = Mat2(1, 2, 3, 4).row_mul(1, 1);
    CHECK(x == 4);
    CHECK(y == 6);
}

TEST_CASE("generator matrices are the stated products") {
    for (long b : {1L, 2L, 3L, 17L}) {
        Mat2 direct = Mat2(0, 1, 1, 1) * Mat2(0, 1, 1, b);
        Mat2 g = generator_matrix(b);
        CHECK(g == direct);
        CHECK(g == Mat2(1, b, 1, b + 1));
        CHECK(g.det() == 1);
    }
    CHECK_THROWS_AS(generator_matrix(0), std::domain_error);
}

TEST_CASE("commutation identity") {
    for (long k : {1L, 7L, 100L}) {
        CHECK(commutation_identity_check(k));
        // direct-multiplication oracle
        CHECK(Mat2(1, 0, 1, 1) * Mat2(1, k, 0, 1) == Mat2(0, 1, 1, 1) * Mat2(0, 1, 1, k));
    }
}

TEST_CASE("cf_eval on fixed expansions") {
    CHECK(cf_eval(make_cf(0, {1, 1})) == Rational::parse("1/2"));
    CHECK(cf_eval(make_cf(0, {5})) == Rational::parse("1/5"));
    CHECK(cf_eval(make_cf(2, {3})) == Rational::parse("7/3"));

    // matrix-product oracle for [0;2,1,2,1]: bottom row of the step product
    CFExpansion cf = make_cf(0, {2, 1, 2, 1});
    Mat2 prod = quotient_product(cf.quotients);
    CHECK(prod.c == 4);
    CHECK(prod.d == 11);
    CHECK(cf_eval(cf) == Rational::parse("4/11"));
}

TEST_CASE("cf_expand produces canonical expansions") {
    CHECK(cf_expand(Rational::parse("1/2")) == make_cf(0, {2}));
    CHECK(cf_expand(Rational::parse("4/11")) == make_cf(0, {2, 1, 3}));
    CHECK(cf_expand(Rational::parse("7/3")) == make_cf(2, {3}));
    CHECK(cf_expand(Rational::parse("5")) == make_cf(5, {}));
    CHECK(cf_expand(Rational::parse("4/11")).is_canonical());
}

TEST_CASE("trailing-one rewrite is an involution between the two forms") {
    CFExpansion canon = make_cf(0, {2, 1, 3});
    CFExpansion twin = canon.with_trailing_one();
    CHECK(twin == make_cf(0, {2, 1, 2, 1}));
    CHECK_FALSE(twin.is_canonical());
    CHECK(twin.with_trailing_one() == canon);
    CHECK(cf_eval(twin) == cf_eval(canon));
    // integer case: [1] <-> [0;1]
    CHECK(make_cf(1, {}).with_trailing_one() == make_cf(0, {1}));
}

TEST_CASE("cf text round trip and parse errors") {
    CHECK(CFExpansion::parse("[0;2,1,3]") == make_cf(0, {2, 1, 3}));
    CHECK(CFExpansion::parse("[2,1,3]") == make_cf(0, {2, 1, 3}));  // bare list means a0 = 0
    CHECK(make_cf(2, {3}).str() == "[2;3]");
    CHECK(make_bs({2, 2}).str() == "[2,1,2,1]");
    CHECK(CFExpansion::parse(make_cf(0, {2, 1, 2, 1}).str()) == make_cf(0, {2, 1, 2, 1}));
    CHECK_THROWS_AS(CFExpansion::parse("[1;2"), ParseError);
    CHECK_THROWS_AS(CFExpansion::parse("[1;x]"), ParseError);
    CHECK_THROWS_AS(CFExpansion::parse("[1;0]"), ParseError);
}

TEST_CASE("expand/eval round trip on random reduced fractions") {
    Rng rng;
    for (int i = 0; i < 300; ++i) {
        BigInt den = rng.uniform(2, 1000000);
        BigInt num = rng.uniform(1, 999999);
        if (num >= den) continue;
        Rational x(num, den);
        CHECK(cf_eval(cf_expand(x)) == x);
    }
    // a properly large one
    Rational big(BigInt("123456789012345678901234567890123456789"),
                 BigInt("987654321098765432109876543210987654323"));
    CHECK(cf_eval(cf_expand(big)) == big);
}

TEST_CASE("matrix correspondence for random quotient sequences") {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        CFExpansion cf;
        cf.a0 = 0;
        int len = rng.uniform(1, 8);
        for (int k = 0; k < len; ++k) cf.quotients.emplace_back(rng.uniform(1, 9));
        Mat2 prod = quotient_product(cf.quotients);
        // bottom row is already coprime; compare before any reduction
        CHECK(gcd(prod.c, prod.d) == 1);
        Rational v = cf_eval(cf);
        CHECK(v.num == prod.c);
        CHECK(v.den == prod.d);
    }
}

TEST_CASE("alternating_eval on fixed sequences") {
    CHECK(alternating_eval(make_bs({1})) == Rational::parse("1/2"));
    Mat2 m1 = alternating_product(make_bs({1}));
    CHECK(m1.c == 1);
    CHECK(m1.d == 2);
    CHECK(alternating_eval(make_bs({1, 1, 1})) == Rational::parse("8/13"));
    CHECK(alternating_eval(make_bs({2, 2})) == Rational::parse("4/11"));
    // agrees with the interleaved expansion evaluated directly
    CHECK(alternating_eval(make_bs({3, 1, 4})) == cf_eval(make_bs({3, 1, 4}).to_cf()));
}

TEST_CASE("to_alternating on fixed fractions") {
    CHECK(*to_alternating(Rational::parse("1/2")) == make_bs({1}));
    CHECK(*to_alternating(Rational::parse("4/11")) == make_bs({2, 2}));
    // 1/3 = [2,1], so it carries the single-block form [2]
    CHECK(*to_alternating(Rational::parse("1/3")) == make_bs({2}));
    Mat2 m2 = alternating_product(make_bs({2}));
    CHECK(m2.c == 1);
    CHECK(m2.d == 3);
    // 2/5 and 2/3 admit no alternating form: both expansions fail the pattern
    CHECK_FALSE(to_alternating(Rational::parse("2/5")).has_value());
    CHECK_FALSE(to_alternating(Rational::parse("2/3")).has_value());
    CHECK_THROWS_AS(to_alternating(Rational::parse("7/3")), std::domain_error);
    CHECK_THROWS_AS(to_alternating(Rational::parse("3/3")), std::domain_error);
}

TEST_CASE("alternating consistency: eval then recover") {
    Rng rng;
    for (int i = 0; i < 200; ++i) {
        AlternatingCF bs;
        int m = rng.uniform(1, 6);
        for (int k = 0; k < m; ++k) bs.bs.emplace_back(rng.uniform(1, 5));
        Rational v = alternating_eval(bs);
        auto back = to_alternating(v);
        REQUIRE(back.has_value());
        CHECK(*back == bs);
    }
}

TEST_CASE("prepending a unit block gives (t+u)/(t+2u)") {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        AlternatingCF bs;
        int m = rng.uniform(1, 5);
        for (int k = 0; k < m; ++k) bs.bs.emplace_back(rng.uniform(1, 4));
        Rational v = alternating_eval(bs);
        Rational w(v.num + v.den, v.num + 2 * v.den);
        // brute-force expectation: the same word with a leading 1
        AlternatingCF extended;
        extended.bs.emplace_back(1);
        extended.bs.insert(extended.bs.end(), bs.bs.begin(), bs.bs.end());
        CHECK(alternating_eval(extended) == w);
        auto back = to_alternating(w);
        REQUIRE(back.has_value());
        CHECK(back->bs.size() == bs.bs.size() + 1);
        CHECK(back->bs.front() == 1);
    }
}

TEST_CASE("generator products have unit determinant and positive entries") {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        AlternatingCF bs;
        int m = rng.uniform(1, 7);
        for (int k = 0; k < m; ++k) bs.bs.emplace_back(rng.uniform(1, 6));
        Mat2 p = alternating_product(bs);
        CHECK(p.det() == 1);
        CHECK(p.entries_positive());
    }
}

TEST_CASE("values of alternating words lie strictly inside (0,1)") {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        AlternatingCF bs;
        int m = rng.uniform(1, 6);
        for (int k = 0; k < m; ++k) bs.bs.emplace_back(rng.uniform(1, 9));
        CHECK(alternating_eval(bs).in_open_unit_interval());
    }
}

TEST_CASE("log of large integers") {
    CHECK(log_big(BigInt(1)) == doctest::Approx(0.0));
    CHECK(log_big(BigInt(1000)) == doctest::Approx(std::log(1000.0)));
    BigInt huge = BigInt(10);
    for (int i = 0; i < 5; ++i) huge *= huge;  // 10^32
    CHECK(log_big(huge) == doctest::Approx(32.0 * std::log(10.0)).epsilon(1e-12));
    CHECK_THROWS_AS(log_big(BigInt(0)), std::domain_error);
}

TEST_CASE("representability agrees with brute-force enumeration up to denominator 200") {
    // every alternating value with denominator <= 200, by word search
    std::set<std::pair<long, long>> representable;
    std::vector<Mat2> stack{Mat2::identity()};
    std::vector<int> wordlen{0};
    while (!stack.empty()) {
        Mat2 cur = stack.back();
        stack.pop_back();
        int len = wordlen.back();
        wordlen.pop_back();
        if (len > 0)
            representable.insert({cur.c.convert_to<long>(), cur.d.convert_to<long>()});
        for (int b = 1;; ++b) {
            Mat2 next = cur * generator_matrix(b);
            if (next.d > 200) break;  // denominators only grow from here
            stack.push_back(next);
            wordlen.push_back(len + 1);
        }
    }
    int hits = 0;
    for (long u = 2; u <= 200; ++u)
        for (long t = 1; t < u; ++t) {
            if (gcd(BigInt(t), BigInt(u)) != 1) continue;
            auto bs = to_alternating(Rational(BigInt(t), BigInt(u)));
            bool brute = representable.count({t, u}) > 0;
            REQUIRE(bs.has_value() == brute);
            if (bs) {
                CHECK(alternating_eval(*bs) == Rational(BigInt(t), BigInt(u)));
                ++hits;
            }
        }
    CHECK(hits == static_cast<int>(representable.size()));
    CHECK(hits > 100);
}
