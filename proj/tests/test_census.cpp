#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "treefrac/census.hpp"
#include "treefrac/errors.hpp"
#include "treefrac/treegraph.hpp"

#include <bit>
#include <map>
#include <set>
#include <unordered_set>

using namespace treefrac;

namespace {

std::vector<BigInt> to_big(std::initializer_list<long> xs) {
    std::vector<BigInt> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

CensusResult run(int n, bool planar = true) {
    CensusOptions opt;
    opt.planar_only = planar;
    opt.threads = 2;
    if (n == 7) opt.allow_n7 = true;
    return enumerate_T(n, opt);
}

}  // namespace

TEST_CASE("small value sets are exact") {
    CHECK(run(3).values == to_big({1, 3}));
    CHECK(run(4).values == to_big({1, 3, 4, 8, 16}));
    CHECK(run(5).values == to_big({1, 3, 4, 5, 8, 9, 11, 12, 16, 20, 21, 24, 40, 45, 75}));
}

TEST_CASE("isomorphism class counts match the unlabeled planar census") {
    // connected simple planar graphs on 1..6 vertices
    const std::uint64_t expected[] = {1, 1, 2, 6, 20, 99};
    for (int n = 1; n <= 6; ++n) CHECK(run(n).graph_count == expected[n - 1]);
}

TEST_CASE("value sets nest and obey the basic exclusions") {
    CensusResult prev = run(1);
    for (int n = 2; n <= 6; ++n) {
        CensusResult cur = run(n);
        for (const BigInt& v : prev.values) CHECK(cur.contains(v));
        CHECK_FALSE(cur.contains(BigInt(2)));
        if (n >= 3) CHECK(cur.contains(BigInt(n)));  // the n-cycle
        prev = std::move(cur);
    }
}

TEST_CASE("every planar value respects the edge and count bounds") {
    CensusResult r = run(6);
    BigInt bound = 1;
    for (int i = 0; i < 6; ++i) bound *= 8;
    for (const BigInt& v : r.values) CHECK(v < bound);  // tau < 8^n
}

TEST_CASE("unfiltered census hits the complete-graph maximum") {
    CensusResult t5 = run(5, false);
    CHECK(t5.values.back() == 125);  // 5^3
    CHECK(t5.values.size() == 16);
    CensusResult t6 = run(6, false);
    CHECK(t6.values.back() == 1296);  // 6^4
    CHECK(t6.values.size() == 65);
}

TEST_CASE("range gating") {
    CHECK_THROWS_AS(enumerate_T(8, {}), OutOfRange);
    CHECK_THROWS_AS(enumerate_T(0, {}), OutOfRange);
    CHECK_THROWS_AS(enumerate_T(7, {}), OutOfRange);  // needs the explicit flag
    CensusOptions capped;
    capped.limits.census_max_n = 4;
    CHECK_THROWS_AS(enumerate_T(5, capped), OutOfRange);
}

TEST_CASE("seven-vertex census" * doctest::skip()) {
    CensusResult r = run(7);
    CHECK(r.graph_count == 646);  // unlabeled connected simple planar graphs
    CHECK(r.values.size() == 240);
    CensusResult t6 = run(6);
    for (const BigInt& v : t6.values) CHECK(r.contains(v));
    CHECK(r.contains(BigInt(7)));
    CHECK_FALSE(r.contains(BigInt(2)));

    // without the planarity filter the Cayley count appears
    CensusOptions all;
    all.planar_only = false;
    all.allow_n7 = true;
    all.isomorph_reject = false;  // values only
    all.threads = 2;
    CensusResult t7all = enumerate_T(7, all);
    CHECK(t7all.values.back() == 16807);  // 7^5
}

TEST_CASE("alpha on known values") {
    AlphaOptions opt;
    opt.census.threads = 2;
    AlphaResult a3 = alpha(BigInt(3), opt);
    REQUIRE(a3.exact.has_value());
    CHECK(a3.exact->alpha == 3);
    AlphaResult a5 = alpha(BigInt(5), opt);
    REQUIRE(a5.exact.has_value());
    CHECK(a5.exact->alpha == 5);
    AlphaResult a16 = alpha(BigInt(16), opt);
    REQUIRE(a16.exact.has_value());
    CHECK(a16.exact->alpha == 4);
    // witnesses actually achieve the value
    MarkedGraph w;
    w.n = a16.exact->witness_n;
    w.edges = a16.exact->witness_edges;
    CHECK(tau(w) == 16);
    CHECK(w.n == a16.exact->alpha);
    CHECK_THROWS_AS(alpha(BigInt(2), opt), std::invalid_argument);
}

TEST_CASE("alpha falls back to the chain-construction bound") {
    AlphaOptions opt;
    opt.search_cap = 5;
    opt.census.threads = 2;
    AlphaResult a101 = alpha(BigInt(101), opt);  // beyond T(5), whose maximum is 75
    CHECK_FALSE(a101.exact.has_value());
    if (a101.cf_bound) {
        GraphBuildReport rep = build_trimmed(a101.cf_bound->bs);
        CHECK(rep.tau_del == 101);
        CHECK(rep.vertex_count == a101.cf_bound->vertices);
    }
    // 8 = numerator of the all-ones word of length three
    AlphaResult a8 = alpha(BigInt(8), opt);
    REQUIRE(a8.cf_bound.has_value());
    CHECK(a8.cf_bound->vertices == 4);
    GraphBuildReport rep8 = build_trimmed(a8.cf_bound->bs);
    CHECK(rep8.tau_del == 8);
}

TEST_CASE("alpha is submultiplicative over the known table") {
    std::map<long, int> table;
    for (int n = 3; n <= 6; ++n) {
        CensusResult r = run(n);
        for (const BigInt& v : r.values) {
            long key = v.convert_to<long>();
            if (!table.count(key)) table[key] = n;
        }
    }
    int checked = 0;
    for (const auto& [p, ap] : table) {
        if (p < 3) continue;
        for (const auto& [q, aq] : table) {
            if (q < 3 || p * q > table.rbegin()->first) continue;
            auto it = table.find(p * q);
            if (it == table.end()) continue;
            CHECK(it->second <= ap + aq);
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("one-point joins multiply spanning-tree counts") {
    AlphaOptions opt;
    opt.census.threads = 2;
    AlphaResult a3 = alpha(BigInt(3), opt);
    AlphaResult a8 = alpha(BigInt(8), opt);
    REQUIRE((a3.exact && a8.exact));
    // wedge the two witnesses at vertex 0
    MarkedGraph joined;
    joined.n = a3.exact->witness_n + a8.exact->witness_n - 1;
    for (const Edge& e : a3.exact->witness_edges) joined.add_edge(e.u, e.v);
    int shift = a3.exact->witness_n - 1;
    for (const Edge& e : a8.exact->witness_edges)
        joined.add_edge(e.u == 0 ? 0 : e.u + shift, e.v == 0 ? 0 : e.v + shift);
    CHECK(tau(joined) == 24);
}

TEST_CASE("tree spectrum values") {
    MarkedGraph tree;
    tree.n = 5;
    for (int v = 0; v + 1 < 5; ++v) tree.add_edge(v, v + 1);
    CHECK(tree_spectrum(tree) == doctest::Approx(0.0));
    MarkedGraph k4;
    k4.n = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    CHECK(tree_spectrum(k4) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    MarkedGraph tri;
    tri.n = 3;
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    CHECK(tree_spectrum(tri) == doctest::Approx(std::log(3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("growth witness: unit alphabet gives one value per block count") {
    for (int budget : {4, 6, 8, 10, 12}) {
        GrowthWitness w = growth_witness(1, budget);
        // words 1^m with (m-1) <= budget-2 give the distinct counts F_2, F_4, ...
        CHECK(w.distinct_counts == static_cast<std::uint64_t>(budget - 1));
    }
    // those counts really are the alternating numerators of the all-ones words
    AlternatingCF ones;
    ones.bs = {BigInt(1), BigInt(1), BigInt(1)};
    CHECK(alternating_eval(ones).num == 8);
}

TEST_CASE("growth witness distinct counting matches a hash-set oracle") {
    GrowthWitness w = growth_witness(2, 10);
    // independent recount with an unordered container
    std::unordered_set<long long> seen;
    std::vector<std::vector<int>> stack{{}};
    while (!stack.empty()) {
        std::vector<int> cur = stack.back();
        stack.pop_back();
        AlternatingCF bs;
        bs.bs.emplace_back(1);  // any first entry gives the same numerator
        for (int b : cur) bs.bs.emplace_back(b);
        seen.insert(alternating_eval(bs).num.convert_to<long long>());
        int sum = 0;
        for (int b : cur) sum += b;
        for (int b = 1; b <= 2 && sum + b <= 8; ++b) {
            std::vector<int> next = cur;
            next.push_back(b);
            stack.push_back(std::move(next));
        }
    }
    CHECK(w.distinct_counts == seen.size());
    CHECK(w.rate == doctest::Approx(std::pow(double(seen.size()), 0.1)));
}

TEST_CASE("census serializes to stable json") {
    CensusResult r = run(3);
    CHECK(r.to_json() == R"({"count":2,"n":3,"planar":true,"values":["1","3"]})");
}

#include "treefrac/planarity.hpp"

namespace {

// Wagner-style oracle on 6 vertices: planar iff no K5 and no K3,3 minor.
// With six vertices the only block shapes are five singletons (plus one
// spare), one merged adjacent pair plus four singletons, or six singletons
// for the bipartite case, so the check is a direct enumeration.
bool has_k5_minor_6(const std::uint16_t* adj) {
    auto adjacent = [&](int a, int b) { return (adj[a] >> b) & 1; };
    // five singleton branch vertices
    for (int skip = 0; skip < 6; ++skip) {
        bool ok = true;
        for (int a = 0; a < 6 && ok; ++a)
            for (int b = a + 1; b < 6 && ok; ++b) {
                if (a == skip || b == skip) continue;
                if (!adjacent(a, b)) ok = false;
            }
        if (ok) return true;
    }
    // one merged pair {u,v}, the other four vertices singletons
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) {
            if (!adjacent(u, v)) continue;  // block must be connected
            bool ok = true;
            for (int a = 0; a < 6 && ok; ++a) {
                if (a == u || a == v) continue;
                if (!adjacent(a, u) && !adjacent(a, v)) ok = false;
                for (int b = a + 1; b < 6 && ok; ++b) {
                    if (b == u || b == v) continue;
                    if (!adjacent(a, b)) ok = false;
                }
            }
            if (ok) return true;
        }
    return false;
}

bool has_k33_minor_6(const std::uint16_t* adj) {
    auto adjacent = [&](int a, int b) { return (adj[a] >> b) & 1; };
    for (int i = 1; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            int left[3] = {0, i, j};
            int right[3];
            int r = 0;
            for (int t = 1; t < 6; ++t)
                if (t != i && t != j) right[r++] = t;
            bool ok = true;
            for (int a : left)
                for (int b : right)
                    if (!adjacent(a, b)) ok = false;
            if (ok) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("subdivision search agrees with the minor oracle on all 6-vertex graphs") {
    std::pair<int, int> pairs[15];
    int pc = 0;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) pairs[pc++] = {u, v};
    int planar_count = 0;
    for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
        std::uint16_t adj[8] = {};
        for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
            auto [u, v] = pairs[std::countr_zero(bits)];
            adj[u] |= static_cast<std::uint16_t>(1u << v);
            adj[v] |= static_cast<std::uint16_t>(1u << u);
        }
        bool by_subdivisions = is_planar_adj(6, adj);
        bool by_minors = !has_k5_minor_6(adj) && !has_k33_minor_6(adj);
        REQUIRE(by_subdivisions == by_minors);
        planar_count += by_subdivisions;
    }
    CHECK(planar_count > 20000);  // most 6-vertex graphs are planar
}
