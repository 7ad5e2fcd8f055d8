#pragma once

#include "treefrac/bigint.hpp"
#include "treefrac/cfrac.hpp"
#include "treefrac/config.hpp"
#include "treefrac/treegraph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace treefrac {

struct CensusOptions {
    bool planar_only = true;
    bool isomorph_reject = true;  // count unlabeled graphs; off = values only
    bool allow_n7 = false;        // n = 7 is gated: ~2M masks, parallel fan-out
    bool keep_witnesses = false;  // record one witness graph per value
    unsigned threads = 0;
    Limits limits = {};
};

/// The sorted set of spanning-tree counts over connected simple (planar)
/// graphs on n vertices, with the number of isomorphism classes examined.
struct CensusResult {
    int n = 0;
    bool planar_only = true;
    std::vector<BigInt> values;
    std::uint64_t graph_count = 0;           // isomorphism classes when counted
    bool counted_isomorphism_classes = true;
    std::map<BigInt, std::uint32_t> witness_masks;  // value -> edge bitmask (if kept)

    bool contains(const BigInt& t) const;
    std::string to_json() const;  // {"n":..,"planar":..,"values":[".."],"count":..}
};

/// Exhaustive enumeration over edge subsets with connectivity, planarity and
/// canonical-form isomorph rejection. Throws OutOfRange for n outside [1,7]
/// (or above the configured cap) and for n = 7 without allow_n7.
CensusResult enumerate_T(int n, const CensusOptions& opt = {});

/// Decode a witness edge bitmask back into a graph.
MarkedGraph witness_graph(int n, std::uint32_t mask);

struct AlphaEntry {
    BigInt t;
    int alpha = 0;
    int witness_n = 0;
    std::vector<Edge> witness_edges;
};

struct CfUpperBound {
    AlternatingCF bs;
    int vertices = 0;  // trimmed vertex count b2+...+bm+2
};

struct AlphaResult {
    std::optional<AlphaEntry> exact;      // exhaustive alpha within the cap
    std::optional<CfUpperBound> cf_bound;  // best chain-construction bound found
};

struct AlphaOptions {
    int search_cap = 6;        // exhaustive census range (<= 7)
    int cf_alphabet = 10;      // entry bound for the chain search; 0 disables
    int cf_max_vertices = 40;  // give up beyond this trimmed size
    CensusOptions census;
};

/// alpha(t) = min { n : t in T(n) }, searched exhaustively up to the cap,
/// plus a (possibly non-optimal) upper bound from chain constructions whose
/// numerator equals t.
AlphaResult alpha(const BigInt& t, const AlphaOptions& opt = {});

/// log tau(G) / |V|; zero for trees.
double tree_spectrum(const MarkedGraph& g);

struct GrowthWitness {
    std::uint64_t distinct_counts = 0;
    double rate = 0.0;  // distinct_counts^(1/budget)
};

/// Distinct spanning-tree counts achievable by trimmed chain constructions
/// with entries <= A and trimmed vertex count <= budget.
GrowthWitness growth_witness(int A, int budget);

}  // namespace treefrac
