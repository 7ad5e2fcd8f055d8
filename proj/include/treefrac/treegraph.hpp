#pragma once

#include "treefrac/bigint.hpp"
#include "treefrac/cfrac.hpp"

#include <span>
#include <string>
#include <vector>

namespace treefrac {

struct Edge {
    int u, v;  // normalized u < v on construction through add_edge
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
};

/// Loopless multigraph with one distinguished (marked) edge.
/// Immutable by convention: operations return new graphs.
struct MarkedGraph {
    int n = 0;
    std::vector<Edge> edges;  // multiset; parallel edges appear repeatedly
    int marked = -1;          // index into edges; -1 = unmarked

    void add_edge(int u, int v);
    const Edge& marked_edge() const;
    bool has_loop() const;
    bool is_simple() const;
    bool is_connected() const;
    std::vector<int> degrees() const;
};

/// Single marked edge joining two vertices; the base of every chain build.
MarkedGraph p1();

/// (tau(G - e), tau(G / e)); satisfies tau(G) = del + con.
struct SpanningTreeVector {
    BigInt del, con;
    bool operator==(const SpanningTreeVector& o) const { return del == o.del && con == o.con; }
};

/// Exact spanning-tree count via a principal minor of the multigraph
/// Laplacian, eliminated fraction-free (Bareiss). 0 iff disconnected;
/// 1 for a single vertex. Throws LoopPresent on loops.
BigInt tau(const MarkedGraph& g);
BigInt tau(int n, std::span<const Edge> edges);

/// Fraction-free determinant of a dense integer matrix (row-major, size n*n).
/// Exact for any input; uses a checked int64 path internally and escalates to
/// BigInt when intermediates would overflow.
BigInt bareiss_determinant(int n, std::vector<BigInt> m);

MarkedGraph delete_marked(const MarkedGraph& g);
/// Contract the marked edge: endpoints merge, resulting loops are removed,
/// parallel edges are kept.
std::pair<int, std::vector<Edge>> contract_marked(const MarkedGraph& g);

SpanningTreeVector stv(const MarkedGraph& g);

/// Replace the marked edge by a path of k+1 edges (k new vertices); the new
/// path edge at the lower original endpoint becomes the mark.
/// stv transforms by right-multiplication with [[1,k],[0,1]].
MarkedGraph subdivide_op(const MarkedGraph& g, int k);

/// Replace the marked edge by k+1 parallel copies; one copy stays marked.
/// stv transforms by right-multiplication with [[1,0],[k,1]].
MarkedGraph parallel_op(const MarkedGraph& g, int k);

/// Add a path of k+1 edges joining the marked edge's endpoints and move the
/// mark onto the new path (composition of the two operations above).
/// stv transforms by right-multiplication with M_k = [[1,k],[1,k+1]].
MarkedGraph h_op(const MarkedGraph& g, int k);

struct GraphBuildReport {
    MarkedGraph graph;
    BigInt tau_del, tau_con;
    int vertex_count = 0;
    bool simple = false;
    bool planar = false;
};

/// Chain construction: apply h_op for b_m first, then b_{m-1}, ..., b_1.
/// The report's (tau_del, tau_con) equals the alternating value's (t, u) and
/// vertex_count = b_1 + ... + b_m + 2; counts are recomputed by determinant,
/// not taken from the matrix identity.
GraphBuildReport build_from_alternating(const AlternatingCF& bs);

/// Delete the marked edge and peel degree-1 vertices until none remain.
/// For m >= 2 this yields a connected simple planar graph with tau = t and
/// b_2 + ... + b_m + 2 vertices; for m = 1 the graph degenerates and
/// DegenerateTrim is thrown.
GraphBuildReport build_trimmed(const AlternatingCF& bs);

/// Sufficient planarity certificate: true if the graph reduces to a single
/// edge under series/parallel/leaf reductions (series-parallel graphs are
/// planar). Used for construction outputs too large for the exact test.
bool series_parallel_reducible(const MarkedGraph& g);

// --- serialization -------------------------------------------------------

/// "n" on the first line, then "u v" per edge, the marked edge flagged "*".
std::string to_edge_list(const MarkedGraph& g);
MarkedGraph parse_edge_list(const std::string& text);
std::string to_dot(const MarkedGraph& g);

}  // namespace treefrac
