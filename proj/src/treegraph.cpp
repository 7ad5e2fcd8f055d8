#include "treefrac/treegraph.hpp"

#include "treefrac/errors.hpp"
#include "treefrac/planarity.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace treefrac {

void MarkedGraph::add_edge(int u, int v) {
    if (u == v) throw LoopPresent("add_edge: loop rejected");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw std::out_of_range("add_edge: vertex out of range");
    edges.push_back({u, v});
}

const Edge& MarkedGraph::marked_edge() const {
    if (marked < 0 || marked >= static_cast<int>(edges.size()))
        throw std::logic_error("marked_edge: no valid mark");
    return edges[static_cast<std::size_t>(marked)];
}

bool MarkedGraph::has_loop() const {
    return std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.u == e.v; });
}

bool MarkedGraph::is_simple() const {
    std::vector<std::pair<int, int>> seen;
    seen.reserve(edges.size());
    for (const Edge& e : edges) seen.emplace_back(e.u, e.v);
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

bool MarkedGraph::is_connected() const {
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<char> vis(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[static_cast<std::size_t>(x)])
            if (!vis[static_cast<std::size_t>(y)]) {
                vis[static_cast<std::size_t>(y)] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n;
}

std::vector<int> MarkedGraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    return deg;
}

MarkedGraph p1() {
    MarkedGraph g;
    g.n = 2;
    g.add_edge(0, 1);
    g.marked = 0;
    return g;
}

// --- determinants ---------------------------------------------------------

namespace {

// Fraction-free elimination over int64 with 128-bit intermediates. All
// intermediate entries are minors of the input, so overflow is detected by
// range-checking each exact quotient. Returns false if anything overflows.
bool bareiss_i64(int n, std::vector<std::int64_t>& a, std::int64_t& out) {
    auto at = [&](int i, int j) -> std::int64_t& { return a[static_cast<std::size_t>(i) * n + j]; };
    int sign = 1;
    std::int64_t prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) {
                out = 0;
                return true;
            }
            for (int j = k; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                __int128 num = static_cast<__int128>(at(i, j)) * at(k, k) -
                               static_cast<__int128>(at(i, k)) * at(k, j);
                __int128 q = num / prev;
                if (q > std::numeric_limits<std::int64_t>::max() ||
                    q < std::numeric_limits<std::int64_t>::min())
                    return false;
                at(i, j) = static_cast<std::int64_t>(q);
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    out = (n == 0) ? 1 : sign * at(n - 1, n - 1);
    return true;
}

BigInt bareiss_big(int n, std::vector<BigInt>& a) {
    auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i) * n + j]; };
    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int j = k; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    if (n == 0) return 1;
    return sign * at(n - 1, n - 1);
}

}  // namespace

BigInt bareiss_determinant(int n, std::vector<BigInt> m) {
    if (m.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("bareiss_determinant: bad dimensions");
    bool small = std::all_of(m.begin(), m.end(), [](const BigInt& x) { return fits_int64(x); });
    if (small) {
        std::vector<std::int64_t> a(m.size());
        std::transform(m.begin(), m.end(), a.begin(),
                       [](const BigInt& x) { return x.convert_to<std::int64_t>(); });
        std::int64_t det;
        if (bareiss_i64(n, a, det)) return det;
    }
    return bareiss_big(n, m);
}

BigInt tau(int n, std::span<const Edge> edges) {
    if (n < 1) throw std::invalid_argument("tau: need at least one vertex");
    for (const Edge& e : edges)
        if (e.u == e.v) throw LoopPresent("tau: graph has a loop");
    if (n == 1) return 1;
    // Principal minor of the multigraph Laplacian: drop the last row/column.
    int m = n - 1;
    std::vector<BigInt> lap(static_cast<std::size_t>(m) * m, 0);
    auto at = [&](int i, int j) -> BigInt& { return lap[static_cast<std::size_t>(i) * m + j]; };
    for (const Edge& e : edges) {
        if (e.u < m) at(e.u, e.u) += 1;
        if (e.v < m) at(e.v, e.v) += 1;
        if (e.u < m && e.v < m) {
            at(e.u, e.v) -= 1;
            at(e.v, e.u) -= 1;
        }
    }
    return bareiss_determinant(m, std::move(lap));
}

BigInt tau(const MarkedGraph& g) { return tau(g.n, g.edges); }

MarkedGraph delete_marked(const MarkedGraph& g) {
    MarkedGraph out = g;
    out.edges.erase(out.edges.begin() + g.marked);
    out.marked = -1;
    return out;
}

std::pair<int, std::vector<Edge>> contract_marked(const MarkedGraph& g) {
    const Edge me = g.marked_edge();
    int keep = me.u, gone = me.v;  // merge the higher endpoint into the lower
    std::vector<Edge> out;
    out.reserve(g.edges.size());
    auto remap = [&](int x) {
        if (x == gone) x = keep;
        return x > gone ? x - 1 : x;
    };
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (static_cast<int>(i) == g.marked) continue;
        int u = remap(g.edges[i].u), v = remap(g.edges[i].v);
        if (u == v) continue;  // contraction removes resulting loops
        if (u > v) std::swap(u, v);
        out.push_back({u, v});
    }
    return {g.n - 1, std::move(out)};
}

SpanningTreeVector stv(const MarkedGraph& g) {
    MarkedGraph del = delete_marked(g);
    auto [cn, ce] = contract_marked(g);
    return {tau(del.n, del.edges), tau(cn, ce)};
}

MarkedGraph subdivide_op(const MarkedGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("subdivide_op: k must be >= 1");
    const Edge me = g.marked_edge();
    MarkedGraph out = g;
    out.edges.erase(out.edges.begin() + g.marked);
    int first = out.n;
    out.n += k;
    // path lo - first - ... - first+k-1 - hi; mark the edge at the lower endpoint
    out.marked = static_cast<int>(out.edges.size());
    out.add_edge(me.u, first);
    for (int i = 0; i + 1 < k; ++i) out.add_edge(first + i, first + i + 1);
    out.add_edge(first + k - 1, me.v);
    return out;
}

MarkedGraph parallel_op(const MarkedGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("parallel_op: k must be >= 1");
    const Edge me = g.marked_edge();
    MarkedGraph out = g;
    for (int i = 0; i < k; ++i) out.edges.push_back(me);
    out.marked = static_cast<int>(out.edges.size()) - 1;
    return out;
}

MarkedGraph h_op(const MarkedGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("h_op: k must be >= 1");
    return subdivide_op(parallel_op(g, 1), k);
}

namespace {

int checked_small(const BigInt& b) {
    if (b < 1 || b > 1'000'000) throw BudgetExceeded("alternating entry out of build range");
    return b.convert_to<int>();
}

bool planar_flag(const MarkedGraph& g) {
    if (g.n <= planarity_exact_max_n()) return is_planar_small(g.n, g.edges);
    return series_parallel_reducible(g);
}

}  // namespace

GraphBuildReport build_from_alternating(const AlternatingCF& bs) {
    if (bs.bs.empty()) throw std::invalid_argument("build_from_alternating: empty sequence");
    std::int64_t total = 0;
    for (const auto& b : bs.bs) total += checked_small(b);
    if (total > 100'000) throw BudgetExceeded("build_from_alternating: vertex budget");
    MarkedGraph g = p1();
    for (auto it = bs.bs.rbegin(); it != bs.bs.rend(); ++it) g = h_op(g, checked_small(*it));
    GraphBuildReport rep;
    SpanningTreeVector v = stv(g);
    rep.tau_del = std::move(v.del);
    rep.tau_con = std::move(v.con);
    rep.vertex_count = g.n;
    rep.simple = g.is_simple();
    rep.planar = planar_flag(g);
    rep.graph = std::move(g);
    return rep;
}

GraphBuildReport build_trimmed(const AlternatingCF& bs) {
    if (bs.bs.size() < 2)
        throw DegenerateTrim("build_trimmed: single-block construction trims to nothing");
    GraphBuildReport base = build_from_alternating(bs);
    MarkedGraph g = delete_marked(base.graph);

    // Peel degree-1 vertices until none remain.
    for (;;) {
        std::vector<int> deg = g.degrees();
        int leaf = -1;
        for (int v = 0; v < g.n; ++v)
            if (deg[static_cast<std::size_t>(v)] == 1) {
                leaf = v;
                break;
            }
        if (leaf < 0) break;
        std::vector<Edge> kept;
        kept.reserve(g.edges.size());
        for (const Edge& e : g.edges) {
            if (e.u == leaf || e.v == leaf) continue;
            int u = e.u > leaf ? e.u - 1 : e.u;
            int v = e.v > leaf ? e.v - 1 : e.v;
            kept.push_back({u, v});
        }
        g.edges = std::move(kept);
        g.n -= 1;
    }
    if (g.n == 0 || g.edges.empty()) throw DegenerateTrim("build_trimmed: graph emptied");

    GraphBuildReport rep;
    rep.tau_del = tau(g);        // spanning-tree count of the trimmed graph
    rep.tau_con = base.tau_con;  // denominator of the pre-trim vector, for reference
    rep.vertex_count = g.n;
    rep.simple = g.is_simple();
    rep.planar = planar_flag(g);
    rep.graph = std::move(g);
    return rep;
}

bool series_parallel_reducible(const MarkedGraph& g) {
    // Multiplicity map; parallel edges collapse, degree-2 vertices contract,
    // leaves peel. Reduction to a single edge certifies planarity.
    std::map<std::pair<int, int>, int> mult;
    for (const Edge& e : g.edges) mult[{e.u, e.v}] += 1;
    std::vector<char> alive(static_cast<std::size_t>(g.n), 1);
    auto degree_of = [&](int v) {
        int d = 0;
        for (const auto& [key, m] : mult)
            if (key.first == v || key.second == v) d += (m > 0 ? 1 : 0);
        return d;
    };
    auto neighbors_of = [&](int v) {
        std::vector<int> out;
        for (const auto& [key, m] : mult) {
            if (m <= 0) continue;
            if (key.first == v) out.push_back(key.second);
            if (key.second == v) out.push_back(key.first);
        }
        return out;
    };
    for (;;) {
        // parallel merge happens implicitly: mult values above 1 count once in degree_of
        bool changed = false;
        for (int v = 0; v < g.n && !changed; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            int d = degree_of(v);
            if (d == 0) {
                alive[static_cast<std::size_t>(v)] = 0;
                changed = true;
            } else if (d == 1) {
                auto nb = neighbors_of(v);
                mult.erase({std::min(v, nb[0]), std::max(v, nb[0])});
                alive[static_cast<std::size_t>(v)] = 0;
                changed = true;
            } else if (d == 2) {
                auto nb = neighbors_of(v);
                int a = nb[0], b = nb[1];
                if (a == b) continue;  // double edge to one neighbor: handled as parallel
                mult.erase({std::min(v, a), std::max(v, a)});
                mult.erase({std::min(v, b), std::max(v, b)});
                mult[{std::min(a, b), std::max(a, b)}] += 1;
                alive[static_cast<std::size_t>(v)] = 0;
                changed = true;
            }
        }
        if (!changed) break;
    }
    int live = 0;
    for (char c : alive) live += c;
    return live <= 2 && mult.size() <= 1;
}

// --- serialization --------------------------------------------------------

std::string to_edge_list(const MarkedGraph& g) {
    std::ostringstream os;
    os << g.n << "\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        os << g.edges[i].u << " " << g.edges[i].v;
        if (static_cast<int>(i) == g.marked) os << " *";
        os << "\n";
    }
    return os.str();
}

MarkedGraph parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    MarkedGraph g;
    if (!(is >> g.n) || g.n < 1) throw ParseError("edge list: bad vertex count", 0);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw ParseError("edge list: bad edge line", 0);
        std::string flag;
        bool is_marked = (ls >> flag) && flag == "*";
        g.add_edge(u, v);
        if (is_marked) g.marked = static_cast<int>(g.edges.size()) - 1;
    }
    return g;
}

std::string to_dot(const MarkedGraph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int v = 0; v < g.n; ++v) os << "  " << v << ";\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        os << "  " << g.edges[i].u << " -- " << g.edges[i].v;
        if (static_cast<int>(i) == g.marked) os << " [color=red, penwidth=2]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace treefrac
