#include "treefrac/planarity.hpp"

#include "treefrac/treegraph.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace treefrac {

namespace {

// Route each required branch pair through a chain of distinct spare vertices.
// Pairs with a direct edge never need routing: a direct edge can always be
// substituted for a routed path without disturbing internal disjointness.
struct Router {
    const std::uint16_t* adj;
    std::vector<std::pair<int, int>> required;
    std::vector<int> spares;

    bool route(std::size_t idx, std::uint16_t used) const {
        if (idx == required.size()) return true;
        auto [a, b] = required[idx];
        return extend(idx, used, a, b, 0);
    }

    // Grow a chain from `cur` toward `b` using unused spares.
    bool extend(std::size_t idx, std::uint16_t used, int cur, int b, int len) const {
        if (len > 0 && (adj[cur] >> b) & 1) {
            if (route(idx + 1, used)) return true;
        }
        if (len >= static_cast<int>(spares.size())) return false;
        for (int s : spares) {
            if ((used >> s) & 1) continue;
            if (!((adj[cur] >> s) & 1)) continue;
            if (extend(idx, used | static_cast<std::uint16_t>(1u << s), s, b, len + 1)) return true;
        }
        return false;
    }
};

bool has_subdivision(int n, const std::uint16_t* adj, const std::vector<int>& branch,
                     const std::vector<std::pair<int, int>>& pairs) {
    Router r;
    r.adj = adj;
    std::uint16_t branch_mask = 0;
    for (int v : branch) branch_mask |= static_cast<std::uint16_t>(1u << v);
    for (int v = 0; v < n; ++v)
        if (!((branch_mask >> v) & 1)) r.spares.push_back(v);
    for (auto [a, b] : pairs) {
        if ((adj[a] >> b) & 1) continue;  // direct edge suffices
        r.required.emplace_back(a, b);
    }
    if (r.required.size() > r.spares.size()) return false;
    return r.route(0, 0);
}

bool contains_k5_subdivision(int n, const std::uint16_t* adj) {
    std::vector<int> branch(5);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    for (int e = d + 1; e < n; ++e) {
                        branch = {a, b, c, d, e};
                        std::vector<std::pair<int, int>> pairs;
                        for (int i = 0; i < 5; ++i)
                            for (int j = i + 1; j < 5; ++j)
                                pairs.emplace_back(branch[i], branch[j]);
                        if (has_subdivision(n, adj, branch, pairs)) return true;
                    }
    return false;
}

bool contains_k33_subdivision(int n, const std::uint16_t* adj) {
    // choose 6 branch vertices, then a 3|3 bipartition
    std::vector<int> six;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) != 6) continue;
        six.clear();
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1) six.push_back(v);
        // bipartitions: fix six[0] on the left, choose 2 companions
        for (int i = 1; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                std::array<int, 3> left{six[0], six[i], six[j]};
                std::array<int, 3> right{};
                int r = 0;
                for (int t = 1; t < 6; ++t)
                    if (t != i && t != j) right[r++] = six[t];
                std::vector<std::pair<int, int>> pairs;
                for (int x : left)
                    for (int y : right) pairs.emplace_back(x, y);
                std::vector<int> branch(six.begin(), six.end());
                if (has_subdivision(n, adj, branch, pairs)) return true;
            }
    }
    return false;
}

}  // namespace

bool is_planar_adj(int n, const std::uint16_t* adj) {
    if (n > planarity_exact_max_n()) throw std::out_of_range("is_planar_adj: n too large");
    if (n <= 4) return true;
    int edge_count = 0, deg3 = 0, deg4 = 0;
    for (int v = 0; v < n; ++v) {
        int d = std::popcount(static_cast<unsigned>(adj[v]));
        edge_count += d;
        if (d >= 3) ++deg3;
        if (d >= 4) ++deg4;
    }
    edge_count /= 2;
    if (n >= 3 && edge_count > 3 * n - 6) return false;  // Euler bound
    // branch vertices need degree >= 4 (K5) resp. >= 3 (K3,3)
    if (deg4 >= 5 && edge_count >= 10 && contains_k5_subdivision(n, adj)) return false;
    if (n >= 6 && deg3 >= 6 && edge_count >= 9 && contains_k33_subdivision(n, adj)) return false;
    return true;
}

bool is_planar_small(int n, std::span<const Edge> edges) {
    if (n > planarity_exact_max_n()) throw std::out_of_range("is_planar_small: n too large");
    std::array<std::uint16_t, 8> adj{};
    for (const Edge& e : edges) {
        adj[static_cast<std::size_t>(e.u)] |= static_cast<std::uint16_t>(1u << e.v);
        adj[static_cast<std::size_t>(e.v)] |= static_cast<std::uint16_t>(1u << e.u);
    }
    return is_planar_adj(n, adj.data());
}

}  // namespace treefrac
