#include "treefrac/census.hpp"

#include "treefrac/errors.hpp"
#include "treefrac/parallel.hpp"
#include "treefrac/planarity.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <set>
#include <unordered_set>

namespace treefrac {

namespace {

struct EdgeIndex {
    int n;
    std::array<std::pair<int, int>, 21> pair_of{};
    int count = 0;

    explicit EdgeIndex(int n_) : n(n_) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pair_of[static_cast<std::size_t>(count++)] = {u, v};
    }
};

void adjacency_rows(const EdgeIndex& ei, std::uint32_t mask, std::uint16_t* adj) {
    for (int v = 0; v < ei.n; ++v) adj[v] = 0;
    for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
        int e = std::countr_zero(bits);
        auto [u, v] = ei.pair_of[static_cast<std::size_t>(e)];
        adj[u] |= static_cast<std::uint16_t>(1u << v);
        adj[v] |= static_cast<std::uint16_t>(1u << u);
    }
}

bool connected_adj(int n, const std::uint16_t* adj) {
    std::uint16_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint16_t next = 0;
        for (std::uint16_t f = frontier; f; f &= static_cast<std::uint16_t>(f - 1))
            next |= adj[std::countr_zero(static_cast<unsigned>(f))];
        frontier = static_cast<std::uint16_t>(next & ~seen);
        seen |= next;
    }
    return seen == (1u << n) - 1u;
}

// Spanning-tree count for a small simple graph; int64 suffices at n <= 7
// (counts are at most 7^5 and intermediate minors are forest counts).
std::int64_t tau_small(int n, const std::uint16_t* adj) {
    if (n == 1) return 1;
    int m = n - 1;
    std::array<std::int64_t, 36> a{};
    auto at = [&](int i, int j) -> std::int64_t& { return a[static_cast<std::size_t>(i * m + j)]; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            at(i, j) = (i == j) ? std::popcount(static_cast<unsigned>(adj[i]))
                                : (((adj[i] >> j) & 1) ? -1 : 0);
    std::int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < m; ++k) {
        if (at(k, k) == 0) {
            int s = -1;
            for (int i = k + 1; i < m; ++i)
                if (at(i, k) != 0) {
                    s = i;
                    break;
                }
            if (s < 0) return 0;
            for (int j = k; j < m; ++j) std::swap(at(k, j), at(s, j));
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(m - 1, m - 1);
}

// Minimum placement-order adjacency string over all vertex orderings.
// Earlier placement bits occupy more significant positions, so integer order
// equals string order and the greedy-with-ties search returns the exact
// minimum: any ordering outside the tie set diverges with a larger block.
struct Canonicalizer {
    int n;
    const std::uint16_t* adj;
    int total_bits;
    std::uint32_t best;

    std::uint32_t run() {
        total_bits = n * (n - 1) / 2;
        best = 0xFFFFFFFFu;
        std::array<int, 8> placed{};
        dfs(0, 0, 0, placed, 0);
        return best;
    }

    void dfs(int depth, std::uint32_t acc, int used_bits, std::array<int, 8>& placed,
             std::uint16_t used) {
        if (depth == n) {
            best = std::min(best, acc);
            return;
        }
        std::uint32_t best_contrib = 0xFFFFFFFFu;
        std::array<int, 8> tied{};
        int tie_count = 0;
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1) continue;
            // bit for placed[0] is the most significant of this block
            std::uint32_t contrib = 0;
            for (int t = 0; t < depth; ++t)
                contrib |= static_cast<std::uint32_t>((adj[v] >> placed[static_cast<std::size_t>(t)]) & 1u)
                           << (depth - 1 - t);
            if (contrib < best_contrib) {
                best_contrib = contrib;
                tie_count = 0;
            }
            if (contrib == best_contrib) tied[static_cast<std::size_t>(tie_count++)] = v;
        }
        int shift = total_bits - used_bits - depth;
        std::uint32_t acc2 = acc | (best_contrib << shift);
        std::uint32_t prefix_mask = shift >= 32 ? 0u : ~((1u << shift) - 1u);
        if ((acc2 & prefix_mask) > (best & prefix_mask)) return;
        for (int i = 0; i < tie_count; ++i) {
            int v = tied[static_cast<std::size_t>(i)];
            placed[static_cast<std::size_t>(depth)] = v;
            dfs(depth + 1, acc2, used_bits + depth, placed,
                static_cast<std::uint16_t>(used | (1u << v)));
        }
    }
};

std::uint32_t canonical_key(int n, const std::uint16_t* adj) {
    Canonicalizer c{n, adj, 0, 0};
    return c.run();
}

}  // namespace

bool CensusResult::contains(const BigInt& t) const {
    return std::binary_search(values.begin(), values.end(), t);
}

std::string CensusResult::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["planar"] = planar_only;
    std::vector<std::string> vs;
    vs.reserve(values.size());
    for (const auto& v : values) vs.push_back(to_decimal(v));
    j["values"] = vs;
    j["count"] = graph_count;
    return j.dump();
}

MarkedGraph witness_graph(int n, std::uint32_t mask) {
    EdgeIndex ei(n);
    MarkedGraph g;
    g.n = n;
    for (std::uint32_t bits = mask; bits; bits &= bits - 1) {
        auto [u, v] = ei.pair_of[static_cast<std::size_t>(std::countr_zero(bits))];
        g.add_edge(u, v);
    }
    return g;
}

CensusResult enumerate_T(int n, const CensusOptions& opt) {
    int cap = std::min(7, opt.limits.census_max_n);
    if (n < 1 || n > cap) throw OutOfRange("enumerate_T: n outside exhaustive range");
    if (n == 7 && !opt.allow_n7) throw OutOfRange("enumerate_T: n = 7 requires allow_n7");

    EdgeIndex ei(n);
    std::uint64_t total = 1ull << ei.count;

    struct Shard {
        std::set<BigInt> values;
        std::unordered_set<std::uint32_t> canon;
        std::map<BigInt, std::uint32_t> witnesses;  // smallest mask per value
    };
    unsigned nthreads = resolve_threads(opt.threads);
    std::vector<Shard> shards(nthreads);

    parallel_chunks(total, nthreads, [&](std::size_t b, std::size_t e, unsigned w) {
        Shard& sh = shards[w];
        std::uint16_t adj[8];
        for (std::uint64_t mask = b; mask < e; ++mask) {
            int edge_count = std::popcount(mask);
            if (edge_count < n - 1) continue;  // cannot be connected
            if (opt.planar_only && n >= 3 && edge_count > 3 * n - 6) continue;
            adjacency_rows(ei, static_cast<std::uint32_t>(mask), adj);
            if (!connected_adj(n, adj)) continue;
            if (opt.planar_only && !is_planar_adj(n, adj)) continue;
            if (opt.isomorph_reject && !sh.canon.insert(canonical_key(n, adj)).second) continue;
            BigInt t(tau_small(n, adj));
            if (opt.keep_witnesses) {
                auto [it, fresh] = sh.witnesses.emplace(t, static_cast<std::uint32_t>(mask));
                if (!fresh) it->second = std::min(it->second, static_cast<std::uint32_t>(mask));
            }
            sh.values.insert(std::move(t));
        }
    });

    CensusResult res;
    res.n = n;
    res.planar_only = opt.planar_only;
    res.counted_isomorphism_classes = opt.isomorph_reject;
    if (opt.isomorph_reject) {
        std::unordered_set<std::uint32_t> canon;
        for (auto& sh : shards) canon.insert(sh.canon.begin(), sh.canon.end());
        res.graph_count = canon.size();
    }
    std::set<BigInt> merged;
    for (auto& sh : shards) {
        merged.insert(sh.values.begin(), sh.values.end());
        for (auto& [v, m] : sh.witnesses) {
            auto [it, fresh] = res.witness_masks.emplace(v, m);
            if (!fresh) it->second = std::min(it->second, m);
        }
    }
    res.values.assign(merged.begin(), merged.end());
    return res;
}

AlphaResult alpha(const BigInt& t, const AlphaOptions& opt) {
    if (t < 3) throw std::invalid_argument("alpha: t must be >= 3");
    AlphaResult out;

    CensusOptions copt = opt.census;
    copt.keep_witnesses = true;
    int cap = std::min(opt.search_cap, 7);
    for (int n = 3; n <= cap; ++n) {
        if (n == 7) copt.allow_n7 = true;
        CensusResult res = enumerate_T(n, copt);
        auto it = res.witness_masks.find(t);
        if (it != res.witness_masks.end()) {
            AlphaEntry e;
            e.t = t;
            e.alpha = n;
            e.witness_n = n;
            e.witness_edges = witness_graph(n, it->second).edges;
            out.exact = std::move(e);
            break;
        }
    }

    if (opt.cf_alphabet > 0) {
        // Depth-first over generator words, pushed innermost-first; appending
        // a factor strictly increases the numerator, so prune past the target.
        // The numerator never depends on the innermost entry b_1 (the first
        // column of every M_b is (1,1)), matching the fact that trimming
        // discards the b_1 block.
        struct Search {
            BigInt target;
            int A;
            int max_vertices;
            std::vector<BigInt> stack;  // spells (b_m, ..., b_1)
            BigInt stack_sum = 0;
            std::optional<CfUpperBound> best;

            void dfs(const Mat2& p) {
                if (!stack.empty() && p.c == target) {
                    BigInt tail = stack_sum - stack.back();  // b_2 + ... + b_m
                    int vertices = tail.convert_to<int>() + 2;
                    if (!best || vertices < best->vertices) {
                        AlternatingCF acf;
                        acf.bs.assign(stack.rbegin(), stack.rend());
                        best = CfUpperBound{std::move(acf), vertices};
                    }
                }
                if (p.c + p.d > target) return;  // every deeper numerator is larger
                if (stack_sum + 2 > max_vertices) return;
                for (int b = 1; b <= A; ++b) {
                    stack.push_back(b);
                    stack_sum += b;
                    dfs(p * generator_matrix(b));
                    stack_sum -= b;
                    stack.pop_back();
                }
            }
        } search{t, opt.cf_alphabet, opt.cf_max_vertices, {}, 0, std::nullopt};
        search.dfs(Mat2::identity());
        out.cf_bound = std::move(search.best);
    }
    return out;
}

double tree_spectrum(const MarkedGraph& g) {
    if (!g.is_connected()) throw std::invalid_argument("tree_spectrum: graph must be connected");
    BigInt t = tau(g);
    return log_big(t) / g.n;
}

GrowthWitness growth_witness(int A, int budget) {
    if (A < 1 || budget < 2) throw std::invalid_argument("growth_witness: bad parameters");
    // Walk suffixes (b_2..b_m); the trimmed graph has (suffix sum) + 2
    // vertices and its count equals the word's numerator, which is the same
    // for every choice of b_1.
    std::set<BigInt> counts;
    struct Dfs {
        int A;
        int suffix_budget;
        std::set<BigInt>* out;

        void walk(const Mat2& q, int used) {
            out->insert(q.c + q.d);
            for (int b = 1; b <= A && used + b <= suffix_budget; ++b)
                walk(q * generator_matrix(b), used + b);
        }
    } dfs{A, budget - 2, &counts};
    dfs.walk(Mat2::identity(), 0);
    GrowthWitness w;
    w.distinct_counts = counts.size();
    w.rate = std::pow(static_cast<double>(w.distinct_counts), 1.0 / budget);
    return w;
}

}  // namespace treefrac
