#include "treefrac/chain.hpp"

#include "treefrac/errors.hpp"
#include "treefrac/parallel.hpp"

#include <array>
#include <vector>

namespace treefrac {

namespace {

// The construction is a hub joined to one long path. Dropping the hub row
// of the Laplacian leaves a tridiagonal matrix whose leading minors d_k obey
// d_k = diag_k * d_{k-1} - d_{k-2} (all off-diagonal entries are -1). Every
// d_k is a forest count bounded by the final minor, so int64 is exact for
// sums up to 40.
//
// Path diagonals: the first vertex and each settled attachment carry one hub
// edge (diag 2 resp. 3); interior path vertices have diag 2. The pending
// mark endpoint enters only at query time: diag 1 for G - e (its hub edge is
// the deleted mark), merged into the hub for G / e.
struct SweepState {
    std::vector<std::int64_t> dval;
    std::vector<int> word;  // (b_m, ..., b_1)
    std::vector<std::pair<std::int64_t, std::int64_t>> tu;
    int sum = 0;

    SweepState() {
        dval.reserve(64);
        dval.push_back(1);  // empty minor
        tu.reserve(64);
        tu.emplace_back(0, 1);  // spanning-tree vector of the single marked edge
    }

    void settle(std::int64_t diag) {
        std::size_t k = dval.size() - 1;
        std::int64_t prev2 = (k == 0) ? 0 : dval[k - 1];
        dval.push_back(diag * dval[k] - prev2);
    }

    void push(int c) {
        settle(word.empty() ? 2 : 3);
        for (int i = 1; i < c; ++i) settle(2);
        auto [t, u] = tu.back();
        tu.emplace_back(t + u, static_cast<std::int64_t>(c) * (t + u) + u);
        word.push_back(c);
        sum += c;
    }

    void pop() {
        int c = word.back();
        dval.resize(dval.size() - static_cast<std::size_t>(c));
        tu.pop_back();
        word.pop_back();
        sum -= c;
    }

    ChainCase make_case() const {
        ChainCase k;
        k.word = std::span<const int>(word.data(), word.size());
        k.sum = sum;
        k.m = static_cast<int>(word.size());
        k.t = tu.back().first;
        k.u = tu.back().second;
        std::size_t s = static_cast<std::size_t>(sum);
        k.tau_con = dval[s];                // mark endpoint merged into the hub
        k.tau_del = dval[s] - dval[s - 1];  // mark endpoint keeps diag 1
        if (k.m >= 2) {
            int b1 = word.back();
            std::size_t lp = static_cast<std::size_t>(1 + sum - b1);
            // trimming peels the b_1 tail; its attachment becomes a path end
            k.trimmed_tau = 2 * dval[lp - 1] - (lp >= 2 ? dval[lp - 2] : 0);
            k.trimmed_vertices = sum - b1 + 2;
        }
        return k;
    }
};

void dfs(SweepState& st, int max_sum,
         const std::function<void(const ChainCase&, unsigned)>& visit, unsigned worker) {
    visit(st.make_case(), worker);
    for (int c = 1; c + st.sum <= max_sum; ++c) {
        st.push(c);
        dfs(st, max_sum, visit, worker);
        st.pop();
    }
}

}  // namespace

void chain_sweep(int max_sum, unsigned threads,
                 const std::function<void(const ChainCase&, unsigned)>& visit) {
    if (max_sum < 1) return;
    if (max_sum > 40) throw BudgetExceeded("chain_sweep: sum cap is 40 (int64 exactness)");

    // depth 1 and 2 nodes, then parallel fan-out over depth-3 prefixes
    SweepState st;
    for (int c1 = 1; c1 <= max_sum; ++c1) {
        st.push(c1);
        visit(st.make_case(), 0);
        for (int c2 = 1; c1 + c2 <= max_sum; ++c2) {
            st.push(c2);
            visit(st.make_case(), 0);
            st.pop();
        }
        st.pop();
    }

    std::vector<std::array<int, 3>> prefixes;
    for (int c1 = 1; c1 <= max_sum; ++c1)
        for (int c2 = 1; c1 + c2 <= max_sum; ++c2)
            for (int c3 = 1; c1 + c2 + c3 <= max_sum; ++c3)
                prefixes.push_back({c1, c2, c3});

    parallel_tasks(prefixes.size(), threads, [&](std::size_t i, unsigned worker) {
        SweepState local;
        local.push(prefixes[i][0]);
        local.push(prefixes[i][1]);
        local.push(prefixes[i][2]);
        dfs(local, max_sum, visit, worker);
    });
}

}  // namespace treefrac
