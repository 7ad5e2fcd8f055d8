#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace treefrac {

/// One composition visited by chain_sweep. `word` spells (b_m, ..., b_1), so
/// word.back() is b_1. (t, u) come from the matrix product; tau_del/tau_con
/// and the trimmed values come from determinants of the construction's
/// Laplacian minors, eliminated fraction-free. `word` aliases sweep state:
/// copy it if it outlives the visit.
struct ChainCase {
    std::span<const int> word;
    int sum = 0;
    int m = 0;
    std::int64_t t = 0, u = 0;
    std::int64_t tau_del = 0, tau_con = 0;
    std::int64_t trimmed_tau = 0;  // valid for m >= 2
    int trimmed_vertices = 0;      // valid for m >= 2
};

/// Visit every composition (b_1..b_m) with sum <= max_sum (max 40), i.e.
/// every alternating expansion within the budget. The chain construction's
/// Laplacian minors are tridiagonal once the hub row is dropped, so the
/// Bareiss elimination reduces to the leading-minor three-term recurrence;
/// each case costs O(1) on top of its push. `visit` runs on worker threads
/// and must only touch per-worker state.
void chain_sweep(int max_sum, unsigned threads,
                 const std::function<void(const ChainCase&, unsigned worker)>& visit);

}  // namespace treefrac
