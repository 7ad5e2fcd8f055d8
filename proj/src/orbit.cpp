#include "treefrac/orbit.hpp"

#include "treefrac/errors.hpp"
#include "treefrac/parallel.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace treefrac {

double SemigroupBall::growth_exponent() const {
    if (elements.empty() || N < 2) return 0.0;
    return std::log(static_cast<double>(elements.size())) / std::log(static_cast<double>(N));
}

SemigroupBall ball(int A, std::uint64_t N, const Limits& limits) {
    if (A < 1) throw std::invalid_argument("ball: A must be >= 1");
    SemigroupBall out;
    out.A = A;
    out.N = N;
    BigInt bound = BigInt(N) * BigInt(N);

    std::set<Mat2> seen;
    std::vector<Mat2> level;
    for (int b = 1; b <= A; ++b) {
        Mat2 g = generator_matrix(b);
        if (g.frobenius_sq() <= bound && seen.insert(g).second) level.push_back(g);
    }
    // level-synchronous expansion: workers extend disjoint frontier slices,
    // the merge deduplicates; the final set is thread-count independent
    while (!level.empty()) {
        unsigned workers = resolve_threads(limits.threads);
        std::vector<std::vector<Mat2>> extended(workers);
        parallel_chunks(level.size(), limits.threads, [&](std::size_t lo, std::size_t hi,
                                                          unsigned w) {
            for (std::size_t i = lo; i < hi; ++i) {
                BigInt cur_sq = level[i].frobenius_sq();
                for (int b = 1; b <= A; ++b) {
                    Mat2 next = level[i] * generator_matrix(b);
                    BigInt next_sq = next.frobenius_sq();
                    // completeness of the pruned search rests on this monotonicity
                    if (next_sq <= cur_sq)
                        throw std::logic_error("ball: norm failed to increase under extension");
                    if (next_sq <= bound) extended[w].push_back(std::move(next));
                }
            }
        });
        level.clear();
        for (auto& chunk : extended)
            for (Mat2& g : chunk)
                if (seen.insert(g).second) {
                    if (seen.size() > limits.ball_max_elements)
                        throw BudgetExceeded("ball: element cap exceeded");
                    level.push_back(std::move(g));
                }
    }
    out.elements.assign(seen.begin(), seen.end());
    return out;
}

namespace {

BigInt orbit_inner(const Mat2& g, const std::pair<BigInt, BigInt>& v1,
                   const std::pair<BigInt, BigInt>& v2) {
    auto [x, y] = g.row_mul(v1.first, v1.second);
    return x * v2.first + y * v2.second;
}

struct ClosureWalk {
    std::uint64_t reached = 0;
    bool contains_identity = false;
    std::vector<char> bottom_left_hit;  // residues of <(0,1)g, (1,0)> = g_{21}
};

// Worklist closure of {M_b mod q : b <= A} under right multiplication.
// The reduction of the semigroup is finite, so the closure terminates.
ClosureWalk closure_mod_q(int A, int q) {
    const std::uint64_t qu = static_cast<std::uint64_t>(q);
    auto pack = [qu](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        return ((a * qu + b) * qu + c) * qu + d;
    };
    std::vector<std::uint64_t> gens;
    gens.reserve(static_cast<std::size_t>(A) * 4);
    for (int b = 1; b <= A; ++b) {
        std::uint64_t bb = static_cast<std::uint64_t>(b);
        gens.push_back(1 % qu);
        gens.push_back(bb % qu);
        gens.push_back(1 % qu);
        gens.push_back((bb + 1) % qu);
    }

    ClosureWalk out;
    out.bottom_left_hit.assign(qu, 0);
    std::vector<char> visited(qu * qu * qu * qu, 0);
    std::deque<std::uint64_t> work;
    auto push = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        std::uint64_t key = pack(a, b, c, d);
        if (!visited[key]) {
            visited[key] = 1;
            out.bottom_left_hit[c] = 1;
            work.push_back(key);
        }
    };
    for (int i = 0; i < A; ++i)
        push(gens[static_cast<std::size_t>(4 * i)], gens[static_cast<std::size_t>(4 * i + 1)],
             gens[static_cast<std::size_t>(4 * i + 2)], gens[static_cast<std::size_t>(4 * i + 3)]);
    while (!work.empty()) {
        std::uint64_t key = work.front();
        work.pop_front();
        ++out.reached;
        std::uint64_t d = key % qu, c = (key / qu) % qu, b = (key / (qu * qu)) % qu,
                      a = key / (qu * qu * qu);
        for (int i = 0; i < A; ++i) {
            std::uint64_t ga = gens[static_cast<std::size_t>(4 * i)],
                          gb = gens[static_cast<std::size_t>(4 * i + 1)],
                          gc = gens[static_cast<std::size_t>(4 * i + 2)],
                          gd = gens[static_cast<std::size_t>(4 * i + 3)];
            push((a * ga + b * gc) % qu, (a * gb + b * gd) % qu, (c * ga + d * gc) % qu,
                 (c * gb + d * gd) % qu);
        }
    }
    out.contains_identity = visited[pack(1 % qu, 0, 0, 1 % qu)] != 0;
    return out;
}

}  // namespace

std::vector<BigInt> numerators(const SemigroupBall& b, std::pair<BigInt, BigInt> v1,
                               std::pair<BigInt, BigInt> v2) {
    std::set<BigInt> vals;
    for (const Mat2& g : b.elements) vals.insert(orbit_inner(g, v1, v2));
    return {vals.begin(), vals.end()};
}

std::uint64_t representation_number(const SemigroupBall& b, const BigInt& n,
                                    std::pair<BigInt, BigInt> v1, std::pair<BigInt, BigInt> v2) {
    std::uint64_t count = 0;
    for (const Mat2& g : b.elements)
        if (orbit_inner(g, v1, v2) == n) ++count;
    return count;
}

std::uint64_t sl2_order(int q) {
    if (q < 2) throw std::invalid_argument("sl2_order: q must be >= 2");
    std::uint64_t order = static_cast<std::uint64_t>(q) * q * q;
    int rest = q;
    for (int p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        order = order / (static_cast<std::uint64_t>(p) * p) * (static_cast<std::uint64_t>(p) * p - 1);
    }
    if (rest > 1)
        order = order / (static_cast<std::uint64_t>(rest) * rest) *
                (static_cast<std::uint64_t>(rest) * rest - 1);
    return order;
}

CongruenceQuotient congruence_quotient(int A, int q) {
    if (A < 1) throw std::invalid_argument("congruence_quotient: A must be >= 1");
    if (q < 2 || q > 60) throw OutOfRange("congruence_quotient: q outside [2, 60]");
    ClosureWalk walk = closure_mod_q(A, q);
    CongruenceQuotient out;
    out.q = q;
    out.reached = walk.reached;
    out.full = (walk.reached == sl2_order(q));
    out.contains_identity = walk.contains_identity;
    return out;
}

std::vector<int> orbit_residues(int A, int q) {
    if (q < 2 || q > 60) throw OutOfRange("orbit_residues: q outside [2, 60]");
    ClosureWalk walk = closure_mod_q(A, q);
    std::vector<int> out;
    for (int r = 0; r < q; ++r)
        if (walk.bottom_left_hit[static_cast<std::size_t>(r)]) out.push_back(r);
    return out;
}

Rational sumset_witness(const BigInt& t, const BigInt& u) {
    if (t < 1 || u < 1 || t >= u) throw std::invalid_argument("sumset_witness: need 1 <= t < u");
    if (gcd(t, u) != 1) throw std::invalid_argument("sumset_witness: t, u must be coprime");
    return Rational(t + u, t + 2 * u);
}

}  // namespace treefrac
