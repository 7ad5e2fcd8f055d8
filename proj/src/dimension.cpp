#include "treefrac/dimension.hpp"

#include "treefrac/bigint.hpp"
#include "treefrac/cfrac.hpp"
#include "treefrac/errors.hpp"
#include "treefrac/mat2.hpp"
#include "treefrac/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace treefrac {

double contraction(int b, double x) { return (b + x) / (1.0 + b + x); }

double contraction_deriv(int b, double x) {
    double d = 1.0 + b + x;
    return 1.0 / (d * d);
}

std::vector<double> chebyshev_nodes(int N) {
    if (N < 1) throw std::invalid_argument("chebyshev_nodes: N must be >= 1");
    std::vector<double> y(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j)
        y[static_cast<std::size_t>(j - 1)] =
            0.5 * (std::cos((2.0 * j - 1.0) / (2.0 * N) * std::numbers::pi) + 1.0);
    return y;
}

std::vector<double> barycentric_weights(const std::vector<double>& nodes) {
    std::size_t n = nodes.size();
    std::vector<double> w(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) w[j] /= (nodes[j] - nodes[k]);
    return w;
}

namespace {

double barycentric_eval(const std::vector<double>& nodes, const std::vector<double>& weights,
                        const std::vector<double>& values, double x) {
    double num = 0.0, den = 0.0;
    std::size_t n = nodes.size();
    for (std::size_t j = 0; j < n; ++j) {
        double dx = x - nodes[j];
        if (dx == 0.0) return values[j];
        double t = weights[j] / dx;
        num += t * values[j];
        den += t;
    }
    return num / den;
}

// Monomial coefficients of each Lagrange basis polynomial, via synthetic
// division of prod (x - y_k) by (x - y_j). Fine at the orders used here;
// evaluation still goes through the barycentric form.
std::vector<std::vector<double>> lagrange_monomials(const std::vector<double>& nodes,
                                                    const std::vector<double>& weights) {
    std::size_t n = nodes.size();
    std::vector<double> master(n + 1, 0.0);  // prod (x - y_k)
    master[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = k + 1; i-- > 0;) {
            master[i + 1] += master[i];
            master[i] *= -nodes[k];
        }
    }
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double>& q = out[j];
        q[n - 1] = master[n];
        for (std::size_t i = n - 1; i >= 1; --i) q[i - 1] = master[i] + nodes[j] * q[i];
        for (double& c : q) c *= weights[j];
    }
    return out;
}

std::vector<double> shift_about_one(const std::vector<double>& coeffs) {
    std::size_t n = coeffs.size();
    std::vector<double> a(n, 0.0);
    // x^k = sum_n C(k,n) (x-1)^n
    for (std::size_t k = 0; k < n; ++k) {
        double binom = 1.0;
        for (std::size_t m = 0; m <= k; ++m) {
            a[m] += binom * coeffs[k];
            binom = binom * static_cast<double>(k - m) / static_cast<double>(m + 1);
        }
    }
    return a;
}

}  // namespace

double TestPolynomial::eval(double x) const {
    return barycentric_eval(nodes, bary_weights, eigenvector, x);
}

std::vector<double> TestPolynomial::shifted_coeffs() const { return shift_about_one(coeffs); }

TestPolynomial TestPolynomial::constant(double value, int order) {
    TestPolynomial p;
    p.nodes = chebyshev_nodes(order);
    p.bary_weights = barycentric_weights(p.nodes);
    p.eigenvector.assign(p.nodes.size(), value);
    p.coeffs.assign(1, value);
    return p;
}

double hurwitz_zeta(double s, double x) {
    if (s <= 1.0) throw std::domain_error("hurwitz_zeta: s must exceed 1 (series diverges)");
    if (x < 1.0) throw std::domain_error("hurwitz_zeta: x must be >= 1");
    // rising factorial (s)_m
    auto rising = [s](int m) {
        double r = 1.0;
        for (int i = 0; i < m; ++i) r *= (s + i);
        return r;
    };
    const double b10_over_10fact = (5.0 / 66.0) / 3628800.0;
    int M = 16;
    while (b10_over_10fact * rising(9) * std::pow(x + M, -s - 9.0) >= 1e-15 && M < 4096) M += 16;

    double head = 0.0;
    for (int b = M - 1; b >= 0; --b) head += std::pow(x + b, -s);  // small terms first
    double X = x + M;
    double tail = std::pow(X, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(X, -s);
    static const double bern_over_fact[4] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                             -1.0 / 1209600.0};
    for (int k = 1; k <= 4; ++k)
        tail += bern_over_fact[k - 1] * rising(2 * k - 1) * std::pow(X, -s - 2 * k + 1.0);
    return head + tail;
}

namespace {

double operator_weight(double s, int b, double x) { return std::pow(1.0 + b + x, -2.0 * s); }

Eigen::MatrixXd collocation_matrix(const TransferConfig& cfg, const std::vector<double>& nodes,
                                   const std::vector<double>& weights) {
    int N = cfg.order;
    Eigen::MatrixXd M(N, N);
    if (!cfg.unbounded()) {
        for (int k = 0; k < N; ++k) {
            Eigen::VectorXd col = Eigen::VectorXd::Zero(N);
            for (int b = 1; b <= cfg.alphabet; ++b) {
                double xk = nodes[static_cast<std::size_t>(k)];
                double img = contraction(b, xk);
                double wgt = operator_weight(cfg.s, b, xk);
                // Lagrange basis values at img, all j at once
                double den = 0.0;
                Eigen::VectorXd terms(N);
                bool exact = false;
                for (int j = 0; j < N; ++j) {
                    double dx = img - nodes[static_cast<std::size_t>(j)];
                    if (dx == 0.0) {
                        terms.setZero();
                        terms(j) = 1.0;
                        den = 1.0;
                        exact = true;
                        break;
                    }
                    terms(j) = weights[static_cast<std::size_t>(j)] / dx;
                    den += terms(j);
                }
                if (!exact) terms /= den;
                col += wgt * terms;
            }
            M.col(k) = col;
        }
    } else {
        auto lag = lagrange_monomials(nodes, weights);
        for (int j = 0; j < N; ++j) {
            std::vector<double> a = shift_about_one(lag[static_cast<std::size_t>(j)]);
            for (int k = 0; k < N; ++k) {
                double xk = nodes[static_cast<std::size_t>(k)];
                double v = 0.0;
                for (int n = 0; n < N; ++n) {
                    double zeta = hurwitz_zeta(2.0 * cfg.s + n, 2.0 + xk);
                    v += a[static_cast<std::size_t>(n)] * ((n % 2) ? -zeta : zeta);
                }
                M(j, k) = v;
            }
        }
    }
    return M;
}

}  // namespace

TestPolynomial build_test_polynomial(const TransferConfig& cfg) {
    if (cfg.order < 2) throw std::invalid_argument("build_test_polynomial: order must be >= 2");
    if (cfg.s <= 0.0 || cfg.s >= 1.0)
        throw std::invalid_argument("build_test_polynomial: s must lie in (0,1)");
    TestPolynomial p;
    p.nodes = chebyshev_nodes(cfg.order);
    p.bary_weights = barycentric_weights(p.nodes);
    Eigen::MatrixXd M = collocation_matrix(cfg, p.nodes, p.bary_weights);

    // left eigenvector: v M = lambda v, i.e. power iteration with M^T
    Eigen::MatrixXd Mt = M.transpose();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(cfg.order);
    v.normalize();
    double lambda = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100'000; ++iter) {
        Eigen::VectorXd w = Mt * v;
        lambda = v.dot(w);
        double nw = w.norm();
        if (nw == 0.0) throw ConvergenceFailure("build_test_polynomial: zero iterate");
        w /= nw;
        if ((w - v).norm() < 1e-13) {
            v = w;
            converged = true;
            break;
        }
        v = w;
    }
    if (!converged)
        throw ConvergenceFailure("build_test_polynomial: power iteration stalled");

    int imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0) v = -v;
    v /= v(imax);  // unit max entry, sign positive

    p.eigenvalue = lambda;
    p.eigenvector.assign(v.data(), v.data() + cfg.order);

    auto lag = lagrange_monomials(p.nodes, p.bary_weights);
    p.coeffs.assign(static_cast<std::size_t>(cfg.order), 0.0);
    for (int j = 0; j < cfg.order; ++j)
        for (int c = 0; c < cfg.order; ++c)
            p.coeffs[static_cast<std::size_t>(c)] +=
                p.eigenvector[static_cast<std::size_t>(j)] *
                lag[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    return p;
}

double apply_operator(const TransferConfig& cfg, const TestPolynomial& poly, double x) {
    if (!cfg.unbounded()) {
        double acc = 0.0;
        for (int b = 1; b <= cfg.alphabet; ++b)
            acc += operator_weight(cfg.s, b, x) * poly.eval(contraction(b, x));
        return acc;
    }
    std::vector<double> a = poly.shifted_coeffs();
    double acc = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        double zeta = hurwitz_zeta(2.0 * cfg.s + static_cast<double>(n), 2.0 + x);
        acc += a[n] * ((n % 2) ? -zeta : zeta);
    }
    return acc;
}

double pressure_estimate(const TransferConfig& cfg, int depth, const Limits& limits) {
    if (cfg.unbounded()) throw std::invalid_argument("pressure_estimate: finite alphabet only");
    if (depth < 1) throw std::invalid_argument("pressure_estimate: depth must be >= 1");
    double words = depth * std::log(static_cast<double>(cfg.alphabet));
    if (words > std::log(static_cast<double>(limits.pressure_max_terms)))
        throw BudgetExceeded("pressure_estimate: alphabet^depth exceeds the term cap");

    double sum = 0.0;
    // walk words outermost-last: x carries the partial image, ld the log of
    // the composite derivative at 0
    struct Frame {
        double x, ld;
        int level;
    };
    std::vector<Frame> stack{{0.0, 0.0, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.level == depth) {
            sum += std::exp(cfg.s * f.ld);
            continue;
        }
        for (int b = 1; b <= cfg.alphabet; ++b)
            stack.push_back({contraction(b, f.x), f.ld + std::log(contraction_deriv(b, f.x)),
                             f.level + 1});
    }
    return std::log(sum) / depth;
}

namespace {

struct ScanResult {
    double min_diff = std::numeric_limits<double>::infinity();
    double max_diff = -std::numeric_limits<double>::infinity();
    double min_poly = std::numeric_limits<double>::infinity();
};

template <class DiffFn>
ScanResult scan_grid(std::size_t cells, unsigned threads, const TestPolynomial& poly,
                     const DiffFn& diff) {
    std::size_t points = cells + 1;
    std::vector<ScanResult> partial(resolve_threads(threads));
    parallel_chunks(points, threads, [&](std::size_t b, std::size_t e, unsigned w) {
        ScanResult r;
        for (std::size_t i = b; i < e; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(cells);
            double d = diff(x);
            double f = poly.eval(x);
            r.min_diff = std::min(r.min_diff, d);
            r.max_diff = std::max(r.max_diff, d);
            r.min_poly = std::min(r.min_poly, f);
        }
        partial[w] = r;
    });
    ScanResult out;
    for (const ScanResult& r : partial) {
        out.min_diff = std::min(out.min_diff, r.min_diff);
        out.max_diff = std::max(out.max_diff, r.max_diff);
        out.min_poly = std::min(out.min_poly, r.min_poly);
    }
    return out;
}

double coeff_bound_f(const std::vector<double>& c) {
    double s = 0.0;
    for (double x : c) s += std::abs(x);
    return s;
}

double coeff_bound_fprime(const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) s += static_cast<double>(k) * std::abs(c[k]);
    return s;
}

struct CertSetup {
    TransferConfig cfg;
    TestPolynomial poly;
    double lip_diff = 0.0;   // Lipschitz bound for L_s f - f on [0,1]
    double lip_poly = 0.0;   // Lipschitz bound for f
    double rounding_budget = 0.0;
};

CertSetup prepare(const TransferConfig& cfg) {
    CertSetup s;
    s.cfg = cfg;
    s.poly = build_test_polynomial(cfg);
    double F0 = coeff_bound_f(s.poly.coeffs);
    double F1 = coeff_bound_fprime(s.poly.coeffs);
    s.lip_poly = F1;
    const double eps = 2.23e-16;
    if (!cfg.unbounded()) {
        double S0 = 0.0, S1 = 0.0, S2 = 0.0;
        for (int b = 1; b <= cfg.alphabet; ++b) {
            double base = 1.0 + b;
            S0 += std::pow(base, -2.0 * cfg.s);
            S1 += std::pow(base, -2.0 * cfg.s - 1.0);
            S2 += std::pow(base, -2.0 * cfg.s - 2.0);
        }
        s.lip_diff = 2.0 * cfg.s * F0 * S1 + F1 * S2 + F1;
        double ops = 60.0 * cfg.alphabet + 10.0 * cfg.order + 40.0;
        s.rounding_budget = ops * eps * ((S0 + 1.0) * F0);
    } else {
        std::vector<double> a = s.poly.shifted_coeffs();
        double zsum = 0.0, zscale = 0.0;
        for (std::size_t n = 0; n < a.size(); ++n) {
            double sn = 2.0 * cfg.s + static_cast<double>(n);
            zsum += std::abs(a[n]) * sn * hurwitz_zeta(sn + 1.0, 2.0);
            zscale += std::abs(a[n]) * hurwitz_zeta(sn, 2.0);
        }
        s.lip_diff = zsum + F1;
        double ops = 400.0 * static_cast<double>(a.size()) + 40.0;
        s.rounding_budget = ops * eps * (zscale + F0);
    }
    return s;
}

CertifyOutcome certify(const TransferConfig& cfg, bool lower, const CertifyOptions& opt) {
    CertSetup setup = prepare(cfg);
    auto diff = [&](double x) {
        return apply_operator(setup.cfg, setup.poly, x) - setup.poly.eval(x);
    };

    CertifyOutcome out;
    out.cert.kind = lower ? "lower" : "upper";
    out.cert.s = cfg.s;
    out.cert.alphabet = cfg.alphabet;
    out.cert.lipschitz = setup.lip_diff;
    out.cert.rounding_budget = setup.rounding_budget;
    out.cert.poly = setup.poly;

    std::size_t cells = std::max<std::size_t>(opt.grid_cells, 16);
    for (;;) {
        ScanResult r = scan_grid(cells, opt.threads, setup.poly, diff);
        double slack = setup.lip_diff / (2.0 * static_cast<double>(cells));
        double fslack = setup.lip_poly / (2.0 * static_cast<double>(cells));
        double certified_fmin = r.min_poly - fslack;
        double certified = lower ? (r.min_diff - slack) : (r.max_diff + slack);
        out.cert.grid_cells = cells;
        out.cert.f_min = certified_fmin;
        out.cert.margin = certified;
        out.sampled_margin = lower ? r.min_diff : r.max_diff;

        bool sign_ok = lower ? (certified > 0.0) : (certified < 0.0);
        double magnitude = std::abs(certified);
        if (sign_ok && certified_fmin > 0.0 && magnitude > 1e3 * setup.rounding_budget) {
            out.success = true;
            return out;
        }
        // refinement cannot rescue a sample on the wrong side
        if (lower && (r.min_diff <= 0.0 || r.min_poly <= 0.0)) {
            out.reason = r.min_poly <= 0.0 ? "test polynomial not positive at a sample"
                                           : "operator difference not positive at a sample";
            return out;
        }
        if (!lower && (r.max_diff >= 0.0 || r.min_poly <= 0.0)) {
            out.reason = r.min_poly <= 0.0 ? "test polynomial not positive at a sample"
                                           : "operator difference not negative at a sample";
            return out;
        }
        if (cells >= opt.grid_cells_max) {
            out.reason = "certified margin did not clear the bound at the maximum grid";
            return out;
        }
        cells = std::min(opt.grid_cells_max, cells * 4);
    }
}

}  // namespace

CertifyOutcome certify_lower(int A, double s, int order, const CertifyOptions& opt) {
    if (A < 1) throw std::invalid_argument("certify_lower: finite alphabet required");
    return certify(TransferConfig{A, s, order}, true, opt);
}

CertifyOutcome certify_upper(double s, int order, const CertifyOptions& opt) {
    return certify(TransferConfig{0, s, order}, false, opt);
}

double bisect_lower_threshold(int A, int order, double lo, double hi, double tol,
                              const CertifyOptions& opt) {
    if (!(lo < hi) || tol <= 0.0) throw std::invalid_argument("bisect_lower_threshold: bad bracket");
    if (!certify_lower(A, lo, order, opt).success)
        throw std::invalid_argument("bisect_lower_threshold: lo must certify");
    if (certify_lower(A, hi, order, opt).success)
        throw std::invalid_argument("bisect_lower_threshold: hi must fail");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (certify_lower(A, mid, order, opt).success)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<RemovedInterval> fractal_circles(int depth, double min_diameter) {
    if (depth < 1) throw std::invalid_argument("fractal_circles: depth must be >= 1");
    if (min_diameter <= 0.0) throw std::invalid_argument("fractal_circles: bad diameter cutoff");

    // Cylinders are Moebius images of [0,1] under generator products; the
    // stage-d removal from a surviving cylinder is the image of [0, 1/2).
    auto moebius = [](const Mat2& w, const BigInt& pn, const BigInt& pd) {
        // w applied to pn/pd, returned as double
        BigInt num = w.a * pn + w.b * pd;
        BigInt den = w.c * pn + w.d * pd;
        return num.convert_to<double>() / den.convert_to<double>();
    };

    std::vector<RemovedInterval> out;
    struct Node {
        Mat2 w;
        int level;  // word length
    };
    std::deque<Node> queue{{Mat2::identity(), 0}};
    constexpr std::size_t emission_cap = 2'000'000;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        double left = moebius(node.w, 0, 1);
        double mid = moebius(node.w, 1, 2);
        out.push_back({0.5 * (left + mid), mid - left, node.level + 1});
        if (out.size() > emission_cap)
            throw BudgetExceeded("fractal_circles: interval budget; raise min_diameter");
        if (node.level + 1 >= depth) continue;
        for (int b = 1;; ++b) {
            Mat2 child = node.w * generator_matrix(b);
            double lo = moebius(child, 0, 1);
            double hi = moebius(child, 1, 1);
            if (hi - lo < min_diameter) break;  // diameters shrink in b
            queue.push_back({std::move(child), node.level + 1});
        }
    }
    return out;
}

}  // namespace treefrac
