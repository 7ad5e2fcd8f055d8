#pragma once

#include "treefrac/config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace treefrac {

/// Inverse branch x -> (b+x)/(1+b+x); maps [0,1] into (0,1).
double contraction(int b, double x);
/// Its derivative 1/(1+b+x)^2.
double contraction_deriv(int b, double x);

/// alphabet >= 1 sums b = 1..alphabet; alphabet == 0 means the unbounded
/// alphabet, evaluated through the zeta reformulation on polynomials.
struct TransferConfig {
    int alphabet = 2;
    double s = 0.5;
    int order = 5;
    bool unbounded() const { return alphabet == 0; }
};

/// N nodes (cos((2j-1)pi/2N)+1)/2, j = 1..N, strictly decreasing, inside (0,1).
std::vector<double> chebyshev_nodes(int N);

/// Weights 1/prod_{k != j}(y_j - y_k) for barycentric evaluation.
std::vector<double> barycentric_weights(const std::vector<double>& nodes);

/// Interpolating polynomial built from a leading left eigenvector of the
/// collocation matrix. Node values equal the eigenvector entries; evaluation
/// goes through the barycentric form, the monomial coefficients are kept for
/// reporting and for the zeta-mode expansion about x = 1.
struct TestPolynomial {
    std::vector<double> nodes;
    std::vector<double> bary_weights;
    std::vector<double> eigenvector;  // = values at the nodes, max entry 1
    std::vector<double> coeffs;       // monomial, degree order-1
    double eigenvalue = 0.0;

    double eval(double x) const;
    /// Coefficients a_n with f(x) = sum a_n (x-1)^n.
    std::vector<double> shifted_coeffs() const;
    /// Constant polynomial (for operator identities in tests).
    static TestPolynomial constant(double value, int order);
};

/// Collocation of the weighted composition operator on Lagrange basis
/// polynomials at the Chebyshev nodes; deterministic power iteration
/// (all-ones start, tolerance 1e-13) extracts the leading left eigenvector.
/// Throws ConvergenceFailure if the iteration stalls.
TestPolynomial build_test_polynomial(const TransferConfig& cfg);

/// sum_{b>=0} (b+x)^-s by direct head plus Euler-Maclaurin tail with four
/// Bernoulli corrections; the cutoff is chosen so the remainder bound is
/// below 1e-14. Domain s > 1 (the series diverges at 1), x >= 1; interior
/// certification uses have s >= 1.4.
double hurwitz_zeta(double s, double x);

/// [L_s f](x): a sum of `alphabet` terms in finite mode, or deg+1 zeta terms
/// in unbounded mode.
double apply_operator(const TransferConfig& cfg, const TestPolynomial& poly, double x);

/// Depth-n approximant (1/n) log sum over words of |(T_w)'(0)|^s.
/// Throws BudgetExceeded when alphabet^depth exceeds the configured cap.
double pressure_estimate(const TransferConfig& cfg, int depth, const Limits& limits = {});

struct CertifyOptions {
    std::size_t grid_cells = 100'000;
    std::size_t grid_cells_max = 10'000'000;
    unsigned threads = 0;
};

/// A verified one-sided bound: kind "lower" certifies min(L_s f - f) > 0 on
/// [0,1] (dimension exceeds s), kind "upper" certifies max(L_s f - f) < 0.
/// `margin` is the certified extremum (grid value adjusted by the Lipschitz
/// cell bound), never a raw sample.
struct DimensionCertificate {
    std::string kind;  // "lower" | "upper"
    double s = 0.0;
    int alphabet = 0;  // 0 = unbounded
    double margin = 0.0;
    double f_min = 0.0;  // certified minimum of the test polynomial
    std::size_t grid_cells = 0;
    double lipschitz = 0.0;
    double rounding_budget = 0.0;
    TestPolynomial poly;
};

struct CertifyOutcome {
    bool success = false;
    DimensionCertificate cert;
    double sampled_margin = 0.0;  // best grid value seen, for failure reports
    std::string reason;
};

CertifyOutcome certify_lower(int A, double s, int order, const CertifyOptions& opt = {});
CertifyOutcome certify_upper(double s, int order, const CertifyOptions& opt = {});

/// Largest s (within tol) at which certify_lower still succeeds; brackets the
/// dimension from below as the order grows.
double bisect_lower_threshold(int A, int order, double lo, double hi, double tol,
                              const CertifyOptions& opt = {});

struct RemovedInterval {
    double center = 0.0;
    double diameter = 0.0;
    int depth = 0;
};

/// Intervals removed through `depth` refinement stages of the Cantor
/// construction for the unbounded alternating fractal; plot-ready, pairwise
/// disjoint, total length below 1.
std::vector<RemovedInterval> fractal_circles(int depth, double min_diameter = 1e-4);

}  // namespace treefrac
