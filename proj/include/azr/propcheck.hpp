#ifndef AZR_PROPCHECK_HPP
#define AZR_PROPCHECK_HPP

/*
 * Randomized verification suites for the concavity/convexity claims about
 * the trace functional f_{p,q}, the power-method approximation bound, the
 * spectra of products of matrices in complex segments, the resolvent
 * bounds behind the fractional-power integral, and the divergence axioms.
 *
 * Every suite is a pure function of (seed, trials, dims): trial i derives
 * stream i of the seed, results reduce by trial index, and re-running
 * reproduces the failure list bit for bit regardless of the job count.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "azr/matkit.hpp"
#include "azr/states.hpp"

namespace azr::propcheck {

struct Failure {
    std::string digest;      // hash of the offending inputs
    std::uint64_t seed = 0;  // stream seed reproducing them
    double magnitude = 0.0;  // how far past the tolerance
    std::string check;       // which property failed
};

struct SuiteResult {
    std::string suite_name;
    int cases_run = 0;
    std::vector<Failure> failures;
    double tolerance = 0.0;
    bool conjecture_mode = false; // findings are reports, never build failures
    bool warning = false;
    std::string note;

    bool pass() const { return failures.empty(); }
};

// Region of the (p,q) plane for the trace functional A -> f_{p,q}(A;K).
enum class PqRegion {
    concave_proven,     // 0 < p,q <= 1
    convex_proven,      // p+q = 1 with p in [1,2], or p = 1 with q in (-1,0)
    convex_conjectured, // [-1,0) x [1,2] (either order)
    none,
};
PqRegion classify_pq_region(double p, double q);

// Midpoint concavity of f_{p,q} on random positive pairs; lambda is drawn
// uniformly instead of 1/2 when random_lambda is set.
SuiteResult concavity_suite(double p, double q, int dim, int trials, std::uint64_t seed,
                            int jobs = 0, bool random_lambda = false);

// Midpoint convexity; conjecture mode whenever (p,q) sits in a cell where
// convexity is conjectured rather than proven, so findings are reported
// as potential counterexamples instead of failures.
SuiteResult convexity_conjecture_suite(double p, double q, int dim, int trials,
                                       std::uint64_t seed, int jobs = 0,
                                       bool random_lambda = false);

// One evaluation of the power-method bracket for lambda_1(A^b B A^b):
//   lambda_1 = mu_1^{2b} B_11 (1 + c (mu_2/mu_1)^{2b}),  b = alpha/2(1-alpha),
// with 0 <= c <= lambda_1(B)/B_11 when mu_1 > mu_2 strictly.
struct ApproxLemmaSample {
    double c = 0.0;          // bracketing constant (meaningful when resolvable)
    double gap_power = 0.0;  // (mu_2/mu_1)^{2b}
    double lambda1 = 0.0;    // lambda_1(A^b B A^b)
    double leading = 0.0;    // mu_1^{2b} B_11
    double c_bound = 0.0;    // lambda_1(B)/B_11
    bool resolvable = false; // correction term above the floating-point floor
};
ApproxLemmaSample approximation_lemma_sample(const CMat& a, const CMat& b, double alpha);

SuiteResult approximation_lemma_suite(int dim, int trials, std::uint64_t seed,
                                      const std::vector<double>& alpha_list, int jobs = 0);

struct ComplexSegment {
    double alpha_angle = 0.0;
    double beta_angle = 0.0;

    double width() const { return beta_angle - alpha_angle; }
};

void validate_segment(const ComplexSegment& seg);

// Membership in the matrix segment: Im(e^{-i alpha} C) > 0 and
// Im(e^{-i beta} C) < 0, both strictly beyond `margin`.
bool in_segment(const CMat& c, const ComplexSegment& seg, double margin = 0.0);

// Constructive sampler: rotate cos(w/2) P + i sin(w/2) H with P > 0 and
// -P < H < P into the segment, then verify membership and redraw on the
// rare rounding rejection.
CMat random_segment_matrix(const ComplexSegment& seg, int dim, states::Rng& rng);

// Spectrum of A1 A2 stays inside the summed segment.
SuiteResult segment_spectrum_suite(const ComplexSegment& seg1, const ComplexSegment& seg2,
                                   int dim, int trials, std::uint64_t seed, int jobs = 0);

// ||Im(-(t+C)^{-1})|| <= eta/eps^2 and <= eta/(t-gamma)^2 for t > gamma,
// on normal matrices with spectrum in the open right half plane (the
// regime the bounds are stated for).
SuiteResult resolvent_bound_suite(int dim, int trials, std::uint64_t seed,
                                  const std::vector<double>& t_grid, int jobs = 0);

// Divergence axioms and identities: continuity probe, unitary invariance,
// normalization, order axiom (including the boundary z = |alpha-1|),
// additivity, the mean-value identity on direct sums, evenness in z and
// the two skew symmetries.
SuiteResult axiom_suite(const std::vector<int>& dims, int trials, std::uint64_t seed,
                        int jobs = 0);

} // namespace azr::propcheck

#endif
