#ifndef AZR_DIVERGENCE_HPP
#define AZR_DIVERGENCE_HPP

/*
 * The two-parameter trace functional
 *     f_{alpha,z}(rho||sigma) = tr(rho^{alpha/z} sigma^{(1-alpha)/z})^z
 * and the relative entropy family D_{alpha,z} built on it, together with
 * the named one-parameter slices (Renyi, sandwiched, reverse-sandwiched,
 * min/max, z -> infinity) and the classical commuting-case formula.
 *
 * All entropic outputs are in bits.  Every computation is restricted to
 * the support of sigma first; inputs with supp rho not inside supp sigma
 * raise SupportViolation instead of returning +infinity.
 */

#include "azr/matkit.hpp"

namespace azr::divergence {

struct DivergenceParams {
    double alpha = 0.5;
    double z = 1.0;

    // Re-parameterization used by the concavity/convexity analysis.
    double p() const { return alpha / z; }
    double q() const { return (1.0 - alpha) / z; }
};

enum class Form {
    product = 1,        // tr(rho^a sigma^b)^z, non-Hermitian inner product
    rho_sandwich = 2,   // tr(rho^{a/2} sigma^b rho^{a/2})^z
    sigma_sandwich = 3, // tr(sigma^{b/2} rho^a sigma^{b/2})^z  (default)
};

inline constexpr double kSupportTol = 1e-10; // relative to ||rho||_F
inline constexpr double kAlphaOneTol = 1e-6; // |alpha-1| below this uses the limit
inline constexpr double kZeroZTol = 1e-8;    // |z| below this is rejected

// Both operators expressed in the eigenbasis of sigma restricted to its
// support: sigma becomes the diagonal of its positive eigenvalues
// (descending) and rho becomes a PSD block of the same size.
struct ReducedPair {
    RVec sigma_eigs;
    CMat rho_reduced;
    double trace_rho = 0.0;
};

ReducedPair reduce_to_sigma_support(const CMat& rho, const CMat& sigma,
                                    double support_tol = kSupportTol);

// Natural log of the trace functional, evaluated in the log domain so
// large |z| does not overflow.  Returns -infinity when the functional
// vanishes.
double log_trace_functional(const CMat& rho, const CMat& sigma, const DivergenceParams& params,
                            Form form = Form::sigma_sandwich);

double trace_functional(const CMat& rho, const CMat& sigma, const DivergenceParams& params,
                        Form form = Form::sigma_sandwich);

// tr(A^p K A^q K*)^{1/(p+q)}; homogeneous of degree 1 in A.
double f_pq(const CMat& a, const CMat& k, double p, double q);

// D_{alpha,z}(rho||sigma) = log2(f / tr rho) / (alpha - 1) in bits.
// |alpha - 1| < kAlphaOneTol returns the alpha -> 1 limit at fixed z (the
// relative entropy); |z| < kZeroZTol throws (the z -> 0 limits live in
// azr::limits and need the slope r).
double d_alpha_z(const CMat& rho, const CMat& sigma, const DivergenceParams& params);

// tr rho log rho - tr rho log sigma, in bits.
double relative_entropy(const CMat& rho, const CMat& sigma);

// -2 log2 fidelity  (equals D_{1/2,1/2}).
double d_min(const CMat& rho, const CMat& sigma);

// log2 lambda_max(sigma^{-1/2} rho sigma^{-1/2}) on supp sigma.
double d_max(const CMat& rho, const CMat& sigma);

double alpha_rre(const CMat& rho, const CMat& sigma, double alpha);     // z = 1
double qrd(const CMat& rho, const CMat& sigma, double alpha);           // z = alpha
double reverse_qrd(const CMat& rho, const CMat& sigma, double alpha);   // z = 1 - alpha

// lim_{z->inf} D_{alpha,z} = log2 tr exp(alpha ln rho + (1-alpha) ln sigma) / (alpha-1),
// on the joint support; requires supp rho = supp sigma.  alpha = 1 gives
// the relative entropy.
double d_z_infinity(const CMat& rho, const CMat& sigma, double alpha);

// Classical alpha-relative Renyi entropy of two nonnegative vectors;
// the commuting-case oracle.
double classical_renyi(const RVec& p, const RVec& q, double alpha);

} // namespace azr::divergence

#endif
