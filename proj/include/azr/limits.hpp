#ifndef AZR_LIMITS_HPP
#define AZR_LIMITS_HPP

/*
 * Closed-form limits of D_{alpha,z} along the parameterization
 * z = r(alpha-1):
 *
 *  - alpha -> 1: the relative entropy between rho and a positive operator
 *    diagonal in the eigenbasis of rho, built from leading principal
 *    minors of sigma^{-1/r};
 *  - alpha -> +/- infinity: a max-relative entropy of fractional powers;
 *  - alpha = z -> 0: a row-echelon pivot selection among the eigenvalues
 *    of sigma.
 */

#include <vector>

#include "azr/matkit.hpp"

namespace azr::limits {

// nu_k = det((sigma^{-1/r})_{1:k,1:k})^{-r}, computed in the deterministic
// eigenbasis of rho.  nu_d = det(sigma).
struct MinorVector {
    RVec nu;
    CMat basis; // rho eigenbasis used (columns, descending eigenvalues)
};

// Diagonal of the comparison operator: (nu_1, nu_2/nu_1, ..., nu_d/nu_{d-1})
// in the same basis.
struct SigmaHat {
    RVec diag_values;
    CMat basis;
};

MinorVector minor_vector(const CMat& rho, const CMat& sigma, double r);
SigmaHat sigma_hat(const CMat& rho, const CMat& sigma, double r);

// lim_{alpha->1} D_{alpha,r(alpha-1)}(rho||sigma), in bits, evaluated as
//   -S(rho) - mu_d log det sigma - sum_{i<d} (mu_i - mu_{i+1}) log nu_i,
// which stays well defined for degenerate spectra of rho.
double limit_alpha1(const CMat& rho, const CMat& sigma, double r);

// Quotient form D(rho || sigma_hat); equals limit_alpha1 whenever rho has
// a non-degenerate spectrum.  Kept as an independent cross-check.
double limit_alpha1_quotient(const CMat& rho, const CMat& sigma, double r);

// lim_{alpha->+inf} D_{alpha,r(alpha-1)} = r * Dmax(rho^{1/r} || sigma^{1/r}).
double limit_alpha_inf(const CMat& rho, const CMat& sigma, double r);

// lim_{alpha->-inf} D_{alpha,r(alpha-1)} = r * Dmax(sigma^{-1/r} || rho^{-1/r});
// requires supp rho = supp sigma.
double limit_alpha_neg_inf(const CMat& rho, const CMat& sigma, double r);

struct ZeroZeroResult {
    double value = 0.0;            // lim f_{alpha,alpha} = sum of selected sigma eigenvalues
    double divergence_bits = 0.0;  // -log2(value)
    std::vector<int> pivot_columns; // 0-based indices into the descending sigma spectrum
};

// lim_{alpha->0} D_{alpha,alpha}: row-echelon pivots of Pi_rho * U, where U
// is the sigma eigenbasis expressed in the rho eigenbasis, select the
// surviving sigma eigenvalues.  Requires sigma > 0.
ZeroZeroResult limit_zero_zero(const CMat& rho, const CMat& sigma);

} // namespace azr::limits

#endif
