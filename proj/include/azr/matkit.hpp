#ifndef AZR_MATKIT_HPP
#define AZR_MATKIT_HPP

/*
 * Complex Hermitian spectral calculus on small dense matrices:
 * eigendecompositions with a deterministic ordering, fractional powers
 * through two independent backends (spectral and contour-integral),
 * leading principal minors, row-echelon pivot extraction, and the
 * direct-sum / Kronecker constructions used by the entropy functionals.
 */

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "azr/errors.hpp"

namespace azr {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

namespace matkit {

inline constexpr double kHermTol = 1e-10;

// ‖M − M*‖_F relative to max(1, ‖M‖_F).
double hermiticity_residual(const CMat& m);

bool is_hermitian(const CMat& m, double tol_herm = kHermTol);
void require_hermitian(const CMat& m, double tol_herm = kHermTol);

// Eigenvalues sorted descending.  Ties (within an absolute gap of
// 8*eps*max|lambda|) are broken by lexicographic comparison of the
// phase-fixed eigenvectors, and every eigenvector is normalized so its
// first nonzero component is real positive.  This makes the basis a
// deterministic function of the input bits, which the minor-based limit
// formulas rely on for reproducibility.
struct SpectralDecomposition {
    RVec eigenvalues;  // descending
    CMat eigenvectors; // unitary; column i pairs with eigenvalues[i]

    Eigen::Index dim() const { return eigenvalues.size(); }
};

SpectralDecomposition spectral_decompose(const CMat& h, double tol_herm = kHermTol);

// Numerical-rank cutoff: dim * eps * max|lambda|.
double default_zero_tol(const RVec& eigenvalues);

// Eigenvalues in (-tol, tol) are clamped to 0; anything below -tol is a
// genuine negativity and raises NotPsd.  tol < 0 selects the default cutoff.
RVec clamp_psd_eigenvalues(const RVec& eigenvalues, double tol_psd);

// A^p on the support of A (eigenvalues at/below zero_tol map to 0, so
// negative p means the pseudo-inverse power).  zero_tol < 0 => default.
CMat matrix_power_spectral(const CMat& a, double p, double zero_tol = -1.0);

enum class LogBase { natural, two };

// log A restricted to the support of A.
CMat matrix_log(const CMat& a, double zero_tol = -1.0, LogBase base = LogBase::natural);
CMat matrix_exp(const CMat& h);

// Orthogonal projector onto the support of a PSD operator.
CMat support_projector(const CMat& a, double zero_tol = -1.0);

struct QuadratureConfig {
    double target_err = 1e-10; // requested bound on the estimated error
    double eps_min = 1e-8;     // minimum allowed distance of Sp C to the cut R^-
    int max_levels = 10;       // trapezoid step halvings before giving up
    double h0 = 0.5;           // initial step in the exponential variable
};

// C^p for 0 < p < 1 and Sp C off the cut plane boundary, evaluated as
//   (sin p*pi / pi) * Int_0^infty t^p (1/t - (t+C)^{-1}) dt.
// Substituting t = e^s turns the integrand into e^{ps} C (e^s + C)^{-1},
// which decays exponentially on both ends, so the trapezoid rule on s
// converges spectrally; the truncation points come from the rigorous
// resolvent bounds sigma_min(t+C) >= t - ||C|| and >= sigma_min(C) - t.
CMat matrix_power_integral(const CMat& c, double p, const QuadratureConfig& quad = {});

// Entry k-1 (0-based) is det of the leading k x k submatrix; the last
// entry is det X.
CVec leading_principal_minors(const CMat& x);

// Column indices (0-based, increasing) of the row-leading entries of the
// row echelon form of a rectangular matrix, computed with partial
// pivoting.  Candidate entries below pivot_tol * (max |entry| in their
// row) count as zero.  The list length is the numerical rank.
std::vector<int> ref_pivot_columns(const CMat& m, double pivot_tol = 1e-10);

CMat direct_sum(const CMat& a, const CMat& b);

// Kronecker product with index convention (i,j)x(k,l) -> (i*db+k, j*db+l).
CMat tensor_product(const CMat& a, const CMat& b);

// A <= B in the Loewner order: lambda_min(B - A) >= -tol.
bool loewner_leq(const CMat& a, const CMat& b, double tol = 1e-10);

} // namespace matkit
} // namespace azr

#endif
