#include "azr/limits.hpp"

#include <cmath>

#include "azr/divergence.hpp"

namespace azr::limits {

namespace {

// Spectral data of sigma with a positive-definiteness gate.
matkit::SpectralDecomposition decompose_definite(const CMat& sigma) {
    auto sd = matkit::spectral_decompose(sigma);
    const double cut = std::max(matkit::default_zero_tol(sd.eigenvalues), 1e-12);
    if (sd.eigenvalues.minCoeff() <= cut)
        throw SigmaNotPositiveDefinite("sigma must be positive definite");
    return sd;
}

} // namespace

MinorVector minor_vector(const CMat& rho, const CMat& sigma, double r) {
    if (r == 0.0) throw std::invalid_argument("minor_vector: r must be nonzero");
    matkit::require_hermitian(rho);
    decompose_definite(sigma);
    if (rho.rows() != sigma.rows()) throw DimensionMismatch("minor_vector: dimension mismatch");

    auto sd_rho = matkit::spectral_decompose(rho);
    const CMat sigma_in_rho_basis = sd_rho.eigenvectors.adjoint() * sigma * sd_rho.eigenvectors;
    const CMat powered = matkit::matrix_power_spectral(sigma_in_rho_basis, -1.0 / r);
    const CVec minors = matkit::leading_principal_minors(powered);

    MinorVector out;
    out.basis = sd_rho.eigenvectors;
    out.nu.resize(minors.size());
    for (Eigen::Index k = 0; k < minors.size(); ++k) {
        // Leading principal minors of a positive definite Hermitian matrix
        // are real and positive; the imaginary part is rounding noise.
        const double m = minors[k].real();
        if (!(m > 0.0))
            throw SigmaNotPositiveDefinite("minor_vector: nonpositive principal minor");
        out.nu[k] = std::pow(m, -r);
    }
    return out;
}

SigmaHat sigma_hat(const CMat& rho, const CMat& sigma, double r) {
    const MinorVector mv = minor_vector(rho, sigma, r);
    SigmaHat out;
    out.basis = mv.basis;
    out.diag_values.resize(mv.nu.size());
    out.diag_values[0] = mv.nu[0];
    for (Eigen::Index k = 1; k < mv.nu.size(); ++k)
        out.diag_values[k] = mv.nu[k] / mv.nu[k - 1];
    return out;
}

double limit_alpha1(const CMat& rho, const CMat& sigma, double r) {
    const MinorVector mv = minor_vector(rho, sigma, r);
    auto sd_rho = matkit::spectral_decompose(rho);
    const RVec mu = matkit::clamp_psd_eigenvalues(sd_rho.eigenvalues, -1.0);
    const Eigen::Index d = mu.size();

    double entropy = 0.0; // von Neumann entropy, bits
    for (Eigen::Index i = 0; i < d; ++i)
        if (mu[i] > 0.0) entropy -= mu[i] * std::log2(mu[i]);

    // nu_d = det sigma.
    double val = -entropy - mu[d - 1] * std::log2(mv.nu[d - 1]);
    for (Eigen::Index i = 0; i + 1 < d; ++i)
        val -= (mu[i] - mu[i + 1]) * std::log2(mv.nu[i]);
    return val;
}

double limit_alpha1_quotient(const CMat& rho, const CMat& sigma, double r) {
    const SigmaHat hat = sigma_hat(rho, sigma, r);
    auto sd_rho = matkit::spectral_decompose(rho);
    const RVec mu = matkit::clamp_psd_eigenvalues(sd_rho.eigenvalues, -1.0);
    double val = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu[i] > 0.0) val += mu[i] * (std::log2(mu[i]) - std::log2(hat.diag_values[i]));
    return val;
}

double limit_alpha_inf(const CMat& rho, const CMat& sigma, double r) {
    if (r == 0.0) throw std::invalid_argument("limit_alpha_inf: r must be nonzero");
    decompose_definite(sigma);
    const CMat rho_pow = matkit::matrix_power_spectral(rho, 1.0 / r);
    const CMat sigma_pow = matkit::matrix_power_spectral(sigma, 1.0 / r);
    return r * divergence::d_max(rho_pow, sigma_pow);
}

double limit_alpha_neg_inf(const CMat& rho, const CMat& sigma, double r) {
    if (r == 0.0) throw std::invalid_argument("limit_alpha_neg_inf: r must be nonzero");
    matkit::require_hermitian(rho);
    matkit::require_hermitian(sigma);
    if (rho.rows() != sigma.rows())
        throw DimensionMismatch("limit_alpha_neg_inf: dimension mismatch");

    // Work on the common support.
    const CMat proj_rho = matkit::support_projector(rho);
    const CMat proj_sigma = matkit::support_projector(sigma);
    if ((proj_rho - proj_sigma).norm() > 1e-8 * proj_rho.rows())
        throw SupportMismatch("limit_alpha_neg_inf: supp(rho) must equal supp(sigma)");

    auto sd = matkit::spectral_decompose(sigma);
    const RVec lam = matkit::clamp_psd_eigenvalues(sd.eigenvalues, -1.0);
    Eigen::Index k = 0;
    while (k < lam.size() && lam[k] > 0.0) ++k;
    const CMat basis = sd.eigenvectors.leftCols(k);
    const CMat rho_r = (basis.adjoint() * rho * basis).eval();
    const CMat sigma_r = (basis.adjoint() * sigma * basis).eval();

    const CMat rho_pow = matkit::matrix_power_spectral(rho_r, -1.0 / r);
    const CMat sigma_pow = matkit::matrix_power_spectral(sigma_r, -1.0 / r);
    return r * divergence::d_max(sigma_pow, rho_pow);
}

ZeroZeroResult limit_zero_zero(const CMat& rho, const CMat& sigma) {
    matkit::require_hermitian(rho);
    auto sd_sigma = decompose_definite(sigma);
    if (rho.rows() != sigma.rows()) throw DimensionMismatch("limit_zero_zero: dimension mismatch");

    auto sd_rho = matkit::spectral_decompose(rho);
    const RVec mu = matkit::clamp_psd_eigenvalues(sd_rho.eigenvalues, -1.0);
    Eigen::Index rank = 0;
    while (rank < mu.size() && mu[rank] > 0.0) ++rank;
    if (rank == 0) throw Error("limit_zero_zero: rho must be nonzero");

    // In the eigenbasis of rho the support projector keeps the first
    // `rank` rows; the remaining rows of Pi_rho * U vanish and are dropped.
    const CMat u_rel = sd_rho.eigenvectors.adjoint() * sd_sigma.eigenvectors;
    const CMat m = u_rel.topRows(rank);

    ZeroZeroResult out;
    out.pivot_columns = matkit::ref_pivot_columns(m);
    out.value = 0.0;
    for (int col : out.pivot_columns) out.value += sd_sigma.eigenvalues[col];
    out.divergence_bits = -std::log2(out.value);
    return out;
}

} // namespace azr::limits
