#include "azr/divergence.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "azr/states.hpp"

namespace azr::divergence {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log sum exp over real exponents; empty input -> -inf.
double logsumexp(const std::vector<double>& xs) {
    if (xs.empty()) return kNegInf;
    const double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

} // namespace

ReducedPair reduce_to_sigma_support(const CMat& rho, const CMat& sigma, double support_tol) {
    matkit::require_hermitian(rho);
    matkit::require_hermitian(sigma);
    if (rho.rows() != sigma.rows())
        throw DimensionMismatch("reduce_to_sigma_support: dimension mismatch");

    auto sd = matkit::spectral_decompose(sigma);
    const RVec lam = matkit::clamp_psd_eigenvalues(sd.eigenvalues, -1.0);
    Eigen::Index k = 0;
    while (k < lam.size() && lam[k] > 0.0) ++k;
    if (k == 0) throw SupportViolation("sigma has empty support");

    const CMat basis = sd.eigenvectors.leftCols(k);
    const CMat proj = basis * basis.adjoint();
    const CMat id = CMat::Identity(rho.rows(), rho.cols());
    const CMat off = (id - proj) * rho * (id - proj);
    if (off.norm() > support_tol * std::max(rho.norm(), 1e-300))
        throw SupportViolation("supp(rho) is not contained in supp(sigma)");

    ReducedPair out;
    out.sigma_eigs = lam.head(k);
    out.rho_reduced = basis.adjoint() * rho * basis;
    out.rho_reduced = 0.5 * (out.rho_reduced + out.rho_reduced.adjoint()).eval();
    out.trace_rho = rho.trace().real();
    return out;
}

namespace {

// Exponents z*log(w_i) of the kept eigenvalues of the matrix inside the
// trace, for the requested evaluation form.
std::vector<double> support_log_terms(const ReducedPair& red, double a, double b, double z,
                                      Form form) {
    const Eigen::Index k = red.sigma_eigs.size();
    std::vector<double> terms;
    terms.reserve(k);

    if (form == Form::product) {
        // Non-Hermitian route, kept as an independent cross-check of the
        // sandwiched forms.
        RVec sig_b(k);
        for (Eigen::Index i = 0; i < k; ++i) sig_b[i] = std::pow(red.sigma_eigs[i], b);
        const CMat m = matkit::matrix_power_spectral(red.rho_reduced, a) * sig_b.asDiagonal();
        Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) throw Error("trace_functional: eigensolver failed");
        const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
        const double cut = static_cast<double>(k) * std::numeric_limits<double>::epsilon() * scale;
        for (Eigen::Index i = 0; i < k; ++i) {
            const Cplx w = es.eigenvalues()[i];
            // True eigenvalues are real nonnegative; rounding noise can
            // perturb them slightly off the axis.
            if (std::abs(w) <= cut || w.real() <= 0.0) continue;
            terms.push_back(z * std::log(w.real()));
        }
        return terms;
    }

    CMat w;
    if (form == Form::sigma_sandwich) {
        RVec half(k);
        for (Eigen::Index i = 0; i < k; ++i) half[i] = std::pow(red.sigma_eigs[i], 0.5 * b);
        const CMat rho_a = matkit::matrix_power_spectral(red.rho_reduced, a);
        w = half.asDiagonal() * rho_a * half.asDiagonal();
    } else {
        RVec sig_b(k);
        for (Eigen::Index i = 0; i < k; ++i) sig_b[i] = std::pow(red.sigma_eigs[i], b);
        const CMat rho_half = matkit::matrix_power_spectral(red.rho_reduced, 0.5 * a);
        w = rho_half * sig_b.asDiagonal() * rho_half;
    }
    w = 0.5 * (w + w.adjoint()).eval();
    auto sd = matkit::spectral_decompose(w);
    const double cut = matkit::default_zero_tol(sd.eigenvalues);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double wi = sd.eigenvalues[i];
        if (wi > cut) terms.push_back(z * std::log(wi));
    }
    return terms;
}

} // namespace

double log_trace_functional(const CMat& rho, const CMat& sigma, const DivergenceParams& params,
                            Form form) {
    if (std::abs(params.z) < kZeroZTol)
        throw ZeroZ("trace_functional: z = 0 is a limit; use azr::limits");
    const ReducedPair red = reduce_to_sigma_support(rho, sigma);
    const double a = params.alpha / params.z;
    const double b = (1.0 - params.alpha) / params.z;
    return logsumexp(support_log_terms(red, a, b, params.z, form));
}

double trace_functional(const CMat& rho, const CMat& sigma, const DivergenceParams& params,
                        Form form) {
    return std::exp(log_trace_functional(rho, sigma, params, form));
}

double f_pq(const CMat& a, const CMat& k, double p, double q) {
    if (std::abs(p + q) < 1e-12)
        throw DegenerateExponent("f_pq: p + q = 0");
    if (a.rows() != a.cols() || k.rows() != a.rows() || k.cols() != a.cols())
        throw DimensionMismatch("f_pq: shape mismatch");
    const CMat y = matkit::matrix_power_spectral(a, 0.5 * p) * k *
                   matkit::matrix_power_spectral(a, 0.5 * q);
    const CMat g = (y * y.adjoint()).eval();
    auto sd = matkit::spectral_decompose(0.5 * (g + g.adjoint()));
    const double cut = matkit::default_zero_tol(sd.eigenvalues);
    const double inv = 1.0 / (p + q);
    double f = 0.0;
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
        const double w = sd.eigenvalues[i];
        if (w > cut) f += std::pow(w, inv);
    }
    return f;
}

double d_alpha_z(const CMat& rho, const CMat& sigma, const DivergenceParams& params) {
    const double tr_rho = rho.trace().real();
    if (!(tr_rho > 0.0)) throw Error("d_alpha_z: rho must be nonzero");

    if (std::abs(params.z) < kZeroZTol) {
        if (std::abs(params.alpha - 1.0) < kAlphaOneTol)
            throw Unsupported(
                "d_alpha_z: (alpha,z) -> (1,0) depends on the slope z/(alpha-1); "
                "use azr::limits::limit_alpha1 with an explicit r");
        throw Unsupported("d_alpha_z: the z -> 0 limit at fixed alpha != 1 is not available");
    }
    if (std::abs(params.alpha - 1.0) < kAlphaOneTol)
        return relative_entropy(rho, sigma) / tr_rho;

    const double lnf = log_trace_functional(rho, sigma, params);
    return (lnf - std::log(tr_rho)) / ((params.alpha - 1.0) * kLn2);
}

double relative_entropy(const CMat& rho, const CMat& sigma) {
    const ReducedPair red = reduce_to_sigma_support(rho, sigma);
    auto sd = matkit::spectral_decompose(red.rho_reduced);
    const RVec mu = matkit::clamp_psd_eigenvalues(sd.eigenvalues, -1.0);
    double val = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (mu[i] > 0.0) val += mu[i] * std::log2(mu[i]);
    for (Eigen::Index j = 0; j < red.sigma_eigs.size(); ++j)
        val -= red.rho_reduced(j, j).real() * std::log2(red.sigma_eigs[j]);
    return val;
}

double d_min(const CMat& rho, const CMat& sigma) {
    return -2.0 * std::log2(states::fidelity(rho, sigma));
}

double d_max(const CMat& rho, const CMat& sigma) {
    const ReducedPair red = reduce_to_sigma_support(rho, sigma);
    const Eigen::Index k = red.sigma_eigs.size();
    RVec inv_half(k);
    for (Eigen::Index i = 0; i < k; ++i) inv_half[i] = std::pow(red.sigma_eigs[i], -0.5);
    const CMat x = inv_half.asDiagonal() * red.rho_reduced * inv_half.asDiagonal();
    auto sd = matkit::spectral_decompose(0.5 * (x + x.adjoint()));
    return std::log2(sd.eigenvalues[0]);
}

double alpha_rre(const CMat& rho, const CMat& sigma, double alpha) {
    return d_alpha_z(rho, sigma, {alpha, 1.0});
}

double qrd(const CMat& rho, const CMat& sigma, double alpha) {
    return d_alpha_z(rho, sigma, {alpha, alpha});
}

double reverse_qrd(const CMat& rho, const CMat& sigma, double alpha) {
    return d_alpha_z(rho, sigma, {alpha, 1.0 - alpha});
}

double d_z_infinity(const CMat& rho, const CMat& sigma, double alpha) {
    // The log sum is only defined on a common support.
    const ReducedPair red = reduce_to_sigma_support(rho, sigma);
    const Eigen::Index k = red.sigma_eigs.size();
    {
        auto sd_rho = matkit::spectral_decompose(red.rho_reduced);
        const RVec mu = matkit::clamp_psd_eigenvalues(sd_rho.eigenvalues, -1.0);
        if (mu[k - 1] <= 0.0)
            throw SupportViolation("d_z_infinity: supp(rho) must equal supp(sigma)");
    }
    const double tr_rho = red.trace_rho;
    if (std::abs(alpha - 1.0) < kAlphaOneTol) return relative_entropy(rho, sigma);

    CVec log_sig(k);
    for (Eigen::Index i = 0; i < k; ++i) log_sig[i] = std::log(red.sigma_eigs[i]);
    const CMat h = alpha * matkit::matrix_log(red.rho_reduced) +
                   (1.0 - alpha) * CMat(log_sig.asDiagonal());
    auto sd = matkit::spectral_decompose(0.5 * (h + h.adjoint()));
    std::vector<double> terms(sd.eigenvalues.data(), sd.eigenvalues.data() + k);
    const double lnf = logsumexp(terms);
    return (lnf - std::log(tr_rho)) / ((alpha - 1.0) * kLn2);
}

double classical_renyi(const RVec& p, const RVec& q, double alpha) {
    if (p.size() != q.size()) throw DimensionMismatch("classical_renyi: length mismatch");
    if (std::abs(p.sum() - 1.0) > 1e-9)
        throw Error("classical_renyi: p must sum to 1");
    std::vector<double> terms;
    double kl = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12) throw Error("classical_renyi: negative probability");
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) throw SupportViolation("classical_renyi: supp(p) not inside supp(q)");
        terms.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
        kl += p[i] * std::log2(p[i] / q[i]);
    }
    if (std::abs(alpha - 1.0) < kAlphaOneTol) return kl;
    return logsumexp(terms) / ((alpha - 1.0) * kLn2);
}

} // namespace azr::divergence
