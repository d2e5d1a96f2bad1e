#include "azr/matkit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace azr::matkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool lex_less(const CVec& a, const CVec& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return false;
}

// Rotate v so its first component of non-negligible magnitude is real positive.
void phase_fix(Eigen::Ref<CVec> v) {
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0) return;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double m = std::abs(v[k]);
        if (m > 1e-8 * scale) {
            v *= std::conj(v[k]) / m;
            return;
        }
    }
}

} // namespace

double hermiticity_residual(const CMat& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("hermiticity_residual: matrix not square");
    const double nrm = m.norm();
    return (m - m.adjoint()).norm() / std::max(1.0, nrm);
}

bool is_hermitian(const CMat& m, double tol_herm) {
    return m.rows() == m.cols() && hermiticity_residual(m) <= tol_herm;
}

void require_hermitian(const CMat& m, double tol_herm) {
    if (!is_hermitian(m, tol_herm))
        throw NotHermitian("matrix is not Hermitian within tolerance");
}

SpectralDecomposition spectral_decompose(const CMat& h, double tol_herm) {
    require_hermitian(h, tol_herm);
    // Work on the symmetrized matrix so rounding-level asymmetry cannot leak
    // into the eigenbasis.
    const CMat hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(hs);
    if (es.info() != Eigen::Success)
        throw Error("spectral_decompose: eigensolver failed to converge");

    const Eigen::Index d = h.rows();
    SpectralDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < d; ++i) {
        out.eigenvalues[i] = es.eigenvalues()[d - 1 - i];
        out.eigenvectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    for (Eigen::Index i = 0; i < d; ++i) phase_fix(out.eigenvectors.col(i));

    // Deterministic order inside (near-)degenerate clusters.
    const double lam_scale = out.eigenvalues.cwiseAbs().maxCoeff();
    const double tie_tol = std::max(8.0 * kEps * lam_scale, 1e-300);
    Eigen::Index i = 0;
    while (i < d) {
        Eigen::Index j = i + 1;
        while (j < d && out.eigenvalues[i] - out.eigenvalues[j] <= tie_tol) ++j;
        if (j - i > 1) {
            std::vector<Eigen::Index> order(j - i);
            for (Eigen::Index k = 0; k < j - i; ++k) order[k] = i + k;
            std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
                return lex_less(out.eigenvectors.col(a), out.eigenvectors.col(b));
            });
            CMat block(d, j - i);
            RVec vals(j - i);
            for (Eigen::Index k = 0; k < j - i; ++k) {
                block.col(k) = out.eigenvectors.col(order[k]);
                vals[k] = out.eigenvalues[order[k]];
            }
            out.eigenvectors.middleCols(i, j - i) = block;
            out.eigenvalues.segment(i, j - i) = vals;
        }
        i = j;
    }
    return out;
}

double default_zero_tol(const RVec& eigenvalues) {
    const double lam_max = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return static_cast<double>(eigenvalues.size()) * kEps * lam_max;
}

RVec clamp_psd_eigenvalues(const RVec& eigenvalues, double tol_psd) {
    if (tol_psd < 0) tol_psd = std::max(default_zero_tol(eigenvalues), 1e-12);
    RVec out = eigenvalues;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out[i] < -tol_psd)
            throw NotPsd("operator has an eigenvalue below -tol_psd");
        if (out[i] <= tol_psd) out[i] = 0.0;
    }
    return out;
}

namespace {

// Shared implementation for spectral functions restricted to the support.
template <typename F>
CMat spectral_apply_on_support(const CMat& a, double zero_tol, F&& f) {
    auto sd = spectral_decompose(a);
    if (zero_tol < 0) zero_tol = std::max(default_zero_tol(sd.eigenvalues), 1e-12);
    RVec lam = clamp_psd_eigenvalues(sd.eigenvalues, zero_tol);
    RVec mapped(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        mapped[i] = (lam[i] > 0.0) ? f(lam[i]) : 0.0;
    return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

} // namespace

CMat matrix_power_spectral(const CMat& a, double p, double zero_tol) {
    return spectral_apply_on_support(a, zero_tol, [p](double x) { return std::pow(x, p); });
}

CMat matrix_log(const CMat& a, double zero_tol, LogBase base) {
    const double scale = (base == LogBase::two) ? 1.0 / std::log(2.0) : 1.0;
    return spectral_apply_on_support(a, zero_tol, [scale](double x) { return scale * std::log(x); });
}

CMat matrix_exp(const CMat& h) {
    auto sd = spectral_decompose(h);
    RVec mapped = sd.eigenvalues.array().exp();
    return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

CMat support_projector(const CMat& a, double zero_tol) {
    return spectral_apply_on_support(a, zero_tol, [](double) { return 1.0; });
}

CMat matrix_power_integral(const CMat& c, double p, const QuadratureConfig& quad) {
    if (c.rows() != c.cols()) throw DimensionMismatch("matrix_power_integral: matrix not square");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("matrix_power_integral: p must lie in (0,1)");
    const Eigen::Index d = c.rows();

    Eigen::ComplexEigenSolver<CMat> es(c, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw Error("matrix_power_integral: eigensolver failed");
    double eps_cut = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Cplx z = es.eigenvalues()[i];
        const double dist = (z.real() >= 0.0) ? std::abs(z) : std::abs(z.imag());
        eps_cut = std::min(eps_cut, dist);
    }
    if (!(eps_cut > quad.eps_min))
        throw SpectrumOnCut("matrix_power_integral: spectrum within eps_min of the cut");

    const double norm_c = c.operatorNorm();
    const double sigma_min = c.jacobiSvd().singularValues().minCoeff();
    const double pref = std::sin(p * std::numbers::pi) / std::numbers::pi;

    // Truncation from the rigorous bounds (see header).  Head: for
    // t <= sigma_min/2, ||C (t+C)^{-1}|| <= 2, so the remainder below
    // t_lo is at most pref * 2 * t_lo^p / p.  Tail: for t >= 2||C||,
    // ||(t+C)^{-1}|| <= 2/t, so the remainder above t_hi is at most
    // pref * 2 ||C|| t_hi^{p-1} / (1-p).
    const double budget = 0.25 * quad.target_err;
    double t_lo = std::min(0.5 * sigma_min,
                           std::pow(budget * p / (2.0 * pref), 1.0 / p));
    double t_hi = std::max(2.0 * norm_c + 1.0,
                           std::pow(2.0 * pref * norm_c / ((1.0 - p) * budget), 1.0 / (1.0 - p)));
    const double s_lo = std::log(t_lo);
    const double s_hi = std::log(t_hi);

    const CMat id = CMat::Identity(d, d);
    auto integrand = [&](double s) -> CMat {
        const double t = std::exp(s);
        Eigen::PartialPivLU<CMat> lu(c + t * id);
        return std::exp(p * s) * (lu.solve(c)).eval();
    };

    auto trapezoid = [&](double h) -> CMat {
        const auto n = static_cast<long>(std::ceil((s_hi - s_lo) / h));
        CMat acc = 0.5 * (integrand(s_lo) + integrand(s_lo + n * h));
        for (long k = 1; k < n; ++k) acc += integrand(s_lo + k * h);
        return (h * acc).eval();
    };

    double h = quad.h0;
    CMat prev = trapezoid(h);
    for (int level = 0; level < quad.max_levels; ++level) {
        h *= 0.5;
        CMat cur = trapezoid(h);
        const double diff = (cur - prev).norm();
        prev = cur;
        if (diff <= 0.5 * quad.target_err) return pref * prev;
    }
    throw QuadratureNotConverged("matrix_power_integral: error estimate above target_err");
}

CVec leading_principal_minors(const CMat& x) {
    if (x.rows() != x.cols()) throw DimensionMismatch("leading_principal_minors: matrix not square");
    const Eigen::Index d = x.rows();
    CVec out(d);
    for (Eigen::Index k = 1; k <= d; ++k)
        out[k - 1] = x.topLeftCorner(k, k).determinant();
    return out;
}

std::vector<int> ref_pivot_columns(const CMat& m, double pivot_tol) {
    CMat w = m;
    const Eigen::Index rows = w.rows(), cols = w.cols();
    RVec row_scale(rows);
    for (Eigen::Index i = 0; i < rows; ++i) row_scale[i] = w.row(i).cwiseAbs().maxCoeff();

    std::vector<int> pivots;
    Eigen::Index rank = 0;
    for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
        // Partial pivoting: pick the largest magnitude in the column.
        Eigen::Index best = -1;
        double best_mag = 0.0;
        for (Eigen::Index i = rank; i < rows; ++i) {
            const double mag = std::abs(w(i, c));
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best < 0 || best_mag <= pivot_tol * row_scale[best]) continue;
        w.row(rank).swap(w.row(best));
        std::swap(row_scale[rank], row_scale[best]);
        for (Eigen::Index i = rank + 1; i < rows; ++i) {
            const Cplx f = w(i, c) / w(rank, c);
            w.row(i) -= f * w.row(rank);
            w(i, c) = 0.0;
            row_scale[i] = std::max(row_scale[i], w.row(i).cwiseAbs().maxCoeff());
        }
        pivots.push_back(static_cast<int>(c));
        ++rank;
    }
    return pivots;
}

CMat direct_sum(const CMat& a, const CMat& b) {
    CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

CMat tensor_product(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool loewner_leq(const CMat& a, const CMat& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("loewner_leq: shape mismatch");
    auto sd = spectral_decompose(b - a);
    return sd.eigenvalues.minCoeff() >= -tol;
}

} // namespace azr::matkit
