#include "azr/states.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace azr::states {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed) ^ splitmix64(index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
}

std::uint64_t Rng::raw() { return eng_(); }

double Rng::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Box-Muller; u away from 0 so the log stays finite.
    double u = 0.0;
    do {
        u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    cached_ = r * std::sin(angle);
    have_cached_ = true;
    return r * std::cos(angle);
}

Cplx Rng::cgaussian() {
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    return {gaussian() * inv_sqrt2, gaussian() * inv_sqrt2};
}

CMat random_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
    CMat g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.cgaussian();
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity of QR so the distribution is Haar.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Cplx rjj = r(j, j);
        const double m = std::abs(rjj);
        q.col(j) *= (m > 0.0) ? rjj / m : Cplx(1.0, 0.0);
    }
    return q;
}

CMat random_unitary(int dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(dim, rng);
}

CMat random_psd(int dim, int rank, Rng& rng) {
    if (dim < 1 || rank < 1 || rank > dim)
        throw std::invalid_argument("random_psd: need 1 <= rank <= dim");
    CMat w(dim, rank);
    for (Eigen::Index j = 0; j < rank; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) w(i, j) = rng.cgaussian();
    return w * w.adjoint();
}

CMat random_density(int dim, int rank, Rng& rng) {
    CMat a = random_psd(dim, rank, rng);
    return a / a.trace().real();
}

CMat random_density(const RandomSpec& spec) {
    Rng rng(spec.seed);
    return random_density(spec.dim, spec.rank, rng);
}

CMat random_hermitian(int dim, Rng& rng) {
    CMat g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.cgaussian();
    return 0.5 * (g + g.adjoint());
}

void require_density(const CMat& rho, double tol) {
    matkit::require_hermitian(rho);
    auto sd = matkit::spectral_decompose(rho);
    matkit::clamp_psd_eigenvalues(sd.eigenvalues, -1.0);
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw Error("require_density: trace is not 1 within tolerance");
}

double fidelity(const CMat& rho, const CMat& sigma) {
    const CMat x = matkit::matrix_power_spectral(rho, 0.5) * matkit::matrix_power_spectral(sigma, 0.5);
    return x.jacobiSvd().singularValues().sum();
}

bool commutes(const CMat& a, const CMat& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("commutes: shape mismatch");
    return (a * b - b * a).norm() <= tol * a.norm() * b.norm();
}

} // namespace azr::states
