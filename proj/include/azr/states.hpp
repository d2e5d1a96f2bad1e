#ifndef AZR_STATES_HPP
#define AZR_STATES_HPP

/*
 * Density operators and the seeded random ensembles used by the
 * verification harnesses: Haar unitaries, induced-measure random states,
 * fidelity and commutation tests.
 */

#include <cstdint>
#include <random>

#include "azr/matkit.hpp"

namespace azr::states {

// Identifier of the generator scheme, recorded in scan/suite reports so
// published numbers stay reproducible across library revisions.
inline constexpr const char* kRngVersion = "azr-rng-v1";

// Deterministic value-typed generator: a std::mt19937_64 engine (bit-exact
// per the standard) plus explicit uniform/Gaussian conversions, so streams
// reproduce across platforms.  Independent streams for parallel trials are
// derived from (seed, index) via splitmix64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Stream `index` of a master seed; streams are pairwise independent.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t raw();
    double uniform();  // [0, 1)
    double gaussian(); // N(0, 1), Box-Muller
    Cplx cgaussian();  // standard complex normal, E|z|^2 = 1

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

struct RandomSpec {
    int dim = 2;
    int rank = 2;
    std::uint64_t seed = 0;
};

// Seed of stream `index`; chain calls to derive nested streams
// (per grid point, then per trial).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase
// correction making the distribution exactly invariant).
CMat random_unitary(int dim, std::uint64_t seed);
CMat random_unitary(int dim, Rng& rng);

// rho = W W* / tr(W W*) with W a dim x rank complex Gaussian matrix.
CMat random_density(const RandomSpec& spec);
CMat random_density(int dim, int rank, Rng& rng);

// Unnormalized random PSD operator of the given rank.
CMat random_psd(int dim, int rank, Rng& rng);

// Random Hermitian with independent Gaussian entries (GUE-like scaling).
CMat random_hermitian(int dim, Rng& rng);

// trace = 1 within tol and PSD; throws otherwise.
void require_density(const CMat& rho, double tol = 1e-12);

// Trace norm of sqrt(rho) sqrt(sigma).
double fidelity(const CMat& rho, const CMat& sigma);

// ||AB - BA|| <= tol * ||A|| * ||B|| (Frobenius norms).
bool commutes(const CMat& a, const CMat& b, double tol = 1e-10);

} // namespace azr::states

#endif
