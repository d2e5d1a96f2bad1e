#ifndef AZR_CHANNELS_HPP
#define AZR_CHANNELS_HPP

/*
 * Completely positive trace-preserving maps in Kraus form, random channel
 * sampling through Haar isometries, and the data-processing-inequality
 * scan harness.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "azr/divergence.hpp"
#include "azr/states.hpp"

namespace azr::channels {

struct KrausChannel {
    std::vector<CMat> kraus_ops; // each d_out x d_in

    int dim_in() const { return kraus_ops.empty() ? 0 : static_cast<int>(kraus_ops[0].cols()); }
    int dim_out() const { return kraus_ops.empty() ? 0 : static_cast<int>(kraus_ops[0].rows()); }

    // ||sum_k K_k* K_k - I||_F
    double completeness_residual() const;
};

void require_trace_preserving(const KrausChannel& ch, double tol = 1e-10);

// sum_k K_k X K_k*
CMat apply(const KrausChannel& ch, const CMat& x);

// Kraus operators cut from a Haar-random isometry d_in -> d_out * kraus_count,
// so trace preservation holds by construction.
KrausChannel random_channel(int d_in, int d_out, int kraus_count, states::Rng& rng);
KrausChannel random_channel(int d_in, int d_out, int kraus_count, std::uint64_t seed);

// Signed DPI violation D(L(rho)||L(sigma)) - D(rho||sigma); nonpositive up
// to numerics wherever the inequality is proven.
double dpi_check(const CMat& rho, const CMat& sigma, const KrausChannel& ch,
                 const divergence::DivergenceParams& params);

enum class DpiRegion { proven, conjectured, known_false };

const char* to_string(DpiRegion r);

// Region of the (alpha,z) plane (even in z):
//   proven      -- 0<alpha<=1 with z >= max(alpha,1-alpha); 1<=alpha<=2 with
//                  z = 1; alpha >= 1 with z = alpha;
//   conjectured -- the strip between those lines where (p,q) = (alpha/z,
//                  (1-alpha)/z) lies in [1,2] x [-1,0);
//   known_false -- everywhere else.
DpiRegion classify_dpi_region(double alpha, double z);

// (rho, sigma, channel) triple reproducible from a single derived seed.
struct DpiTrial {
    CMat rho;
    CMat sigma;
    KrausChannel channel;
};
DpiTrial make_dpi_trial(int dim, std::uint64_t trial_seed);

struct DpiPoint {
    double alpha = 0.0;
    double z = 0.0;
    DpiRegion region = DpiRegion::known_false;
    int trials = 0;
    double max_violation = 0.0;
    std::uint64_t worst_seed = 0;
};

struct DpiReport {
    std::vector<DpiPoint> points;
    int dim = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string rng_version;
};

// Violation tolerance for proven-region points; looser than the arithmetic
// tolerance because each trial compounds two divergence evaluations and a
// channel application.
inline constexpr double kDpiTolerance = 1e-8;

// `trials` random triples per grid point; trial streams derive from
// (seed, point, trial) so the report is independent of the thread count.
DpiReport dpi_scan(const std::vector<double>& alpha_grid, const std::vector<double>& z_grid,
                   int dim, int trials, std::uint64_t seed, int jobs = 0);

} // namespace azr::channels

#endif
