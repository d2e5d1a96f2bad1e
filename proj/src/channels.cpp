#include "azr/channels.hpp"

#include <algorithm>
#include <cmath>

#include "azr/parallel.hpp"

namespace azr::channels {

double KrausChannel::completeness_residual() const {
    if (kraus_ops.empty()) return 0.0;
    const Eigen::Index din = kraus_ops[0].cols();
    CMat acc = CMat::Zero(din, din);
    for (const auto& k : kraus_ops) acc += k.adjoint() * k;
    return (acc - CMat::Identity(din, din)).norm();
}

void require_trace_preserving(const KrausChannel& ch, double tol) {
    if (ch.kraus_ops.empty()) throw Error("channel has no Kraus operators");
    for (const auto& k : ch.kraus_ops)
        if (k.rows() != ch.kraus_ops[0].rows() || k.cols() != ch.kraus_ops[0].cols())
            throw DimensionMismatch("Kraus operators have inconsistent shapes");
    if (ch.completeness_residual() > tol)
        throw Error("channel is not trace preserving within tolerance");
}

CMat apply(const KrausChannel& ch, const CMat& x) {
    if (ch.kraus_ops.empty()) throw Error("channel has no Kraus operators");
    if (x.rows() != ch.dim_in() || x.cols() != ch.dim_in())
        throw DimensionMismatch("apply: input dimension does not match the channel");
    CMat out = CMat::Zero(ch.dim_out(), ch.dim_out());
    for (const auto& k : ch.kraus_ops) out += k * x * k.adjoint();
    return out;
}

KrausChannel random_channel(int d_in, int d_out, int kraus_count, states::Rng& rng) {
    if (d_in < 1 || d_out < 1 || kraus_count < 1)
        throw std::invalid_argument("random_channel: dimensions and kraus_count must be >= 1");
    const int big = d_out * kraus_count;
    if (big < d_in)
        throw std::invalid_argument("random_channel: d_out * kraus_count must be >= d_in");
    const CMat u = states::random_unitary(big, rng);
    const CMat isometry = u.leftCols(d_in);
    KrausChannel ch;
    ch.kraus_ops.reserve(kraus_count);
    for (int k = 0; k < kraus_count; ++k)
        ch.kraus_ops.push_back(isometry.middleRows(k * d_out, d_out));
    return ch;
}

KrausChannel random_channel(int d_in, int d_out, int kraus_count, std::uint64_t seed) {
    states::Rng rng(seed);
    return random_channel(d_in, d_out, kraus_count, rng);
}

double dpi_check(const CMat& rho, const CMat& sigma, const KrausChannel& ch,
                 const divergence::DivergenceParams& params) {
    const double before = divergence::d_alpha_z(rho, sigma, params);
    const double after = divergence::d_alpha_z(apply(ch, rho), apply(ch, sigma), params);
    return after - before;
}

const char* to_string(DpiRegion r) {
    switch (r) {
        case DpiRegion::proven: return "proven";
        case DpiRegion::conjectured: return "conjectured";
        default: return "known-false";
    }
}

DpiRegion classify_dpi_region(double alpha, double z) {
    const double az = std::abs(z); // D is even in z
    const double tol = 1e-12;
    const bool hiai = alpha > 0.0 && alpha <= 1.0 + tol &&
                      az >= std::max(alpha, 1.0 - alpha) - tol;
    const bool ando = alpha >= 1.0 - tol && alpha <= 2.0 + tol && std::abs(az - 1.0) <= tol;
    const bool sandwiched = alpha >= 1.0 - tol && std::abs(az - alpha) <= tol;
    if (hiai || ando || sandwiched) return DpiRegion::proven;
    if (az > tol) {
        const double p = alpha / az;
        const double q = (1.0 - alpha) / az;
        if (p >= 1.0 - tol && p <= 2.0 + tol && q >= -1.0 - tol && q < 0.0)
            return DpiRegion::conjectured;
    }
    return DpiRegion::known_false;
}

DpiTrial make_dpi_trial(int dim, std::uint64_t trial_seed) {
    states::Rng rng(trial_seed);
    DpiTrial t;
    t.rho = states::random_density(dim, dim, rng);
    t.sigma = states::random_density(dim, dim, rng);
    const int kraus_count = 2 + static_cast<int>(rng.raw() % 3);
    t.channel = random_channel(dim, dim, kraus_count, rng);
    return t;
}

DpiReport dpi_scan(const std::vector<double>& alpha_grid, const std::vector<double>& z_grid,
                   int dim, int trials, std::uint64_t seed, int jobs) {
    std::vector<DpiPoint> points;
    for (double a : alpha_grid)
        for (double z : z_grid)
            points.push_back({a, z, classify_dpi_region(a, z), trials, 0.0, 0});

    const std::size_t n = points.size() * static_cast<std::size_t>(trials);
    struct TrialOut {
        double violation;
        std::uint64_t seed;
    };
    auto run = [&](std::size_t i) -> TrialOut {
        const std::size_t pi = i / trials;
        const std::size_t ti = i % trials;
        const std::uint64_t ts = states::derive_seed(states::derive_seed(seed, pi), ti);
        const DpiTrial t = make_dpi_trial(dim, ts);
        const divergence::DivergenceParams params{points[pi].alpha, points[pi].z};
        return {dpi_check(t.rho, t.sigma, t.channel, params), ts};
    };
    const auto outs = par::map_indexed<TrialOut>(n, run, jobs);

    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        DpiPoint& pt = points[pi];
        pt.max_violation = -std::numeric_limits<double>::infinity();
        for (int ti = 0; ti < trials; ++ti) {
            const TrialOut& o = outs[pi * trials + ti];
            if (o.violation > pt.max_violation) {
                pt.max_violation = o.violation;
                pt.worst_seed = o.seed;
            }
        }
    }

    DpiReport report;
    report.points = std::move(points);
    report.dim = dim;
    report.trials = trials;
    report.seed = seed;
    report.rng_version = states::kRngVersion;
    return report;
}

} // namespace azr::channels
