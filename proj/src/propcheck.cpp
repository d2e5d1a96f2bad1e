#include "azr/propcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "azr/divergence.hpp"
#include "azr/parallel.hpp"

namespace azr::propcheck {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::uint64_t fnv1a(const unsigned char* data, std::size_t n, std::uint64_t h) {
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string digest_of(std::initializer_list<const CMat*> mats) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const CMat* m : mats)
        h = fnv1a(reinterpret_cast<const unsigned char*>(m->data()),
                  sizeof(Cplx) * static_cast<std::size_t>(m->size()), h);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct TrialFinding {
    bool failed = false;
    Failure failure;
};

// Shared reduction: run `trials` independent streams, keep failures in
// trial order.
template <typename F>
SuiteResult run_suite(std::string name, int trials, std::uint64_t seed, double tolerance,
                      int jobs, F trial_fn) {
    SuiteResult out;
    out.suite_name = std::move(name);
    out.tolerance = tolerance;
    out.cases_run = trials;
    auto findings = par::map_indexed<std::vector<TrialFinding>>(
        static_cast<std::size_t>(trials),
        [&](std::size_t i) {
            const std::uint64_t ts = states::derive_seed(seed, i);
            states::Rng rng(ts);
            return trial_fn(rng, ts);
        },
        jobs);
    for (auto& fs : findings)
        for (auto& f : fs)
            if (f.failed) out.failures.push_back(std::move(f.failure));
    return out;
}

// Positive definite draw with a bounded condition number so the midpoint
// tests stay clear of rounding artefacts.
CMat random_pd(int dim, states::Rng& rng) {
    CMat a = states::random_psd(dim, dim, rng);
    const double ridge = 0.05 * a.trace().real() / dim;
    a += ridge * CMat::Identity(dim, dim);
    return a * ((0.5 + 1.5 * rng.uniform()) / a.trace().real());
}

CMat random_contraction_of(const CMat& p, states::Rng& rng) {
    // H = P^{1/2} S P^{1/2} with ||S|| < 1, so -P < H < P.
    CMat s = states::random_hermitian(static_cast<int>(p.rows()), rng);
    const double snorm = s.operatorNorm();
    if (snorm > 0.0) s *= (0.05 + 0.9 * rng.uniform()) / snorm;
    const CMat root = matkit::matrix_power_spectral(p, 0.5);
    return root * s * root;
}

} // namespace

PqRegion classify_pq_region(double p, double q) {
    const double tol = 1e-12;
    if (p > tol && p <= 1.0 + tol && q > tol && q <= 1.0 + tol)
        return PqRegion::concave_proven;
    const bool ando = std::abs(p + q - 1.0) <= tol &&
                      ((p >= 1.0 - tol && p <= 2.0 + tol) || (q >= 1.0 - tol && q <= 2.0 + tol));
    const bool sandwiched = (std::abs(p - 1.0) <= tol && q > -1.0 + tol && q < -tol) ||
                            (std::abs(q - 1.0) <= tol && p > -1.0 + tol && p < -tol);
    if (ando || sandwiched) return PqRegion::convex_proven;
    const bool cell = (p >= -1.0 - tol && p < -tol && q >= 1.0 - tol && q <= 2.0 + tol) ||
                      (q >= -1.0 - tol && q < -tol && p >= 1.0 - tol && p <= 2.0 + tol);
    if (cell) return PqRegion::convex_conjectured;
    return PqRegion::none;
}

namespace {

SuiteResult midpoint_suite(const char* name, bool convex, double p, double q, int dim,
                           int trials, std::uint64_t seed, int jobs, bool random_lambda) {
    const double tol = 1e-9;
    auto trial = [&, p, q, dim](states::Rng& rng, std::uint64_t ts) {
        std::vector<TrialFinding> out(1);
        const CMat a1 = random_pd(dim, rng);
        const CMat a2 = random_pd(dim, rng);
        CMat k(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j)
            for (Eigen::Index i = 0; i < dim; ++i) k(i, j) = rng.cgaussian();
        k /= k.norm();
        const double lambda = random_lambda ? 0.1 + 0.8 * rng.uniform() : 0.5;

        const double f1 = divergence::f_pq(a1, k, p, q);
        const double f2 = divergence::f_pq(a2, k, p, q);
        const CMat mid = lambda * a1 + (1.0 - lambda) * a2;
        const double fm = divergence::f_pq(mid, k, p, q);
        const double chord = lambda * f1 + (1.0 - lambda) * f2;
        // concave wants fm >= chord, convex wants fm <= chord.
        const double v = convex ? fm - chord : chord - fm;
        if (v > tol) {
            out[0].failed = true;
            out[0].failure = {digest_of({&a1, &a2, &k}), ts, v, convex ? "convexity" : "concavity"};
        }
        return out;
    };
    return run_suite(name, trials, seed, tol, jobs, trial);
}

} // namespace

SuiteResult concavity_suite(double p, double q, int dim, int trials, std::uint64_t seed,
                            int jobs, bool random_lambda) {
    SuiteResult r = midpoint_suite("concavity", false, p, q, dim, trials, seed, jobs, random_lambda);
    if (classify_pq_region(p, q) != PqRegion::concave_proven) {
        r.warning = true;
        r.note = "(p,q) outside the proven concavity square";
    }
    return r;
}

SuiteResult convexity_conjecture_suite(double p, double q, int dim, int trials,
                                       std::uint64_t seed, int jobs, bool random_lambda) {
    SuiteResult r = midpoint_suite("convexity-conjecture", true, p, q, dim, trials, seed, jobs,
                                   random_lambda);
    const PqRegion region = classify_pq_region(p, q);
    r.conjecture_mode = region == PqRegion::convex_conjectured;
    if (region == PqRegion::convex_conjectured) {
        r.note = "conjectured cell: findings are potential counterexamples, not failures";
    } else if (region != PqRegion::convex_proven) {
        r.warning = true;
        r.note = "(p,q) outside the conjectured convexity cells";
    }
    return r;
}

ApproxLemmaSample approximation_lemma_sample(const CMat& a, const CMat& b, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("approximation_lemma_sample: alpha must be in (0,1)");
    auto sd = matkit::spectral_decompose(a);
    const RVec mu = matkit::clamp_psd_eigenvalues(sd.eigenvalues, -1.0);
    if (mu.size() < 2 || mu[0] - mu[1] <= 1e-8 * mu[0])
        throw DegenerateTopEigenvalue("approximation_lemma_sample: mu_1 - mu_2 too small");

    const double beta = alpha / (2.0 * (1.0 - alpha));
    const CMat b_in_a = sd.eigenvectors.adjoint() * b * sd.eigenvectors;
    const double b11 = b_in_a(0, 0).real();
    auto sd_b = matkit::spectral_decompose(b);
    const double b_top = sd_b.eigenvalues[0];

    RVec mu_beta(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        mu_beta[i] = (mu[i] > 0.0) ? std::pow(mu[i], beta) : 0.0;
    const CMat core = mu_beta.asDiagonal() * b_in_a * mu_beta.asDiagonal();
    auto sd_core = matkit::spectral_decompose(0.5 * (core + core.adjoint()));

    ApproxLemmaSample s;
    s.lambda1 = sd_core.eigenvalues[0];
    s.leading = std::pow(mu[0], 2.0 * beta) * b11;
    s.gap_power = std::pow(mu[1] / mu[0], 2.0 * beta);
    s.c_bound = b_top / b11;
    // Below ~100 eps the correction term drowns in the rounding of
    // lambda_1 itself and the quotient c is meaningless.
    s.resolvable = s.gap_power > 100.0 * kEps;
    s.c = s.resolvable ? (s.lambda1 / s.leading - 1.0) / s.gap_power : 0.0;
    return s;
}

SuiteResult approximation_lemma_suite(int dim, int trials, std::uint64_t seed,
                                      const std::vector<double>& alpha_list, int jobs) {
    const double tol = 1e-7;
    auto trial = [&, dim](states::Rng& rng, std::uint64_t ts) {
        std::vector<TrialFinding> out;
        // Spectrum with a guaranteed top gap.
        RVec mu(dim);
        for (int i = 0; i < dim; ++i) mu[i] = 0.3 + 0.7 * rng.uniform();
        std::sort(mu.data(), mu.data() + dim, std::greater<>());
        mu[0] = std::max(mu[0], mu[1] + 0.05);
        const CMat u = states::random_unitary(dim, rng);
        const CMat a = u * mu.asDiagonal() * u.adjoint();
        const CMat b = random_pd(dim, rng);

        for (double alpha : alpha_list) {
            const ApproxLemmaSample s = approximation_lemma_sample(a, b, alpha);
            TrialFinding f;
            if (s.resolvable) {
                const double slack = tol * std::max(1.0, s.c_bound);
                if (s.c < -slack || s.c > s.c_bound + slack) {
                    f.failed = true;
                    f.failure = {digest_of({&a, &b}), ts,
                                 std::max(-s.c, s.c - s.c_bound), "bracket-constant"};
                }
            } else {
                // Correction below float resolution: check the bracket
                // directly with an epsilon floor.
                const double allowed = s.leading * (s.c_bound * s.gap_power + 1e3 * kEps);
                const double dev = std::abs(s.lambda1 - s.leading);
                if (dev > allowed) {
                    f.failed = true;
                    f.failure = {digest_of({&a, &b}), ts, dev - allowed, "bracket-floor"};
                }
            }
            out.push_back(std::move(f));
        }
        return out;
    };
    SuiteResult r = run_suite("approximation-lemma", trials, seed, tol, jobs, trial);
    r.cases_run = trials * static_cast<int>(alpha_list.size());
    return r;
}

void validate_segment(const ComplexSegment& seg) {
    if (!(seg.alpha_angle < seg.beta_angle))
        throw std::invalid_argument("segment: alpha_angle must be < beta_angle");
    if (seg.alpha_angle < -std::numbers::pi - 1e-12 || seg.beta_angle > std::numbers::pi + 1e-12)
        throw std::invalid_argument("segment: angles must lie in [-pi, pi]");
    if (seg.width() > std::numbers::pi + 1e-12)
        throw std::invalid_argument("segment: only convex segments (width <= pi) are defined");
}

bool in_segment(const CMat& c, const ComplexSegment& seg, double margin) {
    validate_segment(seg);
    const auto rotated_im_min = [&](double angle) {
        const CMat r = std::polar(1.0, -angle) * c;
        const CMat im = (r - r.adjoint()) / Cplx(0.0, 2.0);
        auto sd = matkit::spectral_decompose(im);
        return sd.eigenvalues.minCoeff();
    };
    const auto rotated_im_max = [&](double angle) {
        const CMat r = std::polar(1.0, -angle) * c;
        const CMat im = (r - r.adjoint()) / Cplx(0.0, 2.0);
        auto sd = matkit::spectral_decompose(im);
        return sd.eigenvalues.maxCoeff();
    };
    return rotated_im_min(seg.alpha_angle) > margin && rotated_im_max(seg.beta_angle) < -margin;
}

CMat random_segment_matrix(const ComplexSegment& seg, int dim, states::Rng& rng) {
    validate_segment(seg);
    const double w = seg.width();
    const double mid = 0.5 * (seg.alpha_angle + seg.beta_angle);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const CMat p = random_pd(dim, rng);
        CMat c;
        if (w > std::numbers::pi - 1e-9) {
            // Half plane: any Hermitian real part works.
            const CMat x = states::random_hermitian(dim, rng);
            c = std::polar(1.0, seg.alpha_angle) * (x + Cplx(0.0, 1.0) * p);
        } else {
            const CMat h = random_contraction_of(p, rng);
            c = std::polar(1.0, mid) *
                (std::cos(0.5 * w) * p + Cplx(0.0, 1.0) * std::sin(0.5 * w) * h);
        }
        if (in_segment(c, seg, 0.0)) return c;
    }
    throw Error("random_segment_matrix: sampling failed");
}

SuiteResult segment_spectrum_suite(const ComplexSegment& seg1, const ComplexSegment& seg2,
                                   int dim, int trials, std::uint64_t seed, int jobs) {
    validate_segment(seg1);
    validate_segment(seg2);
    const double lo = seg1.alpha_angle + seg2.alpha_angle;
    const double hi = seg1.beta_angle + seg2.beta_angle;
    if (lo < -std::numbers::pi - 1e-12 || hi > std::numbers::pi + 1e-12)
        throw InvalidSegmentSum("segment_spectrum_suite: summed angles leave [-pi, pi]");

    const double tol = 1e-9;
    auto trial = [&, dim](states::Rng& rng, std::uint64_t ts) {
        std::vector<TrialFinding> out(1);
        const CMat a1 = random_segment_matrix(seg1, dim, rng);
        const CMat a2 = random_segment_matrix(seg2, dim, rng);
        Eigen::ComplexEigenSolver<CMat> es(a1 * a2, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) throw Error("segment_spectrum_suite: eigensolver failed");
        double worst = 0.0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            double arg = std::arg(es.eigenvalues()[i]);
            // Wrap into the window around the summed segment.
            if (arg < lo - std::numbers::pi) arg += 2.0 * std::numbers::pi;
            if (arg > hi + std::numbers::pi) arg -= 2.0 * std::numbers::pi;
            worst = std::max(worst, std::max(lo - arg, arg - hi));
        }
        if (worst > tol) {
            out[0].failed = true;
            out[0].failure = {digest_of({&a1, &a2}), ts, worst, "spectrum-argument"};
        }
        return out;
    };
    return run_suite("segment-spectrum", trials, seed, tol, jobs, trial);
}

SuiteResult resolvent_bound_suite(int dim, int trials, std::uint64_t seed,
                                  const std::vector<double>& t_grid, int jobs) {
    const double tol = 1e-10;
    auto trial = [&, dim](states::Rng& rng, std::uint64_t ts) {
        std::vector<TrialFinding> out(1);
        // Normal matrix with spectrum in the open right half plane, the
        // regime in which the two resolvent bounds are stated.
        CVec spec(dim);
        for (int i = 0; i < dim; ++i)
            spec[i] = Cplx(0.2 + 1.8 * rng.uniform(), -2.0 + 4.0 * rng.uniform());
        const CMat u = states::random_unitary(dim, rng);
        const CMat c = u * spec.asDiagonal() * u.adjoint();

        double eps_cut = std::numeric_limits<double>::infinity();
        double gamma = std::numeric_limits<double>::infinity();
        double eta = 0.0;
        for (int i = 0; i < dim; ++i) {
            eps_cut = std::min(eps_cut, std::abs(spec[i])); // Re > 0 here
            gamma = std::min(gamma, spec[i].real());
            eta = std::max(eta, std::abs(spec[i].imag()));
        }

        const CMat id = CMat::Identity(dim, dim);
        double worst = 0.0;
        for (double t : t_grid) {
            const CMat inv = (t * id + c).inverse();
            const CMat neg_im = (inv.adjoint() - inv) / Cplx(0.0, 2.0);
            const double norm = neg_im.operatorNorm();
            worst = std::max(worst, norm - eta / (eps_cut * eps_cut));
            if (t > gamma)
                worst = std::max(worst, norm - eta / ((t - gamma) * (t - gamma)));
        }
        if (worst > tol) {
            out[0].failed = true;
            out[0].failure = {digest_of({&c}), ts, worst, "resolvent-bound"};
        }
        return out;
    };
    return run_suite("resolvent-bounds", trials, seed, tol, jobs, trial);
}

namespace {

// One randomized round of the axiom checks at a given dimension.
std::vector<TrialFinding> axiom_trial(int dim, states::Rng& rng, std::uint64_t ts) {
    using divergence::d_alpha_z;
    using divergence::DivergenceParams;
    std::vector<TrialFinding> out;
    const double tol = 1e-9;
    auto record = [&](const char* check, double violation, const CMat& m1, const CMat& m2) {
        TrialFinding f;
        if (violation > tol) {
            f.failed = true;
            f.failure = {digest_of({&m1, &m2}), ts, violation, check};
        }
        out.push_back(std::move(f));
    };

    const CMat rho = states::random_density(dim, dim, rng);
    const CMat sigma = states::random_density(dim, dim, rng);
    const DivergenceParams base{0.7, 0.9};

    // (I) continuity probe: divided differences stay bounded as eps -> 0.
    {
        const CMat tau = states::random_density(dim, dim, rng);
        const CMat delta = tau - rho;
        const double d0 = d_alpha_z(rho, sigma, base);
        const double slope0 = std::abs(d_alpha_z(rho + 1e-3 * delta, sigma, base) - d0) / 1e-3;
        double worst = 0.0;
        for (double eps : {1e-4, 1e-5}) {
            const double dev = std::abs(d_alpha_z(rho + eps * delta, sigma, base) - d0);
            worst = std::max(worst, dev - (4.0 * slope0 + 1.0) * eps);
        }
        record("continuity", worst, rho, sigma);
    }

    // (II) unitary invariance.
    {
        const CMat u = states::random_unitary(dim, rng);
        double worst = 0.0;
        for (auto [al, zz] : {std::pair{0.5, 0.8}, {2.0, 1.0}, {1.5, 1.5}, {0.3, 0.7}}) {
            const DivergenceParams prm{al, zz};
            worst = std::max(worst,
                             std::abs(d_alpha_z(u * rho * u.adjoint(), u * sigma * u.adjoint(), prm) -
                                      d_alpha_z(rho, sigma, prm)));
        }
        record("unitary-invariance", worst, rho, sigma);
    }

    // (IV) order axiom on and inside the boundary z = |alpha-1|:
    // D >= 0 for rho >= sigma with alpha > 1, D <= 0 for rho <= sigma
    // with 0 < alpha < 1.
    {
        const CMat small = states::random_psd(dim, dim, rng);
        const CMat bump = states::random_psd(dim, dim, rng);
        const CMat big = small + bump;
        const double scale = 1.0 / big.trace().real();
        const CMat big_s = scale * big, small_s = scale * small;
        double worst = 0.0;
        for (auto [al, zz] : {std::pair{1.5, 0.5}, {1.5, 2.0}, {2.0, 1.0}})
            worst = std::max(worst, -d_alpha_z(big_s, small_s, {al, zz}));
        for (auto [al, zz] : {std::pair{0.5, 0.5}, {0.3, 0.7}, {0.5, 1.0}})
            worst = std::max(worst, d_alpha_z(small_s, big_s, {al, zz}));
        record("order-axiom", worst, big_s, small_s);
    }

    // (V) additivity on tensor products.
    {
        const CMat tau = states::random_density(2, 2, rng);
        const CMat omega = states::random_density(2, 2, rng);
        const double lhs = d_alpha_z(matkit::tensor_product(rho, tau),
                                     matkit::tensor_product(sigma, omega), base);
        const double rhs = d_alpha_z(rho, sigma, base) + d_alpha_z(tau, omega, base);
        record("additivity", std::abs(lhs - rhs), rho, tau);
    }

    // (VI) mean value identity on subnormalized direct sums, with the
    // direct-sum additivity of the trace functional it rests on.
    {
        const double c1 = 0.2 + 0.4 * rng.uniform();
        const double c2 = 0.2 + 0.3 * rng.uniform();
        const CMat rho1 = c1 * rho;
        const CMat tau = c2 * states::random_density(2, 2, rng);
        const CMat sig1 = (0.3 + 0.5 * rng.uniform()) * sigma;
        const CMat omega = (0.3 + 0.5 * rng.uniform()) * states::random_density(2, 2, rng);

        const CMat rs = matkit::direct_sum(rho1, tau);
        const CMat ss = matkit::direct_sum(sig1, omega);
        const double fsum = divergence::trace_functional(rs, ss, base);
        const double fparts = divergence::trace_functional(rho1, sig1, base) +
                              divergence::trace_functional(tau, omega, base);
        record("direct-sum-functional", std::abs(fsum - fparts), rho1, tau);

        auto g = [&](double x) { return std::exp2((base.alpha - 1.0) * x); };
        const double t1 = rho1.trace().real(), t2 = tau.trace().real();
        const double lhs = (t1 + t2) * g(d_alpha_z(rs, ss, base));
        const double rhs = t1 * g(d_alpha_z(rho1, sig1, base)) + t2 * g(d_alpha_z(tau, omega, base));
        record("mean-value", std::abs(lhs - rhs), rho1, tau);
    }

    // Evenness in z and the two skew symmetries.
    {
        double worst = 0.0;
        for (auto [al, zz] : {std::pair{0.6, 1.3}, {1.7, 0.8}})
            worst = std::max(worst, std::abs(d_alpha_z(rho, sigma, {al, zz}) -
                                             d_alpha_z(rho, sigma, {al, -zz})));
        record("evenness-in-z", worst, rho, sigma);

        double worst_skew = 0.0;
        for (double al : {0.25, 0.75, 1.5}) {
            const double z = 1.1;
            const double lhs = (al - 1.0) * d_alpha_z(rho, sigma, {al, z});
            const double rhs = -al * d_alpha_z(sigma, rho, {1.0 - al, z});
            worst_skew = std::max(worst_skew, std::abs(lhs - rhs));
        }
        {
            const double al = 0.3;
            const double lhs = (al - 1.0) * divergence::reverse_qrd(rho, sigma, al);
            const double rhs = -al * divergence::qrd(sigma, rho, 1.0 - al);
            worst_skew = std::max(worst_skew, std::abs(lhs - rhs));
        }
        record("skew-symmetry", worst_skew, rho, sigma);
    }

    return out;
}

} // namespace

SuiteResult axiom_suite(const std::vector<int>& dims, int trials, std::uint64_t seed, int jobs) {
    SuiteResult out;
    out.suite_name = "axioms";
    out.tolerance = 1e-9;

    // (III) normalization grid, once per dimension.
    for (int dim : dims) {
        const CMat id = CMat::Identity(dim, dim);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const double al = 0.3 + 0.625 * i;
                const double zz = 0.3 + 0.625 * j;
                const double d = divergence::d_alpha_z(id, 0.5 * id, {al, zz});
                ++out.cases_run;
                if (std::abs(d - 1.0) > 1e-10) {
                    out.failures.push_back({"normalization-grid",
                                            static_cast<std::uint64_t>(i * 5 + j),
                                            std::abs(d - 1.0), "normalization"});
                }
            }
        }
    }

    const std::size_t n = dims.size() * static_cast<std::size_t>(trials);
    auto findings = par::map_indexed<std::vector<TrialFinding>>(
        n,
        [&](std::size_t i) {
            const int dim = dims[i / trials];
            const std::uint64_t ts = states::derive_seed(seed, i);
            states::Rng rng(ts);
            return axiom_trial(dim, rng, ts);
        },
        jobs);
    for (auto& fs : findings) {
        out.cases_run += static_cast<int>(fs.size());
        for (auto& f : fs)
            if (f.failed) out.failures.push_back(std::move(f.failure));
    }
    return out;
}

} // namespace azr::propcheck
