#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "azr/divergence.hpp"
#include "azr/limits.hpp"
#include "azr/states.hpp"

using namespace azr;
using divergence::DivergenceParams;
using divergence::Form;

namespace {

CMat cdiag(std::initializer_list<double> xs) {
    RVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v.cast<Cplx>().asDiagonal();
}

const CMat kKet0 = cdiag({1, 0});
const CMat kHalfI2 = cdiag({0.5, 0.5});

} // namespace

TEST_CASE("trace functional at rho = sigma equals tr rho") {
    states::Rng rng(1);
    const CMat rho = states::random_density(3, 3, rng);
    for (auto [al, zz] : {std::pair{0.5, 0.8}, {2.0, 1.0}, {3.0, -1.5}, {0.25, 0.25}}) {
        CHECK(divergence::trace_functional(rho, rho, {al, zz}) ==
              doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("commuting pair reproduces the classical formula") {
    const CMat rho = cdiag({0.5, 0.5});
    const CMat sigma = cdiag({1.0 / 3.0, 2.0 / 3.0});
    CHECK(divergence::trace_functional(rho, sigma, {2.0, 1.0}) ==
          doctest::Approx(9.0 / 8.0).epsilon(1e-13));
    CHECK(divergence::d_alpha_z(rho, sigma, {2.0, 1.0}) ==
          doctest::Approx(std::log2(9.0 / 8.0)).epsilon(1e-12));
}

TEST_CASE("three evaluation forms agree on non-commuting pairs") {
    states::Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        const CMat rho = states::random_density(4, 4, rng);
        const CMat sigma = states::random_density(4, 4, rng);
        for (auto [al, zz] : {std::pair{0.3, 0.7}, {2.0, 1.0}, {1.5, 1.2}, {0.6, -0.8}}) {
            const DivergenceParams prm{al, zz};
            const double f1 = divergence::trace_functional(rho, sigma, prm, Form::product);
            const double f2 = divergence::trace_functional(rho, sigma, prm, Form::rho_sandwich);
            const double f3 = divergence::trace_functional(rho, sigma, prm, Form::sigma_sandwich);
            CHECK(std::abs(f1 - f3) <= 1e-11 * std::max(1.0, f3));
            CHECK(std::abs(f2 - f3) <= 1e-11 * std::max(1.0, f3));
        }
    }
}

TEST_CASE("f_pq basics") {
    states::Rng rng(3);
    const CMat a = states::random_psd(3, 3, rng);
    const CMat id = CMat::Identity(3, 3);

    // K = I with p + q = 1 collapses to the trace.
    CHECK(divergence::f_pq(a, id, 0.3, 0.7) ==
          doctest::Approx(a.trace().real()).epsilon(1e-11));

    CMat k(3, 3);
    for (Eigen::Index j = 0; j < 3; ++j)
        for (Eigen::Index i = 0; i < 3; ++i) k(i, j) = rng.cgaussian();
    const double f = divergence::f_pq(a, k, 0.4, 0.8);
    const double fc = divergence::f_pq(2.5 * a, k, 0.4, 0.8);
    CHECK(fc == doctest::Approx(2.5 * f).epsilon(1e-11));

    CHECK_THROWS_AS(divergence::f_pq(a, k, 0.5, -0.5), DegenerateExponent);
}

TEST_CASE("f_pq block construction reproduces the two-state functional") {
    states::Rng rng(4);
    const CMat rho = states::random_density(3, 3, rng);
    const CMat sigma = states::random_density(3, 3, rng);
    for (auto [al, zz] : {std::pair{0.5, 0.8}, {1.6, 1.1}}) {
        const double p = al / zz, q = (1.0 - al) / zz;
        CMat k = CMat::Zero(6, 6);
        k.topRightCorner(3, 3) = CMat::Identity(3, 3);
        const CMat a = matkit::direct_sum(rho, sigma);
        const double via_block = divergence::f_pq(a, k, p, q);
        const double direct = divergence::trace_functional(rho, sigma, {al, zz});
        CHECK(via_block == doctest::Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("d_alpha_z vanishes on identical arguments and normalizes to one bit") {
    states::Rng rng(5);
    const CMat rho = states::random_density(3, 3, rng);
    CHECK(std::abs(divergence::d_alpha_z(rho, rho, {1.7, 0.9})) < 1e-11);

    const CMat id = CMat::Identity(2, 2);
    for (double al : {0.25, 0.5, 2.0, 3.0})
        for (double zz : {0.25, 1.0, 3.0})
            CHECK(divergence::d_alpha_z(id, 0.5 * id, {al, zz}) ==
                  doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("relative entropy, d_min, d_max on the qubit example") {
    CHECK(std::abs(divergence::relative_entropy(kKet0, kKet0)) < 1e-12);
    CHECK(std::abs(divergence::d_min(kKet0, kKet0)) < 1e-10);
    CHECK(std::abs(divergence::d_max(kKet0, kKet0)) < 1e-10);

    CHECK(divergence::relative_entropy(kKet0, kHalfI2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(divergence::d_min(kKet0, kHalfI2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(divergence::d_max(kKet0, kHalfI2) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("d_min equals the (1/2,1/2) point of the family") {
    states::Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        const CMat rho = states::random_density(3, 3, rng);
        const CMat sigma = states::random_density(3, 3, rng);
        CHECK(std::abs(divergence::d_min(rho, sigma) -
                       divergence::d_alpha_z(rho, sigma, {0.5, 0.5})) < 1e-10);
    }
}

TEST_CASE("named slices: qrd, reverse qrd and their symmetry") {
    states::Rng rng(7);
    const CMat rho = states::random_density(3, 3, rng);
    const CMat sigma = states::random_density(3, 3, rng);

    CHECK(std::abs(divergence::qrd(rho, sigma, 0.5) - divergence::d_min(rho, sigma)) < 1e-10);

    // alpha = 0 of the reverse-sandwiched slice: -log2 tr(Pi_rho sigma).
    const CMat low = states::random_density(3, 2, rng);
    const CMat proj = matkit::support_projector(low);
    const double expected = -std::log2((proj * sigma).trace().real());
    CHECK(divergence::reverse_qrd(low, sigma, 0.0) == doctest::Approx(expected).epsilon(1e-10));

    // (alpha-1) revQRD_alpha(rho||sigma) = -alpha QRD_{1-alpha}(sigma||rho)
    const double al = 0.3;
    const double lhs = (al - 1.0) * divergence::reverse_qrd(rho, sigma, al);
    const double rhs = -al * divergence::qrd(sigma, rho, 1.0 - al);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("d_z_infinity") {
    // Commuting inputs: all z dependence vanishes.
    const CMat rho = cdiag({0.2, 0.8});
    const CMat sigma = cdiag({0.6, 0.4});
    RVec p(2), q(2);
    p << 0.2, 0.8;
    q << 0.6, 0.4;
    for (double al : {0.4, 1.7}) {
        CHECK(divergence::d_z_infinity(rho, sigma, al) ==
              doctest::Approx(divergence::classical_renyi(p, q, al)).epsilon(1e-11));
    }

    states::Rng rng(8);
    const CMat r3 = states::random_density(3, 3, rng);
    const CMat s3 = states::random_density(3, 3, rng);
    CHECK(divergence::d_z_infinity(r3, s3, 1.0) ==
          doctest::Approx(divergence::relative_entropy(r3, s3)).epsilon(1e-12));
    for (double al : {0.7, 1.8}) {
        CHECK(std::abs(divergence::d_z_infinity(r3, s3, al) -
                       divergence::d_alpha_z(r3, s3, {al, 1000.0})) < 1e-2);
    }

    const CMat rank_def = states::random_density(3, 2, rng);
    CHECK_THROWS_AS(divergence::d_z_infinity(rank_def, s3, 0.5), SupportViolation);
}

TEST_CASE("classical_renyi") {
    RVec p(3), q(3);
    p << 0.2, 0.3, 0.5;
    q << 0.2, 0.3, 0.5;
    CHECK(std::abs(divergence::classical_renyi(p, q, 1.7)) < 1e-12);

    RVec p2(2), q2(2);
    p2 << 0.5, 0.5;
    q2 << 1.0 / 3.0, 2.0 / 3.0;
    CHECK(divergence::classical_renyi(p2, q2, 2.0) ==
          doctest::Approx(std::log2(9.0 / 8.0)).epsilon(1e-13));

    RVec bad(2);
    bad << 1.0, 0.0;
    RVec qq(2);
    qq << 0.0, 1.0;
    CHECK_THROWS_AS(divergence::classical_renyi(bad, qq, 2.0), SupportViolation);
}

TEST_CASE("commuting reduction matches classical_renyi to 1e-12") {
    states::Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng.raw() % 4);
        RVec p(dim), q(dim);
        double sp = 0, sq = 0;
        for (int i = 0; i < dim; ++i) {
            p[i] = 0.1 + rng.uniform();
            q[i] = 0.1 + rng.uniform();
            sp += p[i];
            sq += q[i];
        }
        p /= sp;
        q /= sq;
        const CMat rho = p.cast<Cplx>().asDiagonal();
        const CMat sigma = q.cast<Cplx>().asDiagonal();
        for (auto [al, zz] :
             {std::pair{0.3, 0.7}, {0.5, 0.5}, {2.0, 1.0}, {1.5, 1.5}, {2.5, 0.8}}) {
            CHECK(std::abs(divergence::d_alpha_z(rho, sigma, {al, zz}) -
                           divergence::classical_renyi(p, q, al)) < 1e-12);
        }
    }
}

TEST_CASE("evenness in z") {
    states::Rng rng(10);
    for (int i = 0; i < 10; ++i) {
        const CMat rho = states::random_density(4, 4, rng);
        const CMat sigma = states::random_density(4, 4, rng);
        for (auto [al, zz] : {std::pair{0.4, 0.9}, {1.8, 1.3}})
            CHECK(std::abs(divergence::d_alpha_z(rho, sigma, {al, zz}) -
                           divergence::d_alpha_z(rho, sigma, {al, -zz})) < 1e-10);
    }
}

TEST_CASE("skew symmetry across alpha -> 1 - alpha") {
    states::Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        const CMat rho = states::random_density(3, 3, rng);
        const CMat sigma = states::random_density(3, 3, rng);
        for (double al : {0.25, 0.75, 1.5}) {
            const double z = 0.9;
            const double lhs = (al - 1.0) * divergence::d_alpha_z(rho, sigma, {al, z});
            const double rhs = -al * divergence::d_alpha_z(sigma, rho, {1.0 - al, z});
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("unitary invariance, additivity, direct-sum identity") {
    states::Rng rng(12);
    const CMat rho = states::random_density(3, 3, rng);
    const CMat sigma = states::random_density(3, 3, rng);
    const CMat tau = states::random_density(2, 2, rng);
    const CMat omega = states::random_density(2, 2, rng);
    const DivergenceParams prm{1.4, 1.1};

    const CMat u = states::random_unitary(3, rng);
    CHECK(std::abs(divergence::d_alpha_z(u * rho * u.adjoint(), u * sigma * u.adjoint(), prm) -
                   divergence::d_alpha_z(rho, sigma, prm)) < 1e-10);

    CHECK(std::abs(divergence::d_alpha_z(matkit::tensor_product(rho, tau),
                                         matkit::tensor_product(sigma, omega), prm) -
                   divergence::d_alpha_z(rho, sigma, prm) -
                   divergence::d_alpha_z(tau, omega, prm)) < 1e-9);

    const double fsum = divergence::trace_functional(matkit::direct_sum(rho, tau),
                                                     matkit::direct_sum(sigma, omega), prm);
    CHECK(std::abs(fsum - divergence::trace_functional(rho, sigma, prm) -
                   divergence::trace_functional(tau, omega, prm)) < 1e-10);
}

TEST_CASE("order axiom inside z >= |alpha - 1|") {
    states::Rng rng(13);
    for (int i = 0; i < 10; ++i) {
        const CMat small = states::random_psd(3, 3, rng);
        const CMat big = small + states::random_psd(3, 3, rng);
        const double scale = 1.0 / big.trace().real();
        const CMat b = scale * big, s = scale * small;
        // rho >= sigma with alpha > 1 gives D >= 0 (boundary z = alpha - 1 included)
        for (auto [al, zz] : {std::pair{1.5, 0.5}, {2.0, 1.0}, {1.5, 2.0}})
            CHECK(divergence::d_alpha_z(b, s, {al, zz}) >= -1e-9);
        // rho <= sigma with 0 < alpha < 1 gives D <= 0
        for (auto [al, zz] : {std::pair{0.5, 0.5}, {0.3, 0.7}, {0.5, 1.5}})
            CHECK(divergence::d_alpha_z(s, b, {al, zz}) <= 1e-9);
    }
}

TEST_CASE("support violations and parameter dispatch") {
    const CMat rho = cdiag({0, 0, 1});
    const CMat sigma = cdiag({0.5, 0.5, 0});
    CHECK_THROWS_AS(divergence::d_alpha_z(rho, sigma, {2.0, 1.0}), SupportViolation);

    states::Rng rng(14);
    const CMat a = states::random_density(3, 3, rng);
    const CMat b = states::random_density(3, 3, rng);
    CHECK_THROWS_AS(divergence::trace_functional(a, b, {0.5, 0.0}), ZeroZ);
    CHECK_THROWS_AS(divergence::d_alpha_z(a, b, {0.5, 0.0}), Unsupported);
    CHECK_THROWS_AS(divergence::d_alpha_z(a, b, {1.0, 0.0}), Unsupported);

    // alpha -> 1 at fixed z falls back to the relative entropy.
    CHECK(divergence::d_alpha_z(a, b, {1.0, 1.0}) ==
          doctest::Approx(divergence::relative_entropy(a, b)).epsilon(1e-9));
}
