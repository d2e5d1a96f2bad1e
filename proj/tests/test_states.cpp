#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "azr/matkit.hpp"
#include "azr/states.hpp"

using namespace azr;

TEST_CASE("rng streams are deterministic and independent of each other") {
    states::Rng a = states::Rng::stream(42, 3);
    states::Rng b = states::Rng::stream(42, 3);
    states::Rng c = states::Rng::stream(42, 4);
    bool same = true, differ = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.raw();
        same = same && (x == b.raw());
        differ = differ || (x != c.raw());
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("random_unitary: unitarity and the dim-1 case") {
    CHECK(std::abs(std::abs(states::random_unitary(1, 9u)(0, 0)) - 1.0) < 1e-12);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const int dim = 2 + static_cast<int>(s % 4);
        const CMat u = states::random_unitary(dim, 100 + s);
        CHECK((u.adjoint() * u - CMat::Identity(dim, dim)).norm() < 1e-12);
    }
}

TEST_CASE("random_unitary: Haar first moment at dim 2") {
    // |U_00|^2 is uniform on [0,1] for Haar at dim 2: mean 1/2, var 1/12.
    const int n = 10000;
    states::Rng rng(2024);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const CMat u = states::random_unitary(2, rng);
        acc += std::norm(u(0, 0));
    }
    const double mean = acc / n;
    const double se = std::sqrt(1.0 / 12.0 / n);
    CHECK(std::abs(mean - 0.5) < 3.0 * se);
}

TEST_CASE("random_density: trace, rank, determinism") {
    CHECK(states::random_density({1, 1, 5})(0, 0).real() == doctest::Approx(1.0));

    const CMat pure = states::random_density({3, 1, 6});
    auto sd = matkit::spectral_decompose(pure);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(sd.eigenvalues[1]) < 1e-12);

    const CMat r2 = states::random_density({4, 2, 7});
    CHECK(matkit::support_projector(r2).trace().real() == doctest::Approx(2.0).epsilon(1e-9));
    states::require_density(r2);

    const CMat again = states::random_density({4, 2, 7});
    CHECK((again - r2).norm() == 0.0);
}

TEST_CASE("random_density: distribution invariant under a Haar twirl (first moment)") {
    const int n = 4000;
    states::Rng rng(55);
    double plain = 0.0, twirled = 0.0;
    for (int i = 0; i < n; ++i) {
        const CMat rho = states::random_density(3, 3, rng);
        const CMat u = states::random_unitary(3, rng);
        plain += rho(0, 0).real();
        twirled += (u * rho * u.adjoint())(0, 0).real();
    }
    plain /= n;
    twirled /= n;
    // Both estimate 1/3; allow 3 standard errors with a generous variance cap.
    const double se = std::sqrt(0.25 / n);
    CHECK(std::abs(plain - twirled) < 6.0 * se);
}

TEST_CASE("fidelity") {
    states::Rng rng(8);
    const CMat rho = states::random_density(3, 3, rng);
    CHECK(states::fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

    CMat ket0 = CMat::Zero(2, 2);
    ket0(0, 0) = 1.0;
    const CMat half = 0.5 * CMat::Identity(2, 2);
    CHECK(states::fidelity(ket0, half) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    CMat ket1 = CMat::Zero(2, 2);
    ket1(1, 1) = 1.0;
    CHECK(states::fidelity(ket0, ket1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fidelity is symmetric") {
    states::Rng rng(9);
    for (int i = 0; i < 10; ++i) {
        const CMat a = states::random_density(4, 4, rng);
        const CMat b = states::random_density(4, 3, rng);
        CHECK(std::abs(states::fidelity(a, b) - states::fidelity(b, a)) < 1e-12);
    }
}

TEST_CASE("commutes") {
    CHECK(states::commutes(CMat(RVec::LinSpaced(3, 1, 3).cast<Cplx>().asDiagonal()),
                           CMat(RVec::LinSpaced(3, 4, 6).cast<Cplx>().asDiagonal())));
    CMat x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    CHECK_FALSE(states::commutes(x, z));

    // A commutes with any polynomial of A.
    states::Rng rng(12);
    const CMat a = states::random_hermitian(4, rng);
    const CMat p = 2.0 * a * a * a - a + 3.0 * CMat::Identity(4, 4);
    CHECK(states::commutes(a, p));
}
