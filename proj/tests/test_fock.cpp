#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

#include "gcs/fock.hpp"
#include "oracles.hpp"

using gcs::Complex;
using gcs::FockSpace;
using gcs::Matrix;
using gcs::Vector;
using Catch::Matchers::WithinAbs;

TEST_CASE("ladder operator entries and the number operator") {
    const FockSpace space{3};
    const Matrix a = gcs::annihilation(space);
    // a|2> = sqrt(2)|1>, a|0> = 0
    CHECK(a(1, 2) == std::sqrt(2.0));
    CHECK(a(0, 1) == 1.0);
    CHECK(a.col(0).norm() == 0.0);

    const Matrix num = gcs::creation(space) * a;
    CHECK(gcs::max_abs(num - gcs::number_operator(space)) <= 1e-13);
    for (int n = 0; n < 3; ++n) CHECK(gcs::number_operator(space)(n, n) == static_cast<double>(n));

    CHECK_THROWS_AS(gcs::annihilation(FockSpace{1}), std::invalid_argument);
}

TEST_CASE("truncated commutator: identity block with corner -(N-1)") {
    // N = 3 by hand: aa* = diag(1,2,0), a*a = diag(0,1,2), [a,a*] = diag(1,1,-2)
    {
        const FockSpace space{3};
        const Matrix a = gcs::annihilation(space);
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        CHECK_THAT(comm(0, 0).real(), WithinAbs(1.0, 1e-14));
        CHECK_THAT(comm(1, 1).real(), WithinAbs(1.0, 1e-14));
        CHECK_THAT(comm(2, 2).real(), WithinAbs(-2.0, 1e-14));
    }
    for (int n : {3, 10, 100}) {
        const FockSpace space{n};
        const Matrix a = gcs::annihilation(space);
        const Matrix comm = a * a.adjoint() - a.adjoint() * a;
        Matrix expected = Matrix::Identity(n, n);
        expected(n - 1, n - 1) = -(n - 1.0);
        CHECK(gcs::max_abs(comm - expected) <= 1e-13);
    }
}

TEST_CASE("position and momentum: hermiticity, commutator, canonical Hamiltonian") {
    const FockSpace space{30};
    const Matrix q = gcs::position(space);
    const Matrix p = gcs::momentum(space);
    CHECK(gcs::is_hermitian(q, 1e-15));
    CHECK(gcs::is_hermitian(p, 1e-15));

    const int blk = space.dim - 1;
    const Matrix qp = (q * p - p * q).topLeftCorner(blk, blk);
    CHECK(gcs::max_abs(qp - Complex(0.0, 1.0) * Matrix::Identity(blk, blk)) <= 1e-13);

    // (p^2 + q^2)/2 = a*a + 1/2 away from the corner
    const Matrix h0 = 0.5 * (p * p + q * q);
    const Matrix ref = gcs::creation(space) * gcs::annihilation(space) +
                       0.5 * Matrix::Identity(space.dim, space.dim);
    CHECK(gcs::max_abs((h0 - ref).topLeftCorner(blk, blk)) <= 1e-13);
}

TEST_CASE("hamiltonian family") {
    const FockSpace space{25};
    const Matrix h0 = gcs::hamiltonian(space, 1.0, 0.0, 0.5);
    for (int n = 0; n < space.dim; ++n) {
        CHECK_THAT(h0(n, n).real(), WithinAbs(n + 0.5, 1e-13));
    }
    CHECK(gcs::max_abs(gcs::hamiltonian(space, 0.0, 0.0, 0.0)) == 0.0);
    CHECK(gcs::is_hermitian(gcs::hamiltonian(space, 0.7, Complex(0.3, -0.4), 0.2), 1e-15));
}

TEST_CASE("Heisenberg flow shrinks quadratically toward the generator prediction") {
    // e^{iHt} a e^{-iHt} = a - it(omega a + f) + O(t^2) away from the corner
    const FockSpace space{40};
    const double omega = 1.0;
    const Complex fpar(0.3, -0.4);
    const Matrix h = gcs::hamiltonian(space, omega, fpar, 0.25);
    const Matrix a = gcs::annihilation(space);
    const int blk = space.dim - 1;

    auto deviation = [&](double t) {
        const Matrix u = gcs::exp_skew_hermitian(Complex(0.0, t) * h);
        const Matrix lhs = u * a * u.adjoint();
        const Matrix approx = a - Complex(0.0, t) * (omega * a + fpar * Matrix::Identity(space.dim, space.dim));
        return gcs::spectral_norm((lhs - approx).topLeftCorner(blk, blk));
    };
    const double d1 = deviation(1e-2);
    const double d2 = deviation(5e-3);
    CHECK(d1 < 1e-3);
    const double ratio = d1 / d2;   // halving t divides an O(t^2) term by ~4
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("displacement operators: identity, unitarity, inverses") {
    const FockSpace space{40};
    CHECK(gcs::max_abs(gcs::displacement(space, 0.0) - Matrix::Identity(40, 40)) <= 1e-14);

    std::mt19937_64 rng(0);
    for (int trial = 0; trial < 5; ++trial) {
        const Complex z = oracles::random_unit_disk(rng, 2.0);
        const Matrix d = gcs::displacement(space, z);
        CHECK(gcs::max_abs(d.adjoint() * d - Matrix::Identity(40, 40)) <= 1e-12);
        CHECK(gcs::max_abs(d * gcs::displacement(space, -z) - Matrix::Identity(40, 40)) <= 1e-10);
        CHECK(gcs::max_abs(d.adjoint() - gcs::displacement(space, -z)) <= 1e-10);
    }
}

TEST_CASE("displacement composition carries the phase exp(i Im(z conj(w)))") {
    const FockSpace space{40};
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 8; ++trial) {
        const Complex z = oracles::random_unit_disk(rng, 1.0);
        const Complex w = oracles::random_unit_disk(rng, 1.0);
        const Complex phase = gcs::displacement_composition_phase(space, z, w);
        const Complex predicted = std::exp(Complex(0.0, std::imag(z * std::conj(w))));
        CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-10);
        CHECK(std::abs(phase - predicted) <= 1e-8);

        // low columns of the product match phase * D(z+w) well inside the truncation
        const Matrix product = gcs::displacement(space, z) * gcs::displacement(space, w);
        const Matrix composite = gcs::displacement(space, z + w);
        const int probe = 8;
        CHECK(gcs::spectral_norm(product.leftCols(probe) - phase * composite.leftCols(probe)) <= 1e-8);
    }
}

TEST_CASE("coherent states: vacuum case, eigenproperty, series agreement, overlap") {
    const FockSpace space{40};
    CHECK((gcs::coherent_state(space, 0.0) - gcs::vacuum(space)).norm() <= 1e-14);

    const Matrix a = gcs::annihilation(space);
    for (double r : {0.5, 1.0, 2.0}) {
        const Complex z = std::polar(r, 0.37);
        const Vector state = gcs::coherent_state(space, z);
        CHECK_THAT(state.norm(), WithinAbs(1.0, 1e-12));
        CHECK((a * state - z * state).norm() <= 1e-8);

        const Vector series = oracles::coherent_series(space.dim, z);
        CHECK((state - series).norm() <= 1e-9);
        CHECK(std::abs(std::norm(state(0)) - std::exp(-r * r)) <= 1e-10);
    }
}

TEST_CASE("weyl elements compose by the R^3 group law") {
    using gcs::WeylElement;
    const WeylElement id{0.0, 0.0};
    const WeylElement g{0.7, Complex(0.4, -0.9)};
    const WeylElement composed = gcs::weyl_compose(id, g);
    CHECK(composed.nu == g.nu);
    CHECK(composed.z == g.z);

    // (0, 1)∘(0, i): nu picks up (x y' - y x')/2 = 1/2
    const WeylElement a{0.0, Complex(1.0, 0.0)};
    const WeylElement b{0.0, Complex(0.0, 1.0)};
    CHECK_THAT(gcs::weyl_compose(a, b).nu, WithinAbs(0.5, 1e-15));

    // g(xi)^-1 = g(-xi)
    const WeylElement inv = gcs::weyl_inverse(g);
    CHECK(gcs::weyl_compose(g, inv).nu == 0.0);
    CHECK(gcs::weyl_compose(g, inv).z == Complex(0.0, 0.0));

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const WeylElement x{u(rng), Complex(u(rng), u(rng))};
        const WeylElement y{u(rng), Complex(u(rng), u(rng))};
        const WeylElement z{u(rng), Complex(u(rng), u(rng))};
        const WeylElement lhs = gcs::weyl_compose(x, gcs::weyl_compose(y, z));
        const WeylElement rhs = gcs::weyl_compose(gcs::weyl_compose(x, y), z);
        CHECK(std::abs(lhs.nu - rhs.nu) <= 1e-12);
        CHECK(std::abs(lhs.z - rhs.z) <= 1e-12);
    }
}

TEST_CASE("weyl representation is projective: products match up to a unit phase") {
    const FockSpace space{40};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const gcs::WeylElement g1{u(rng), oracles::random_unit_disk(rng, 1.0)};
        const gcs::WeylElement g2{u(rng), oracles::random_unit_disk(rng, 1.0)};
        const Matrix lhs = gcs::weyl_rep(space, g1) * gcs::weyl_rep(space, g2);
        const Matrix rhs = gcs::weyl_rep(space, gcs::weyl_compose(g1, g2));
        const Complex phase = gcs::aligned_phase(lhs.col(0), rhs.col(0));
        CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-8);
        CHECK(gcs::spectral_norm(lhs.leftCols(8) - phase * rhs.leftCols(8)) <= 1e-8);
    }
}

TEST_CASE("resolution of identity: diagonal matches the scalar gamma oracle") {
    const FockSpace space{40};
    const double R = 4.0;
    const Matrix c = gcs::resolution_of_identity(space, R, 32, 64);

    const int probe = 6;
    for (int n = 0; n < probe; ++n) {
        CHECK(std::abs(c(n, n).real() - oracles::lower_gamma_P(n, R * R)) <= 1e-8);
        CHECK(std::abs(c(n, n).imag()) <= 1e-14);
    }
    // angular rule annihilates every probe off-diagonal outright
    for (int n = 0; n < probe; ++n) {
        for (int m = 0; m < probe; ++m) {
            if (n != m) CHECK(std::abs(c(n, m)) <= 1e-12);
        }
    }
}

TEST_CASE("resolution of identity converges monotonically on the probe block") {
    const FockSpace space{40};
    const double R = 4.0;
    const int probe = 6;
    auto probe_deviation = [&](int n_r, int n_theta) {
        const Matrix c = gcs::resolution_of_identity(space, R, n_r, n_theta);
        double worst = 0.0;
        for (int n = 0; n < probe; ++n) {
            for (int m = 0; m < probe; ++m) {
                const Complex want = (n == m) ? Complex(oracles::lower_gamma_P(n, R * R)) : Complex(0.0);
                worst = std::max(worst, std::abs(c(n, m) - want));
            }
        }
        return worst;
    };
    const double d1 = probe_deviation(4, 16);
    const double d2 = probe_deviation(8, 32);
    const double d3 = probe_deviation(16, 64);
    CHECK(d1 > d2);
    CHECK(d2 > d3);
}

TEST_CASE("resolution report fields and input validation") {
    const FockSpace space{24};
    const auto rep = gcs::resolution_report(space, 3.0, 16, 32, 4);
    CHECK(rep.R == 3.0);
    CHECK(rep.n_r == 16);
    CHECK(rep.n_theta == 32);
    CHECK(rep.probe_dim == 4);
    CHECK(rep.diag.size() == 4);
    CHECK(rep.max_abs_deviation < 0.05);

    CHECK_THROWS_AS(gcs::resolution_of_identity(space, -1.0, 16, 32), std::invalid_argument);
    CHECK_THROWS_AS(gcs::resolution_of_identity(space, 3.0, 2, 32), std::invalid_argument);
    CHECK_THROWS_AS(gcs::resolution_report(space, 3.0, 16, 32, 99), std::invalid_argument);
}

TEST_CASE("quadrature is bit-stable across worker counts") {
    const FockSpace space{30};
    setenv("GCS_THREADS", "1", 1);
    const Matrix serial = gcs::resolution_of_identity(space, 3.0, 24, 32);
    setenv("GCS_THREADS", "4", 1);
    const Matrix threaded = gcs::resolution_of_identity(space, 3.0, 24, 32);
    unsetenv("GCS_THREADS");
    CHECK(gcs::max_abs(serial - threaded) == 0.0);
}
