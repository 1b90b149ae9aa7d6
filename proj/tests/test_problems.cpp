#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kvn/problems.hpp"

using namespace kvn;

TEST_CASE("harmonic oscillator bundle") {
    const double m = 2.0, w = 1.5;
    auto ho = make_harmonic_oscillator(m, w);
    CHECK(ho.field.n_vars() == 2);
    CHECK(ho.field.linear()(0, 1) == doctest::Approx(1.0 / m));
    CHECK(ho.field.linear()(1, 0) == doctest::Approx(-m * w * w));
    CHECK(ho.field.linear()(0, 0) == 0.0);
    CHECK(ho.field.quadratic().empty());
    CHECK(ho.hamiltonian.is_quadratic());
    CHECK(ho.hamiltonian.hash() == build_kvn_hamiltonian(ho.field).hash());
    CHECK(ho.recommended_backend == Backend::Gaussian);

    // sym(P_0 Q_1) carries 1/m; sym(P_1 Q_0) carries -m w^2
    const Matrix& q = ho.hamiltonian.quadratic();
    CHECK(q(1, 2) == doctest::Approx(1.0 / m));
    CHECK(q(0, 3) == doctest::Approx(-m * w * w));

    CHECK_THROWS_AS(make_harmonic_oscillator(0.0, 1.0), DimensionError);
    CHECK_THROWS_AS(make_harmonic_oscillator(1.0, -1.0), DimensionError);
}

TEST_CASE("coupled network bundle") {
    SUBCASE("single oscillator reduces to the HO problem") {
        Vector masses(1), kappa(1);
        masses << 2.0;
        kappa << 2.0;  // omega^2 = kappa/m = 1
        auto net = make_coupled_network(masses, kappa, Matrix::Zero(1, 1));
        auto ho = make_harmonic_oscillator(2.0, 1.0);
        CHECK((net.field.linear() - ho.field.linear()).norm() < 1e-15);
        CHECK(net.hamiltonian.hash() == ho.hamiltonian.hash());
    }
    SUBCASE("xi assembly for one pair coupling") {
        Vector masses = Vector::Ones(2);
        Vector kappa(2);
        kappa << 1.0, 2.0;
        Matrix pair = Matrix::Zero(2, 2);
        pair(0, 1) = pair(1, 0) = 1.0;
        auto net = make_coupled_network(masses, kappa, pair);
        CHECK(net.xi(0, 0) == doctest::Approx(2.0));  // kappa_0 + kappa_01
        CHECK(net.xi(1, 1) == doctest::Approx(3.0));
        CHECK(net.xi(0, 1) == doctest::Approx(-2.0));
        CHECK(net.xi(1, 0) == doctest::Approx(-2.0));
        CHECK(net.default_u0(0) == 1.0);
        CHECK(net.default_u0.tail(3).norm() == 0.0);
    }
    SUBCASE("field matches the generator used by the oracle") {
        Vector masses(2);
        masses << 1.0, 2.5;
        Vector kappa(2);
        kappa << 0.7, 0.4;
        Matrix pair = Matrix::Zero(2, 2);
        pair(0, 1) = pair(1, 0) = 0.2;
        auto net = make_coupled_network(masses, kappa, pair);
        Matrix gen = coupled_network_generator(net.masses, net.xi);
        CHECK((net.field.linear() - gen).norm() < 1e-15);
    }
    SUBCASE("shape and symmetry validation") {
        CHECK_THROWS_AS(
            make_coupled_network(Vector::Ones(2), Vector::Ones(3), Matrix::Zero(2, 2)),
            DimensionError);
        Matrix pair(2, 2);
        pair << 0.0, 0.1, -0.1, 0.0;
        CHECK_THROWS_AS(make_coupled_network(Vector::Ones(2), Vector::Ones(2), pair),
                        DimensionError);
        Vector masses(2);
        masses << 1.0, -1.0;
        CHECK_THROWS_AS(make_coupled_network(masses, Vector::Ones(2), Matrix::Zero(2, 2)),
                        DimensionError);
    }
}

TEST_CASE("kdv field stencil values") {
    const int n = 5;
    const double dx = 0.5;
    const double d3 = 1.0 / (2.0 * dx * dx * dx);

    SUBCASE("corrected variant row") {
        PolyVectorField f = kdv_field(n, dx, KdvVariant::Corrected);
        const Matrix& a = f.linear();
        for (int j = 0; j < n; ++j) {
            CHECK(a(j, (j + 2) % n) == doctest::Approx(-d3));
            CHECK(a(j, (j + 1) % n) == doctest::Approx(2.0 * d3));
            CHECK(a(j, (j + n - 1) % n) == doctest::Approx(-2.0 * d3));
            CHECK(a(j, (j + n - 2) % n) == doctest::Approx(d3));
            CHECK(a(j, j) == 0.0);
        }
        CHECK(f.quadratic().size() == 2 * n);
    }
    SUBCASE("paper variant flips the dispersive signs") {
        Matrix ap = kdv_field(n, dx, KdvVariant::Paper).linear();
        Matrix ac = kdv_field(n, dx, KdvVariant::Corrected).linear();
        CHECK((ap + ac).norm() < 1e-15);
    }
    SUBCASE("nonlinear coefficients") {
        PolyVectorField f = kdv_field(n, dx, KdvVariant::Paper);
        double plus = 0.0, minus = 0.0;
        for (const auto& t : f.quadratic())
            if (t.component == 2 && t.var_k == 3 && t.var_l == 3) plus = t.coeff;
            else if (t.component == 2 && t.var_k == 1 && t.var_l == 1) minus = t.coeff;
        CHECK(plus == doctest::Approx(-3.0 / dx));
        CHECK(minus == doctest::Approx(3.0 / dx));
    }
    SUBCASE("constant profile feels no force") {
        PolyVectorField f = kdv_field(n, dx, KdvVariant::Corrected);
        CHECK(f.evaluate(Vector::Constant(n, 0.8)).norm() < 1e-14);
    }
}

TEST_CASE("kdv bundle") {
    auto kdv = make_kdv(8, 0.5, KdvVariant::Corrected);
    CHECK(kdv.recommended_backend == Backend::Fock);
    CHECK(kdv.hamiltonian.cubic_terms().size() == 16);
    CHECK(kdv.hamiltonian.hash() == build_kvn_hamiltonian(kdv.field).hash());
    CHECK(kdv.default_u0.minCoeff() == doctest::Approx(-0.5).epsilon(0.02));

    auto paper = make_kdv(8, 0.5, KdvVariant::Paper);
    CHECK(paper.default_u0.maxCoeff() > 0.15);
    CHECK(paper.default_u0.maxCoeff() <= 0.2);

    CHECK_THROWS_AS(make_kdv(3, 0.5, KdvVariant::Corrected), DimensionError);
    CHECK_THROWS_AS(make_kdv(8, 0.0, KdvVariant::Corrected), DimensionError);
}

TEST_CASE("bundle oracle dispatch") {
    auto ho = make_harmonic_oscillator(1.0, 1.0);
    Trajectory t = ho.classical_trajectory(ho.default_u0, {M_PI});
    CHECK(t.at(0)(0) == doctest::Approx(-1.0).epsilon(1e-12));

    auto kdv = make_kdv(16, 0.5, KdvVariant::Corrected);
    Trajectory tk = kdv.classical_trajectory(kdv.default_u0, {0.1});
    CHECK(tk.times.back() == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(tk.at(0).allFinite());
}
