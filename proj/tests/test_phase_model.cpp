#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kvn/consistency.hpp"
#include "kvn/fock.hpp"
#include "kvn/hamiltonian.hpp"
#include "kvn/io.hpp"
#include "kvn/problems.hpp"

using namespace kvn;

TEST_CASE("evaluate_field zero field") {
    PolyVectorField f(3);
    Vector u(3);
    u << 1.0, -2.0, 0.5;
    CHECK(f.evaluate(u).norm() == 0.0);
}

TEST_CASE("evaluate_field harmonic oscillator") {
    auto ho = make_harmonic_oscillator(1.0, 1.0);
    Vector u(2);
    u << 1.0, 0.0;
    Vector v = evaluate_field(ho.field, u);
    CHECK(v(0) == doctest::Approx(0.0));
    CHECK(v(1) == doctest::Approx(-1.0));
}

TEST_CASE("evaluate_field constant KdV profile gives zero") {
    for (auto variant : {KdvVariant::Paper, KdvVariant::Corrected}) {
        PolyVectorField f = kdv_field(7, 0.5, variant);
        Vector u = Vector::Constant(7, 0.37);
        CHECK(f.evaluate(u).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("evaluate_field dimension mismatch") {
    PolyVectorField f(2);
    CHECK_THROWS_AS(f.evaluate(Vector::Zero(3)), DimensionError);
}

TEST_CASE("quadratic terms stored canonically k <= l") {
    PolyVectorField f(3);
    f.add_quadratic(0, 2, 1, 1.5);
    REQUIRE(f.quadratic().size() == 1);
    CHECK(f.quadratic()[0].var_k == 1);
    CHECK(f.quadratic()[0].var_l == 2);
    f.add_quadratic(0, 1, 2, 0.5);  // merges with the canonical entry
    REQUIRE(f.quadratic().size() == 1);
    CHECK(f.quadratic()[0].coeff == doctest::Approx(2.0));
}

TEST_CASE("build_kvn_hamiltonian harmonic oscillator matches (1/m)P1Q2 - m w^2 Q1P2") {
    const double m = 2.0, w = 1.5;
    KvnHamiltonian h = make_harmonic_oscillator(m, w).hamiltonian;
    // coefficient of sym(P_j Q_k) is 2 * M(k, N + j)
    CHECK(h.quadratic()(1, 2) == doctest::Approx(1.0 / m));
    CHECK(h.quadratic()(0, 3) == doctest::Approx(-m * w * w));
    CHECK(h.cubic_terms().empty());
    CHECK(h.scalar_shift() == 0.0);
    CHECK((h.quadratic() - h.quadratic().transpose()).norm() < 1e-12);
}

TEST_CASE("build_kvn_hamiltonian coupled network matches Eq.-(36) coefficients") {
    Vector masses(2), kappa(2);
    masses << 1.0, 2.0;
    kappa << 0.3, 0.7;
    Matrix pair = Matrix::Zero(2, 2);
    pair(0, 1) = pair(1, 0) = 0.25;
    auto bundle = make_coupled_network(masses, kappa, pair);
    const KvnHamiltonian& h = bundle.hamiltonian;
    const int n = 2;
    for (int j = 0; j < n; ++j) {
        CHECK(h.quadratic()(j + n, n * 2 + j) == doctest::Approx(1.0 / masses(j)));
        CHECK(h.quadratic()(j, n * 2 + j + n) == doctest::Approx(-bundle.xi(j, j)));
    }
    CHECK(h.quadratic()(1, n * 2 + 0 + n) == doctest::Approx(-bundle.xi(0, 1)));
    CHECK(bundle.xi(0, 1) == doctest::Approx(-2.0 * 0.25));
}

TEST_CASE("build_kvn_hamiltonian KdV: BS-only quadratic part and cubic coefficients") {
    const double dx = 0.5;
    KvnHamiltonian h = build_kvn_hamiltonian(kdv_field(6, dx, KdvVariant::Paper));
    const int n = 6;
    // sym(P_0 Q_1) coefficient is the u_{j+1} stencil entry -1/dx^3
    CHECK(h.quadratic()(1, n + 0) == doctest::Approx(-1.0 / (dx * dx * dx)));
    CHECK(h.quadratic()(2, n + 0) == doctest::Approx(0.5 / (dx * dx * dx)));
    CHECK(h.quadratic().topLeftCorner(n, n).norm() == 0.0);      // no Q-Q terms
    CHECK(h.quadratic().bottomRightCorner(n, n).norm() == 0.0);  // no P-P terms
    REQUIRE(h.cubic_terms().size() == 2 * 6);
    for (const auto& t : h.cubic_terms()) {
        CHECK(t.q_k == t.q_l);
        CHECK(std::abs(t.coeff) == doctest::Approx(3.0 / dx));
    }
}

TEST_CASE("build_kvn_hamiltonian is linear term-by-term") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto random_field = [&](int n) {
        PolyVectorField f(n);
        Matrix a(n, n);
        Vector c(n);
        for (int i = 0; i < n; ++i) {
            c(i) = dist(rng);
            for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
        }
        f.set_linear(a);
        f.set_constant(c);
        f.add_quadratic(0, 1, 2, dist(rng));
        f.add_quadratic(2, 0, 0, dist(rng));
        return f;
    };
    PolyVectorField f = random_field(3), g = random_field(3);
    const double alpha = 0.7, beta = -1.3;
    KvnHamiltonian sum = build_kvn_hamiltonian(PolyVectorField::combine(alpha, f, beta, g));
    KvnHamiltonian hf = build_kvn_hamiltonian(f), hg = build_kvn_hamiltonian(g);
    CHECK((sum.quadratic() - alpha * hf.quadratic() - beta * hg.quadratic()).norm() < 1e-14);
    CHECK((sum.linear() - alpha * hf.linear() - beta * hg.linear()).norm() < 1e-14);
    for (const auto& t : sum.cubic_terms()) {
        double expected = 0.0;
        for (const auto& tf : hf.cubic_terms())
            if (tf.p_mode == t.p_mode && tf.q_k == t.q_k && tf.q_l == t.q_l)
                expected += alpha * tf.coeff;
        for (const auto& tg : hg.cubic_terms())
            if (tg.p_mode == t.p_mode && tg.q_k == t.q_k && tg.q_l == t.q_l)
                expected += beta * tg.coeff;
        CHECK(t.coeff == doctest::Approx(expected));
    }
}

TEST_CASE("cubic terms present iff the field has a quadratic part") {
    CHECK(make_harmonic_oscillator(1.0, 1.0).hamiltonian.cubic_terms().empty());
    CHECK(!build_kvn_hamiltonian(kdv_field(5, 1.0, KdvVariant::Corrected)).cubic_terms().empty());
}

TEST_CASE("truncated-Fock Hermiticity for all three problems") {
    auto defect = [](const KvnHamiltonian& h, int cutoff) {
        return hermiticity_defect(hamiltonian_matrix(h, h.n_modes(), cutoff));
    };
    CHECK(defect(make_harmonic_oscillator(1.0, 1.3).hamiltonian, 8) < 1e-12);
    Vector masses = Vector::Ones(2), kappa = Vector::Ones(2);
    Matrix pair = Matrix::Zero(2, 2);
    pair(0, 1) = pair(1, 0) = 0.4;
    CHECK(defect(make_coupled_network(masses, kappa, pair).hamiltonian, 5) < 1e-12);
    CHECK(defect(build_kvn_hamiltonian(kdv_field(3, 1.0, KdvVariant::Corrected)), 8) < 1e-12);
}

TEST_CASE("Heisenberg self-consistency residuals on the interior subspace") {
    SUBCASE("harmonic oscillator, cutoff 12") {
        auto ho = make_harmonic_oscillator(1.0, 1.0);
        Vector res = verify_heisenberg_consistency(ho.hamiltonian, ho.field, 12);
        CHECK(res.maxCoeff() < 1e-10);
    }
    SUBCASE("zero field is exactly zero") {
        PolyVectorField f(2);
        Vector res = verify_heisenberg_consistency(build_kvn_hamiltonian(f), f, 6);
        CHECK(res.maxCoeff() == 0.0);
    }
    SUBCASE("KdV N=3, cutoff 8") {
        PolyVectorField f = kdv_field(3, 1.0, KdvVariant::Corrected);
        Vector res = verify_heisenberg_consistency(build_kvn_hamiltonian(f), f, 8);
        CHECK(res.maxCoeff() < 1e-10);
    }
    SUBCASE("capacity error") {
        PolyVectorField f(8);
        CHECK_THROWS_AS(verify_heisenberg_consistency(build_kvn_hamiltonian(f), f, 16),
                        CapacityError);
    }
}

TEST_CASE("vector field JSON round trip") {
    PolyVectorField f = kdv_field(5, 0.5, KdvVariant::Paper);
    PolyVectorField g = vector_field_from_json(vector_field_to_json(f));
    CHECK((f.linear() - g.linear()).norm() == 0.0);
    CHECK((f.constant() - g.constant()).norm() == 0.0);
    REQUIRE(f.quadratic().size() == g.quadratic().size());
    for (std::size_t i = 0; i < f.quadratic().size(); ++i)
        CHECK(f.quadratic()[i].coeff == g.quadratic()[i].coeff);
    CHECK(build_kvn_hamiltonian(f).hash() == build_kvn_hamiltonian(g).hash());
}
