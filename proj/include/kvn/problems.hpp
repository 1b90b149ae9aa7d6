#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kvn/hamiltonian.hpp"
#include "kvn/oracle.hpp"

namespace kvn {

enum class Backend { Gaussian, Fock };
enum class KdvVariant { Paper, Corrected };

// Matched (field, Hamiltonian, initial condition, classical oracle) bundle
// for one of the case-study problems.
struct ProblemBundle {
    std::string name;
    PolyVectorField field;
    KvnHamiltonian hamiltonian;
    Vector default_u0;
    Backend recommended_backend;

    // oracle binding
    enum class Oracle { AnalyticHo, CoupledExact, Rk4 } oracle;
    double m = 1.0, omega = 1.0;  // analytic HO parameters
    Vector masses;                // coupled network
    Matrix xi;
    double rk4_dt = 1e-3;         // RK4 fallback step

    Trajectory classical_trajectory(const Vector& u0,
                                    const std::vector<double>& times) const {
        switch (oracle) {
            case Oracle::AnalyticHo:
                return analytic_ho(m, omega, u0, times);
            case Oracle::CoupledExact:
                return coupled_network_exact(masses, xi, u0, times);
            case Oracle::Rk4: {
                double t_end = times.empty() ? 0.0 : times.back();
                return integrate_rk4(field, u0, t_end, rk4_dt, times);
            }
        }
        throw DimensionError("unknown oracle");
    }
};

inline ProblemBundle make_harmonic_oscillator(double m, double omega) {
    if (m <= 0.0) throw DimensionError("make_harmonic_oscillator: mass must be positive");
    if (omega < 0.0) throw DimensionError("make_harmonic_oscillator: omega must be >= 0");
    PolyVectorField field(2);
    field.add_linear(0, 1, 1.0 / m);
    field.add_linear(1, 0, -m * omega * omega);
    Vector u0(2);
    u0 << 1.0, 0.0;
    ProblemBundle b{"ho", field, build_kvn_hamiltonian(field), u0, Backend::Gaussian,
                    ProblemBundle::Oracle::AnalyticHo};
    b.m = m;
    b.omega = omega;
    return b;
}

// n coupled oscillators with on-site springs kappa_j and symmetric pair
// couplings kappa_jk: xi_j = kappa_j + sum_k kappa_jk, xi_jk = -2 kappa_jk.
inline ProblemBundle make_coupled_network(const Vector& masses, const Vector& kappa,
                                          const Matrix& kappa_pair) {
    const int n = static_cast<int>(masses.size());
    if (kappa.size() != n || kappa_pair.rows() != n || kappa_pair.cols() != n)
        throw DimensionError("make_coupled_network: shape mismatch");
    if ((kappa_pair - kappa_pair.transpose()).norm() > 1e-12 * (1.0 + kappa_pair.norm()))
        throw DimensionError("make_coupled_network: couplings must be symmetric");
    for (int j = 0; j < n; ++j)
        if (masses(j) <= 0.0)
            throw DimensionError("make_coupled_network: masses must be positive");

    Matrix xi = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double s = kappa(j);
        for (int k = 0; k < n; ++k)
            if (k != j) {
                s += kappa_pair(j, k);
                xi(j, k) = -2.0 * kappa_pair(j, k);
            }
        xi(j, j) = s;
    }

    PolyVectorField field(2 * n);
    for (int j = 0; j < n; ++j) {
        field.add_linear(j, n + j, 1.0 / masses(j));
        for (int k = 0; k < n; ++k) field.add_linear(n + j, k, -xi(j, k));
    }
    Vector u0 = Vector::Zero(2 * n);
    u0(0) = 1.0;  // first oscillator displaced, everything else at rest
    ProblemBundle b{"coupled", field, build_kvn_hamiltonian(field), u0, Backend::Gaussian,
                    ProblemBundle::Oracle::CoupledExact};
    b.masses = masses;
    b.xi = xi;
    return b;
}

// Periodic KdV semi-discretization on N grid points. "Paper" keeps the
// as-printed stencil coefficients; "corrected" is the standard central
// difference of u_t - 6 u u_x + u_xxx = 0, which the soliton actually solves.
// Periodic KdV stencil field; usable down to n = 3, where the periodic wrap
// folds stencil neighbors together.
inline PolyVectorField kdv_field(int n, double dx, KdvVariant variant) {
    if (n < 3) throw DimensionError("kdv_field: need at least 3 grid points");
    if (dx <= 0.0) throw DimensionError("kdv_field: dx must be positive");
    PolyVectorField field(n);
    const double d3 = 1.0 / (2.0 * dx * dx * dx);
    auto wrap = [n](int j) { return ((j % n) + n) % n; };
    for (int j = 0; j < n; ++j) {
        if (variant == KdvVariant::Paper) {
            field.add_linear(j, wrap(j - 2), -d3);
            field.add_linear(j, wrap(j - 1), 2.0 * d3);
            field.add_linear(j, wrap(j + 1), -2.0 * d3);
            field.add_linear(j, wrap(j + 2), d3);
            field.add_quadratic(j, wrap(j + 1), wrap(j + 1), -3.0 / dx);
            field.add_quadratic(j, wrap(j - 1), wrap(j - 1), 3.0 / dx);
        } else {
            field.add_linear(j, wrap(j + 2), -d3);
            field.add_linear(j, wrap(j + 1), 2.0 * d3);
            field.add_linear(j, wrap(j - 1), -2.0 * d3);
            field.add_linear(j, wrap(j - 2), d3);
            field.add_quadratic(j, wrap(j + 1), wrap(j + 1), 1.5 / dx);
            field.add_quadratic(j, wrap(j - 1), wrap(j - 1), -1.5 / dx);
        }
    }
    return field;
}

inline ProblemBundle make_kdv(int n, double dx, KdvVariant variant) {
    if (n < 4) throw DimensionError("make_kdv: need at least 4 grid points");
    PolyVectorField field = kdv_field(n, dx, variant);

    Vector u0(n);
    if (variant == KdvVariant::Corrected) {
        Vector x(n);
        for (int j = 0; j < n; ++j) x(j) = (j - 0.5 * (n - 1)) * dx;
        u0 = kdv_soliton(1.0, x, 0.0);
    } else {
        // small Gaussian bump; the soliton does not solve the as-printed scheme
        for (int j = 0; j < n; ++j) {
            double x = (j - 0.5 * (n - 1)) * dx;
            u0(j) = 0.2 * std::exp(-x * x);
        }
    }
    ProblemBundle b{variant == KdvVariant::Paper ? "kdv_paper" : "kdv", field,
                    build_kvn_hamiltonian(field), u0, Backend::Fock,
                    ProblemBundle::Oracle::Rk4};
    b.rk4_dt = std::min(1e-3, 0.1 * dx * dx * dx);
    return b;
}

}  // namespace kvn
