#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <vector>

#include "kvn/vector_field.hpp"

namespace kvn {

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> values;

    const Vector& at(std::size_t i) const { return values[i]; }
};

// Classic fixed-step RK4. Throws BlowUpError with the last valid time if the
// state goes non-finite. KdV note: explicit integration of the dispersive
// stencil needs dt <~ 0.1 * dx^3.
inline Trajectory integrate_rk4(const PolyVectorField& field, const Vector& u0,
                                double t_end, double dt,
                                const std::vector<double>& sample_times = {}) {
    if (dt <= 0.0) throw DimensionError("integrate_rk4: dt must be positive");
    Trajectory traj;
    Vector u = u0;
    double t = 0.0;
    auto record = [&](double tt, const Vector& uu) {
        traj.times.push_back(tt);
        traj.values.push_back(uu);
    };
    std::size_t next_sample = 0;
    const bool custom = !sample_times.empty();
    auto want = [&](double tt) {
        if (!custom) return true;
        if (next_sample >= sample_times.size()) return false;
        if (tt + 0.5 * dt >= sample_times[next_sample]) {
            ++next_sample;
            return true;
        }
        return false;
    };
    if (want(0.0)) record(0.0, u);
    const long n_steps = std::lround(std::ceil(t_end / dt - 1e-12));
    for (long s = 0; s < n_steps; ++s) {
        const double h = std::min(dt, t_end - t);
        Vector k1 = field.evaluate(u);
        Vector k2 = field.evaluate(u + 0.5 * h * k1);
        Vector k3 = field.evaluate(u + 0.5 * h * k2);
        Vector k4 = field.evaluate(u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
        if (!u.allFinite())
            throw BlowUpError("integrate_rk4: non-finite state", t - h);
        if (want(t)) record(t, u);
    }
    return traj;
}

// Closed-form harmonic oscillator: u1'' = -(w^2) u1 with u2 = m u1'.
inline Trajectory analytic_ho(double m, double omega, const Vector& u0,
                              const std::vector<double>& times) {
    if (u0.size() != 2) throw DimensionError("analytic_ho: u0 must have length 2");
    if (m <= 0.0) throw DimensionError("analytic_ho: mass must be positive");
    Trajectory traj;
    for (double t : times) {
        Vector u(2);
        if (omega == 0.0) {
            u << u0(0) + t * u0(1) / m, u0(1);  // free drift
        } else {
            const double c = std::cos(omega * t), s = std::sin(omega * t);
            u << u0(0) * c + u0(1) / (m * omega) * s,
                 u0(1) * c - m * omega * u0(0) * s;
        }
        traj.times.push_back(t);
        traj.values.push_back(u);
    }
    return traj;
}

// Block generator of the coupled network. xi(j,j) holds xi_j; off-diagonal
// entries are the couplings xi_jk.
inline Matrix coupled_network_generator(const Vector& masses, const Matrix& xi) {
    const int n = static_cast<int>(masses.size());
    if (xi.rows() != n || xi.cols() != n)
        throw DimensionError("coupled_network: xi matrix shape mismatch");
    if ((xi - xi.transpose()).norm() > 1e-12 * (1.0 + xi.norm()))
        throw DimensionError("coupled_network: xi must be symmetric");
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) a(j, n + j) = 1.0 / masses(j);
    a.bottomLeftCorner(n, n) = -xi;
    return a;
}

// expm(A t) u0 samples for the coupled-oscillator block matrix.
inline Trajectory coupled_network_exact(const Vector& masses, const Matrix& xi,
                                        const Vector& u0,
                                        const std::vector<double>& times) {
    Matrix a = coupled_network_generator(masses, xi);
    if (u0.size() != a.rows())
        throw DimensionError("coupled_network_exact: u0 length mismatch");
    Trajectory traj;
    for (double t : times) {
        traj.times.push_back(t);
        traj.values.push_back((a * t).exp() * u0);
    }
    return traj;
}

// Single-soliton solution u(x,t) = -(c/2) sech^2(sqrt(c)(x - c t - x0)/2)
// of u_t - 6 u u_x + u_xxx = 0.
inline Vector kdv_soliton(double c, const Vector& x, double t, double x0 = 0.0) {
    if (c <= 0.0) throw DimensionError("kdv_soliton: speed must be positive");
    Vector u(x.size());
    for (int i = 0; i < x.size(); ++i) {
        const double arg = 0.5 * std::sqrt(c) * (x(i) - c * t - x0);
        const double sech = 1.0 / std::cosh(arg);
        u(i) = -0.5 * c * sech * sech;
    }
    return u;
}

}  // namespace kvn
