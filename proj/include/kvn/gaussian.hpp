#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <complex>
#include <utility>
#include <vector>

#include "kvn/gates.hpp"
#include "kvn/hamiltonian.hpp"

namespace kvn {

// Omega = [[0, I], [-I, 0]] for r = (Q_1..Q_N, P_1..P_N).
inline Matrix symplectic_form(int n_modes) {
    Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
    omega.topRightCorner(n_modes, n_modes).setIdentity();
    omega.bottomLeftCorner(n_modes, n_modes) = -Matrix::Identity(n_modes, n_modes);
    return omega;
}

struct SymplecticGate {
    Matrix S;
    Vector d;

    static SymplecticGate identity(int n_modes) {
        return {Matrix::Identity(2 * n_modes, 2 * n_modes), Vector::Zero(2 * n_modes)};
    }

    // ||S Omega S^T - Omega||, should be < 1e-10 for every produced gate.
    double symplectic_defect() const {
        const int n = static_cast<int>(S.rows()) / 2;
        Matrix omega = symplectic_form(n);
        return (S * omega * S.transpose() - omega).norm();
    }

    SymplecticGate compose_after(const SymplecticGate& first) const {
        return {S * first.S, S * first.d + d};
    }
};

struct GaussianState {
    int n_modes;
    Vector mean;  // length 2N
    Matrix cov;   // 2N x 2N

    static GaussianState vacuum(int n_modes) {
        return {n_modes, Vector::Zero(2 * n_modes),
                0.5 * Matrix::Identity(2 * n_modes, 2 * n_modes)};
    }

    double symmetry_defect() const { return (cov - cov.transpose()).norm(); }

    // Smallest eigenvalue of cov + (i/2) Omega; >= -1e-9 for physical states.
    double uncertainty_margin() const {
        using Cplx = std::complex<double>;
        Eigen::MatrixXcd m = cov.cast<Cplx>() +
                             Cplx(0, 0.5) * symplectic_form(n_modes).cast<Cplx>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        return es.eigenvalues().minCoeff();
    }
};

inline GaussianState apply_gate(const GaussianState& state, const SymplecticGate& gate) {
    if (gate.S.rows() != 2 * state.n_modes)
        throw DimensionError("apply_gate: gate/state dimension mismatch");
    return {state.n_modes, gate.S * state.mean + gate.d,
            gate.S * state.cov * gate.S.transpose()};
}

// exp(-i H t) for a purely quadratic H: means evolve as r -> S r + d with
// S = exp(Omega M t); d follows from the linear part via the augmented
// generator [[Omega M, Omega c], [0, 0]].
inline SymplecticGate exact_propagator(const KvnHamiltonian& h, double t) {
    if (!h.is_quadratic())
        throw UnsupportedHamiltonianError(
            "exact_propagator: Hamiltonian has cubic terms; use the Fock engine");
    const int dim = 2 * h.n_modes();
    Matrix omega = symplectic_form(h.n_modes());
    Matrix gen = omega * h.quadratic();
    if (h.linear().isZero(0.0)) {
        return {(gen * t).exp(), Vector::Zero(dim)};
    }
    Matrix aug = Matrix::Zero(dim + 1, dim + 1);
    aug.topLeftCorner(dim, dim) = gen;
    aug.topRightCorner(dim, 1) = omega * h.linear();
    Matrix e = (aug * t).exp();
    return {e.topLeftCorner(dim, dim), e.topRightCorner(dim, 1)};
}

// Embedded 2N-dimensional symplectic matrix for a named Gaussian gate;
// parameter conventions as documented in gates.hpp.
inline SymplecticGate gate_for(GateKind kind, std::array<int, 2> modes, double param,
                               int n_modes) {
    auto check = [n_modes](int m) {
        if (m < 0 || m >= n_modes) throw DimensionError("gate_for: mode out of range");
    };
    check(modes[0]);
    if (is_two_mode(kind)) {
        check(modes[1]);
        if (modes[0] == modes[1]) throw DimensionError("gate_for: coincident modes");
    }

    if (kind == GateKind::DISPLACE) {
        SymplecticGate g = SymplecticGate::identity(n_modes);
        g.d(modes[0]) = param;
        return g;
    }

    KvnHamiltonian gen(n_modes);
    const int a = modes[0], b = modes[1];
    switch (kind) {
        case GateKind::BS:
            gen.add_pq(a, b, param);
            gen.add_pq(b, a, -param);
            break;
        case GateKind::TMS:
            gen.add_pq(a, b, param);
            gen.add_pq(b, a, param);
            break;
        case GateKind::CX:
            gen.add_pq(b, a, param);
            break;
        case GateKind::QQ: {
            // exp(+i c Q_a Q_b) = exp(-i H) with H = -c Q_a Q_b
            SymplecticGate g = SymplecticGate::identity(n_modes);
            g.S(n_modes + a, b) = param;
            g.S(n_modes + b, a) = param;
            return g;
        }
        default:
            throw UnsupportedHamiltonianError("gate_for: non-Gaussian gate kind");
    }
    return exact_propagator(gen, 1.0);
}

// (<Q_j>, Var(Q_j)) per mode.
inline std::pair<Vector, Vector> quadrature_expectations(const GaussianState& state) {
    const int n = state.n_modes;
    return {state.mean.head(n), state.cov.diagonal().head(n)};
}

}  // namespace kvn
