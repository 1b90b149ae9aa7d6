#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kvn/gates.hpp"
#include "kvn/hamiltonian.hpp"

namespace kvn {

// One Trotter step's gates repeated p times; gates are stored in
// application order (first applied first).
struct GateSchedule {
    int n_modes = 0;
    int p = 1;
    double dt = 0.0;  // tau / p
    std::vector<Gate> step_gates;
    std::string decomposition;
    std::uint64_t source_hash = 0;

    double total_time() const { return dt * p; }

    std::vector<Gate> gates() const {
        std::vector<Gate> all;
        all.reserve(step_gates.size() * p);
        for (int s = 0; s < p; ++s)
            all.insert(all.end(), step_gates.begin(), step_gates.end());
        return all;
    }
};

namespace detail {

// Coefficient of sym(P_j Q_k) stored in the quadratic matrix.
inline double pq_coeff(const KvnHamiltonian& h, int p_mode, int q_mode) {
    return h.quadratic()(q_mode, h.n_modes() + p_mode);
}

inline void require_single_oscillator_shape(const KvnHamiltonian& h) {
    if (h.n_modes() != 2 || !h.is_quadratic() || !h.linear().isZero(0.0))
        throw DimensionError("expected the 2-mode harmonic-oscillator KvN Hamiltonian");
    Matrix m = h.quadratic();
    m(1, 2) = m(2, 1) = m(0, 3) = m(3, 0) = 0.0;  // allowed sym(P_0 Q_1), sym(P_1 Q_0)
    if (m.norm() != 0.0)
        throw DimensionError("Hamiltonian has terms outside the oscillator shape");
}

}  // namespace detail

// p repetitions of the two CX factors exp(-i (tau/pm) P_1 Q_2) exp(+i (m w^2 tau/p) Q_1 P_2).
inline GateSchedule trotterize_cx(const KvnHamiltonian& h_so, double tau, int p) {
    detail::require_single_oscillator_shape(h_so);
    if (p < 1) throw DimensionError("trotterize_cx: p must be >= 1");
    const double g1 = detail::pq_coeff(h_so, 0, 1);  // 1/m
    const double g2 = detail::pq_coeff(h_so, 1, 0);  // -m w^2
    GateSchedule sched;
    sched.n_modes = 2;
    sched.p = p;
    sched.dt = tau / p;
    sched.decomposition = "cx";
    sched.source_hash = h_so.hash();
    sched.step_gates = {{GateKind::CX, {1, 0}, g1 * sched.dt},
                        {GateKind::CX, {0, 1}, g2 * sched.dt}};
    return sched;
}

// p repetitions of [TMS((1/m - m w^2) tau/2p), BS((1/m + m w^2) tau/2p)];
// strang = true inserts the symmetric half-step TMS on both sides.
inline GateSchedule trotterize_tms_bs(const KvnHamiltonian& h_so, double tau, int p,
                                      bool strang = false) {
    detail::require_single_oscillator_shape(h_so);
    if (p < 1) throw DimensionError("trotterize_tms_bs: p must be >= 1");
    const double g1 = detail::pq_coeff(h_so, 0, 1);
    const double g2 = detail::pq_coeff(h_so, 1, 0);
    GateSchedule sched;
    sched.n_modes = 2;
    sched.p = p;
    sched.dt = tau / p;
    sched.decomposition = strang ? "tms_bs_strang" : "tms_bs";
    sched.source_hash = h_so.hash();
    const double r = 0.5 * (g1 + g2) * sched.dt;
    const double theta = 0.5 * (g1 - g2) * sched.dt;
    if (strang)
        sched.step_gates = {{GateKind::TMS, {0, 1}, 0.5 * r},
                            {GateKind::BS, {0, 1}, theta},
                            {GateKind::TMS, {0, 1}, 0.5 * r}};
    else
        sched.step_gates = {{GateKind::TMS, {0, 1}, r}, {GateKind::BS, {0, 1}, theta}};
    return sched;
}

// Coupled-oscillator split: per step, a TMS+BS pair on each (j, j+n)
// oscillator, then each coupling generator -xi_jk P_{j+n} Q_k compiled as a
// TMS+BS pair on modes (k, j+n).
inline GateSchedule trotterize_coupled(const KvnHamiltonian& h_co, double tau, int p) {
    const int nm = h_co.n_modes();
    if (nm % 2 != 0 || !h_co.is_quadratic() || !h_co.linear().isZero(0.0))
        throw DimensionError("trotterize_coupled: expected a 2n-mode quadratic Hamiltonian");
    if (p < 1) throw DimensionError("trotterize_coupled: p must be >= 1");
    const int n = nm / 2;
    GateSchedule sched;
    sched.n_modes = nm;
    sched.p = p;
    sched.dt = tau / p;
    sched.decomposition = "coupled_tms_bs";
    sched.source_hash = h_co.hash();
    for (int j = 0; j < n; ++j) {
        const double gamma = detail::pq_coeff(h_co, j, j + n);      // 1/m_j
        const double delta = detail::pq_coeff(h_co, j + n, j);      // -xi_j
        sched.step_gates.push_back({GateKind::TMS, {j, j + n}, 0.5 * (gamma + delta) * sched.dt});
        sched.step_gates.push_back({GateKind::BS, {j, j + n}, 0.5 * (gamma - delta) * sched.dt});
    }
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const double c = detail::pq_coeff(h_co, j + n, k);  // -xi_jk
            if (c == 0.0) continue;
            sched.step_gates.push_back({GateKind::TMS, {k, j + n}, 0.5 * c * sched.dt});
            sched.step_gates.push_back({GateKind::BS, {k, j + n}, -0.5 * c * sched.dt});
        }
    }
    return sched;
}

namespace detail {

// c P_j Q_k^2 evolution exp(+i s P_j Q_k^2) expanded into the alternating
// QQ / cubic-phase sequence; emitted in application order.
inline void expand_cubic_gate(std::vector<Gate>& out, int j, int k, double s) {
    const double mag = std::sqrt(std::abs(s) / 3.0);
    const double alpha = mag;
    const double t = (s < 0.0) ? -mag : mag;
    out.push_back({GateKind::CUBIC_Q, {j, -1}, 0.75 * alpha * alpha * alpha * t});
    out.push_back({GateKind::CUBIC_P, {j, -1}, -t});
    out.push_back({GateKind::QQ, {j, k}, alpha});
    out.push_back({GateKind::CUBIC_P, {j, -1}, t});
    out.push_back({GateKind::QQ, {j, k}, -2.0 * alpha});
    out.push_back({GateKind::CUBIC_P, {j, -1}, -t});
    out.push_back({GateKind::QQ, {j, k}, -alpha});
    out.push_back({GateKind::CUBIC_P, {j, -1}, t});
    out.push_back({GateKind::QQ, {j, k}, 2.0 * alpha});
}

}  // namespace detail

// KdV split: per step, one BS entry per P_j Q_k term of the Gaussian part
// (angle = half the term coefficient, the symmetric partner supplying the
// other half), then the cubic terms ascending in j, either as opaque
// two-mode CUBIC entries or expanded via the 9-gate decomposition.
inline GateSchedule trotterize_kdv(const KvnHamiltonian& h_kdv, double tau, int p,
                                   bool expand_cubic = false) {
    const int n = h_kdv.n_modes();
    if (p < 1) throw DimensionError("trotterize_kdv: p must be >= 1");
    if (!h_kdv.linear().isZero(0.0))
        throw DimensionError("trotterize_kdv: unexpected linear terms");
    for (const auto& t : h_kdv.cubic_terms())
        if (t.q_k != t.q_l)
            throw DimensionError("trotterize_kdv: cubic terms must be P_j Q_k^2");
    for (int j = 0; j < n; ++j)
        if (detail::pq_coeff(h_kdv, j, j) != 0.0)
            throw DimensionError("trotterize_kdv: unexpected P_j Q_j term");

    GateSchedule sched;
    sched.n_modes = n;
    sched.p = p;
    sched.dt = tau / p;
    sched.decomposition = expand_cubic ? "kdv_expanded" : "kdv";
    sched.source_hash = h_kdv.hash();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const double c = detail::pq_coeff(h_kdv, j, k);
            if (c != 0.0)
                sched.step_gates.push_back({GateKind::BS, {j, k}, 0.5 * c * sched.dt});
        }
    for (const auto& t : h_kdv.cubic_terms()) {
        // exp(-i dt c sym(P_j Q_k^2)) = exp(+i (-c dt) P_j Q_k^2): j differs from k
        // in the KdV stencil, so the Weyl correction vanishes.
        const double s = -t.coeff * sched.dt;
        if (expand_cubic)
            detail::expand_cubic_gate(sched.step_gates, t.p_mode, t.q_k, s);
        else
            sched.step_gates.push_back({GateKind::CUBIC, {t.p_mode, t.q_k}, s});
    }
    return sched;
}

// ---------------------------------------------------------------------------
// OPO hardware parameter mapping

struct OpoParams {
    double tau;    // propagation / round-trip time, seconds
    double r;      // total accumulated squeezing over p passes
    double theta;  // beamsplitter angle, radians (field reflectivity cos theta)
    int p;         // round trips
};

inline OpoParams opo_params_from_oscillator(double m, double omega, double tau, int p) {
    if (m <= 0.0) throw DimensionError("opo_params_from_oscillator: mass must be positive");
    if (p < 1) throw DimensionError("opo_params_from_oscillator: p must be >= 1");
    OpoParams out;
    out.tau = tau;
    out.p = p;
    out.r = p * tau * 0.5 * (1.0 / m - m * omega * omega);
    out.theta = tau * 0.5 * (1.0 / m + m * omega * omega);
    return out;
}

inline std::pair<double, double> oscillator_from_opo(const OpoParams& params) {
    const double rp = params.r / params.p;
    const double disc = params.theta * params.theta - rp * rp;
    if (disc <= 0.0)
        throw DimensionError("oscillator_from_opo: theta^2 <= (r/p)^2 gives an imaginary frequency");
    const double m = params.tau / (params.theta + rp);
    const double omega = std::sqrt(disc) / params.tau;
    return {m, omega};
}

}  // namespace kvn
