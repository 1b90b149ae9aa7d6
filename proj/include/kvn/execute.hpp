#pragma once

#include <functional>
#include <optional>

#include "kvn/fock.hpp"
#include "kvn/gaussian.hpp"
#include "kvn/schedule.hpp"

namespace kvn {

// Composed symplectic action of a (Gaussian-only) schedule.
inline SymplecticGate schedule_symplectic(const GateSchedule& sched) {
    SymplecticGate total = SymplecticGate::identity(sched.n_modes);
    for (const auto& g : sched.gates()) {
        if (!is_gaussian(g.kind))
            throw UnsupportedHamiltonianError(
                "schedule_symplectic: schedule contains non-Gaussian gates");
        total = gate_for(g.kind, g.modes, g.param, sched.n_modes).compose_after(total);
    }
    return total;
}

inline GaussianState apply_schedule(const GaussianState& state, const GateSchedule& sched) {
    return apply_gate(state, schedule_symplectic(sched));
}

// Applies schedule gates to a Fock state. Two-mode BS/TMS generators are
// exponentiated in the local d^2 subspace; everything else reduces to
// quadrature-diagonal phase masks.
class FockGateApplier {
public:
    explicit FockGateApplier(int cutoff, double leak_threshold = kDefaultLeakThreshold)
        : cutoff_(cutoff), leak_threshold_(leak_threshold), eig_(cutoff) {
        dq2_ = eig_.dq.array().square().matrix();
        dq3_ = eig_.dq.array().cube().matrix();
        dp3_ = eig_.dp.array().cube().matrix();
    }

    void apply(FockState& state, const Gate& g) {
        const int a = g.modes[0], b = g.modes[1];
        switch (g.kind) {
            case GateKind::BS:
                apply_two_mode(state, a, b, local_pair(false, g.param));
                break;
            case GateKind::TMS:
                apply_two_mode(state, a, b, local_pair(true, g.param));
                break;
            case GateKind::CX:  // exp(-i alpha Q_a P_b)
                apply_product_phase(state, a, b, eig_.vq, eig_.dq, eig_.vp, eig_.dp,
                                    -g.param);
                break;
            case GateKind::QQ:  // exp(+i c Q_a Q_b)
                apply_product_phase(state, a, b, eig_.vq, eig_.dq, eig_.vq, eig_.dq,
                                    g.param);
                break;
            case GateKind::CUBIC:  // exp(+i s P_a Q_b^2)
                apply_product_phase(state, a, b, eig_.vp, eig_.dp, eig_.vq, dq2_,
                                    g.param);
                break;
            case GateKind::CUBIC_Q:
                apply_phase_gate(state, a, eig_.vq, dq3_, g.param);
                break;
            case GateKind::CUBIC_P:
                apply_phase_gate(state, a, eig_.vp, dp3_, g.param);
                break;
            case GateKind::DISPLACE:  // exp(-i d P_a)
                apply_phase_gate(state, a, eig_.vp, eig_.dp, -g.param);
                break;
        }
    }

    double leak_threshold() const { return leak_threshold_; }

private:
    // exp(-i s (P_a Q_b +/- Q_a P_b)) in the local (n_a*d + n_b) ordering.
    CMat local_pair(bool tms, double s) {
        CMat q = q_dense(cutoff_), p = p_dense(cutoff_);
        CMat gen = kron_local(p, q) + (tms ? 1.0 : -1.0) * kron_local(q, p);
        Eigen::SelfAdjointEigenSolver<CMat> es(gen);
        return es.eigenvectors() *
               (Cplx(0, -s) * es.eigenvalues().array().cast<Cplx>()).exp().matrix().asDiagonal() *
               es.eigenvectors().adjoint();
    }

    CMat kron_local(const CMat& x, const CMat& y) {
        const int d = cutoff_;
        CMat out(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                out.block(i * d, j * d, d, d) = x(i, j) * y;
        return out;
    }

    int cutoff_;
    double leak_threshold_;
    QuadratureEigen eig_;
    Vector dq2_, dq3_, dp3_;
};

// Runs the full schedule; on_step(step_index, state) fires after each of the
// p Trotter steps when provided.
inline FockState apply_schedule_fock(
    const FockState& state, const GateSchedule& sched,
    double leak_threshold = kDefaultLeakThreshold,
    const std::function<void(int, const FockState&)>& on_step = nullptr) {
    if (sched.n_modes != state.n_modes)
        throw DimensionError("apply_schedule_fock: mode count mismatch");
    FockGateApplier applier(state.cutoff, leak_threshold);
    FockState out = state;
    for (int s = 0; s < sched.p; ++s) {
        for (const auto& g : sched.step_gates) applier.apply(out, g);
        check_leakage(out, leak_threshold);
        if (on_step) on_step(s, out);
    }
    return out;
}

}  // namespace kvn
