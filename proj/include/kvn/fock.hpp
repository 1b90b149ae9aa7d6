#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "kvn/gates.hpp"
#include "kvn/hamiltonian.hpp"

namespace kvn {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using SparseOp = Eigen::SparseMatrix<Cplx>;

constexpr std::int64_t kDefaultCapacity = 1 << 22;
constexpr double kDefaultLeakThreshold = 1e-6;

inline std::int64_t fock_dimension(int n_modes, int cutoff,
                                   std::int64_t capacity = kDefaultCapacity) {
    if (n_modes <= 0 || cutoff <= 0)
        throw DimensionError("fock_dimension: n_modes and cutoff must be positive");
    std::int64_t dim = 1;
    for (int m = 0; m < n_modes; ++m) {
        dim *= cutoff;
        if (dim > capacity)
            throw CapacityError("fock space dimension exceeds capacity limit");
    }
    return dim;
}

// ---------------------------------------------------------------------------
// Single-mode dense building blocks

inline CMat annihilation_dense(int cutoff) {
    CMat a = CMat::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline CMat q_dense(int cutoff) {
    CMat a = annihilation_dense(cutoff);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

inline CMat p_dense(int cutoff) {
    CMat a = annihilation_dense(cutoff);
    return Cplx(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
}

// Cached eigendecompositions of the single-mode quadratures, used to apply
// quadrature-diagonal gates as phase masks in the rotated basis.
struct QuadratureEigen {
    explicit QuadratureEigen(int cutoff) {
        Eigen::SelfAdjointEigenSolver<CMat> esq(q_dense(cutoff));
        Eigen::SelfAdjointEigenSolver<CMat> esp(p_dense(cutoff));
        vq = esq.eigenvectors();
        dq = esq.eigenvalues();
        vp = esp.eigenvectors();
        dp = esp.eigenvalues();
    }
    CMat vq, vp;
    Vector dq, dp;
};

// ---------------------------------------------------------------------------
// FockState

// Amplitudes over the truncated multimode number basis |n_1,...,n_N>,
// mode-major with mode 0 slowest: index = ((n_1*d + n_2)*d + ...)*d + n_N.
struct FockState {
    int n_modes;
    int cutoff;
    CVec amplitudes;

    static FockState vacuum(int n_modes, int cutoff,
                            std::int64_t capacity = kDefaultCapacity) {
        FockState s{n_modes, cutoff,
                    CVec::Zero(fock_dimension(n_modes, cutoff, capacity))};
        s.amplitudes(0) = 1.0;
        return s;
    }

    double norm() const { return amplitudes.norm(); }

    // Probability mass on basis states with any occupation at the cutoff edge.
    double leakage() const {
        const std::int64_t dim = amplitudes.size();
        double mass = 0.0;
        for (std::int64_t i = 0; i < dim; ++i) {
            std::int64_t rem = i;
            bool edge = false;
            for (int m = n_modes - 1; m >= 0; --m) {
                if (rem % cutoff == cutoff - 1) { edge = true; break; }
                rem /= cutoff;
            }
            if (edge) mass += std::norm(amplitudes(i));
        }
        return mass;
    }
};

inline void check_leakage(const FockState& s, double threshold) {
    double leak = s.leakage();
    if (leak > threshold)
        throw LeakageError("fock truncation leakage above threshold", leak);
}

// ---------------------------------------------------------------------------
// Local (per-mode) gate application

inline void apply_single_mode(FockState& state, int mode, const CMat& u) {
    const int d = state.cutoff;
    if (mode < 0 || mode >= state.n_modes)
        throw DimensionError("apply_single_mode: mode out of range");
    std::int64_t inner = 1;
    for (int m = mode + 1; m < state.n_modes; ++m) inner *= d;
    const std::int64_t outer = state.amplitudes.size() / (inner * d);
    CVec scratch(d);
    for (std::int64_t o = 0; o < outer; ++o) {
        for (std::int64_t i = 0; i < inner; ++i) {
            const std::int64_t base = o * d * inner + i;
            for (int n = 0; n < d; ++n) scratch(n) = state.amplitudes(base + n * inner);
            scratch = (u * scratch).eval();
            for (int n = 0; n < d; ++n) state.amplitudes(base + n * inner) = scratch(n);
        }
    }
}

// u acts on the local ordering (n_a * d + n_b).
inline void apply_two_mode(FockState& state, int mode_a, int mode_b, const CMat& u) {
    const int d = state.cutoff;
    if (mode_a == mode_b) throw DimensionError("apply_two_mode: coincident modes");
    if (mode_a < 0 || mode_a >= state.n_modes || mode_b < 0 || mode_b >= state.n_modes)
        throw DimensionError("apply_two_mode: mode out of range");
    std::int64_t sa = 1, sb = 1;
    for (int m = mode_a + 1; m < state.n_modes; ++m) sa *= d;
    for (int m = mode_b + 1; m < state.n_modes; ++m) sb *= d;
    const std::int64_t dim = state.amplitudes.size();
    CVec scratch(d * d);
    for (std::int64_t base = 0; base < dim; ++base) {
        std::int64_t rem = base;
        int na = 0, nb = 0;
        for (int m = state.n_modes - 1; m >= 0; --m) {
            int digit = int(rem % d);
            if (m == mode_a) na = digit;
            if (m == mode_b) nb = digit;
            rem /= d;
        }
        if (na != 0 || nb != 0) continue;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                scratch(i * d + j) = state.amplitudes(base + i * sa + j * sb);
        scratch = (u * scratch).eval();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                state.amplitudes(base + i * sa + j * sb) = scratch(i * d + j);
    }
}

// exp(i c G_a x G_b) with G_a = Va Da Va^+ and G_b = Vb Db Vb^+: rotate both
// modes into the eigenbases, apply the phase mask, rotate back.
inline void apply_product_phase(FockState& state, int mode_a, int mode_b,
                                const CMat& va, const Vector& da, const CMat& vb,
                                const Vector& db, double c) {
    const int d = state.cutoff;
    apply_single_mode(state, mode_a, va.adjoint());
    apply_single_mode(state, mode_b, vb.adjoint());
    const std::int64_t dim = state.amplitudes.size();
    for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t rem = i;
        int na = 0, nb = 0;
        for (int m = state.n_modes - 1; m >= 0; --m) {
            int digit = int(rem % d);
            if (m == mode_a) na = digit;
            if (m == mode_b) nb = digit;
            rem /= d;
        }
        state.amplitudes(i) *= std::exp(Cplx(0, c * da(na) * db(nb)));
    }
    apply_single_mode(state, mode_a, va);
    apply_single_mode(state, mode_b, vb);
}

// exp(i c G) for a single-mode G = V D V^+.
inline void apply_phase_gate(FockState& state, int mode, const CMat& v,
                             const Vector& diag, double c) {
    CMat u = v * (Cplx(0, c) * diag.array().cast<Cplx>()).exp().matrix().asDiagonal() *
             v.adjoint();
    apply_single_mode(state, mode, u);
}

// ---------------------------------------------------------------------------
// Expectations

inline double q_mean(const FockState& state, int mode) {
    FockState w = state;
    apply_single_mode(w, mode, q_dense(state.cutoff));
    return state.amplitudes.dot(w.amplitudes).real();
}

inline double q_variance(const FockState& state, int mode) {
    FockState w = state;
    CMat q = q_dense(state.cutoff);
    apply_single_mode(w, mode, q);
    double m2 = w.amplitudes.squaredNorm();  // <Q^2> since Q is Hermitian
    double m1 = state.amplitudes.dot(w.amplitudes).real();
    return m2 - m1 * m1;
}

inline double p_mean(const FockState& state, int mode) {
    FockState w = state;
    apply_single_mode(w, mode, p_dense(state.cutoff));
    return state.amplitudes.dot(w.amplitudes).real();
}

// ---------------------------------------------------------------------------
// Multimode sparse operators

struct ModeOperators {
    int n_modes;
    int cutoff;
    std::vector<SparseOp> a, adag, q, p;
};

inline SparseOp embed_single(const CMat& op, int mode, int n_modes, int cutoff) {
    std::int64_t left = 1, right = 1;
    for (int m = 0; m < mode; ++m) left *= cutoff;
    for (int m = mode + 1; m < n_modes; ++m) right *= cutoff;
    SparseOp sp = op.sparseView();
    SparseOp il(left, left);
    il.setIdentity();
    SparseOp ir(right, right);
    ir.setIdentity();
    SparseOp tmp = Eigen::kroneckerProduct(il, sp).eval();
    return Eigen::kroneckerProduct(tmp, ir).eval();
}

// Ladder and quadrature operators tensored into the full truncated space.
inline ModeOperators build_operators(int n_modes, int cutoff,
                                     std::int64_t capacity = kDefaultCapacity) {
    fock_dimension(n_modes, cutoff, capacity);
    ModeOperators ops{n_modes, cutoff, {}, {}, {}, {}};
    CMat ad = annihilation_dense(cutoff);
    for (int m = 0; m < n_modes; ++m) {
        ops.a.push_back(embed_single(ad, m, n_modes, cutoff));
        ops.adag.push_back(embed_single(ad.adjoint(), m, n_modes, cutoff));
        ops.q.push_back(embed_single(q_dense(cutoff), m, n_modes, cutoff));
        ops.p.push_back(embed_single(p_dense(cutoff), m, n_modes, cutoff));
    }
    return ops;
}

inline double hermiticity_defect(const SparseOp& h) {
    return (SparseOp(h.adjoint()) - h).norm();
}

// Truncated-Fock matrix of a KvN Hamiltonian. Quadratic part 1/2 r^T M r is
// assembled entrywise as 1/2 M_ab r_a r_b; cubic terms as the Weyl form
// c/2 (P_j Q_k Q_l + Q_k Q_l P_j).
inline SparseOp hamiltonian_matrix(const KvnHamiltonian& h, int n_modes, int cutoff,
                                   std::int64_t capacity = kDefaultCapacity) {
    if (n_modes != h.n_modes())
        throw DimensionError("hamiltonian_matrix: n_modes mismatch");
    std::int64_t dim = fock_dimension(n_modes, cutoff, capacity);
    ModeOperators ops = build_operators(n_modes, cutoff, capacity);
    auto quad = [&](int idx) -> const SparseOp& {
        return idx < n_modes ? ops.q[idx] : ops.p[idx - n_modes];
    };
    SparseOp out(dim, dim);
    const Matrix& m = h.quadratic();
    for (int a = 0; a < 2 * n_modes; ++a)
        for (int b = 0; b < 2 * n_modes; ++b)
            if (m(a, b) != 0.0)
                out = out + SparseOp(0.5 * m(a, b) * SparseOp(quad(a) * quad(b)));
    for (int a = 0; a < 2 * n_modes; ++a)
        if (h.linear()(a) != 0.0) out = out + SparseOp(h.linear()(a) * quad(a));
    for (const auto& t : h.cubic_terms()) {
        SparseOp qq = SparseOp(ops.q[t.q_k] * ops.q[t.q_l]);
        SparseOp pqq = SparseOp(ops.p[t.p_mode] * qq);
        SparseOp qqp = SparseOp(qq * ops.p[t.p_mode]);
        out = out + SparseOp(Cplx(0.5 * t.coeff) * SparseOp(pqq + qqp));
    }
    if (h.scalar_shift() != 0.0) {
        SparseOp id(dim, dim);
        id.setIdentity();
        out = out + SparseOp(Cplx(h.scalar_shift()) * id);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Time evolution

namespace detail {

// One Lanczos pass: exp(-i H dt) v for Hermitian sparse H.
// Returns the error estimate from the last Krylov coefficient.
inline double lanczos_step(const SparseOp& h, CVec& v, double dt, int m) {
    const std::int64_t dim = v.size();
    const double beta0 = v.norm();
    if (beta0 == 0.0) return 0.0;
    std::vector<CVec> basis;
    basis.reserve(m);
    basis.push_back(v / beta0);
    Vector alpha(m), beta(m);
    int k = 0;
    for (; k < m; ++k) {
        CVec w = h * basis[k];
        alpha(k) = basis[k].dot(w).real();
        w -= alpha(k) * basis[k];
        if (k > 0) w -= beta(k - 1) * basis[k - 1];
        // full reorthogonalization; subspace is small
        for (const auto& b : basis) w -= b.dot(w) * b;
        beta(k) = w.norm();
        if (beta(k) < 1e-14 || k == m - 1) { ++k; break; }
        basis.push_back(w / beta(k));
    }
    CMat t = CMat::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        t(i, i) = alpha(i);
        if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(t);
    CVec small = es.eigenvectors() *
                 ((Cplx(0, -dt) * es.eigenvalues().array().cast<Cplx>()).exp() *
                  es.eigenvectors().row(0).adjoint().array())
                     .matrix();
    CVec out = CVec::Zero(dim);
    for (int i = 0; i < k; ++i) out += small(i) * basis[i];
    double err = (k == m) ? std::abs(beta(k - 1) * small(k - 1)) : 0.0;
    v = beta0 * out;
    return err;
}

}  // namespace detail

// exp(-i H t) via dense eigendecomposition (dim <= 2000) or adaptive Lanczos.
inline FockState evolve(const FockState& state, const SparseOp& h, double t,
                        int steps = 1, double leak_threshold = kDefaultLeakThreshold) {
    if (h.rows() != state.amplitudes.size())
        throw DimensionError("evolve: operator/state dimension mismatch");
    if (hermiticity_defect(h) > 1e-12)
        throw DimensionError("evolve: Hamiltonian is not Hermitian");
    if (steps < 1) throw DimensionError("evolve: steps must be >= 1");
    FockState out = state;
    const std::int64_t dim = h.rows();
    if (dim <= 2000) {
        Eigen::SelfAdjointEigenSolver<CMat> es{CMat(h)};
        CVec phases =
            (Cplx(0, -t) * es.eigenvalues().array().cast<Cplx>()).exp().matrix();
        out.amplitudes = es.eigenvectors() *
                         (phases.array() *
                          (es.eigenvectors().adjoint() * out.amplitudes).array())
                             .matrix();
    } else {
        const int krylov_m = 40;
        const double tol = 1e-10;
        for (int s = 0; s < steps; ++s) {
            double remaining = t / steps;
            double dt = remaining;
            while (remaining > 1e-300 * std::abs(t)) {
                CVec trial = out.amplitudes;
                double err = detail::lanczos_step(h, trial, dt, krylov_m);
                if (err > tol && dt > 1e-8 * std::abs(t)) {
                    dt *= 0.5;
                    continue;
                }
                out.amplitudes = trial;
                remaining -= dt;
                dt = std::min(dt * 2.0, remaining);
                if (remaining <= 0.0) break;
            }
        }
    }
    check_leakage(out, leak_threshold);
    return out;
}

// ---------------------------------------------------------------------------
// Non-Gaussian gates

enum class CubicGenerator { Q3, P3 };

inline FockState cubic_phase_gate(const FockState& state, int mode,
                                  CubicGenerator gen, double strength,
                                  double leak_threshold = kDefaultLeakThreshold) {
    FockState out = state;
    QuadratureEigen eig(state.cutoff);
    if (gen == CubicGenerator::Q3)
        apply_phase_gate(out, mode, eig.vq, eig.dq.array().cube().matrix(), strength);
    else
        apply_phase_gate(out, mode, eig.vp, eig.dp.array().cube().matrix(), strength);
    check_leakage(out, leak_threshold);
    return out;
}

// ---------------------------------------------------------------------------
// State preparation

// Product of single-mode Q-squeezed displaced states with <Q_j> = u0_j,
// <P_j> = 0, Var(Q_j) = e^{-2s}/2.
//
// The squeezed vacuum exp((s/2)(a^2 - adag^2))|0> is written down from its
// closed-form number-basis coefficients (even n only) and renormalized;
// unlike exponentiating the truncated generator, this puts no spurious mass
// at the truncation edge.
inline FockState prepare_initial(const Vector& u0, double squeezing, int cutoff,
                                 double leak_threshold = kDefaultLeakThreshold,
                                 std::int64_t capacity = kDefaultCapacity) {
    const int n_modes = static_cast<int>(u0.size());
    const std::int64_t dim = fock_dimension(n_modes, cutoff, capacity);
    CVec squeezed = CVec::Zero(cutoff);
    squeezed(0) = 1.0;
    for (int k = 1; 2 * k < cutoff; ++k)
        squeezed(2 * k) = squeezed(2 * k - 2) * (-std::tanh(squeezing)) *
                          std::sqrt((2.0 * k - 1.0) / (2.0 * k));
    squeezed.normalize();
    QuadratureEigen eig(cutoff);
    std::vector<CVec> per_mode(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        CVec v = squeezed;
        // displacement exp(-i u0 P) shifts <Q> by u0
        CMat disp = eig.vp *
                    (Cplx(0, -u0(m)) * eig.dp.array().cast<Cplx>()).exp().matrix().asDiagonal() *
                    eig.vp.adjoint();
        per_mode[m] = disp * v;
    }
    FockState out{n_modes, cutoff, CVec::Ones(dim)};
    for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t rem = i;
        for (int m = n_modes - 1; m >= 0; --m) {
            out.amplitudes(i) *= per_mode[m](rem % cutoff);
            rem /= cutoff;
        }
    }
    check_leakage(out, leak_threshold);
    return out;
}

// ---------------------------------------------------------------------------
// Cubic-gate decomposition check

// Applies exp(i 3 alpha t P_0 Q_1^2) and its 9-gate Gaussian+cubic expansion
// to a common displaced squeezed two-mode state; returns |<lhs|rhs>|^2.
inline double verify_cubic_decomposition(double alpha, double t, int cutoff,
                                         double leak_threshold = 1e-3) {
    Vector u0(2);
    u0 << 0.5, 0.3;
    FockState init = prepare_initial(u0, 0.5, cutoff, leak_threshold);
    QuadratureEigen eig(cutoff);
    Vector dq2 = eig.dq.array().square().matrix();
    Vector dp3 = eig.dp.array().cube().matrix();
    Vector dq3 = eig.dq.array().cube().matrix();

    FockState lhs = init;
    apply_product_phase(lhs, 0, 1, eig.vp, eig.dp, eig.vq, dq2, 3.0 * alpha * t);

    FockState rhs = init;
    auto qq = [&](double c) { apply_product_phase(rhs, 0, 1, eig.vq, eig.dq, eig.vq, eig.dq, c); };
    auto p3 = [&](double s) { apply_phase_gate(rhs, 0, eig.vp, dp3, s); };
    // application order = right-to-left reading of the operator product
    apply_phase_gate(rhs, 0, eig.vq, dq3, 0.75 * alpha * alpha * alpha * t);
    p3(-t);
    qq(alpha);
    p3(t);
    qq(-2.0 * alpha);
    p3(-t);
    qq(-alpha);
    p3(t);
    qq(2.0 * alpha);

    check_leakage(lhs, leak_threshold);
    check_leakage(rhs, leak_threshold);
    return std::norm(lhs.amplitudes.dot(rhs.amplitudes));
}

}  // namespace kvn
