#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <cstring>
#include <vector>

#include "kvn/vector_field.hpp"

namespace kvn {

// c * (P_j Q_k Q_l) stored in symmetrized (Weyl) form
// c/2 * (P_j Q_k Q_l + Q_k Q_l P_j); q_k <= q_l canonically.
struct CubicTerm {
    int p_mode;  // j
    int q_k;
    int q_l;
    double coeff;
};

// KvN Hamiltonian over N qumodes in the quadrature ordering
// r = (Q_1..Q_N, P_1..P_N), symplectic form Omega = [[0, I], [-I, 0]].
//
//   H = 1/2 r^T M r + linear . r + cubic terms + scalar_shift
//
// Each stored piece is symmetrized, so the represented operator is
// Hermitian by construction.
class KvnHamiltonian {
public:
    explicit KvnHamiltonian(int n_modes)
        : n_modes_(n_modes),
          quadratic_(Matrix::Zero(2 * n_modes, 2 * n_modes)),
          linear_(Vector::Zero(2 * n_modes)),
          scalar_shift_(0.0) {
        if (n_modes <= 0) throw DimensionError("KvnHamiltonian: n_modes must be positive");
    }

    int n_modes() const { return n_modes_; }
    const Matrix& quadratic() const { return quadratic_; }
    const Vector& linear() const { return linear_; }
    const std::vector<CubicTerm>& cubic_terms() const { return cubic_terms_; }
    double scalar_shift() const { return scalar_shift_; }
    bool is_quadratic() const { return cubic_terms_.empty(); }

    // Adds c * sym(P_j Q_k): with H = 1/2 r^T M r, the two symmetric entries
    // must each carry the full coefficient.
    void add_pq(int p_mode, int q_mode, double coeff) {
        check_mode(p_mode);
        check_mode(q_mode);
        quadratic_(q_mode, n_modes_ + p_mode) += coeff;
        quadratic_(n_modes_ + p_mode, q_mode) += coeff;
    }

    void add_linear_p(int p_mode, double coeff) {
        check_mode(p_mode);
        linear_(n_modes_ + p_mode) += coeff;
    }

    void add_cubic(int p_mode, int q_k, int q_l, double coeff) {
        check_mode(p_mode);
        check_mode(q_k);
        check_mode(q_l);
        if (coeff == 0.0) return;
        if (q_k > q_l) std::swap(q_k, q_l);
        for (auto& t : cubic_terms_) {
            if (t.p_mode == p_mode && t.q_k == q_k && t.q_l == q_l) {
                t.coeff += coeff;
                return;
            }
        }
        cubic_terms_.push_back({p_mode, q_k, q_l, coeff});
    }

    void add_scalar(double s) { scalar_shift_ += s; }

    // FNV-1a over the coefficient bytes; used as schedule provenance tag.
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](const void* p, std::size_t n) {
            const auto* b = static_cast<const unsigned char*>(p);
            for (std::size_t i = 0; i < n; ++i) {
                h ^= b[i];
                h *= 1099511628211ull;
            }
        };
        mix(&n_modes_, sizeof n_modes_);
        mix(quadratic_.data(), sizeof(double) * quadratic_.size());
        mix(linear_.data(), sizeof(double) * linear_.size());
        for (const auto& t : cubic_terms_) {
            mix(&t.p_mode, sizeof t.p_mode);
            mix(&t.q_k, sizeof t.q_k);
            mix(&t.q_l, sizeof t.q_l);
            mix(&t.coeff, sizeof t.coeff);
        }
        mix(&scalar_shift_, sizeof scalar_shift_);
        return h;
    }

private:
    void check_mode(int m) const {
        if (m < 0 || m >= n_modes_)
            throw DimensionError("KvnHamiltonian: mode index out of range");
    }

    int n_modes_;
    Matrix quadratic_;
    Vector linear_;
    std::vector<CubicTerm> cubic_terms_;
    double scalar_shift_;
};

// H_KvN = 1/2 (P . v(Q) + v(Q) . P), term by term:
//   constant c_j in v_j      ->  c_j P_j
//   linear A_jk u_k in v_j   ->  A_jk sym(P_j Q_k)
//   quadratic c u_k u_l      ->  c sym(P_j Q_k Q_l)
// The symmetrized storage already carries the -(i/2) div(v) correction,
// so the scalar shift is zero whenever div(v) has no constant part beyond
// what the symmetric quadratic form absorbs (true for every field here).
inline KvnHamiltonian build_kvn_hamiltonian(const PolyVectorField& field) {
    const int n = field.n_vars();
    KvnHamiltonian h(n);
    for (int j = 0; j < n; ++j) {
        if (field.constant()(j) != 0.0) h.add_linear_p(j, field.constant()(j));
        for (int k = 0; k < n; ++k) {
            double a = field.linear()(j, k);
            if (a != 0.0) h.add_pq(j, k, a);
        }
    }
    for (const auto& t : field.quadratic())
        h.add_cubic(t.component, t.var_k, t.var_l, t.coeff);
    return h;
}

}  // namespace kvn
