#pragma once

#include <vector>

#include "kvn/fock.hpp"

namespace kvn {

// Residuals ||[Q_j, H]/i - v_j(Q)|| restricted to the interior subspace
// (all occupations < cutoff - (deg H + 1)), where every truncated operator
// application is exact. One residual per mode.
inline Vector verify_heisenberg_consistency(const KvnHamiltonian& h,
                                            const PolyVectorField& field, int cutoff,
                                            std::int64_t capacity = kDefaultCapacity) {
    const int n = h.n_modes();
    if (field.n_vars() != n)
        throw DimensionError("verify_heisenberg_consistency: field/hamiltonian mismatch");
    const std::int64_t dim = fock_dimension(n, cutoff, capacity);
    ModeOperators ops = build_operators(n, cutoff, capacity);
    SparseOp hm = hamiltonian_matrix(h, n, cutoff, capacity);

    const int degree = h.is_quadratic() ? 2 : 3;
    const int margin = degree + 1;
    std::vector<std::int64_t> interior;
    for (std::int64_t i = 0; i < dim; ++i) {
        std::int64_t rem = i;
        bool ok = true;
        for (int m = 0; m < n; ++m) {
            if (rem % cutoff >= cutoff - margin) { ok = false; break; }
            rem /= cutoff;
        }
        if (ok) interior.push_back(i);
    }

    Vector residuals(n);
    for (int j = 0; j < n; ++j) {
        // v_j(Q) as an operator polynomial
        SparseOp vj(dim, dim);
        if (field.constant()(j) != 0.0) {
            SparseOp id(dim, dim);
            id.setIdentity();
            vj = vj + SparseOp(Cplx(field.constant()(j)) * id);
        }
        for (int k = 0; k < n; ++k)
            if (field.linear()(j, k) != 0.0)
                vj = vj + SparseOp(Cplx(field.linear()(j, k)) * ops.q[k]);
        for (const auto& t : field.quadratic())
            if (t.component == j)
                vj = vj + SparseOp(Cplx(t.coeff) * SparseOp(ops.q[t.var_k] * ops.q[t.var_l]));

        SparseOp comm = SparseOp(ops.q[j] * hm) - SparseOp(hm * ops.q[j]);
        CMat r = CMat(comm) / Cplx(0, 1) - CMat(vj);
        double sq = 0.0;
        for (std::int64_t col : interior) sq += r.col(col).squaredNorm();
        residuals(j) = std::sqrt(sq);
    }
    return residuals;
}

}  // namespace kvn
