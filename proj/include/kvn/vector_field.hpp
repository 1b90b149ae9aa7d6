#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "kvn/errors.hpp"

namespace kvn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One c * u_k * u_l contribution to component v_j. Stored with k <= l.
struct QuadraticTerm {
    int component;  // j
    int var_k;
    int var_l;
    double coeff;
};

// Polynomial vector field v(u) over n_vars real variables, degree <= 2
// per component:  v = constant + linear * u + sum of quadratic terms.
class PolyVectorField {
public:
    explicit PolyVectorField(int n_vars)
        : n_vars_(n_vars),
          linear_(Matrix::Zero(n_vars, n_vars)),
          constant_(Vector::Zero(n_vars)) {
        if (n_vars <= 0) throw DimensionError("PolyVectorField: n_vars must be positive");
    }

    int n_vars() const { return n_vars_; }
    const Matrix& linear() const { return linear_; }
    const Vector& constant() const { return constant_; }
    const std::vector<QuadraticTerm>& quadratic() const { return quadratic_; }

    void set_linear(const Matrix& a) {
        if (a.rows() != n_vars_ || a.cols() != n_vars_)
            throw DimensionError("PolyVectorField: linear matrix shape mismatch");
        linear_ = a;
    }

    void set_constant(const Vector& c) {
        if (c.size() != n_vars_)
            throw DimensionError("PolyVectorField: constant vector length mismatch");
        constant_ = c;
    }

    void add_linear(int component, int var, double coeff) {
        check_index(component);
        check_index(var);
        linear_(component, var) += coeff;
    }

    // Adds c * u_k * u_l to v_j; indices are canonicalized to k <= l.
    void add_quadratic(int component, int var_k, int var_l, double coeff) {
        check_index(component);
        check_index(var_k);
        check_index(var_l);
        if (coeff == 0.0) return;
        if (var_k > var_l) std::swap(var_k, var_l);
        for (auto& t : quadratic_) {
            if (t.component == component && t.var_k == var_k && t.var_l == var_l) {
                t.coeff += coeff;
                return;
            }
        }
        quadratic_.push_back({component, var_k, var_l, coeff});
    }

    Vector evaluate(const Vector& u) const {
        if (u.size() != n_vars_)
            throw DimensionError("evaluate_field: u has wrong length");
        Vector v = constant_ + linear_ * u;
        for (const auto& t : quadratic_)
            v(t.component) += t.coeff * u(t.var_k) * u(t.var_l);
        return v;
    }

    bool has_quadratic() const { return !quadratic_.empty(); }

    // Scaled sum alpha*this + beta*other; used by the linearity tests.
    static PolyVectorField combine(double alpha, const PolyVectorField& f,
                                   double beta, const PolyVectorField& g) {
        if (f.n_vars() != g.n_vars())
            throw DimensionError("combine: mismatched n_vars");
        PolyVectorField out(f.n_vars());
        out.set_linear(alpha * f.linear() + beta * g.linear());
        out.set_constant(alpha * f.constant() + beta * g.constant());
        for (const auto& t : f.quadratic_)
            out.add_quadratic(t.component, t.var_k, t.var_l, alpha * t.coeff);
        for (const auto& t : g.quadratic_)
            out.add_quadratic(t.component, t.var_k, t.var_l, beta * t.coeff);
        return out;
    }

private:
    void check_index(int i) const {
        if (i < 0 || i >= n_vars_)
            throw DimensionError("PolyVectorField: index out of range");
    }

    int n_vars_;
    Matrix linear_;
    Vector constant_;
    std::vector<QuadraticTerm> quadratic_;
};

inline Vector evaluate_field(const PolyVectorField& field, const Vector& u) {
    return field.evaluate(u);
}

}  // namespace kvn
