#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kvn/consistency.hpp"
#include "kvn/execute.hpp"
#include "kvn/problems.hpp"

namespace kvn {

struct Check {
    std::string name;
    bool pass;
    double value;
    double threshold;  // pass condition depends on the check; recorded for the report
};

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

// Interior-subspace residuals of [Q_j, H]/i = v_j(Q) for the three problems.
inline std::vector<Check> verify_suite_heisenberg() {
    std::vector<Check> checks;
    auto run = [&](const std::string& name, const PolyVectorField& field, int cutoff) {
        KvnHamiltonian h = build_kvn_hamiltonian(field);
        Vector res = verify_heisenberg_consistency(h, field, cutoff);
        checks.push_back({name, res.maxCoeff() < 1e-10, res.maxCoeff(), 1e-10});
    };
    run("heisenberg.ho", make_harmonic_oscillator(1.0, 1.0).field, 12);
    Vector masses = Vector::Ones(2), kappa = Vector::Ones(2);
    Matrix kp = Matrix::Zero(2, 2);
    kp(0, 1) = kp(1, 0) = 0.5;
    run("heisenberg.coupled_n2", make_coupled_network(masses, kappa, kp).field, 6);
    run("heisenberg.kdv_n3", kdv_field(3, 1.0, KdvVariant::Corrected), 8);
    return checks;
}

// Eq.-(40) identity fidelity and monotone truncation deficit over a cutoff sweep.
inline std::vector<Check> verify_suite_cubic40() {
    std::vector<Check> checks;
    double prev_deficit = 2.0;
    bool monotone = true;
    double fid40 = 0.0;
    for (int cutoff : {20, 30, 40}) {
        double fid = verify_cubic_decomposition(0.1, 0.1, cutoff);
        double deficit = 1.0 - fid;
        if (deficit > prev_deficit) monotone = false;
        prev_deficit = deficit;
        if (cutoff == 40) fid40 = fid;
    }
    checks.push_back({"cubic40.fidelity_cutoff40", fid40 >= 1.0 - 1e-3, fid40, 1.0 - 1e-3});
    checks.push_back({"cubic40.deficit_monotone", monotone, monotone ? 1.0 : 0.0, 1.0});
    return checks;
}

// First-order Trotter convergence of both oscillator decompositions,
// plus symplectic hygiene of every compiled schedule.
inline std::vector<Check> verify_suite_trotter(double m = 1.0, double omega = 2.0,
                                               double tau = 1.0) {
    std::vector<Check> checks;
    ProblemBundle ho = make_harmonic_oscillator(m, omega);
    Matrix s_exact = exact_propagator(ho.hamiltonian, tau).S;
    std::vector<int> ps = {4, 8, 16, 32, 64};
    std::vector<double> err_cx, err_tb;
    double max_defect = 0.0;
    for (int p : ps) {
        SymplecticGate g_cx = schedule_symplectic(trotterize_cx(ho.hamiltonian, tau, p));
        SymplecticGate g_tb = schedule_symplectic(trotterize_tms_bs(ho.hamiltonian, tau, p));
        max_defect = std::max({max_defect, g_cx.symplectic_defect(), g_tb.symplectic_defect()});
        err_cx.push_back((g_cx.S - s_exact).norm());
        err_tb.push_back((g_tb.S - s_exact).norm());
    }
    auto ratios_ok = [](const std::vector<double>& e) {
        for (std::size_t i = 1; i < e.size(); ++i) {
            double r = e[i] / e[i - 1];
            if (r < 0.4 || r > 0.6) return false;
        }
        return true;
    };
    auto order = [&](const std::vector<double>& e) {
        // log-log least squares slope of error vs p
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            double x = std::log(double(ps[i])), y = std::log(e[i]);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        double nn = double(e.size());
        return -(nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    };
    checks.push_back({"trotter.cx_halving", ratios_ok(err_cx), err_cx.back(), 0.6});
    checks.push_back({"trotter.tms_bs_halving", ratios_ok(err_tb), err_tb.back(), 0.6});
    checks.push_back({"trotter.cx_order", order(err_cx) >= 0.9, order(err_cx), 0.9});
    checks.push_back({"trotter.tms_bs_order", order(err_tb) >= 0.9, order(err_tb), 0.9});
    // the two decompositions approximate the same exponential
    for (std::size_t i = 0; i < ps.size(); ++i) {
        Matrix a = schedule_symplectic(trotterize_cx(ho.hamiltonian, tau, ps[i])).S;
        Matrix b = schedule_symplectic(trotterize_tms_bs(ho.hamiltonian, tau, ps[i])).S;
        if ((a - b).norm() > err_cx[i] + err_tb[i]) {
            checks.push_back({"trotter.decomposition_agreement", false, (a - b).norm(),
                              err_cx[i] + err_tb[i]});
            break;
        }
        if (i + 1 == ps.size())
            checks.push_back({"trotter.decomposition_agreement", true, (a - b).norm(),
                              err_cx[i] + err_tb[i]});
    }
    checks.push_back({"trotter.symplectic_defect", max_defect < 1e-10, max_defect, 1e-10});
    return checks;
}

// Fock vs Gaussian agreement for the harmonic oscillator, plus norm/leakage
// hygiene of the Fock evolution.
inline std::vector<Check> verify_suite_backends(int cutoff = 30) {
    std::vector<Check> checks;
    const double m = 1.0, omega = 1.3, squeeze = 0.4;
    ProblemBundle ho = make_harmonic_oscillator(m, omega);
    Vector u0(2);
    u0 << 1.0, 0.0;

    FockState fock = prepare_initial(u0, squeeze, cutoff, 1e-8);
    SparseOp hm = hamiltonian_matrix(ho.hamiltonian, 2, cutoff);

    GaussianState gauss = GaussianState::vacuum(2);
    Matrix sq = Matrix::Identity(4, 4);
    sq(0, 0) = sq(1, 1) = std::exp(-squeeze);
    sq(2, 2) = sq(3, 3) = std::exp(squeeze);
    gauss = apply_gate(gauss, {sq, Vector::Zero(4)});
    gauss.mean.head(2) = u0;

    double max_mean_dev = 0.0, max_var_dev = 0.0, max_norm_drift = 0.0, max_leak = 0.0;
    const int samples = 26;
    for (int i = 0; i <= samples; ++i) {
        double t = 5.0 * i / samples;
        FockState ft = evolve(fock, hm, t, 1, 1e-8);
        GaussianState gt = apply_gate(gauss, exact_propagator(ho.hamiltonian, t));
        auto [gmean, gvar] = quadrature_expectations(gt);
        for (int mode = 0; mode < 2; ++mode) {
            max_mean_dev = std::max(max_mean_dev, std::abs(q_mean(ft, mode) - gmean(mode)));
            max_var_dev = std::max(max_var_dev, std::abs(q_variance(ft, mode) - gvar(mode)));
        }
        max_norm_drift = std::max(max_norm_drift, std::abs(ft.norm() - 1.0));
        max_leak = std::max(max_leak, ft.leakage());
    }
    checks.push_back({"backends.mean_agreement", max_mean_dev < 1e-6, max_mean_dev, 1e-6});
    checks.push_back({"backends.var_agreement", max_var_dev < 1e-5, max_var_dev, 1e-5});
    checks.push_back({"backends.norm_drift", max_norm_drift < 1e-9, max_norm_drift, 1e-9});
    checks.push_back({"backends.leakage", max_leak < 1e-8, max_leak, 1e-8});
    return checks;
}

}  // namespace kvn
