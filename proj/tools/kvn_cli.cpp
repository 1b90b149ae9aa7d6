// Command-line driver: select a problem, backend, and Trotterization, run the
// simulation, and export trajectories, gate schedules, and verification
// reports.
//
// Exit codes: 0 success, 1 failed verification, 2 invalid configuration,
// 3 truncation leakage overflow, 4 classical-oracle blow-up.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kvn/execute.hpp"
#include "kvn/io.hpp"
#include "kvn/verify.hpp"

namespace {

using namespace kvn;

struct RunConfig {
    std::string problem = "ho";
    std::string field_file;
    double m = 1.0;
    double omega = 1.0;
    int n = 4;              // oscillators (coupled) or grid points (kdv)
    double dx = 1.0;
    double mass_uniform = 1.0;
    double kappa = 1.0;     // uniform on-site spring
    double coupling = 0.5;  // uniform chain coupling kappa_{j,j+1}
    std::string variant = "corrected";

    std::string backend = "gaussian";
    std::string trotter = "exact";
    int p = 16;
    bool expand_cubic = false;
    bool strang = false;

    double t_end = 1.0;
    int samples = 100;
    int cutoff = 10;
    double squeeze = 0.0;
    double leak_threshold = kDefaultLeakThreshold;
    std::vector<double> u0_override;

    std::string output;
};

std::string resolve_output(const std::string& path) {
    const char* dir = std::getenv("KVN_OUTPUT_DIR");
    if (!dir || path.empty() || std::filesystem::path(path).is_absolute()) return path;
    return (std::filesystem::path(dir) / path).string();
}

ProblemBundle build_problem(const RunConfig& cfg) {
    if (cfg.problem == "ho") return make_harmonic_oscillator(cfg.m, cfg.omega);
    if (cfg.problem == "coupled") {
        Vector masses = Vector::Constant(cfg.n, cfg.mass_uniform);
        Vector kap = Vector::Constant(cfg.n, cfg.kappa);
        Matrix pair = Matrix::Zero(cfg.n, cfg.n);
        for (int j = 0; j + 1 < cfg.n; ++j) pair(j, j + 1) = pair(j + 1, j) = cfg.coupling;
        return make_coupled_network(masses, kap, pair);
    }
    if (cfg.problem == "kdv")
        return make_kdv(cfg.n, cfg.dx,
                        cfg.variant == "paper" ? KdvVariant::Paper : KdvVariant::Corrected);
    if (cfg.problem == "field") {
        PolyVectorField field = vector_field_from_json(load_json_file(cfg.field_file));
        ProblemBundle b{"field", field, build_kvn_hamiltonian(field),
                        Vector::Zero(field.n_vars()),
                        field.has_quadratic() ? Backend::Fock : Backend::Gaussian,
                        ProblemBundle::Oracle::Rk4};
        return b;
    }
    throw DimensionError("unknown problem id: " + cfg.problem);
}

GateSchedule build_schedule(const RunConfig& cfg, const ProblemBundle& bundle,
                            double tau) {
    if (cfg.trotter == "cx") return trotterize_cx(bundle.hamiltonian, tau, cfg.p);
    if (cfg.trotter == "tms_bs")
        return trotterize_tms_bs(bundle.hamiltonian, tau, cfg.p, cfg.strang);
    if (cfg.trotter == "coupled") return trotterize_coupled(bundle.hamiltonian, tau, cfg.p);
    if (cfg.trotter == "kdv")
        return trotterize_kdv(bundle.hamiltonian, tau, cfg.p, cfg.expand_cubic);
    throw DimensionError("unknown trotterization: " + cfg.trotter);
}

Vector initial_u0(const RunConfig& cfg, const ProblemBundle& bundle) {
    if (cfg.u0_override.empty()) return bundle.default_u0;
    if (static_cast<int>(cfg.u0_override.size()) != bundle.field.n_vars())
        throw DimensionError("--u0 length does not match the problem dimension");
    return Eigen::Map<const Vector>(cfg.u0_override.data(), cfg.u0_override.size());
}

std::vector<double> linspace(double t_end, int samples) {
    std::vector<double> t;
    for (int i = 0; i <= samples; ++i) t.push_back(t_end * i / samples);
    return t;
}

GaussianState gaussian_initial(const Vector& u0, double squeeze) {
    const int n = static_cast<int>(u0.size());
    GaussianState st = GaussianState::vacuum(n);
    for (int i = 0; i < n; ++i) {
        st.cov(i, i) = 0.5 * std::exp(-2.0 * squeeze);
        st.cov(n + i, n + i) = 0.5 * std::exp(2.0 * squeeze);
        st.mean(i) = u0(i);
    }
    return st;
}

double summarize(std::ostream& err, const std::string& label,
                 const std::vector<TrajectorySample>& rows) {
    double dev = 0.0;
    for (const auto& r : rows)
        dev = std::max(dev, (r.mean_q - r.classical_u).cwiseAbs().maxCoeff());
    err << label << ": max |<Q> - u_classical| = " << fmt17(dev) << "\n";
    return dev;
}

void write_rows(const std::string& path, const std::vector<TrajectorySample>& rows) {
    if (path.empty()) {
        write_trajectory_csv(std::cout, rows);
    } else {
        std::ofstream out(path);
        if (!out) throw DimensionError("cannot write output file: " + path);
        write_trajectory_csv(out, rows);
    }
}

std::vector<TrajectorySample> run_gaussian(const RunConfig& cfg, const ProblemBundle& bundle,
                                           const Vector& u0,
                                           const std::vector<double>& times,
                                           const Trajectory& oracle) {
    if (!bundle.hamiltonian.is_quadratic())
        throw DimensionError("gaussian backend rejected: Hamiltonian has cubic terms");
    GaussianState init = gaussian_initial(u0, cfg.squeeze);
    std::vector<TrajectorySample> rows;
    for (std::size_t i = 0; i < times.size(); ++i) {
        SymplecticGate g = (cfg.trotter == "exact")
                               ? exact_propagator(bundle.hamiltonian, times[i])
                               : schedule_symplectic(build_schedule(cfg, bundle, times[i]));
        auto [mean, var] = quadrature_expectations(apply_gate(init, g));
        rows.push_back({times[i], mean, var, oracle.at(i)});
    }
    return rows;
}

std::vector<TrajectorySample> run_fock(const RunConfig& cfg, const ProblemBundle& bundle,
                                       const Vector& u0, const std::vector<double>& times,
                                       const Trajectory& oracle) {
    const int n = bundle.field.n_vars();
    FockState state = prepare_initial(u0, cfg.squeeze, cfg.cutoff, cfg.leak_threshold);
    auto sample_of = [n, &cfg](double t, const FockState& s, const Vector& cl) {
        Vector mean(n), var(n);
        for (int mode = 0; mode < n; ++mode) {
            mean(mode) = q_mean(s, mode);
            var(mode) = q_variance(s, mode);
        }
        return TrajectorySample{t, mean, var, cl};
    };
    std::vector<TrajectorySample> rows;
    if (cfg.trotter == "exact") {
        SparseOp hm = hamiltonian_matrix(bundle.hamiltonian, n, cfg.cutoff);
        rows.push_back(sample_of(times[0], state, oracle.at(0)));
        for (std::size_t i = 1; i < times.size(); ++i) {
            state = evolve(state, hm, times[i] - times[i - 1], 1, cfg.leak_threshold);
            rows.push_back(sample_of(times[i], state, oracle.at(i)));
        }
        return rows;
    }
    // Trotterized Fock run: one sample after every Trotter step.
    GateSchedule sched = build_schedule(cfg, bundle, cfg.t_end);
    Trajectory fine = bundle.classical_trajectory(u0, linspace(cfg.t_end, sched.p));
    rows.push_back(sample_of(0.0, state, fine.at(0)));
    apply_schedule_fock(state, sched, cfg.leak_threshold,
                        [&](int s, const FockState& st) {
                            rows.push_back(sample_of((s + 1) * sched.dt, st, fine.at(s + 1)));
                        });
    return rows;
}

int cmd_simulate(const RunConfig& cfg) {
    ProblemBundle bundle = build_problem(cfg);
    Vector u0 = initial_u0(cfg, bundle);
    std::vector<double> times = linspace(cfg.t_end, cfg.samples);
    Trajectory oracle = bundle.classical_trajectory(u0, times);
    std::string out = resolve_output(cfg.output);

    auto run_one = [&](const std::string& backend, const std::string& path) {
        std::vector<TrajectorySample> rows =
            backend == "gaussian" ? run_gaussian(cfg, bundle, u0, times, oracle)
                                  : run_fock(cfg, bundle, u0, times, oracle);
        summarize(std::cerr, backend, rows);
        write_rows(path, rows);
    };

    if (cfg.backend == "both") {
        auto suffixed = [&out](const std::string& tag) {
            if (out.empty()) return out;
            std::filesystem::path p(out);
            return (p.parent_path() / (p.stem().string() + "." + tag + p.extension().string()))
                .string();
        };
        run_one("gaussian", suffixed("gaussian"));
        run_one("fock", suffixed("fock"));
    } else if (cfg.backend == "gaussian" || cfg.backend == "fock") {
        run_one(cfg.backend, out);
    } else {
        throw DimensionError("unknown backend: " + cfg.backend);
    }
    return 0;
}

int cmd_compile(const RunConfig& cfg, double tau, bool want_opo, double opo_theta,
                double opo_r, bool inverse) {
    json out;
    if (!cfg.trotter.empty() && cfg.trotter != "none" && cfg.trotter != "exact") {
        ProblemBundle bundle = build_problem(cfg);
        out = schedule_to_json(build_schedule(cfg, bundle, tau));
    }
    if (want_opo) {
        json jo;
        if (inverse) {
            auto [m, omega] = oscillator_from_opo({tau, opo_r, opo_theta, cfg.p});
            jo = {{"m", m}, {"omega", omega}, {"omega_over_2pi", omega / (2.0 * M_PI)}};
        } else {
            OpoParams op = opo_params_from_oscillator(cfg.m, cfg.omega, tau, cfg.p);
            jo = {{"tau", op.tau}, {"r", op.r}, {"theta", op.theta}, {"p", op.p}};
        }
        out["opo"] = jo;
    }
    std::string path = resolve_output(cfg.output);
    if (path.empty())
        std::cout << out.dump(2) << "\n";
    else
        save_json_file(path, out);
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& output) {
    std::vector<Check> checks;
    auto append = [&checks](std::vector<Check> more) {
        checks.insert(checks.end(), more.begin(), more.end());
    };
    if (suite == "heisenberg") append(verify_suite_heisenberg());
    else if (suite == "cubic40") append(verify_suite_cubic40());
    else if (suite == "trotter") append(verify_suite_trotter());
    else if (suite == "backends") append(verify_suite_backends());
    else if (suite == "all") {
        append(verify_suite_heisenberg());
        append(verify_suite_cubic40());
        append(verify_suite_trotter());
        append(verify_suite_backends());
    } else {
        throw DimensionError("unknown verify suite: " + suite);
    }

    json report;
    report["suite"] = suite;
    report["checks"] = json::array();
    for (const auto& c : checks) {
        std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << fmt17(c.value)
                  << " threshold=" << fmt17(c.threshold) << "\n";
        report["checks"].push_back(
            {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"threshold", c.threshold}});
    }
    report["pass"] = all_pass(checks);
    std::string path = resolve_output(output);
    if (path.empty())
        std::cout << report.dump(2) << "\n";
    else
        save_json_file(path, report);
    return all_pass(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koopman-von Neumann photonic simulator and gate-schedule compiler"};
    app.require_subcommand(1);
    app.set_config("--config");

    RunConfig cfg;
    double tau = 1.0;
    bool want_opo = false;
    double opo_theta = std::numeric_limits<double>::quiet_NaN();
    double opo_r = 0.0;
    std::string suite = "all";

    auto add_problem_flags = [&cfg](CLI::App* c) {
        c->add_option("--problem", cfg.problem, "ho | coupled | kdv | field");
        c->add_option("--field-file", cfg.field_file, "vector-field JSON (problem=field)");
        c->add_option("--m", cfg.m, "oscillator mass");
        c->add_option("--omega", cfg.omega, "oscillator frequency");
        c->add_option("--n", cfg.n, "oscillator count / KdV grid points");
        c->add_option("--dx", cfg.dx, "KdV grid pitch");
        c->add_option("--mass", cfg.mass_uniform, "uniform mass (coupled)");
        c->add_option("--kappa", cfg.kappa, "uniform on-site spring (coupled)");
        c->add_option("--coupling", cfg.coupling, "uniform chain coupling (coupled)");
        c->add_option("--variant", cfg.variant, "KdV discretization: corrected | paper");
        c->add_option("--p", cfg.p, "Trotter steps");
        c->add_option("--trotter", cfg.trotter, "exact | cx | tms_bs | coupled | kdv");
        c->add_flag("--expand-cubic", cfg.expand_cubic, "expand CUBIC entries (kdv)");
        c->add_flag("--strang", cfg.strang, "second-order Strang splitting (tms_bs)");
        c->add_option("--output,-o", cfg.output, "output path (default stdout)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "run a problem and export the trajectory");
    add_problem_flags(sim);
    sim->add_option("--backend", cfg.backend, "gaussian | fock | both");
    sim->add_option("--t-end", cfg.t_end, "simulation horizon");
    sim->add_option("--samples", cfg.samples, "trajectory sample count");
    sim->add_option("--cutoff", cfg.cutoff, "Fock cutoff per mode");
    sim->add_option("--squeeze", cfg.squeeze, "initial Q squeezing");
    sim->add_option("--leak-threshold", cfg.leak_threshold, "Fock leakage threshold");
    sim->add_option("--u0", cfg.u0_override, "initial condition override")->expected(-1);

    CLI::App* comp = app.add_subcommand("compile", "emit a gate schedule (JSON)");
    add_problem_flags(comp);
    comp->add_option("--tau", tau, "total evolution time");
    comp->add_flag("--opo", want_opo, "emit OPO parameter mapping");
    comp->add_option("--theta", opo_theta, "OPO beamsplitter angle (inverse mapping)");
    comp->add_option("--r", opo_r, "OPO squeezing parameter (inverse mapping)");

    CLI::App* ver = app.add_subcommand("verify", "run an invariant suite");
    ver->add_option("suite", suite, "heisenberg | cubic40 | trotter | backends | all");
    ver->add_option("--output,-o", cfg.output, "report path (default stdout)");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(cfg);
        if (comp->parsed())
            return cmd_compile(cfg, tau, want_opo, opo_theta, opo_r,
                               !std::isnan(opo_theta));
        if (ver->parsed()) return cmd_verify(suite, cfg.output);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const kvn::LeakageError& e) {
        std::cerr << "error: " << e.what() << " (leakage=" << e.leakage << ")\n";
        return 3;
    } catch (const kvn::BlowUpError& e) {
        std::cerr << "error: " << e.what() << " (last valid t=" << e.last_valid_time << ")\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
