#pragma once

#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "kvn/oracle.hpp"
#include "kvn/schedule.hpp"
#include "kvn/vector_field.hpp"

namespace kvn {

using nlohmann::json;

inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------------------
// Vector-field files: {n_vars, linear (row-major), quadratic [[j,k,l,c]...],
// constant}

inline json vector_field_to_json(const PolyVectorField& f) {
    json j;
    j["n_vars"] = f.n_vars();
    std::vector<std::vector<double>> lin(f.n_vars());
    for (int r = 0; r < f.n_vars(); ++r)
        for (int c = 0; c < f.n_vars(); ++c) lin[r].push_back(f.linear()(r, c));
    j["linear"] = lin;
    j["quadratic"] = json::array();
    for (const auto& t : f.quadratic())
        j["quadratic"].push_back({t.component, t.var_k, t.var_l, t.coeff});
    j["constant"] = std::vector<double>(f.constant().data(),
                                        f.constant().data() + f.n_vars());
    return j;
}

inline PolyVectorField vector_field_from_json(const json& j) {
    const int n = j.at("n_vars").get<int>();
    PolyVectorField f(n);
    if (j.contains("linear")) {
        Matrix a(n, n);
        const auto& lin = j.at("linear");
        if (static_cast<int>(lin.size()) != n)
            throw DimensionError("vector field file: linear matrix has wrong row count");
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = lin.at(r).at(c).get<double>();
        f.set_linear(a);
    }
    if (j.contains("constant")) {
        Vector c(n);
        for (int i = 0; i < n; ++i) c(i) = j.at("constant").at(i).get<double>();
        f.set_constant(c);
    }
    if (j.contains("quadratic"))
        for (const auto& t : j.at("quadratic"))
            f.add_quadratic(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(),
                            t.at(3).get<double>());
    return f;
}

// ---------------------------------------------------------------------------
// Schedule files: {n_modes, p, dt, decomposition, source_hash, gates}

inline json schedule_to_json(const GateSchedule& s) {
    json j;
    j["n_modes"] = s.n_modes;
    j["p"] = s.p;
    j["dt"] = s.dt;
    j["decomposition"] = s.decomposition;
    j["source_hash"] = s.source_hash;
    j["gates"] = json::array();
    for (const auto& g : s.gates()) {
        json jg;
        jg["kind"] = gate_kind_name(g.kind);
        jg["modes"] = is_two_mode(g.kind) ? std::vector<int>{g.modes[0], g.modes[1]}
                                          : std::vector<int>{g.modes[0]};
        jg["param"] = g.param;
        j["gates"].push_back(jg);
    }
    return j;
}

inline GateSchedule schedule_from_json(const json& j) {
    GateSchedule s;
    s.n_modes = j.at("n_modes").get<int>();
    s.p = j.at("p").get<int>();
    s.dt = j.at("dt").get<double>();
    s.decomposition = j.value("decomposition", "");
    s.source_hash = j.value("source_hash", std::uint64_t{0});
    std::vector<Gate> all;
    for (const auto& jg : j.at("gates")) {
        Gate g;
        g.kind = gate_kind_from_name(jg.at("kind").get<std::string>());
        const auto& modes = jg.at("modes");
        g.modes = {modes.at(0).get<int>(),
                   modes.size() > 1 ? modes.at(1).get<int>() : -1};
        g.param = jg.at("param").get<double>();
        all.push_back(g);
    }
    if (s.p < 1 || all.size() % s.p != 0)
        throw DimensionError("schedule file: gate count not divisible by p");
    s.step_gates.assign(all.begin(), all.begin() + all.size() / s.p);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Gate& a = all[i];
        const Gate& b = s.step_gates[i % s.step_gates.size()];
        if (a.kind != b.kind || a.modes != b.modes || a.param != b.param)
            throw DimensionError("schedule file: Trotter steps are not identical");
    }
    return s;
}

// ---------------------------------------------------------------------------
// Trajectory CSV: t,mode,mean_q,var_q,classical_u

struct TrajectorySample {
    double t;
    Vector mean_q;
    Vector var_q;
    Vector classical_u;
};

inline void write_trajectory_csv(std::ostream& out,
                                 const std::vector<TrajectorySample>& samples) {
    out << "t,mode,mean_q,var_q,classical_u\n";
    for (const auto& s : samples)
        for (int m = 0; m < s.mean_q.size(); ++m)
            out << fmt17(s.t) << ',' << m + 1 << ',' << fmt17(s.mean_q(m)) << ','
                << fmt17(s.var_q(m)) << ',' << fmt17(s.classical_u(m)) << '\n';
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DimensionError("cannot open file: " + path);
    return json::parse(in);
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DimensionError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace kvn
