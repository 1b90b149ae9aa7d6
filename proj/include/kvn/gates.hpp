#pragma once

#include <array>
#include <string>

#include "kvn/errors.hpp"

namespace kvn {

// Gate parameters are integrated (dimensionless) strengths; schedules carry
// the Trotter dt separately. Conventions, with a = modes[0], b = modes[1]:
//   BS(theta)   exp(-i theta (P_a Q_b - Q_a P_b))
//   TMS(r)      exp(-i r     (P_a Q_b + Q_a P_b))
//   CX(alpha)   exp(-i alpha  Q_a P_b)
//   QQ(c)       exp(+i c      Q_a Q_b)
//   CUBIC(s)    exp(+i s      P_a Q_b^2)      (two-mode, non-Gaussian)
//   CUBIC_Q(s)  exp(+i s      Q_a^3)
//   CUBIC_P(s)  exp(+i s      P_a^3)
//   DISPLACE(d) shifts <Q_a> by d
enum class GateKind { BS, TMS, CX, QQ, CUBIC, CUBIC_Q, CUBIC_P, DISPLACE };

inline bool is_two_mode(GateKind k) {
    return k == GateKind::BS || k == GateKind::TMS || k == GateKind::CX ||
           k == GateKind::QQ || k == GateKind::CUBIC;
}

inline bool is_gaussian(GateKind k) {
    return k != GateKind::CUBIC && k != GateKind::CUBIC_Q && k != GateKind::CUBIC_P;
}

inline std::string gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::BS: return "BS";
        case GateKind::TMS: return "TMS";
        case GateKind::CX: return "CX";
        case GateKind::QQ: return "QQ";
        case GateKind::CUBIC: return "CUBIC";
        case GateKind::CUBIC_Q: return "CUBIC_Q";
        case GateKind::CUBIC_P: return "CUBIC_P";
        case GateKind::DISPLACE: return "DISPLACE";
    }
    throw DimensionError("unknown gate kind");
}

inline GateKind gate_kind_from_name(const std::string& s) {
    if (s == "BS") return GateKind::BS;
    if (s == "TMS") return GateKind::TMS;
    if (s == "CX") return GateKind::CX;
    if (s == "QQ") return GateKind::QQ;
    if (s == "CUBIC") return GateKind::CUBIC;
    if (s == "CUBIC_Q") return GateKind::CUBIC_Q;
    if (s == "CUBIC_P") return GateKind::CUBIC_P;
    if (s == "DISPLACE") return GateKind::DISPLACE;
    throw DimensionError("unknown gate kind: " + s);
}

struct Gate {
    GateKind kind;
    std::array<int, 2> modes;  // modes[1] = -1 for single-mode gates
    double param;
};

}  // namespace kvn
