#ifndef ANYONMC_POTENTIAL_HPP
#define ANYONMC_POTENTIAL_HPP

#include <cmath>
#include <string>
#include <variant>

#include "anyonmc/errors.hpp"

namespace anyonmc {

// Pair potentials evaluated at the minimal-image distance r >= 1.
struct NonInteracting {};

struct PowerLaw {
    double amplitude;  // A
    double exponent;   // alpha, any sign; V(r) = A * r^-alpha
};

struct Logarithmic {
    double amplitude;  // A; V(r) = A * ln r, zero at r = 1
};

using PairPotential = std::variant<NonInteracting, PowerLaw, Logarithmic>;

inline bool is_interacting(const PairPotential& v) {
    return !std::holds_alternative<NonInteracting>(v);
}

inline std::string potential_name(const PairPotential& v) {
    if (std::holds_alternative<NonInteracting>(v)) return "none";
    if (std::holds_alternative<PowerLaw>(v)) return "powerlaw";
    return "log";
}

inline double pair_potential_value(const PairPotential& v, double r) {
    if (r < 1.0) throw ConfigError("pair potential evaluated at r < 1");
    if (const auto* pl = std::get_if<PowerLaw>(&v)) return pl->amplitude * std::pow(r, -pl->exponent);
    if (const auto* lg = std::get_if<Logarithmic>(&v)) return lg->amplitude * std::log(r);
    return 0.0;
}

// Effective single-anyon coupling generated by a coupled boson bath.
struct LinearInL {
    double kappa;  // J_eff = kappa * L
};

struct LogInL {
    double c;  // J_eff = c * T * ln(L/2)
};

using BosonCouplingModel = std::variant<LinearInL, LogInL>;

inline double effective_coupling(const BosonCouplingModel& b, double side, double temperature) {
    if (temperature <= 0.0) throw ConfigError("effective coupling requires T > 0");
    if (const auto* lin = std::get_if<LinearInL>(&b)) {
        if (lin->kappa <= 0.0) throw ConfigError("linear boson coupling requires kappa > 0");
        return lin->kappa * side;
    }
    const auto& lg = std::get<LogInL>(b);
    if (lg.c <= 0.0) throw ConfigError("log boson coupling requires c > 0");
    if (side < 2.0) throw ConfigError("log boson coupling requires L >= 2");
    return lg.c * temperature * std::log(side / 2.0);
}

}  // namespace anyonmc

#endif
