#include "anyonmc/meanfield.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "anyonmc/energy.hpp"

namespace anyonmc {

std::string mode_name(MeanFieldMode mode) {
    switch (mode) {
        case MeanFieldMode::Boltzmann: return "boltzmann";
        case MeanFieldMode::SelfConsistentContinuum: return "self-consistent-continuum";
        case MeanFieldMode::SelfConsistentLattice: return "self-consistent-lattice";
        case MeanFieldMode::Sublinear: return "sublinear";
    }
    return "unknown";
}

std::string phase_name(Phase phase) {
    switch (phase) {
        case Phase::Disordered: return "Disordered";
        case Phase::WeaklyTO: return "WeaklyTO";
        case Phase::StronglyTO: return "StronglyTO";
        case Phase::Boundary: return "Boundary";
    }
    return "unknown";
}

double boltzmann_density(double coupling, double beta) {
    return 1.0 / (std::exp(coupling * beta) + 1.0);
}

MeanFieldResult self_consistent_density(const ThermoPoint& point, MeanFieldMode mode) {
    if (point.beta <= 0.0) throw ConfigError("self-consistent density requires beta > 0");
    if (point.amplitude < 0.0) throw ConfigError("self-consistent density requires A >= 0");

    // eps(rho) = slope * rho in both modes.
    double slope;
    if (mode == MeanFieldMode::SelfConsistentContinuum) {
        if (point.exponent <= 2.0)
            throw ConfigError("continuum interaction integral diverges for alpha <= 2; use the lattice mode");
        slope = 2.0 * std::numbers::pi * point.amplitude / (point.exponent - 2.0);
    } else if (mode == MeanFieldMode::SelfConsistentLattice) {
        const int side = static_cast<int>(point.side);
        if (side < 2 || static_cast<double>(side) != point.side)
            throw ConfigError("lattice mode requires an integer lattice side L >= 2");
        EnergyModel model(TorusLattice(side), 0.0,
                          PairPotential(PowerLaw{point.amplitude, point.exponent}));
        slope = 2.0 * model.pair_sum();
    } else {
        throw ConfigError("self_consistent_density requires a self-consistent mode");
    }

    const auto f = [&](double rho) {
        return 1.0 / (std::exp(point.beta * (point.coupling + slope * rho)) + 1.0);
    };

    MeanFieldResult result;
    result.mode = mode;

    double rho = boltzmann_density(point.coupling, point.beta);
    const double tol = 1e-12;
    for (int it = 0; it < 300; ++it) {
        const double next = f(rho);
        result.iterations = it + 1;
        rho = 0.5 * (rho + next);
        if (std::abs(rho - f(rho)) < tol) break;
    }

    if (std::abs(rho - f(rho)) >= tol) {
        // g(rho) = rho - f(rho) is strictly increasing: bisect on [0, 1].
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            ((mid - f(mid)) < 0.0 ? lo : hi) = mid;
            ++result.iterations;
        }
        rho = 0.5 * (lo + hi);
    }

    result.density = rho;
    result.residual = std::abs(rho - f(rho));
    if (!(result.residual < 1e-12))
        throw NumericalError("self-consistent density did not converge (residual " +
                             std::to_string(result.residual) + " after " + std::to_string(result.iterations) +
                             " iterations)");
    return result;
}

double sublinear_density(const ThermoPoint& point, double c_alpha) {
    if (point.exponent < 0.0 || point.exponent >= 2.0)
        throw ConfigError("sublinear density holds for 0 <= alpha < 2");
    if (c_alpha <= 0.0) throw ConfigError("sublinear density requires c_alpha > 0");
    if (point.side < 3.0) throw ConfigError("sublinear density requires L >= 3");
    if (point.beta * point.amplitude <= 0.0) throw ConfigError("sublinear density requires beta A > 0");
    return (2.0 - point.exponent) * std::log(point.side) /
           (c_alpha * point.beta * point.amplitude * std::pow(point.side, 2.0 - point.exponent));
}

double parity_probability(double density, int scale) {
    if (density < 0.0 || density > 1.0) throw ConfigError("parity probability requires rho in [0, 1]");
    if (scale < 1) throw ConfigError("parity probability requires l >= 1");
    // (1 - 2 rho)^(l^2) by binary exponentiation; exact sign for rho > 1/2.
    double base = 1.0 - 2.0 * density;
    long n = static_cast<long>(scale) * scale;
    double pw = 1.0;
    while (n > 0) {
        if (n & 1) pw *= base;
        base *= base;
        n >>= 1;
    }
    return 0.5 * (1.0 + pw);
}

double shannon_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw ConfigError("entropy argument must be a probability");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

double gamma_from_parity(double pi_plaquette, double pi_vertex) {
    return 2.0 * std::log(2.0) - shannon_entropy(pi_plaquette) - shannon_entropy(pi_vertex);
}

double gamma_single_sector(double pi) { return 2.0 * (std::log(2.0) - shannon_entropy(pi)); }

double correlation_range(double density, double tolerance) {
    if (!(tolerance > 0.0) || !(tolerance < 0.5))
        throw ConfigError("correlation range requires tolerance delta in (0, 1/2)");
    if (density <= 0.0) throw ConfigError("correlation range diverges as rho -> 0 (got rho <= 0)");
    if (density >= 0.5)
        throw ConfigError("correlation range is degenerate at rho >= 1/2 (ln(1 - 2 rho) vanishes)");
    return std::sqrt(std::log(1.0 - 2.0 * tolerance) / std::log(1.0 - 2.0 * density));
}

LambdaPrediction lambda_scaling_prediction(const ThermoPoint& point, double c_alpha, double tolerance) {
    if (point.exponent < 0.0 || point.exponent >= 2.0)
        throw ConfigError("the range prediction holds for 0 <= alpha < 2");
    if (!(tolerance > 0.0) || !(tolerance < 0.5))
        throw ConfigError("the range prediction requires delta in (0, 1/2)");
    if (c_alpha <= 0.0) throw ConfigError("the range prediction requires c_alpha > 0");
    if (point.side < 3.0) throw ConfigError("the range prediction requires L >= 3");
    const double lambda_sq = c_alpha * point.beta * point.amplitude * std::log(1.0 - 2.0 * tolerance) /
                             (point.exponent - 2.0) * std::pow(point.side, 2.0 - point.exponent) /
                             std::log(point.side);
    return {std::sqrt(lambda_sq), 1.0 - 0.5 * point.exponent};
}

double two_anyon_radial_cdf(double radius, double side, double beta, double amplitude) {
    const double x = beta * amplitude;
    if (x < 0.0) throw ConfigError("two-anyon radial law requires beta A >= 0");
    if (radius < 1.0 || radius > side)
        throw ConfigError("two-anyon radial law requires 1 <= R <= L");
    if (std::abs(x - 2.0) < 1e-9) return std::log(radius) / std::log(side);
    const double u = 2.0 - x;
    return (std::pow(radius, u) - 1.0) / (std::pow(side, u) - 1.0);
}

double confinement_critical_temperature(int anyon_count, double amplitude) {
    if (anyon_count < 2 || anyon_count % 2 != 0)
        throw ConfigError("critical temperature is defined for even N >= 2");
    if (amplitude < 0.0) throw ConfigError("critical temperature requires A >= 0");
    return static_cast<double>(anyon_count) * amplitude / 4.0;
}

BosonPrediction boson_phase_prediction(const BosonCouplingModel& coupling, double side, double temperature,
                                       double tolerance) {
    if (side < 3.0) throw ConfigError("boson phase prediction requires L >= 3");
    BosonPrediction out;
    out.j_eff = effective_coupling(coupling, side, temperature);
    if (const auto* lg = std::get_if<LogInL>(&coupling)) {
        out.density = std::pow(side / 2.0, -lg->c);
        out.phase = lg->c > 2.0 ? Phase::StronglyTO : (lg->c < 2.0 ? Phase::WeaklyTO : Phase::Boundary);
    } else {
        out.density = boltzmann_density(out.j_eff, 1.0 / temperature);
        out.phase = Phase::StronglyTO;
    }
    if (out.density > 0.0 && out.density < 0.5) out.lambda = correlation_range(out.density, tolerance);
    return out;
}

}  // namespace anyonmc
