#ifndef ANYONMC_MEANFIELD_HPP
#define ANYONMC_MEANFIELD_HPP

#include <optional>
#include <string>

#include "anyonmc/potential.hpp"

namespace anyonmc {

// Thermodynamic point for the closed-form relations. Couplings J and A and
// the power-law exponent alpha are carried explicitly; temperatures enter
// as beta = 1/T with k_B = 1. Natural logarithms throughout.
struct ThermoPoint {
    double beta = 1.0;
    double coupling = 1.0;    // J
    double amplitude = 0.0;   // A
    double exponent = 0.0;    // alpha
    double side = 2.0;        // L (real-valued for analytic scans)
};

enum class MeanFieldMode { Boltzmann, SelfConsistentContinuum, SelfConsistentLattice, Sublinear };

std::string mode_name(MeanFieldMode mode);

struct MeanFieldResult {
    double density = 0.0;
    MeanFieldMode mode = MeanFieldMode::Boltzmann;
    double residual = 0.0;
    int iterations = 0;
};

enum class Phase { Disordered, WeaklyTO, StronglyTO, Boundary };

std::string phase_name(Phase phase);

// Single-plaquette occupation probability rho = (e^{J beta} + 1)^{-1}.
double boltzmann_density(double coupling, double beta);

// Solves rho = (e^{beta (J + eps(rho))} + 1)^{-1} with eps the per-anyon
// interaction energy at uniform density: 2 pi A rho / (alpha - 2) in
// continuum mode (requires alpha > 2), or 2 rho S_V with S_V the exact
// torus pair sum in lattice mode (any alpha; the lattice sum is finite).
// Damped fixed-point iteration with a bisection fallback; residual < 1e-12.
MeanFieldResult self_consistent_density(const ThermoPoint& point, MeanFieldMode mode);

// rho = (2 - alpha) ln L / (c_alpha beta A L^{2 - alpha}) for 0 <= alpha < 2.
double sublinear_density(const ThermoPoint& point, double c_alpha);

// pi_P(l) = (1 + (1 - 2 rho)^{l^2}) / 2: probability of no net anyon in an
// l x l window when occupancies are uncorrelated at density rho.
double parity_probability(double density, int scale);

// Shannon entropy of a bit, nats, with 0 ln 0 = 0.
double shannon_entropy(double p);

// Gamma = 2 ln 2 - S(pi_P) - S(pi_V).
double gamma_from_parity(double pi_plaquette, double pi_vertex);

// Both sectors iid: Gamma(l) = 2 (ln 2 - S(pi_P(l))).
double gamma_single_sector(double pi);

// lambda = sqrt(ln(1 - 2 delta) / ln(1 - 2 rho)): the window side at which
// pi_P(lambda) = 1 - delta.
double correlation_range(double density, double tolerance);

struct LambdaPrediction {
    double lambda = 0.0;
    double exponent = 0.0;  // 1 - alpha/2
};

// lambda^2 = c_alpha beta A ln(1 - 2 delta) / (alpha - 2) * L^{2-alpha} / ln L,
// the closed-form range for the sublinear-density regime, plus its growth
// exponent 1 - alpha/2.
LambdaPrediction lambda_scaling_prediction(const ThermoPoint& point, double c_alpha, double tolerance);

// p(R) = (R^{2 - beta A} - 1) / (L^{2 - beta A} - 1), with the continuous
// limit ln R / ln L taken on the window |beta A - 2| < 1e-9.
double two_anyon_radial_cdf(double radius, double side, double beta, double amplitude);

// T_c(N) = N A / 4 for an even number N >= 2 of logarithmically bound anyons.
double confinement_critical_temperature(int anyon_count, double amplitude);

struct BosonPrediction {
    double j_eff = 0.0;
    double density = 0.0;
    std::optional<double> lambda;  // absent when rho >= 1/2
    Phase phase = Phase::Boundary;
};

// Equilibrium prediction for a boson-mediated coupling: log-in-L couplings
// give rho = (L/2)^{-c} and a phase decided by c against 2; linear-in-L
// couplings suppress the density exponentially.
BosonPrediction boson_phase_prediction(const BosonCouplingModel& coupling, double side, double temperature,
                                       double tolerance);

}  // namespace anyonmc

#endif
