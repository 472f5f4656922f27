#ifndef ANYONMC_EXACT_HPP
#define ANYONMC_EXACT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "anyonmc/energy.hpp"

namespace anyonmc {

// Brute-force Boltzmann law over every even-parity occupancy pattern of a
// small lattice (at most 16 plaquettes, i.e. 2^(L*L-1) configurations).
// Serves as the correctness oracle for the Metropolis sampler and for the
// conditional-entropy version of the topological entropy.
struct ExactDistribution {
    TorusLattice lattice;
    double beta;
    std::vector<double> prob;  // indexed by occupancy bits; odd-parity entries are 0
    double mean_anyons = 0.0;

    // P(even anyon count inside the window).
    double window_parity_probability(std::uint32_t window_bits) const;

    // H(parity of `ra` | full configuration of `rb`), in nats.
    double conditional_parity_entropy(std::uint32_t ra_bits, std::uint32_t rb_bits) const;

    // Expected occupancy fraction.
    double density() const { return mean_anyons / lattice.num_plaquettes(); }
};

inline constexpr int kExactMaxPlaquettes = 16;

ExactDistribution exact_distribution(const EnergyModel& model, double beta);

// Single-sector topological entropy, doubled: 2 ln 2 - 2 H(parity Ra | config Rb).
// Reduces to 2 (ln 2 - S(pi_P)) when the Ra parity is independent of Rb.
double conditional_gamma_oracle(const ExactDistribution& dist, std::uint32_t ra_bits, std::uint32_t rb_bits);

// Unconditional counterpart computed from the same table.
double unconditional_gamma_oracle(const ExactDistribution& dist, std::uint32_t ra_bits);

// Total-variation distance between the exact law and empirical counts
// indexed by occupancy bits.
double total_variation(const ExactDistribution& dist, std::span<const std::int64_t> counts);

}  // namespace anyonmc

#endif
