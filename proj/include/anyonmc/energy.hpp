#ifndef ANYONMC_ENERGY_HPP
#define ANYONMC_ENERGY_HPP

#include <vector>

#include "anyonmc/occupancy.hpp"
#include "anyonmc/potential.hpp"
#include "anyonmc/torus.hpp"

namespace anyonmc {

// E(config) = J * N + sum_p sum_{p' != p} n_p n_p' V(r_pp'), i.e. the pair
// sum runs over ordered pairs, so each unordered pair contributes 2 V(r).
// Pair values come from a precomputed L x L displacement table; energy
// deltas iterate the anyon list, which keeps long-range potentials at O(N)
// per proposal instead of O(L^2). Immutable after construction, shareable
// across chains.
class EnergyModel {
public:
    EnergyModel(TorusLattice lattice, double coupling, PairPotential potential);

    const TorusLattice& lattice() const { return lattice_; }
    double coupling() const { return coupling_; }
    const PairPotential& potential() const { return potential_; }
    bool interacting() const { return !table_.empty(); }

    // V at the minimal-image distance between p and q (0 for non-interacting).
    double pair_value(int p, int q) const {
        if (table_.empty()) return 0.0;
        const int L = lattice_.side;
        int dx = q % L - p % L;
        if (dx < 0) dx += L;
        int dy = q / L - p / L;
        if (dy < 0) dy += L;
        return table_[static_cast<std::size_t>(dy * L + dx)];
    }

    // S_V = sum over all p' != p of V(r_pp'); the same for every p.
    double pair_sum() const { return pair_sum_; }

    double total_energy(const OccupancyConfig& config) const;

    // Energy change of toggling plaquette p: +1/-1 times
    // (J + 2 sum_{p' occupied, p' != p} V(r_pp')).
    double flip_delta(const OccupancyConfig& config, int p) const {
        double acc = 0.0;
        if (!table_.empty()) {
            const int L = lattice_.side;
            const int px = p % L, py = p / L;
            for (int q : config.anyons()) {
                if (q == p) continue;
                int dx = q % L - px;
                if (dx < 0) dx += L;
                int dy = q / L - py;
                if (dy < 0) dy += L;
                acc += table_[static_cast<std::size_t>(dy * L + dx)];
            }
        }
        const double sign = config.occupied(p) ? -1.0 : 1.0;
        return sign * (coupling_ + 2.0 * acc);
    }

private:
    void check_lattice(const OccupancyConfig& config) const;

    TorusLattice lattice_;
    double coupling_;
    PairPotential potential_;
    std::vector<double> table_;  // V by displacement (dy*L + dx); empty when non-interacting
    double pair_sum_ = 0.0;
};

}  // namespace anyonmc

#endif
