#ifndef ANYONMC_OCCUPANCY_HPP
#define ANYONMC_OCCUPANCY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "anyonmc/torus.hpp"

namespace anyonmc {

// Anyon occupation pattern on the plaquette lattice. Keeps an occupancy bit
// per plaquette, the list of occupied plaquettes (for O(N) energy deltas),
// and a running total energy maintained by the caller through apply_flip.
// Parity bookkeeping is the sampler's job: it always flips plaquettes in
// pairs or relocates an anyon, so the count stays even.
class OccupancyConfig {
public:
    explicit OccupancyConfig(TorusLattice lattice)
        : lattice_(lattice),
          occupied_(static_cast<std::size_t>(lattice.num_plaquettes()), 0),
          slot_(static_cast<std::size_t>(lattice.num_plaquettes()), -1) {}

    const TorusLattice& lattice() const { return lattice_; }
    bool occupied(int p) const { return occupied_[static_cast<std::size_t>(p)] != 0; }
    int anyon_count() const { return static_cast<int>(anyons_.size()); }
    std::span<const int> anyons() const { return anyons_; }
    double energy() const { return energy_; }

    // Toggle plaquette p; `delta` is the energy change of this flip as
    // computed by the energy model and is accumulated into the cache.
    void apply_flip(int p, double delta) {
        energy_ += delta;
        auto idx = static_cast<std::size_t>(p);
        if (occupied_[idx]) {
            occupied_[idx] = 0;
            const int hole = slot_[idx];
            const int last = anyons_.back();
            anyons_[static_cast<std::size_t>(hole)] = last;
            slot_[static_cast<std::size_t>(last)] = hole;
            anyons_.pop_back();
            slot_[idx] = -1;
        } else {
            occupied_[idx] = 1;
            slot_[idx] = static_cast<int>(anyons_.size());
            anyons_.push_back(p);
        }
    }

    void reset_energy(double e) { energy_ = e; }

    // Packed occupancy bits, available on lattices with at most 32 plaquettes.
    std::uint32_t bits() const {
        std::uint32_t m = 0;
        for (int p : anyons_) m |= (1u << p);
        return m;
    }

    int count_in_mask(std::span<const std::uint8_t> mask) const {
        int n = 0;
        for (int p : anyons_) n += mask[static_cast<std::size_t>(p)];
        return n;
    }

private:
    TorusLattice lattice_;
    std::vector<std::uint8_t> occupied_;
    std::vector<int> anyons_;
    std::vector<int> slot_;
    double energy_ = 0.0;
};

// A copy of `config` with every anyon shifted by (dx, dy); energies are not
// carried over.
OccupancyConfig translated(const OccupancyConfig& config, int dx, int dy);

}  // namespace anyonmc

#endif
