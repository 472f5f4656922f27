#include "anyonmc/energy.hpp"

#include <cmath>

namespace anyonmc {

EnergyModel::EnergyModel(TorusLattice lattice, double coupling, PairPotential potential)
    : lattice_(lattice), coupling_(coupling), potential_(potential) {
    if (!std::isfinite(coupling_)) throw ConfigError("coupling J must be finite");
    if (!is_interacting(potential_)) return;

    const int L = lattice_.side;
    table_.assign(static_cast<std::size_t>(L * L), 0.0);
    for (int dy = 0; dy < L; ++dy) {
        for (int dx = 0; dx < L; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double r = min_image_distance(lattice_, 0, dy * L + dx);
            const double v = pair_potential_value(potential_, r);
            table_[static_cast<std::size_t>(dy * L + dx)] = v;
            pair_sum_ += v;
        }
    }
}

void EnergyModel::check_lattice(const OccupancyConfig& config) const {
    if (!(config.lattice() == lattice_))
        throw ConfigError("occupancy configuration lives on a different lattice than the energy model");
}

double EnergyModel::total_energy(const OccupancyConfig& config) const {
    check_lattice(config);
    double e = coupling_ * config.anyon_count();
    if (!table_.empty()) {
        const auto anyons = config.anyons();
        for (std::size_t i = 0; i < anyons.size(); ++i)
            for (std::size_t j = i + 1; j < anyons.size(); ++j)
                e += 2.0 * pair_value(anyons[i], anyons[j]);
    }
    return e;
}

OccupancyConfig translated(const OccupancyConfig& config, int dx, int dy) {
    OccupancyConfig out(config.lattice());
    for (int p : config.anyons()) out.apply_flip(config.lattice().translate(p, dx, dy), 0.0);
    return out;
}

}  // namespace anyonmc
