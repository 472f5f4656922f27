#include "anyonmc/exact.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

namespace anyonmc {

namespace {

double shannon_bit(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

}  // namespace

ExactDistribution exact_distribution(const EnergyModel& model, double beta) {
    const int m = model.lattice().num_plaquettes();
    if (m > kExactMaxPlaquettes)
        throw ConfigError("exact enumeration is limited to " + std::to_string(kExactMaxPlaquettes) +
                          " plaquettes (got L*L = " + std::to_string(m) + ")");

    const std::uint32_t n_configs = 1u << m;
    ExactDistribution dist{model.lattice(), beta, std::vector<double>(n_configs, 0.0)};

    // Energies via the displacement table; ground state energy subtracted
    // before exponentiating to avoid overflow at large beta.
    std::vector<double> energy(n_configs, 0.0);
    double e_min = 0.0;
    std::vector<int> occupied;
    occupied.reserve(static_cast<std::size_t>(m));
    for (std::uint32_t bits = 0; bits < n_configs; ++bits) {
        if (std::popcount(bits) % 2 != 0) continue;
        occupied.clear();
        for (int p = 0; p < m; ++p)
            if (bits & (1u << p)) occupied.push_back(p);
        double e = model.coupling() * static_cast<double>(occupied.size());
        for (std::size_t i = 0; i < occupied.size(); ++i)
            for (std::size_t j = i + 1; j < occupied.size(); ++j)
                e += 2.0 * model.pair_value(occupied[i], occupied[j]);
        energy[bits] = e;
        if (e < e_min) e_min = e;
    }

    double z = 0.0;
    double n_sum = 0.0;
    for (std::uint32_t bits = 0; bits < n_configs; ++bits) {
        if (std::popcount(bits) % 2 != 0) continue;
        const double w = std::exp(-beta * (energy[bits] - e_min));
        dist.prob[bits] = w;
        z += w;
        n_sum += w * std::popcount(bits);
    }
    if (!(z > 0.0) || !std::isfinite(z)) throw NumericalError("exact enumeration produced a degenerate partition sum");
    for (double& p : dist.prob) p /= z;
    dist.mean_anyons = n_sum / z;
    return dist;
}

double ExactDistribution::window_parity_probability(std::uint32_t window_bits) const {
    double even = 0.0;
    for (std::uint32_t bits = 0; bits < prob.size(); ++bits) {
        if (prob[bits] == 0.0) continue;
        if (std::popcount(bits & window_bits) % 2 == 0) even += prob[bits];
    }
    return even;
}

double ExactDistribution::conditional_parity_entropy(std::uint32_t ra_bits, std::uint32_t rb_bits) const {
    // Group configurations by the restriction to Rb; within each group,
    // split the mass by the parity of Ra.
    std::unordered_map<std::uint32_t, std::pair<double, double>> groups;
    for (std::uint32_t bits = 0; bits < prob.size(); ++bits) {
        const double p = prob[bits];
        if (p == 0.0) continue;
        auto& cell = groups[bits & rb_bits];
        if (std::popcount(bits & ra_bits) % 2 == 0)
            cell.first += p;
        else
            cell.second += p;
    }
    double h = 0.0;
    for (const auto& [key, cell] : groups) {
        const double mass = cell.first + cell.second;
        if (mass <= 0.0) continue;
        h += mass * shannon_bit(cell.first / mass);
    }
    return h;
}

double conditional_gamma_oracle(const ExactDistribution& dist, std::uint32_t ra_bits, std::uint32_t rb_bits) {
    return 2.0 * std::log(2.0) - 2.0 * dist.conditional_parity_entropy(ra_bits, rb_bits);
}

double unconditional_gamma_oracle(const ExactDistribution& dist, std::uint32_t ra_bits) {
    const double pi = dist.window_parity_probability(ra_bits);
    return 2.0 * std::log(2.0) - 2.0 * shannon_bit(pi);
}

double total_variation(const ExactDistribution& dist, std::span<const std::int64_t> counts) {
    if (counts.size() != dist.prob.size())
        throw ConfigError("total_variation: counts table size does not match configuration space");
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    if (total <= 0) throw ConfigError("total_variation: empty sample");
    double tv = 0.0;
    for (std::size_t bits = 0; bits < counts.size(); ++bits)
        tv += std::abs(static_cast<double>(counts[bits]) / static_cast<double>(total) - dist.prob[bits]);
    return 0.5 * tv;
}

}  // namespace anyonmc
