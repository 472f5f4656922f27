#ifndef ANYONMC_SAMPLER_HPP
#define ANYONMC_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "anyonmc/energy.hpp"
#include "anyonmc/occupancy.hpp"
#include "anyonmc/rng.hpp"
#include "anyonmc/torus.hpp"

namespace anyonmc {

// Proposal weights. Global pair-flips guarantee ergodicity in the even
// sector, local pair-flips keep acceptance usable at low temperature, hops
// move anyons without changing their number.
struct MoveMix {
    double global_pair = 0.2;
    double local_pair = 0.6;
    double hop = 0.2;
};

struct ChainSettings {
    double beta = 1.0;
    long sweeps = 0;       // one sweep = L^2 proposals
    long burn_in = 0;      // sweeps discarded before recording
    long thinning = 1;     // sweeps between records
    std::uint64_t seed = 0;
    MoveMix move_mix;
    int local_radius = 2;
    bool hot_start = false;  // start from a uniform random even configuration
};

struct SampleRecord {
    long sweep = 0;
    int anyon_count = 0;
    double energy = 0.0;
    std::uint32_t bits = 0;             // occupancy bits when L*L <= 32, else 0
    std::vector<std::uint8_t> parity;   // 1 = even count in the window, per registered window
};

// Single Metropolis chain over even-parity occupancy configurations. Every
// proposal flips exactly two plaquettes or relocates one anyon, so the
// parity sector is preserved by construction; proposal distributions are
// symmetric, so acceptance is min(1, exp(-beta dE)).
class MetropolisChain {
public:
    MetropolisChain(const EnergyModel& model, const ChainSettings& settings);

    bool step();   // one proposal; true if accepted
    void sweep();  // L^2 proposals

    const OccupancyConfig& config() const { return config_; }
    OccupancyConfig& mutable_config() { return config_; }
    const EnergyModel& model() const { return model_; }
    long accepted() const { return accepted_; }
    long proposed() const { return proposed_; }

private:
    bool propose_pair(int p, int q);
    bool propose_hop();
    int random_neighbor(int p);

    const EnergyModel& model_;
    ChainSettings settings_;
    Rng rng_;
    OccupancyConfig config_;
    double p_global_, p_local_;  // cumulative move weights
    long accepted_ = 0;
    long proposed_ = 0;
};

void validate_settings(const ChainSettings& settings);

using RecordSink = std::function<void(const SampleRecord&)>;

// Runs a chain and emits one record per thinning interval after burn-in.
// Deterministic given (model, settings, windows).
void run_chain(const EnergyModel& model, const ChainSettings& settings,
               const std::vector<ParityWindow>& windows, const RecordSink& sink);

std::vector<SampleRecord> collect_chain(const EnergyModel& model, const ChainSettings& settings,
                                        const std::vector<ParityWindow>& windows);

// Fixed anyon number sampler (hop moves only), used for the confinement
// analysis. The interaction energy here is the sum of V(r) over unordered
// pairs, matching the two-anyon radial law it is tested against.
struct FixedNumberRecord {
    long sweep = 0;
    double extent = 0.0;  // pair distance for N = 2, max pairwise distance otherwise
};

class FixedNumberSampler {
public:
    FixedNumberSampler(const EnergyModel& model, int anyon_count, const ChainSettings& settings);

    bool step();
    const std::vector<int>& positions() const { return positions_; }
    double extent() const;

private:
    const EnergyModel& model_;
    ChainSettings settings_;
    Rng rng_;
    std::vector<int> positions_;
    std::vector<std::uint8_t> occupied_;
};

void run_fixed_number_chain(const EnergyModel& model, int anyon_count, const ChainSettings& settings,
                            const std::function<void(const FixedNumberRecord&)>& sink);

}  // namespace anyonmc

#endif
