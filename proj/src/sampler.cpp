#include "anyonmc/sampler.hpp"

#include <cmath>
#include <string>

namespace anyonmc {

void validate_settings(const ChainSettings& settings) {
    if (!(settings.beta >= 0.0) || !std::isfinite(settings.beta))
        throw ConfigError("chain requires finite beta >= 0");
    if (settings.burn_in < 0) throw ConfigError("burn_in must be >= 0");
    if (settings.sweeps < settings.burn_in)
        throw ConfigError("sweeps must be >= burn_in (got sweeps=" + std::to_string(settings.sweeps) +
                          ", burn_in=" + std::to_string(settings.burn_in) + ")");
    if (settings.thinning < 1) throw ConfigError("thinning must be >= 1");
    const MoveMix& mix = settings.move_mix;
    if (mix.global_pair < 0.0 || mix.local_pair < 0.0 || mix.hop < 0.0)
        throw ConfigError("move weights must be non-negative");
    if (mix.global_pair + mix.local_pair + mix.hop <= 0.0)
        throw ConfigError("move weights must not all be zero");
    if (settings.local_radius < 1) throw ConfigError("local_radius must be >= 1");
}

MetropolisChain::MetropolisChain(const EnergyModel& model, const ChainSettings& settings)
    : model_(model), settings_(settings), rng_(settings.seed), config_(model.lattice()) {
    validate_settings(settings_);
    const double total = settings_.move_mix.global_pair + settings_.move_mix.local_pair + settings_.move_mix.hop;
    p_global_ = settings_.move_mix.global_pair / total;
    p_local_ = p_global_ + settings_.move_mix.local_pair / total;

    if (settings_.hot_start) {
        // A uniform random even configuration is the exact beta = 0
        // equilibrium state.
        const int m = model_.lattice().num_plaquettes();
        for (int p = 0; p < m; ++p)
            if (rng_.next_u64() & 1u) config_.apply_flip(p, 0.0);
        if (config_.anyon_count() % 2 != 0) {
            const int p = rng_.below_int(m);
            config_.apply_flip(p, 0.0);
        }
        config_.reset_energy(0.0);
        config_.reset_energy(model_.total_energy(config_));
    }
}

int MetropolisChain::random_neighbor(int p) {
    const int r = settings_.local_radius;
    const int span = 2 * r + 1;
    for (;;) {
        const int dx = rng_.below_int(span) - r;
        const int dy = rng_.below_int(span) - r;
        if (dx == 0 && dy == 0) continue;
        return model_.lattice().translate(p, dx, dy);
    }
}

bool MetropolisChain::propose_pair(int p, int q) {
    if (p == q) return false;  // can happen when the neighborhood wraps on tiny lattices
    const double d1 = model_.flip_delta(config_, p);
    config_.apply_flip(p, d1);
    const double d2 = model_.flip_delta(config_, q);
    const double total = d1 + d2;
    if (total <= 0.0 || rng_.uniform() < std::exp(-settings_.beta * total)) {
        config_.apply_flip(q, d2);
        return true;
    }
    config_.apply_flip(p, -d1);
    return false;
}

bool MetropolisChain::propose_hop() {
    const int n = config_.anyon_count();
    const int m = model_.lattice().num_plaquettes();
    if (n == 0 || n == m) return false;
    const int src = config_.anyons()[static_cast<std::size_t>(rng_.below_int(n))];
    int dst;
    do {
        dst = rng_.below_int(m);
    } while (config_.occupied(dst));
    const double d1 = model_.flip_delta(config_, src);
    config_.apply_flip(src, d1);
    const double d2 = model_.flip_delta(config_, dst);
    const double total = d1 + d2;
    if (total <= 0.0 || rng_.uniform() < std::exp(-settings_.beta * total)) {
        config_.apply_flip(dst, d2);
        return true;
    }
    config_.apply_flip(src, -d1);
    return false;
}

bool MetropolisChain::step() {
    ++proposed_;
    const double u = rng_.uniform();
    bool ok;
    if (u < p_global_) {
        const int m = model_.lattice().num_plaquettes();
        const int p = rng_.below_int(m);
        int q;
        do {
            q = rng_.below_int(m);
        } while (q == p);
        ok = propose_pair(p, q);
    } else if (u < p_local_) {
        const int p = rng_.below_int(model_.lattice().num_plaquettes());
        ok = propose_pair(p, random_neighbor(p));
    } else {
        ok = propose_hop();
    }
    accepted_ += ok;
    return ok;
}

void MetropolisChain::sweep() {
    const int m = model_.lattice().num_plaquettes();
    for (int i = 0; i < m; ++i) step();
}

void run_chain(const EnergyModel& model, const ChainSettings& settings,
               const std::vector<ParityWindow>& windows, const RecordSink& sink) {
    for (const ParityWindow& w : windows)
        if (static_cast<int>(w.mask.size()) != model.lattice().num_plaquettes())
            throw ConfigError("parity window does not match the model lattice");

    MetropolisChain chain(model, settings);
    const bool small = model.lattice().num_plaquettes() <= 32;
    SampleRecord record;
    record.parity.resize(windows.size());
    for (long s = 1; s <= settings.sweeps; ++s) {
        chain.sweep();
        if (s <= settings.burn_in) continue;
        if ((s - settings.burn_in) % settings.thinning != 0) continue;
        const OccupancyConfig& cfg = chain.config();
        record.sweep = s;
        record.anyon_count = cfg.anyon_count();
        record.energy = cfg.energy();
        record.bits = small ? cfg.bits() : 0;
        for (std::size_t i = 0; i < windows.size(); ++i)
            record.parity[i] = static_cast<std::uint8_t>(cfg.count_in_mask(windows[i].mask) % 2 == 0);
        sink(record);
    }
}

std::vector<SampleRecord> collect_chain(const EnergyModel& model, const ChainSettings& settings,
                                        const std::vector<ParityWindow>& windows) {
    std::vector<SampleRecord> out;
    const long expected = settings.thinning > 0 ? (settings.sweeps - settings.burn_in) / settings.thinning : 0;
    if (expected > 0) out.reserve(static_cast<std::size_t>(expected));
    run_chain(model, settings, windows, [&out](const SampleRecord& r) { out.push_back(r); });
    return out;
}

FixedNumberSampler::FixedNumberSampler(const EnergyModel& model, int anyon_count, const ChainSettings& settings)
    : model_(model),
      settings_(settings),
      rng_(settings.seed),
      occupied_(static_cast<std::size_t>(model.lattice().num_plaquettes()), 0) {
    validate_settings(settings_);
    if (anyon_count < 2 || anyon_count % 2 != 0)
        throw ConfigError("fixed-number sampler requires an even anyon count N >= 2");
    if (anyon_count > model_.lattice().num_plaquettes())
        throw ConfigError("anyon count exceeds the number of plaquettes");
    // Compact deterministic start: the first N plaquettes in index order.
    positions_.resize(static_cast<std::size_t>(anyon_count));
    for (int i = 0; i < anyon_count; ++i) {
        positions_[static_cast<std::size_t>(i)] = i;
        occupied_[static_cast<std::size_t>(i)] = 1;
    }
}

bool FixedNumberSampler::step() {
    const int n = static_cast<int>(positions_.size());
    const int m = model_.lattice().num_plaquettes();
    if (n == m) return false;
    const int who = rng_.below_int(n);
    const int src = positions_[static_cast<std::size_t>(who)];
    int dst;
    do {
        dst = rng_.below_int(m);
    } while (occupied_[static_cast<std::size_t>(dst)]);

    // Interaction-only delta; single count per pair.
    double delta = 0.0;
    if (model_.interacting()) {
        for (int i = 0; i < n; ++i) {
            if (i == who) continue;
            const int other = positions_[static_cast<std::size_t>(i)];
            delta += model_.pair_value(dst, other) - model_.pair_value(src, other);
        }
    }
    if (delta <= 0.0 || rng_.uniform() < std::exp(-settings_.beta * delta)) {
        occupied_[static_cast<std::size_t>(src)] = 0;
        occupied_[static_cast<std::size_t>(dst)] = 1;
        positions_[static_cast<std::size_t>(who)] = dst;
        return true;
    }
    return false;
}

double FixedNumberSampler::extent() const {
    if (positions_.size() == 2) return min_image_distance(model_.lattice(), positions_[0], positions_[1]);
    double best = 0.0;
    for (std::size_t i = 0; i < positions_.size(); ++i)
        for (std::size_t j = i + 1; j < positions_.size(); ++j)
            best = std::max(best, min_image_distance(model_.lattice(), positions_[i], positions_[j]));
    return best;
}

void run_fixed_number_chain(const EnergyModel& model, int anyon_count, const ChainSettings& settings,
                            const std::function<void(const FixedNumberRecord&)>& sink) {
    FixedNumberSampler sampler(model, anyon_count, settings);
    const int m = model.lattice().num_plaquettes();
    for (long s = 1; s <= settings.sweeps; ++s) {
        for (int i = 0; i < m; ++i) sampler.step();
        if (s <= settings.burn_in) continue;
        if ((s - settings.burn_in) % settings.thinning != 0) continue;
        sink({s, sampler.extent()});
    }
}

}  // namespace anyonmc
