#include <doctest.h>

#include <cmath>

#include "anyonmc/energy.hpp"
#include "anyonmc/rng.hpp"
#include "anyonmc/sampler.hpp"

using namespace anyonmc;

TEST_CASE("pair potential values") {
    CHECK(pair_potential_value(PowerLaw{1.0, 2.0}, 2.0) == doctest::Approx(0.25));
    CHECK(pair_potential_value(Logarithmic{3.0}, 1.0) == doctest::Approx(0.0));
    CHECK(pair_potential_value(PowerLaw{2.0, 0.0}, 7.0) == doctest::Approx(2.0));
    CHECK(pair_potential_value(NonInteracting{}, 5.0) == doctest::Approx(0.0));
    CHECK(pair_potential_value(PowerLaw{1.0, -1.0}, 3.0) == doctest::Approx(3.0));  // attractive growth
    CHECK_THROWS_AS(pair_potential_value(PowerLaw{1.0, 2.0}, 0.5), ConfigError);
}

TEST_CASE("total energy follows the ordered double sum") {
    TorusLattice lat(8);
    EnergyModel model(lat, 1.0, PowerLaw{1.0, 2.0});
    OccupancyConfig config(lat);

    CHECK(model.total_energy(config) == doctest::Approx(0.0));

    EnergyModel j_only(lat, 1.5, NonInteracting{});
    config.apply_flip(lat.index({0, 0}), 0.0);
    CHECK(j_only.total_energy(config) == doctest::Approx(1.5));

    config.apply_flip(lat.index({2, 0}), 0.0);  // pair at distance 2
    CHECK(model.total_energy(config) == doctest::Approx(1.0 + 1.0 + 2.0 * 0.25));
}

TEST_CASE("lattice mismatch is rejected") {
    EnergyModel model(TorusLattice(8), 1.0, NonInteracting{});
    OccupancyConfig other(TorusLattice(6));
    CHECK_THROWS_AS(model.total_energy(other), ConfigError);
}

TEST_CASE("flip delta examples") {
    TorusLattice lat(8);
    EnergyModel model(lat, 1.0, PowerLaw{1.0, 2.0});
    OccupancyConfig config(lat);

    CHECK(model.flip_delta(config, 5) == doctest::Approx(1.0));

    OccupancyConfig one(lat);
    one.apply_flip(7, 0.0);
    EnergyModel j_only(lat, 1.0, NonInteracting{});
    CHECK(j_only.flip_delta(one, 7) == doctest::Approx(-1.0));

    OccupancyConfig near(lat);
    near.apply_flip(lat.index({2, 0}), 0.0);
    CHECK(model.flip_delta(near, lat.index({0, 0})) == doctest::Approx(1.0 + 2.0 * 0.25));
}

TEST_CASE("flip delta equals the recomputed energy difference") {
    TorusLattice lat(6);
    const PairPotential potentials[] = {NonInteracting{}, PowerLaw{0.7, 1.0}, Logarithmic{0.4}};
    Rng rng(7);
    for (const PairPotential& v : potentials) {
        EnergyModel model(lat, 0.8, v);
        OccupancyConfig config(lat);
        for (int step = 0; step < 400; ++step) {
            const int p = rng.below_int(lat.num_plaquettes());
            const double before = model.total_energy(config);
            const double delta = model.flip_delta(config, p);
            config.apply_flip(p, delta);
            const double after = model.total_energy(config);
            CHECK(std::abs(delta - (after - before)) <=
                  1e-9 * std::max({1.0, std::abs(after), std::abs(before)}));
            CHECK(std::abs(config.energy() - after) <= 1e-9 * std::max(1.0, std::abs(after)));
        }
    }
}

TEST_CASE("flip delta antisymmetry") {
    TorusLattice lat(6);
    EnergyModel model(lat, 0.5, Logarithmic{1.3});
    OccupancyConfig config(lat);
    Rng rng(11);
    for (int i = 0; i < 12; ++i) config.apply_flip(rng.below_int(lat.num_plaquettes()), 0.0);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        const double d1 = model.flip_delta(config, p);
        config.apply_flip(p, d1);
        const double d2 = model.flip_delta(config, p);
        config.apply_flip(p, d2);
        CHECK(std::abs(d1 + d2) < 1e-12);
    }
}

TEST_CASE("energy cache stays exact across a million accepted flips") {
    TorusLattice lat(12);
    EnergyModel model(lat, 0.2, PowerLaw{0.3, 1.0});
    ChainSettings settings;
    settings.beta = 0.7;
    settings.sweeps = 1;  // stepped manually below
    settings.seed = 99;
    MetropolisChain chain(model, settings);
    long accepted = 0;
    while (accepted < 500000) {  // pair moves: ~1e6 plaquette flips
        accepted += chain.step();
    }
    const double cached = chain.config().energy();
    const double fresh = model.total_energy(chain.config());
    CHECK(std::abs(cached - fresh) <= 1e-9 * std::max(1.0, std::abs(fresh)));
}

TEST_CASE("total energy is translation invariant") {
    TorusLattice lat(9);
    EnergyModel model(lat, 1.1, PowerLaw{0.5, 1.5});
    OccupancyConfig config(lat);
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        const int p = rng.below_int(lat.num_plaquettes());
        if (!config.occupied(p)) config.apply_flip(p, 0.0);
    }
    const double base = model.total_energy(config);
    for (auto [dx, dy] : {std::pair{1, 0}, {0, 4}, {5, 7}}) {
        OccupancyConfig moved = translated(config, dx, dy);
        CHECK(model.total_energy(moved) == doctest::Approx(base));
    }
}

TEST_CASE("repulsive potentials make energy monotone in anyon number") {
    TorusLattice lat(8);
    EnergyModel model(lat, 0.4, PowerLaw{1.0, 3.0});
    OccupancyConfig config(lat);
    double prev = model.total_energy(config);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        const double delta = model.flip_delta(config, p);
        config.apply_flip(p, delta);
        const double now = config.energy();
        CHECK(now > prev);
        prev = now;
    }
}

TEST_CASE("boson effective couplings") {
    CHECK(effective_coupling(LogInL{3.0}, 2.0, 5.0) == doctest::Approx(0.0));
    CHECK(effective_coupling(LinearInL{0.5}, 10.0, 1.0) == doctest::Approx(5.0));
    CHECK(effective_coupling(LogInL{2.0}, 2.0 * std::exp(1.0), 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(effective_coupling(LogInL{2.0}, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(effective_coupling(LogInL{-1.0}, 8.0, 1.0), ConfigError);
    CHECK_THROWS_AS(effective_coupling(LinearInL{0.5}, 8.0, 0.0), ConfigError);
}
