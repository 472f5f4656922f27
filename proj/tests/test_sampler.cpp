#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "anyonmc/estimators.hpp"
#include "anyonmc/exact.hpp"
#include "anyonmc/sampler.hpp"

using namespace anyonmc;

namespace {

ChainSettings quick_settings(double beta, long sweeps, long burn_in, std::uint64_t seed) {
    ChainSettings s;
    s.beta = beta;
    s.sweeps = sweeps;
    s.burn_in = burn_in;
    s.seed = seed;
    return s;
}

}  // namespace

TEST_CASE("settings validation") {
    ChainSettings s = quick_settings(1.0, 10, 20, 1);
    CHECK_THROWS_AS(validate_settings(s), ConfigError);
    s = quick_settings(1.0, 10, 10, 1);
    CHECK_NOTHROW(validate_settings(s));  // empty stream is legal
    s = quick_settings(1.0, 10, 0, 1);
    s.move_mix = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(validate_settings(s), ConfigError);
    s.move_mix = {-0.1, 0.6, 0.5};
    CHECK_THROWS_AS(validate_settings(s), ConfigError);
}

TEST_CASE("sweeps equal to burn-in yields an empty stream") {
    EnergyModel model(TorusLattice(4), 1.0, NonInteracting{});
    const auto records = collect_chain(model, quick_settings(1.0, 50, 50, 3), {});
    CHECK(records.empty());
}

TEST_CASE("record streams are reproducible bit for bit") {
    TorusLattice lat(5);  // 25 plaquettes: packed bits available on records
    EnergyModel model(lat, 0.8, PowerLaw{0.5, 1.0});
    std::vector<ParityWindow> windows{ParityWindow::block(lat, 1)};
    const auto a = collect_chain(model, quick_settings(0.9, 300, 50, 42), windows);
    const auto b = collect_chain(model, quick_settings(0.9, 300, 50, 42), windows);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].bits == b[i].bits);
        CHECK(a[i].energy == b[i].energy);
        CHECK(a[i].anyon_count == b[i].anyon_count);
    }
    const auto c = collect_chain(model, quick_settings(0.9, 300, 50, 43), windows);
    bool any_different = c.size() != a.size();
    for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
        any_different = any_different || a[i].bits != c[i].bits;
    CHECK(any_different);
}

TEST_CASE("parity is even on every record") {
    const PairPotential potentials[] = {NonInteracting{}, PowerLaw{1.0, 1.0}, Logarithmic{1.0}};
    TorusLattice lat(5);
    for (const PairPotential& v : potentials) {
        EnergyModel model(lat, 0.5, v);
        const auto records = collect_chain(model, quick_settings(0.6, 400, 20, 5), {});
        REQUIRE(!records.empty());
        for (const auto& r : records) CHECK(r.anyon_count % 2 == 0);
    }
}

TEST_CASE("every pair proposal is accepted at beta = 0") {
    TorusLattice lat(4);
    EnergyModel model(lat, 1.0, PowerLaw{1.0, 1.0});
    ChainSettings s = quick_settings(0.0, 1, 0, 21);
    s.move_mix = {1.0, 0.0, 0.0};  // global pair flips only: no null proposals
    MetropolisChain chain(model, s);
    for (int i = 0; i < 5000; ++i) chain.step();
    CHECK(chain.accepted() == chain.proposed());
}

TEST_CASE("beta = 0 chain visits the whole even sector of L = 2") {
    TorusLattice lat(2);
    EnergyModel model(lat, 1.0, NonInteracting{});
    std::set<std::uint32_t> seen;
    run_chain(model, quick_settings(0.0, 2000, 0, 17), {},
              [&](const SampleRecord& r) { seen.insert(r.bits); });
    CHECK(seen.size() == 8);
}

TEST_CASE("stationary mean matches exact enumeration at betaJ = ln 2") {
    TorusLattice lat(2);
    EnergyModel model(lat, 1.0, NonInteracting{});
    const auto records = collect_chain(model, quick_settings(std::log(2.0), 60200, 200, 8), {});
    const auto density = estimate_density(records, lat.num_plaquettes());
    const double exact_mean = 1.2682926829268293 / lat.num_plaquettes();
    CHECK(std::abs(density.value - exact_mean) < 3.0 * density.error);
}

TEST_CASE("quick oracle equivalence for an interacting model") {
    TorusLattice lat(2);
    EnergyModel model(lat, 1.0, PowerLaw{1.0, 1.0});
    const double beta = 1.0;
    const ExactDistribution exact = exact_distribution(model, beta);
    std::vector<std::int64_t> counts(exact.prob.size(), 0);
    run_chain(model, quick_settings(beta, 100200, 200, 23), {},
              [&](const SampleRecord& r) { ++counts[r.bits]; });
    CHECK(total_variation(exact, counts) < 0.05);
}

TEST_CASE("move mix does not change the equilibrium") {
    TorusLattice lat(3);
    EnergyModel model(lat, 1.0, Logarithmic{1.0});
    ChainSettings a = quick_settings(0.8, 40200, 200, 31);
    ChainSettings b = a;
    b.seed = 77;
    b.move_mix = {0.8, 0.1, 0.1};
    const auto da = estimate_density(collect_chain(model, a, {}), 9);
    const auto db = estimate_density(collect_chain(model, b, {}), 9);
    CHECK(std::abs(da.value - db.value) < 3.0 * std::hypot(da.error, db.error));
}

TEST_CASE("deep quench freezes the repulsive chain at zero anyons") {
    TorusLattice lat(6);
    EnergyModel model(lat, 1.0, PowerLaw{1.0, 2.0});
    std::vector<ParityWindow> windows{ParityWindow::block(lat, 1)};
    const auto records = collect_chain(model, quick_settings(60.0, 300, 100, 4), windows);
    REQUIRE(!records.empty());
    for (const auto& r : records) {
        CHECK(r.anyon_count == 0);
        CHECK(r.parity[0] == 1);
    }
}

TEST_CASE("noninteracting density at betaJ = 2 on L = 16") {
    TorusLattice lat(16);
    EnergyModel model(lat, 1.0, NonInteracting{});
    const auto records = collect_chain(model, quick_settings(2.0, 20400, 400, 12), {});
    const auto density = estimate_density(records, lat.num_plaquettes());
    CHECK(std::abs(density.value - 0.11920292202211755) < 3.0 * density.error);
    CHECK(density.error < 0.002);
}

TEST_CASE("hot start equilibrates the attractive model deterministically") {
    TorusLattice lat(5);
    EnergyModel model(lat, 0.3, Logarithmic{1.5});
    ChainSettings s = quick_settings(1.2, 1200, 200, 6);
    s.hot_start = true;
    const auto a = collect_chain(model, s, {});
    const auto b = collect_chain(model, s, {});
    REQUIRE(!a.empty());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].bits == b[i].bits);
}

TEST_CASE("fixed-number sampler requires an even count") {
    EnergyModel model(TorusLattice(8), 0.0, Logarithmic{1.0});
    CHECK_THROWS_AS(FixedNumberSampler(model, 3, quick_settings(1.0, 10, 0, 1)), ConfigError);
    CHECK_THROWS_AS(FixedNumberSampler(model, 0, quick_settings(1.0, 10, 0, 1)), ConfigError);
}

TEST_CASE("two free anyons sample the lattice distance degeneracy at beta = 0") {
    TorusLattice lat(8);
    EnergyModel model(lat, 0.0, Logarithmic{1.0});
    std::map<int, long> hist;  // squared distance -> samples
    long total = 0;
    run_fixed_number_chain(model, 2, quick_settings(0.0, 40200, 200, 9), [&](const FixedNumberRecord& r) {
        ++hist[static_cast<int>(std::lround(r.extent * r.extent))];
        ++total;
    });
    std::map<int, double> expected;
    double norm_total = 0.0;
    for (int q = 1; q < lat.num_plaquettes(); ++q) {
        ++expected[min_image_distance_sq(lat, 0, q)];
        norm_total += 1.0;
    }
    double tv = 0.0;
    for (auto& [d2, deg] : expected) {
        const double p_model = deg / norm_total;
        const double p_emp = hist.count(d2) ? static_cast<double>(hist[d2]) / total : 0.0;
        tv += std::abs(p_model - p_emp);
    }
    CHECK(0.5 * tv < 0.03);
}

TEST_CASE("strong logarithmic binding pins the pair at distance 1") {
    TorusLattice lat(16);
    EnergyModel model(lat, 0.0, Logarithmic{1.0});
    double mean_extent = 0.0;
    long n = 0;
    run_fixed_number_chain(model, 2, quick_settings(12.0, 5200, 200, 10), [&](const FixedNumberRecord& r) {
        mean_extent += r.extent;
        ++n;
    });
    mean_extent /= n;
    CHECK(mean_extent < 1.1);
}
