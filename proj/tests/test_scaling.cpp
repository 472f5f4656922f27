#include <doctest.h>

#include <cmath>

#include "anyonmc/rng.hpp"
#include "anyonmc/scaling.hpp"

using namespace anyonmc;

TEST_CASE("exact power laws are recovered to machine precision") {
    std::vector<FitPoint> points;
    for (double side : {16.0, 24.0, 32.0, 48.0, 64.0})
        points.push_back({side, 3.0 * std::pow(side, 0.5), 0.0});
    const ScalingFit fit = fit_power_law(points, FitModel::PurePower);
    CHECK(std::abs(fit.exponent - 0.5) < 1e-10);
    CHECK(std::abs(fit.intercept - std::log(3.0)) < 1e-10);

    std::vector<FitPoint> flat;
    for (double side : {16.0, 32.0, 64.0}) flat.push_back({side, 7.0, 0.0});
    CHECK(std::abs(fit_power_law(flat, FitModel::PurePower).exponent) < 1e-12);
}

TEST_CASE("log-corrected model strips the ln L factor exactly") {
    std::vector<FitPoint> points;
    for (double side : {16.0, 32.0, 64.0, 128.0})
        points.push_back({side, std::sqrt(2.5 * side / std::log(side)), 0.0});
    const ScalingFit fit = fit_power_law(points, FitModel::PowerWithLogCorrection);
    CHECK(std::abs(fit.exponent - 0.5) < 1e-10);
}

TEST_CASE("noisy synthetic exponent recovery") {
    Rng rng(99);
    std::vector<FitPoint> points;
    for (double side : {16.0, 24.0, 32.0, 48.0, 64.0}) {
        double u1 = rng.uniform();
        while (u1 == 0.0) u1 = rng.uniform();
        const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * rng.uniform());
        const double value = 2.0 * std::pow(side, 0.75) * (1.0 + 0.02 * g);
        points.push_back({side, value, 0.02 * value});
    }
    const ScalingFit fit = fit_power_law(points, FitModel::PurePower);
    CHECK(std::abs(fit.exponent - 0.75) < 0.05);
    CHECK(fit.exponent_err < 0.05);
    CHECK(fit.exponent_err > 0.0);
}

TEST_CASE("fit is scale equivariant") {
    std::vector<FitPoint> base, scaled;
    for (double side : {8.0, 16.0, 32.0, 64.0}) {
        const double v = 1.7 * std::pow(side, 0.62);
        base.push_back({side, v, 0.03 * v});
        scaled.push_back({side, 13.0 * v, 13.0 * 0.03 * v});
    }
    const double g1 = fit_power_law(base, FitModel::PurePower).exponent;
    const double g2 = fit_power_law(scaled, FitModel::PurePower).exponent;
    CHECK(std::abs(g1 - g2) < 1e-12);
}

TEST_CASE("fit input validation") {
    std::vector<FitPoint> two{{8.0, 1.0, 0.0}, {16.0, 2.0, 0.0}};
    CHECK_THROWS_AS(fit_power_law(two, FitModel::PurePower), ConfigError);
    std::vector<FitPoint> degenerate{{8.0, 1.0, 0.0}, {8.0, 2.0, 0.0}, {8.0, 3.0, 0.0}};
    CHECK_THROWS_AS(fit_power_law(degenerate, FitModel::PurePower), ConfigError);
    std::vector<FitPoint> negative{{8.0, 1.0, 0.0}, {16.0, -2.0, 0.0}, {32.0, 3.0, 0.0}};
    CHECK_THROWS_AS(fit_power_law(negative, FitModel::PurePower), ConfigError);
}

TEST_CASE("phase classification rules") {
    ScalingFit fit;
    fit.exponent = 0.02;
    fit.exponent_err = 0.03;
    CHECK(classify_phase(fit, 0.0, std::nullopt).phase == Phase::Disordered);

    fit.exponent = 0.5;
    fit.exponent_err = 0.1;
    CHECK(classify_phase(fit, 0.0, std::nullopt).phase == Phase::WeaklyTO);

    // saturation evidence outranks the exponent
    CHECK(classify_phase(fit, 0.75, std::nullopt).phase == Phase::StronglyTO);
    CHECK(classify_phase(fit, 0.0, true).phase == Phase::StronglyTO);

    fit.exponent = 1.2;
    CHECK(classify_phase(fit, 0.0, std::nullopt).phase == Phase::Boundary);

    // deterministic: same inputs, same label and evidence
    const PhaseDecision a = classify_phase(fit, 0.0, std::nullopt);
    const PhaseDecision b = classify_phase(fit, 0.0, std::nullopt);
    CHECK(a.phase == b.phase);
    CHECK(a.evidence == b.evidence);
}

TEST_CASE("two-anyon law families agree where they should") {
    const TwoAnyonLaw cont = TwoAnyonLaw::continuum(64.0);
    CHECK(cont.cdf(16.0, 3.0) == doctest::Approx(two_anyon_radial_cdf(16.0, 64.0, 1.0, 3.0)));

    TorusLattice lat(16);
    const TwoAnyonLaw latt = TwoAnyonLaw::lattice(lat);
    // x = 0: uniform over the 255 partner sites
    int within = 0;
    for (int q = 1; q < lat.num_plaquettes(); ++q)
        if (min_image_distance(lat, 0, q) <= 4.0) ++within;
    CHECK(latt.cdf(4.0, 0.0) == doctest::Approx(static_cast<double>(within) / 255.0));

    // exponent inversion is exact on its own family
    for (double x0 : {0.5, 1.5, 2.0, 3.0}) {
        const double p = latt.cdf(4.0, x0);
        CHECK(std::abs(latt.invert_exponent(4.0, p) - x0) < 1e-6);
    }
}

TEST_CASE("transition location on analytic curves lands at A/2") {
    const double amplitude = 1.0;
    std::vector<TransitionCell> cells;
    for (int side : {32, 64}) {
        for (double t = 0.25; t <= 1.001; t += 0.05) {
            const double p = two_anyon_radial_cdf(side / 4.0, side, 1.0 / t, amplitude);
            cells.push_back({side, t, p, 1e-4});
        }
    }
    const TransitionReport report = locate_confinement_transition(cells, amplitude, false);
    REQUIRE(report.conclusive);
    CHECK(std::abs(report.tc_hat - 0.5) < 0.05);  // within 10% of A/2
    CHECK(report.reference == doctest::Approx(0.5));
    for (const auto& per : report.per_size) CHECK(per.crossed);
}

TEST_CASE("zero coupling yields no transition") {
    std::vector<TransitionCell> cells;
    for (int side : {32, 64})
        for (double t = 0.25; t <= 1.001; t += 0.25) {
            const double p = two_anyon_radial_cdf(side / 4.0, side, 1.0 / t, 0.0);
            cells.push_back({side, t, p, 1e-4});
        }
    const TransitionReport report = locate_confinement_transition(cells, 0.0, false);
    CHECK(!report.conclusive);
}

TEST_CASE("lattice-law transition recovery from lattice-generated data") {
    const double amplitude = 1.0;
    std::vector<TransitionCell> cells;
    for (int side : {16, 32}) {
        const TwoAnyonLaw law = TwoAnyonLaw::lattice(TorusLattice(side));
        for (double t = 0.25; t <= 1.001; t += 0.125)
            cells.push_back({side, t, law.cdf(side / 4.0, amplitude / t), 1e-5});
    }
    const TransitionReport report = locate_confinement_transition(cells, amplitude, true);
    REQUIRE(report.conclusive);
    CHECK(std::abs(report.tc_hat - 0.5) < 0.02);
}
