#include <doctest.h>

#include <cmath>

#include "anyonmc/rng.hpp"
#include "anyonmc/torus.hpp"

using namespace anyonmc;

TEST_CASE("minimal-image distance on the 8-torus") {
    TorusLattice lat(8);
    const int p00 = lat.index({0, 0});
    CHECK(min_image_distance(lat, p00, lat.index({1, 0})) == doctest::Approx(1.0));
    CHECK(min_image_distance(lat, p00, lat.index({7, 0})) == doctest::Approx(1.0));
    CHECK(min_image_distance(lat, p00, lat.index({1, 1})) == doctest::Approx(std::sqrt(2.0)));
    CHECK(min_image_distance(lat, p00, lat.index({4, 4})) == doctest::Approx(std::sqrt(32.0)));
    CHECK_THROWS_AS(min_image_distance(lat, 3, 3), ConfigError);
}

TEST_CASE("distance symmetries") {
    TorusLattice lat(7);
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = rng.below_int(lat.num_plaquettes());
        int q = rng.below_int(lat.num_plaquettes());
        if (q == p) q = (q + 1) % lat.num_plaquettes();
        const double d = min_image_distance(lat, p, q);
        CHECK(d == doctest::Approx(min_image_distance(lat, q, p)));
        CHECK(d >= 1.0);

        // translation of both arguments
        const int dx = rng.below_int(lat.side), dy = rng.below_int(lat.side);
        CHECK(min_image_distance(lat, lat.translate(p, dx, dy), lat.translate(q, dx, dy)) ==
              doctest::Approx(d));

        // the 8 point symmetries of the square lattice
        const Coord cp = lat.coord(p), cq = lat.coord(q);
        auto apply = [&](Coord c, int sym) {
            int x = c.x, y = c.y;
            if (sym & 1) x = lat.wrap(-x);
            if (sym & 2) y = lat.wrap(-y);
            if (sym & 4) std::swap(x, y);
            return lat.index({x, y});
        };
        for (int sym = 0; sym < 8; ++sym)
            CHECK(min_image_distance(lat, apply(cp, sym), apply(cq, sym)) == doctest::Approx(d));
    }
}

TEST_CASE("maximal pair distance equals sqrt(2) * floor(L/2)") {
    for (int side : {4, 5, 8, 9}) {
        TorusLattice lat(side);
        double best = 0.0;
        for (int q = 1; q < lat.num_plaquettes(); ++q)
            best = std::max(best, min_image_distance(lat, 0, q));
        CHECK(std::abs(best - std::sqrt(2.0) * (side / 2)) < 1e-12);
    }
}

TEST_CASE("partition examples") {
    const AnnulusPartition part = build_partition(8, 2, 2);
    CHECK(part.count(Region::Ra) == 4);
    CHECK(part.count(Region::Rb) == 32);
    CHECK(part.count(Region::Rc) == 28);

    const AnnulusPartition small = build_partition(5, 1, 1);
    CHECK(small.count(Region::Ra) == 1);
    CHECK(small.count(Region::Rb) == 8);
    CHECK(small.count(Region::Rc) == 16);

    CHECK_THROWS_AS(build_partition(6, 2, 2), ConfigError);
    CHECK_THROWS_AS(build_partition(8, 0, 1), ConfigError);
    CHECK_THROWS_AS(build_partition(8, 1, 0), ConfigError);
}

TEST_CASE("partition invariants over anchors and shapes") {
    for (int side : {7, 8, 11}) {
        for (int inner = 1; 3 * inner <= side - 1; ++inner) {
            const int width = inner;
            for (Coord anchor : {Coord{0, 0}, Coord{3, 5}, Coord{side - 1, 1}}) {
                const AnnulusPartition part = build_partition(side, inner, width, anchor);
                CHECK(part.count(Region::Ra) == inner * inner);
                CHECK(part.count(Region::Ra) + part.count(Region::Rb) + part.count(Region::Rc) ==
                      side * side);
                CHECK(part.count(Region::Rb) ==
                      (inner + 2 * width) * (inner + 2 * width) - inner * inner);
                CHECK(part.count(Region::Rc) > 0);
            }
        }
    }
}

TEST_CASE("parity windows wrap around the torus") {
    TorusLattice lat(4);
    const ParityWindow win = ParityWindow::block(lat, 2, {3, 3});
    int total = 0;
    for (auto b : win.mask) total += b;
    CHECK(total == 4);
    CHECK(win.mask[lat.index({3, 3})] == 1);
    CHECK(win.mask[lat.index({0, 3})] == 1);
    CHECK(win.mask[lat.index({3, 0})] == 1);
    CHECK(win.mask[lat.index({0, 0})] == 1);
    CHECK_THROWS_AS(ParityWindow::block(lat, 5), ConfigError);

    const AnnulusPartition part = build_partition(8, 2, 2, {1, 1});
    const ParityWindow from_part = ParityWindow::from_partition(part);
    CHECK(from_part.scale == 2);
    int count = 0;
    for (auto b : from_part.mask) count += b;
    CHECK(count == 4);
}

TEST_CASE("lattice rejects sides below 2") {
    CHECK_THROWS_AS(TorusLattice(1), ConfigError);
    CHECK_THROWS_AS(TorusLattice(0), ConfigError);
}
