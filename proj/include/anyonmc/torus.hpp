#ifndef ANYONMC_TORUS_HPP
#define ANYONMC_TORUS_HPP

#include <cstdint>
#include <vector>

#include "anyonmc/errors.hpp"

namespace anyonmc {

struct Coord {
    int x = 0;
    int y = 0;
    friend bool operator==(const Coord&, const Coord&) = default;
};

// L x L plaquette lattice with periodic boundaries. Plaquette centers sit on
// the integer grid with lattice constant 1, so the nearest distinct pair is
// at distance 1. Linear index p = y*L + x.
struct TorusLattice {
    int side;

    explicit TorusLattice(int side_) : side(side_) {
        if (side < 2) throw ConfigError("lattice side must satisfy L >= 2");
    }

    int num_plaquettes() const { return side * side; }
    int index(Coord c) const { return c.y * side + c.x; }
    Coord coord(int p) const { return {p % side, p / side}; }
    int wrap(int v) const {
        v %= side;
        return v < 0 ? v + side : v;
    }
    int translate(int p, int dx, int dy) const {
        Coord c = coord(p);
        return index({wrap(c.x + dx), wrap(c.y + dy)});
    }
    friend bool operator==(const TorusLattice&, const TorusLattice&) = default;
};

// Squared minimal-image displacement between plaquettes p and q.
inline int min_image_distance_sq(const TorusLattice& lat, int p, int q) {
    const int L = lat.side;
    int dx = p % L - q % L;
    if (dx < 0) dx = -dx;
    if (dx > L - dx) dx = L - dx;
    int dy = p / L - q / L;
    if (dy < 0) dy = -dy;
    if (dy > L - dy) dy = L - dy;
    return dx * dx + dy * dy;
}

// Euclidean distance between distinct plaquettes, reduced to the minimal
// periodic image (|dx|, |dy| <= L/2). Distances between coincident
// plaquettes are never consumed by the energy sums, so p == q is a domain
// error rather than 0.
double min_image_distance(const TorusLattice& lat, int p, int q);

enum class Region : std::uint8_t { Ra, Rb, Rc };

// Partition of the plaquettes into a central l x l block R_a, the frame R_b
// of width w around it, and the remainder R_c. Requires l + 2w <= L - 1 so
// that the frame does not wrap onto itself and R_c is nonempty.
struct AnnulusPartition {
    int side = 0;
    int inner = 0;   // l
    int width = 0;   // w
    Coord anchor;    // corner of R_a
    std::vector<Region> labels;  // one per plaquette

    int count(Region r) const;
    std::vector<std::uint8_t> region_mask(Region r) const;  // 0/1 per plaquette
    std::uint32_t region_bits(Region r) const;               // only for side*side <= 32
};

AnnulusPartition build_partition(int side, int inner, int width, Coord anchor = {0, 0});

// An l x l block of plaquettes whose net-occupancy parity is tracked during
// sampling. Any l <= L is allowed here; the stricter AnnulusPartition bound
// applies only when R_b / R_c are needed explicitly.
struct ParityWindow {
    int scale = 0;  // l
    std::vector<std::uint8_t> mask;

    static ParityWindow block(const TorusLattice& lat, int scale, Coord anchor = {0, 0});
    static ParityWindow from_partition(const AnnulusPartition& part);
};

}  // namespace anyonmc

#endif
