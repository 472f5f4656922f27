#include "anyonmc/torus.hpp"

#include <cmath>
#include <string>

namespace anyonmc {

double min_image_distance(const TorusLattice& lat, int p, int q) {
    if (p == q) throw ConfigError("min_image_distance requires distinct plaquettes");
    return std::sqrt(static_cast<double>(min_image_distance_sq(lat, p, q)));
}

int AnnulusPartition::count(Region r) const {
    int n = 0;
    for (Region lab : labels) n += (lab == r);
    return n;
}

std::vector<std::uint8_t> AnnulusPartition::region_mask(Region r) const {
    std::vector<std::uint8_t> m(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) m[i] = (labels[i] == r);
    return m;
}

std::uint32_t AnnulusPartition::region_bits(Region r) const {
    if (labels.size() > 32) throw ConfigError("region_bits needs L*L <= 32 plaquettes");
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == r) bits |= (1u << i);
    return bits;
}

AnnulusPartition build_partition(int side, int inner, int width, Coord anchor) {
    TorusLattice lat(side);
    if (inner < 1) throw ConfigError("partition requires l >= 1 (got l=" + std::to_string(inner) + ")");
    if (width < 1) throw ConfigError("partition requires w >= 1 (got w=" + std::to_string(width) + ")");
    if (inner + 2 * width > side - 1)
        throw ConfigError("partition requires l + 2w <= L - 1 (got " + std::to_string(inner) + " + 2*" +
                          std::to_string(width) + " > " + std::to_string(side - 1) + ")");

    AnnulusPartition part;
    part.side = side;
    part.inner = inner;
    part.width = width;
    part.anchor = {lat.wrap(anchor.x), lat.wrap(anchor.y)};
    part.labels.assign(static_cast<std::size_t>(lat.num_plaquettes()), Region::Rc);

    const int outer = inner + 2 * width;
    for (int oy = 0; oy < outer; ++oy) {
        for (int ox = 0; ox < outer; ++ox) {
            const int x = lat.wrap(part.anchor.x - width + ox);
            const int y = lat.wrap(part.anchor.y - width + oy);
            const bool in_core = ox >= width && ox < width + inner && oy >= width && oy < width + inner;
            part.labels[static_cast<std::size_t>(lat.index({x, y}))] = in_core ? Region::Ra : Region::Rb;
        }
    }
    return part;
}

ParityWindow ParityWindow::block(const TorusLattice& lat, int scale, Coord anchor) {
    if (scale < 1 || scale > lat.side)
        throw ConfigError("parity window requires 1 <= l <= L (got l=" + std::to_string(scale) + ")");
    ParityWindow win;
    win.scale = scale;
    win.mask.assign(static_cast<std::size_t>(lat.num_plaquettes()), 0);
    for (int oy = 0; oy < scale; ++oy)
        for (int ox = 0; ox < scale; ++ox)
            win.mask[static_cast<std::size_t>(lat.index({lat.wrap(anchor.x + ox), lat.wrap(anchor.y + oy)}))] = 1;
    return win;
}

ParityWindow ParityWindow::from_partition(const AnnulusPartition& part) {
    ParityWindow win;
    win.scale = part.inner;
    win.mask = part.region_mask(Region::Ra);
    return win;
}

}  // namespace anyonmc
