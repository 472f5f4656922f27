#include "anyonmc/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "anyonmc/meanfield.hpp"
#include "anyonmc/rng.hpp"

namespace anyonmc {

BlockingResult blocking_analysis(std::span<const double> series) {
    if (series.size() < 2) throw ConfigError("blocking analysis needs at least 2 samples");

    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(series.size());

    std::vector<double> level(series.begin(), series.end());
    double prev_err = -1.0;
    long block = 1;
    BlockingResult out{mean, 0.0, 1, series.size()};
    for (;;) {
        const std::size_t n = level.size();
        double var = 0.0;
        for (double x : level) var += (x - mean) * (x - mean);
        var /= static_cast<double>(n - 1);
        const double err = std::sqrt(var / static_cast<double>(n));

        out.std_error = err;
        out.block_size = block;
        // Plateau: the estimate stopped growing across a doubling.
        if (prev_err >= 0.0 && err <= prev_err * 1.03) break;
        prev_err = err;

        if (n / 2 < 16) break;  // too few blocks to keep doubling
        for (std::size_t i = 0; i + 1 < n; i += 2) level[i / 2] = 0.5 * (level[i] + level[i + 1]);
        level.resize(n / 2);
        block *= 2;
    }
    return out;
}

ValueWithError estimate_density(std::span<const SampleRecord> records, int num_plaquettes) {
    if (records.size() < 2) throw ConfigError("density estimate needs at least 2 records");
    std::vector<double> series;
    series.reserve(records.size());
    for (const SampleRecord& r : records)
        series.push_back(static_cast<double>(r.anyon_count) / static_cast<double>(num_plaquettes));
    const BlockingResult b = blocking_analysis(series);
    return {b.mean, b.std_error};
}

std::vector<ParityPoint> estimate_parity_profile(std::span<const SampleRecord> records,
                                                 std::span<const int> scales) {
    if (records.empty()) throw ConfigError("parity profile needs records");
    for (const SampleRecord& r : records)
        if (r.parity.size() != scales.size())
            throw ConfigError("record is missing parity bits for a requested window");

    std::vector<ParityPoint> profile(scales.size());
    std::vector<double> series(records.size());
    for (std::size_t w = 0; w < scales.size(); ++w) {
        for (std::size_t i = 0; i < records.size(); ++i) series[i] = records[i].parity[w];
        const BlockingResult b = blocking_analysis(series);
        profile[w].scale = scales[w];
        profile[w].pi = b.mean;
        profile[w].pi_err = b.std_error;
        profile[w].block_size = b.block_size;
    }
    return profile;
}

void estimate_gamma(std::vector<ParityPoint>& profile) {
    Rng rng(0xb007u);  // fixed seed: estimates stay deterministic
    for (ParityPoint& pt : profile) {
        pt.gamma = gamma_single_sector(pt.pi);
        const bool near_half = std::abs(pt.pi - 0.5) < 3.0 * pt.pi_err;
        const bool at_edge = pt.pi < 1e-12 || pt.pi > 1.0 - 1e-12;
        if (pt.pi_err == 0.0) {
            pt.gamma_err = 0.0;
        } else if (!near_half && !at_edge) {
            // dGamma/dpi = 2 ln(pi / (1 - pi))
            pt.gamma_err = std::abs(2.0 * std::log(pt.pi / (1.0 - pt.pi))) * pt.pi_err;
        } else {
            // Parametric bootstrap over the sampling law of pi_hat; picks up
            // the quadratic term where the derivative vanishes.
            const int n_boot = 256;
            double sum = 0.0, sum_sq = 0.0;
            for (int b = 0; b < n_boot; ++b) {
                double u1 = rng.uniform(), u2 = rng.uniform();
                while (u1 == 0.0) u1 = rng.uniform();
                const double normal = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
                const double pi_b = std::clamp(pt.pi + pt.pi_err * normal, 0.0, 1.0);
                const double g = gamma_single_sector(pi_b);
                sum += g;
                sum_sq += g * g;
            }
            const double mean = sum / n_boot;
            pt.gamma_err = std::sqrt(std::max(0.0, sum_sq / n_boot - mean * mean));
        }
    }
}

namespace {

// Pool-adjacent-violators for a non-increasing sequence, weighted 1/sigma^2.
std::vector<double> isotonic_non_increasing(const std::vector<double>& y, const std::vector<double>& w) {
    struct Block {
        double value, weight;
        int count;
    };
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < y.size(); ++i) {
        blocks.push_back({y[i], w[i], 1});
        while (blocks.size() >= 2 && blocks[blocks.size() - 2].value < blocks.back().value) {
            Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            const double total = a.weight + b.weight;
            a.value = (a.value * a.weight + b.value * b.weight) / total;
            a.weight = total;
            a.count += b.count;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (const Block& b : blocks) out.insert(out.end(), static_cast<std::size_t>(b.count), b.value);
    return out;
}

}  // namespace

LambdaEstimate estimate_lambda(std::span<const ParityPoint> profile, double delta) {
    if (!(delta > 0.0) || !(delta < 0.5)) throw ConfigError("lambda estimate requires delta in (0, 1/2)");
    if (profile.empty()) throw ConfigError("lambda estimate needs a nonempty profile");

    std::vector<const ParityPoint*> pts(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) pts[i] = &profile[i];
    std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->scale < b->scale; });

    std::vector<double> pi(pts.size()), weight(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pi[i] = pts[i]->pi;
        const double s = std::max(pts[i]->pi_err, 1e-12);
        weight[i] = 1.0 / (s * s);
    }

    LambdaEstimate out;
    for (std::size_t i = 0; i + 1 < pi.size(); ++i) {
        const double combined = std::hypot(pts[i]->pi_err, pts[i + 1]->pi_err);
        if (pi[i + 1] > pi[i] + 2.0 * combined) out.isotonic_warning = true;
    }
    const std::vector<double> iso = isotonic_non_increasing(pi, weight);

    const double target = 1.0 - delta;
    if (iso.front() < target) {
        out.flag = LambdaFlag::NotCrossedBelow;
        return out;
    }
    if (iso.back() > target) {
        out.flag = LambdaFlag::NotCrossedAbove;
        return out;
    }

    std::size_t j = 1;
    while (j < iso.size() && iso[j] > target) ++j;
    // iso[j-1] >= target >= iso[j]
    const std::size_t i = j - 1;
    const double a = static_cast<double>(pts[i]->scale) * pts[i]->scale;
    const double b = static_cast<double>(pts[j]->scale) * pts[j]->scale;
    const double si = pts[i]->pi_err, sj = pts[j]->pi_err;

    double lambda_sq, var_lambda_sq;
    if (iso[i] > 0.5 && iso[j] > 0.5) {
        // exact coordinates for the uncorrelated law
        const double yi = std::log(2.0 * iso[i] - 1.0);
        const double yj = std::log(2.0 * iso[j] - 1.0);
        const double yt = std::log(1.0 - 2.0 * delta);
        const double den = yj - yi;
        if (den == 0.0) {
            lambda_sq = a;
            var_lambda_sq = 0.0;
        } else {
            lambda_sq = a + (yt - yi) * (b - a) / den;
            const double d_yi = (b - a) * (yt - yj) / (den * den);
            const double d_yj = -(b - a) * (yt - yi) / (den * den);
            const double sy_i = 2.0 * si / (2.0 * iso[i] - 1.0);
            const double sy_j = 2.0 * sj / (2.0 * iso[j] - 1.0);
            var_lambda_sq = d_yi * d_yi * sy_i * sy_i + d_yj * d_yj * sy_j * sy_j;
        }
    } else {
        // lower point already fully decorrelated; fall back to linear in pi
        const double den = iso[j] - iso[i];
        if (den == 0.0) {
            lambda_sq = a;
            var_lambda_sq = 0.0;
        } else {
            lambda_sq = a + (target - iso[i]) * (b - a) / den;
            const double d_i = (b - a) * (target - iso[j]) / (den * den);
            const double d_j = -(b - a) * (target - iso[i]) / (den * den);
            var_lambda_sq = d_i * d_i * si * si + d_j * d_j * sj * sj;
        }
    }
    out.flag = LambdaFlag::Crossed;
    out.value = std::sqrt(std::max(lambda_sq, 0.0));
    out.error = out.value > 0.0 ? std::sqrt(std::max(var_lambda_sq, 0.0)) / (2.0 * out.value) : 0.0;
    return out;
}

GammaProfile build_gamma_profile(std::span<const SampleRecord> records, std::span<const int> scales,
                                 double delta) {
    GammaProfile gp;
    gp.delta = delta;
    gp.samples = records.size();
    gp.points = estimate_parity_profile(records, scales);
    estimate_gamma(gp.points);
    gp.lambda = estimate_lambda(gp.points, delta);
    return gp;
}

std::vector<int> default_scale_grid(int side) {
    const int max_scale = (side - 1) / 3;
    std::vector<int> grid;
    for (int l = 1; l <= std::min(8, max_scale); ++l) grid.push_back(l);
    double next = 8.0 * 1.3;
    while (static_cast<int>(next) <= max_scale) {
        const int l = static_cast<int>(next);
        if (grid.empty() || l > grid.back()) grid.push_back(l);
        next *= 1.3;
    }
    if (grid.empty()) grid.push_back(std::min(1, side));
    return grid;
}

}  // namespace anyonmc
