#include "anyonmc/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace anyonmc {

std::string fit_model_name(FitModel model) {
    return model == FitModel::PurePower ? "pure-power" : "power-with-log-correction";
}

ScalingFit fit_power_law(std::span<const FitPoint> points, FitModel model) {
    if (points.size() < 3) throw ConfigError("power-law fit needs at least 3 points");

    std::vector<double> x, y, w;
    bool weighted = true;
    for (const FitPoint& p : points) {
        if (!(p.size > 1.0)) throw ConfigError("fit sizes must exceed 1");
        if (!(p.value > 0.0)) throw ConfigError("fit values must be positive");
        double yi = std::log(p.value);
        if (model == FitModel::PowerWithLogCorrection) yi += 0.5 * std::log(std::log(p.size));
        x.push_back(std::log(p.size));
        y.push_back(yi);
        if (p.error > 0.0)
            w.push_back((p.value * p.value) / (p.error * p.error));  // 1/sigma_lnλ^2
        else
            weighted = false;
    }
    if (!weighted) w.assign(points.size(), 1.0);

    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    if (!(det > 1e-12 * sw * sxx)) throw ConfigError("degenerate fit design: all sizes equal");

    ScalingFit fit;
    fit.model = model;
    fit.points.assign(points.begin(), points.end());
    fit.exponent = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;

    double chi2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.exponent * x[i] - fit.intercept;
        chi2 += w[i] * r * r;
    }
    const double dof = static_cast<double>(x.size()) - 2.0;
    fit.chi2_dof = dof > 0.0 ? chi2 / dof : 0.0;
    if (weighted) {
        fit.exponent_err = std::sqrt(sw / det);
    } else {
        const double s2 = dof > 0.0 ? chi2 / dof : 0.0;
        fit.exponent_err = std::sqrt(s2 * sw / det);
    }
    return fit;
}

PhaseDecision classify_phase(const ScalingFit& fit, double not_crossed_fraction,
                             std::optional<bool> density_suppressed, PhaseThresholds thresholds) {
    PhaseDecision out;
    out.thresholds = thresholds;
    const double g = fit.exponent;
    char buf[160];
    if (not_crossed_fraction > thresholds.saturation_majority) {
        out.phase = Phase::StronglyTO;
        std::snprintf(buf, sizeof buf, "range saturates the largest window for %.0f%% of sizes",
                      100.0 * not_crossed_fraction);
        out.evidence = buf;
        return out;
    }
    if (density_suppressed.value_or(false)) {
        out.phase = Phase::StronglyTO;
        out.evidence = "anyon density exponentially suppressed in L";
        return out;
    }
    std::snprintf(buf, sizeof buf, "fitted exponent %.4f +/- %.4f (thresholds %.2f/%.2f)", g,
                  fit.exponent_err, thresholds.disordered_max, thresholds.weak_max);
    out.evidence = buf;
    if (std::abs(g) < thresholds.disordered_max)
        out.phase = Phase::Disordered;
    else if (g >= thresholds.disordered_max && g <= thresholds.weak_max)
        out.phase = Phase::WeaklyTO;
    else
        out.phase = Phase::Boundary;
    return out;
}

TwoAnyonLaw TwoAnyonLaw::continuum(double side) {
    if (side < 2.0) throw ConfigError("two-anyon law requires L >= 2");
    TwoAnyonLaw law;
    law.side_ = side;
    return law;
}

TwoAnyonLaw TwoAnyonLaw::lattice(const TorusLattice& lat) {
    TwoAnyonLaw law;
    law.side_ = lat.side;
    std::map<int, double> hist;  // squared distance -> degeneracy
    const int m = lat.num_plaquettes();
    for (int q = 1; q < m; ++q) ++hist[min_image_distance_sq(lat, 0, q)];
    law.distance_.reserve(hist.size());
    law.degeneracy_.reserve(hist.size());
    for (const auto& [d2, deg] : hist) {
        law.distance_.push_back(std::sqrt(static_cast<double>(d2)));
        law.degeneracy_.push_back(deg);
    }
    return law;
}

double TwoAnyonLaw::max_distance() const {
    return distance_.empty() ? side_ : distance_.back();
}

double TwoAnyonLaw::cdf(double radius, double x) const {
    if (distance_.empty()) {
        // same integral as two_anyon_radial_cdf, extended to any real x so
        // the exponent inversion can bracket freely
        const double r = std::clamp(radius, 1.0, side_);
        const double u = 2.0 - x;
        if (std::abs(u) < 1e-9) return std::log(r) / std::log(side_);
        return (std::pow(r, u) - 1.0) / (std::pow(side_, u) - 1.0);
    }
    double below = 0.0, total = 0.0;
    for (std::size_t k = 0; k < distance_.size(); ++k) {
        const double wgt = degeneracy_[k] * std::pow(distance_[k], -x);
        total += wgt;
        if (distance_[k] <= radius) below += wgt;
    }
    return below / total;
}

double TwoAnyonLaw::invert_exponent(double radius, double p) const {
    if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("exponent inversion requires p in (0, 1)");
    double lo = -10.0, hi = 50.0;
    // cdf is increasing in x (more weight at short distance)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(radius, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TransitionReport locate_confinement_transition(std::span<const TransitionCell> cells, double amplitude,
                                               bool use_lattice_law, double ratio) {
    if (cells.empty()) throw ConfigError("transition location needs measured cells");
    if (!(ratio > 0.0) || !(ratio < 1.0)) throw ConfigError("containment ratio must lie in (0, 1)");

    std::map<int, std::vector<TransitionCell>> by_size;
    for (const TransitionCell& c : cells) by_size[c.side].push_back(c);

    TransitionReport report;
    report.reference = amplitude / 2.0;

    double sum_tc = 0.0, sum_err_sq = 0.0;
    int crossed_sizes = 0;
    std::vector<double> tcs;
    for (auto& [side, group] : by_size) {
        std::sort(group.begin(), group.end(),
                  [](const TransitionCell& a, const TransitionCell& b) { return a.temperature < b.temperature; });
        const TwoAnyonLaw law =
            use_lattice_law ? TwoAnyonLaw::lattice(TorusLattice(side)) : TwoAnyonLaw::continuum(side);
        const double radius = ratio * side;

        std::vector<double> x_hat(group.size()), x_lo(group.size()), x_hi(group.size());
        for (std::size_t i = 0; i < group.size(); ++i) {
            const double p = std::clamp(group[i].p_at_ratio, 1e-9, 1.0 - 1e-9);
            x_hat[i] = law.invert_exponent(radius, p);
            const double pm = std::clamp(p - group[i].p_err, 1e-9, 1.0 - 1e-9);
            const double pp = std::clamp(p + group[i].p_err, 1e-9, 1.0 - 1e-9);
            x_lo[i] = law.invert_exponent(radius, pm);
            x_hi[i] = law.invert_exponent(radius, pp);
        }

        // x decreases with T; find the first bracket around x = 2.
        TransitionPerSize per{side, false, 0.0, 0.0};
        auto crossing = [&group](const std::vector<double>& xs) -> std::optional<double> {
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                if ((xs[i] - 2.0) == 0.0) return group[i].temperature;
                if ((xs[i] - 2.0) > 0.0 && (xs[i + 1] - 2.0) <= 0.0) {
                    const double f = (xs[i] - 2.0) / (xs[i] - xs[i + 1]);
                    return group[i].temperature + f * (group[i + 1].temperature - group[i].temperature);
                }
            }
            return std::nullopt;
        };
        if (auto tc = crossing(x_hat)) {
            per.crossed = true;
            per.tc = *tc;
            const auto t_lo = crossing(x_lo), t_hi = crossing(x_hi);
            if (t_lo && t_hi) per.tc_err = 0.5 * std::abs(*t_hi - *t_lo);
            sum_tc += per.tc;
            sum_err_sq += per.tc_err * per.tc_err;
            tcs.push_back(per.tc);
            ++crossed_sizes;
        }
        report.per_size.push_back(per);
    }

    if (crossed_sizes == static_cast<int>(by_size.size()) && crossed_sizes > 0) {
        report.conclusive = true;
        report.tc_hat = sum_tc / crossed_sizes;
        double spread = 0.0;
        for (double t : tcs) spread += (t - report.tc_hat) * (t - report.tc_hat);
        report.tc_err = std::sqrt(sum_err_sq / (crossed_sizes * crossed_sizes) + spread / crossed_sizes);
    }
    return report;
}

}  // namespace anyonmc
