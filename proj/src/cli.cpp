#include "anyonmc/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "anyonmc/config.hpp"
#include "anyonmc/csv.hpp"
#include "anyonmc/estimators.hpp"
#include "anyonmc/exact.hpp"
#include "anyonmc/manifest.hpp"
#include "anyonmc/meanfield.hpp"
#include "anyonmc/sampler.hpp"
#include "anyonmc/scaling.hpp"
#include "anyonmc/version.hpp"

namespace anyonmc::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunContext {
    KeyValueConfig config;
    std::string outdir;
    std::string label;
    std::uint64_t seed = 0;
    int threads = 1;

    std::string out_path(const std::string& suffix) const {
        return (fs::path(outdir) / (label + suffix)).string();
    }
};

RunContext make_context(KeyValueConfig config, const std::string& default_label) {
    RunContext ctx;
    ctx.config = std::move(config);
    const char* env = std::getenv("ANYONMC_OUTDIR");
    ctx.outdir = ctx.config.get_string("outdir", env ? env : ".");
    ctx.label = ctx.config.get_string("label", default_label);
    ctx.seed = static_cast<std::uint64_t>(ctx.config.get_long("seed", 12345));
    ctx.threads = ctx.config.get_int("threads", 1);
    if (ctx.threads < 1) throw ConfigError("threads must be >= 1");
    fs::create_directories(ctx.outdir);
    return ctx;
}

// Fixed worker count over an index range; results land in caller-owned
// slots, so output order never depends on scheduling.
void parallel_cells(int threads, int n_cells, const std::function<void(int)>& fn) {
    threads = std::min(threads, n_cells);
    if (threads <= 1) {
        for (int i = 0; i < n_cells; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= n_cells) return;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

PairPotential read_potential(KeyValueConfig& cfg) {
    const std::string kind = cfg.get_string("potential", "none");
    if (kind == "none") return NonInteracting{};
    if (kind == "powerlaw")
        return PowerLaw{cfg.get_double("a", 1.0), cfg.get_double("alpha", 1.0)};
    if (kind == "log") return Logarithmic{cfg.get_double("a", 1.0)};
    throw ConfigError("potential must be one of none|powerlaw|log (got '" + kind + "')");
}

ChainSettings read_chain_settings(KeyValueConfig& cfg, std::uint64_t seed) {
    ChainSettings s;
    s.beta = cfg.get_double("beta", 1.0);
    s.sweeps = cfg.get_long("sweeps", 2000);
    s.burn_in = cfg.get_long("burn_in", 500);
    s.thinning = cfg.get_long("thinning", 1);
    s.seed = seed;
    s.move_mix.global_pair = cfg.get_double("w_global", 0.2);
    s.move_mix.local_pair = cfg.get_double("w_local", 0.6);
    s.move_mix.hop = cfg.get_double("w_hop", 0.2);
    s.local_radius = cfg.get_int("local_radius", 2);
    s.hot_start = cfg.get_bool("hot_start", false);
    validate_settings(s);
    return s;
}

std::string lambda_flag_name(LambdaFlag flag) {
    switch (flag) {
        case LambdaFlag::Crossed: return "crossed";
        case LambdaFlag::NotCrossedAbove: return "not-crossed-above";
        case LambdaFlag::NotCrossedBelow: return "not-crossed-below";
    }
    return "unknown";
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << j.dump(2) << '\n';
}

void finish(RunContext& ctx, const std::string& subcommand, const std::vector<std::string>& outputs) {
    ctx.config.ensure_all_consumed();
    RunManifest manifest(subcommand, ctx.config.resolved(), ctx.seed);
    for (const std::string& path : outputs) manifest.add_output(path);
    manifest.finish_and_write(ctx.out_path("_manifest.json"));
}

// ---------------------------------------------------------------- meanfield

int run_meanfield(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "meanfield");
    auto& c = ctx.config;

    const std::string mode = c.get_string("mode", "boltzmann");
    const double coupling_j = c.get_double("j", 1.0);
    const double amplitude = c.get_double("a", 0.0);
    const double alpha = c.get_double("alpha", 0.0);
    const double c_alpha = c.get_double("c_alpha", 1.0);
    const double delta = c.get_double("delta", 0.05);
    const auto betas = c.get_double_list("beta_list", {1.0});
    const auto sides = c.get_double_list("L_list", {32.0});
    const auto scales = c.get_int_list("l_list", {1, 2, 3, 4});

    const std::string csv_path = ctx.out_path("_meanfield.csv");
    CsvWriter csv(csv_path);
    csv.row({"beta", "J", "A", "alpha", "L", "mode", "rho", "residual", "l", "pi_p", "gamma_l",
             "lambda", "lambda_pred", "exponent_pred", "delta"});

    for (double beta : betas) {
        for (double side : sides) {
            ThermoPoint point{beta, coupling_j, amplitude, alpha, side};
            double rho;
            double residual = 0.0;
            if (mode == "boltzmann") {
                rho = boltzmann_density(coupling_j, beta);
            } else if (mode == "self-consistent-continuum") {
                const MeanFieldResult r = self_consistent_density(point, MeanFieldMode::SelfConsistentContinuum);
                rho = r.density;
                residual = r.residual;
            } else if (mode == "self-consistent-lattice") {
                const MeanFieldResult r = self_consistent_density(point, MeanFieldMode::SelfConsistentLattice);
                rho = r.density;
                residual = r.residual;
            } else if (mode == "sublinear") {
                rho = sublinear_density(point, c_alpha);
            } else {
                throw ConfigError("mode must be one of boltzmann|self-consistent-continuum|"
                                  "self-consistent-lattice|sublinear (got '" + mode + "')");
            }

            std::string lambda_str;
            if (rho > 0.0 && rho < 0.5) lambda_str = format_double(correlation_range(rho, delta));
            std::string lambda_pred_str, exponent_str;
            if (alpha >= 0.0 && alpha < 2.0 && amplitude > 0.0 && side >= 3.0) {
                const LambdaPrediction pred = lambda_scaling_prediction(point, c_alpha, delta);
                lambda_pred_str = format_double(pred.lambda);
                exponent_str = format_double(pred.exponent);
            }
            for (int l : scales) {
                std::string pi_str, gamma_str;
                if (rho >= 0.0 && rho <= 1.0) {
                    const double pi = parity_probability(rho, l);
                    pi_str = format_double(pi);
                    gamma_str = format_double(gamma_single_sector(pi));
                }
                csv.row({format_double(beta), format_double(coupling_j), format_double(amplitude),
                         format_double(alpha), format_double(side), mode, format_double(rho),
                         format_double(residual), std::to_string(l), pi_str, gamma_str, lambda_str,
                         lambda_pred_str, exponent_str, format_double(delta)});
            }
        }
    }

    csv.close();
    finish(ctx, "meanfield", {csv_path});
    return kExitOk;
}

// ------------------------------------------------------------------- sample

int run_sample(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "sample");
    auto& c = ctx.config;

    const int side = c.get_int("L", 8);
    TorusLattice lat(side);
    const EnergyModel model(lat, c.get_double("j", 1.0), read_potential(c));
    const ChainSettings settings = read_chain_settings(c, ctx.seed);
    const bool oracle_check = c.get_bool("oracle_check", false);

    std::vector<int> scales = c.get_int_list("l_list", default_scale_grid(side));
    std::vector<ParityWindow> windows;
    windows.reserve(scales.size());
    const Coord anchor{c.get_int("anchor_x", 0), c.get_int("anchor_y", 0)};
    for (int l : scales) windows.push_back(ParityWindow::block(lat, l, anchor));

    const std::string csv_path = ctx.out_path("_records.csv");
    CsvWriter csv(csv_path);
    std::vector<std::string> header{"sweep", "N", "energy"};
    for (int l : scales) header.push_back("parity_l" + std::to_string(l));
    csv.row(header);

    std::vector<std::int64_t> counts;
    if (oracle_check) {
        if (lat.num_plaquettes() > kExactMaxPlaquettes)
            throw ConfigError("oracle_check needs L*L <= 16 plaquettes");
        counts.assign(1u << lat.num_plaquettes(), 0);
    }

    std::vector<double> n_series;
    run_chain(model, settings, windows, [&](const SampleRecord& r) {
        if (r.anyon_count % 2 != 0) throw NumericalError("parity violation in sampler output");
        if (!std::isfinite(r.energy)) throw NumericalError("non-finite energy in sampler output");
        std::vector<std::string> row{std::to_string(r.sweep), std::to_string(r.anyon_count),
                                     format_double(r.energy)};
        for (std::uint8_t b : r.parity) row.push_back(b ? "1" : "0");
        csv.row(row);
        n_series.push_back(r.anyon_count);
        if (oracle_check) ++counts[r.bits];
    });

    csv.close();
    std::vector<std::string> outputs{csv_path};
    if (oracle_check) {
        const ExactDistribution exact = exact_distribution(model, settings.beta);
        json report;
        report["tv_distance"] = total_variation(exact, counts);
        report["mean_anyons_exact"] = exact.mean_anyons;
        if (n_series.size() >= 2) {
            const BlockingResult b = blocking_analysis(n_series);
            report["mean_anyons_hat"] = b.mean;
            report["mean_anyons_err"] = b.std_error;
        }
        const std::string oracle_path = ctx.out_path("_oracle.json");
        write_json(oracle_path, report);
        outputs.push_back(oracle_path);
    }
    finish(ctx, "sample", outputs);
    return kExitOk;
}

// --------------------------------------------------------------- gamma-scan

int run_gamma_scan(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "gamma_scan");
    auto& c = ctx.config;

    const int side = c.get_int("L", 16);
    TorusLattice lat(side);
    const EnergyModel model(lat, c.get_double("j", 1.0), read_potential(c));
    const auto betas = c.get_double_list("beta_list", {c.get_double("beta", 1.0)});
    const double delta = c.get_double("delta", 0.05);
    ChainSettings base = read_chain_settings(c, ctx.seed);

    const std::vector<int> scales = c.get_int_list("l_list", default_scale_grid(side));
    std::vector<ParityWindow> windows;
    for (int l : scales) windows.push_back(ParityWindow::block(lat, l));

    std::vector<std::string> outputs;
    json summary = json::array();
    std::vector<GammaProfile> profiles(betas.size());
    std::vector<ValueWithError> densities(betas.size());
    parallel_cells(ctx.threads, static_cast<int>(betas.size()), [&](int i) {
        ChainSettings settings = base;
        settings.beta = betas[static_cast<std::size_t>(i)];
        settings.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(i));
        const auto records = collect_chain(model, settings, windows);
        if (records.size() < 2) throw ConfigError("gamma-scan produced fewer than 2 records");
        profiles[static_cast<std::size_t>(i)] = build_gamma_profile(records, scales, delta);
        densities[static_cast<std::size_t>(i)] = estimate_density(records, lat.num_plaquettes());
    });

    for (std::size_t i = 0; i < betas.size(); ++i) {
        const GammaProfile& gp = profiles[i];
        const std::string csv_path = ctx.out_path("_gamma_b" + std::to_string(i) + ".csv");
        CsvWriter csv(csv_path);
        csv.row({"l", "pi_hat", "pi_err", "gamma_hat", "gamma_err"});
        for (const ParityPoint& pt : gp.points)
            csv.row({std::to_string(pt.scale), format_double(pt.pi), format_double(pt.pi_err),
                     format_double(pt.gamma), format_double(pt.gamma_err)});
        outputs.push_back(csv_path);

        json entry;
        entry["beta"] = betas[i];
        entry["rho_hat"] = densities[i].value;
        entry["rho_err"] = densities[i].error;
        entry["lambda_flag"] = lambda_flag_name(gp.lambda.flag);
        if (gp.lambda.flag == LambdaFlag::Crossed) {
            entry["lambda_hat"] = gp.lambda.value;
            entry["lambda_err"] = gp.lambda.error;
        }
        entry["isotonic_warning"] = gp.lambda.isotonic_warning;
        entry["delta"] = delta;
        entry["samples"] = gp.samples;
        summary.push_back(entry);
    }

    const std::string summary_path = ctx.out_path("_gamma_summary.json");
    write_json(summary_path, summary);
    outputs.push_back(summary_path);
    finish(ctx, "gamma-scan", outputs);
    return kExitOk;
}

// ------------------------------------------------------------------ scaling

int run_scaling(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "scaling");
    auto& c = ctx.config;

    const auto sides = c.get_int_list("L_list", {16, 24, 32});
    const double coupling_j = c.get_double("j", 1.0);
    const PairPotential potential = read_potential(c);
    const double delta = c.get_double("delta", 0.05);
    const std::string fit_model_key = c.get_string("fit_model", "pure");
    const FitModel fit_model = fit_model_key == "logcorr" ? FitModel::PowerWithLogCorrection
                              : fit_model_key == "pure"
                                  ? FitModel::PurePower
                                  : throw ConfigError("fit_model must be pure|logcorr");
    PhaseThresholds thresholds;
    thresholds.disordered_max = c.get_double("disordered_max", 0.1);
    thresholds.weak_max = c.get_double("weak_max", 0.9);
    ChainSettings base = read_chain_settings(c, ctx.seed);

    struct Cell {
        GammaProfile profile;
        ValueWithError density;
        std::vector<int> scales;
    };
    std::vector<Cell> cells(sides.size());
    parallel_cells(ctx.threads, static_cast<int>(sides.size()), [&](int i) {
        const int side = sides[static_cast<std::size_t>(i)];
        TorusLattice lat(side);
        const EnergyModel model(lat, coupling_j, potential);
        ChainSettings settings = base;
        settings.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(i));
        const std::vector<int> scales = default_scale_grid(side);
        std::vector<ParityWindow> windows;
        for (int l : scales) windows.push_back(ParityWindow::block(lat, l));
        const auto records = collect_chain(model, settings, windows);
        if (records.size() < 2) throw ConfigError("scaling produced fewer than 2 records");
        auto& cell = cells[static_cast<std::size_t>(i)];
        cell.profile = build_gamma_profile(records, scales, delta);
        cell.density = estimate_density(records, lat.num_plaquettes());
        cell.scales = scales;
    });

    std::vector<FitPoint> points;
    int not_crossed_above = 0;
    json per_size = json::array();
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const Cell& cell = cells[i];
        json entry;
        entry["L"] = sides[i];
        entry["rho_hat"] = cell.density.value;
        entry["rho_err"] = cell.density.error;
        entry["lambda_flag"] = lambda_flag_name(cell.profile.lambda.flag);
        if (cell.profile.lambda.flag == LambdaFlag::Crossed) {
            points.push_back({static_cast<double>(sides[i]), cell.profile.lambda.value,
                              cell.profile.lambda.error});
            entry["lambda_hat"] = cell.profile.lambda.value;
            entry["lambda_err"] = cell.profile.lambda.error;
        } else if (cell.profile.lambda.flag == LambdaFlag::NotCrossedAbove) {
            ++not_crossed_above;
        }
        per_size.push_back(entry);
    }
    const double not_crossed_fraction = static_cast<double>(not_crossed_above) / sides.size();

    json out;
    out["per_size"] = per_size;
    out["delta"] = delta;
    out["fit_model"] = fit_model_name(fit_model);
    out["thresholds"] = {{"disordered_max", thresholds.disordered_max},
                         {"weak_max", thresholds.weak_max}};

    int code = kExitOk;
    if (points.size() >= 3) {
        const ScalingFit fit = fit_power_law(points, fit_model);
        const PhaseDecision decision = classify_phase(fit, not_crossed_fraction, std::nullopt, thresholds);
        out["exponent"] = fit.exponent;
        out["exponent_err"] = fit.exponent_err;
        out["intercept"] = fit.intercept;
        out["chi2_dof"] = fit.chi2_dof;
        out["phase"] = phase_name(decision.phase);
        out["evidence"] = decision.evidence;
        json fit_points = json::array();
        for (const FitPoint& p : fit.points)
            fit_points.push_back({{"L", p.size}, {"lambda", p.value}, {"lambda_err", p.error}});
        out["fit_points"] = fit_points;
    } else if (not_crossed_fraction > thresholds.saturation_majority) {
        out["phase"] = phase_name(Phase::StronglyTO);
        out["evidence"] = "range saturates the largest window for most sizes; no fit possible";
    } else {
        out["phase"] = "inconclusive";
        out["evidence"] = "fewer than 3 sizes produced a crossing";
        code = kExitInconclusive;
    }

    const std::string json_path = ctx.out_path("_scaling.json");
    write_json(json_path, out);
    finish(ctx, "scaling", {json_path});
    return code;
}

// -------------------------------------------------------------- confinement

int run_confinement(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "confinement");
    auto& c = ctx.config;

    const auto sides = c.get_int_list("L_list", {32, 64});
    const double amplitude = c.get_double("a", 1.0);
    const auto temperatures = c.get_double_list("t_list", {0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 1.0});
    const bool t_in_units_of_a = c.get_bool("t_in_units_of_a", true);
    const int anyon_count = c.get_int("n", 2);
    const double ratio = c.get_double("ratio", 0.25);
    const std::string law = c.get_string("law", "lattice");
    if (law != "lattice" && law != "continuum") throw ConfigError("law must be lattice|continuum");
    ChainSettings base = read_chain_settings(c, ctx.seed);

    std::vector<TransitionCell> cells(sides.size() * temperatures.size());
    parallel_cells(ctx.threads, static_cast<int>(cells.size()), [&](int idx) {
        const int si = idx / static_cast<int>(temperatures.size());
        const int ti = idx % static_cast<int>(temperatures.size());
        const int side = sides[static_cast<std::size_t>(si)];
        const double temp = t_in_units_of_a ? temperatures[static_cast<std::size_t>(ti)] * amplitude
                                            : temperatures[static_cast<std::size_t>(ti)];
        TorusLattice lat(side);
        const EnergyModel model(lat, 0.0, Logarithmic{amplitude});
        ChainSettings settings = base;
        settings.beta = 1.0 / temp;
        settings.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(idx));
        std::vector<double> inside;
        run_fixed_number_chain(model, anyon_count, settings, [&](const FixedNumberRecord& r) {
            inside.push_back(r.extent <= ratio * side ? 1.0 : 0.0);
        });
        if (inside.size() < 2) throw ConfigError("confinement produced fewer than 2 records");
        const BlockingResult b = blocking_analysis(inside);
        cells[static_cast<std::size_t>(idx)] = {side, temp, b.mean, b.std_error};
    });

    const std::string csv_path = ctx.out_path("_confinement_cells.csv");
    CsvWriter csv(csv_path);
    csv.row({"L", "T", "p_hat", "p_err"});
    for (const TransitionCell& cell : cells)
        csv.row({std::to_string(cell.side), format_double(cell.temperature),
                 format_double(cell.p_at_ratio), format_double(cell.p_err)});

    csv.close();
    const TransitionReport report =
        locate_confinement_transition(cells, amplitude, law == "lattice", ratio);

    json out;
    out["conclusive"] = report.conclusive;
    out["reference_tc"] = report.reference;
    out["ratio"] = ratio;
    out["law"] = law;
    if (report.conclusive) {
        out["tc_hat"] = report.tc_hat;
        out["tc_err"] = report.tc_err;
        out["relative_deviation"] =
            report.reference > 0.0 ? std::abs(report.tc_hat - report.reference) / report.reference : 0.0;
    }
    json per = json::array();
    for (const TransitionPerSize& p : report.per_size)
        per.push_back({{"L", p.side}, {"crossed", p.crossed}, {"tc", p.tc}, {"tc_err", p.tc_err}});
    out["per_size"] = per;

    const std::string json_path = ctx.out_path("_confinement.json");
    write_json(json_path, out);
    finish(ctx, "confinement", {csv_path, json_path});
    return report.conclusive ? kExitOk : kExitInconclusive;
}

// -------------------------------------------------------------------- boson

int run_boson(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "boson");
    auto& c = ctx.config;

    const std::string coupling = c.get_string("coupling", "log");
    const auto sides = c.get_double_list("L_list", {8, 16, 32, 64, 128, 256, 512});
    const double temperature = c.get_double("t", 1.0);
    const double delta = c.get_double("delta", 0.05);

    const std::string csv_path = ctx.out_path("_boson.csv");
    CsvWriter csv(csv_path);
    csv.row({"coupling", "c_or_kappa", "L", "T", "j_eff", "rho", "lambda", "phase"});

    json fits = json::array();
    auto emit_parameter = [&](double value) {
        std::vector<FitPoint> points;
        Phase phase = Phase::Boundary;
        for (double side : sides) {
            double j_eff, rho;
            std::optional<double> lambda;
            if (coupling == "log" && value == 0.0) {
                j_eff = 0.0;
                rho = 0.5;
                phase = Phase::Disordered;  // free limit: full randomness
            } else {
                const BosonCouplingModel model = coupling == "log"
                                                     ? BosonCouplingModel(LogInL{value})
                                                     : BosonCouplingModel(LinearInL{value});
                const BosonPrediction pred = boson_phase_prediction(model, side, temperature, delta);
                j_eff = pred.j_eff;
                rho = pred.density;
                lambda = pred.lambda;
                phase = pred.phase;
            }
            csv.row({coupling, format_double(value), format_double(side), format_double(temperature),
                     format_double(j_eff), format_double(rho),
                     lambda ? format_double(*lambda) : std::string(), phase_name(phase)});
            if (lambda) points.push_back({side, *lambda, 0.0});
        }
        json entry;
        entry["coupling"] = coupling;
        entry["c_or_kappa"] = value;
        entry["phase"] = phase_name(phase);
        if (points.size() >= 3) {
            const ScalingFit fit = fit_power_law(points, FitModel::PurePower);
            entry["lambda_exponent"] = fit.exponent;
            entry["lambda_exponent_err"] = fit.exponent_err;
            if (coupling == "log") entry["expected_exponent"] = value / 2.0;
        }
        fits.push_back(entry);
    };

    if (coupling == "log") {
        for (double v : c.get_double_list("c_list", {0.5, 1, 2, 3, 4})) emit_parameter(v);
    } else if (coupling == "linear") {
        for (double v : c.get_double_list("kappa_list", {0.5})) emit_parameter(v);
    } else {
        throw ConfigError("coupling must be log|linear");
    }

    csv.close();
    const std::string json_path = ctx.out_path("_boson_fits.json");
    write_json(json_path, fits);
    finish(ctx, "boson", {csv_path, json_path});
    return kExitOk;
}

// ------------------------------------------------------------- oracle-check

int run_oracle_check(KeyValueConfig cfg) {
    RunContext ctx = make_context(std::move(cfg), "oracle_check");
    auto& c = ctx.config;
    const long samples = c.get_long("samples", 200000);
    const double tv_bound = c.get_double("tv_bound", 0.05);
    c.ensure_all_consumed();

    struct Case {
        const char* name;
        PairPotential potential;
    };
    const Case cases[] = {{"none", NonInteracting{}},
                          {"powerlaw_a1", PowerLaw{1.0, 1.0}},
                          {"log", Logarithmic{1.0}}};

    bool all_ok = true;
    int cell = 0;
    for (int side : {2, 3}) {
        TorusLattice lat(side);
        for (const Case& kase : cases) {
            for (double beta : {0.5, 1.0}) {
                const EnergyModel model(lat, 1.0, kase.potential);
                const ExactDistribution exact = exact_distribution(model, beta);

                ChainSettings settings;
                settings.beta = beta;
                settings.sweeps = samples * 2 + 200;
                settings.burn_in = 200;
                settings.thinning = 2;
                settings.seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(cell++));

                std::vector<int> scales;
                for (int l = 1; l < side; ++l) scales.push_back(l);
                std::vector<ParityWindow> windows;
                for (int l : scales) windows.push_back(ParityWindow::block(lat, l));

                std::vector<std::int64_t> counts(exact.prob.size(), 0);
                std::vector<double> n_series;
                std::vector<std::vector<double>> parity_series(scales.size());
                run_chain(model, settings, windows, [&](const SampleRecord& r) {
                    ++counts[r.bits];
                    n_series.push_back(r.anyon_count);
                    for (std::size_t w = 0; w < scales.size(); ++w)
                        parity_series[w].push_back(r.parity[w]);
                });

                const double tv = total_variation(exact, counts);
                const BlockingResult nb = blocking_analysis(n_series);
                const double n_sigma =
                    nb.std_error > 0.0 ? std::abs(nb.mean - exact.mean_anyons) / nb.std_error : 0.0;
                bool ok = tv < tv_bound && n_sigma < 3.0;
                double worst_pi_sigma = 0.0;
                for (std::size_t w = 0; w < scales.size(); ++w) {
                    const BlockingResult pb = blocking_analysis(parity_series[w]);
                    const double pi_exact = exact.window_parity_probability(
                        [&] {
                            std::uint32_t bits = 0;
                            const auto mask = ParityWindow::block(lat, scales[w]).mask;
                            for (std::size_t p = 0; p < mask.size(); ++p)
                                if (mask[p]) bits |= (1u << p);
                            return bits;
                        }());
                    const double sigma =
                        pb.std_error > 0.0 ? std::abs(pb.mean - pi_exact) / pb.std_error : 0.0;
                    worst_pi_sigma = std::max(worst_pi_sigma, sigma);
                }
                ok = ok && worst_pi_sigma < 3.0;
                all_ok = all_ok && ok;
                std::printf("[%s] L=%d potential=%-11s betaJ=%.1f tv=%.4f n_sigma=%.2f pi_sigma=%.2f\n",
                            ok ? "PASS" : "FAIL", side, kase.name, beta, tv, n_sigma, worst_pi_sigma);
            }
        }
    }
    std::fflush(stdout);
    return all_ok ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------- dispatch

struct SubcommandDef {
    std::string name;
    std::string description;
    std::vector<std::string> keys;
    int (*fn)(KeyValueConfig);
};

const std::vector<std::string> kCommonKeys = {"outdir", "label", "seed", "threads"};
const std::vector<std::string> kModelKeys = {"L", "j", "a", "alpha", "potential"};
const std::vector<std::string> kChainKeys = {"beta",         "sweeps", "burn_in", "thinning",
                                             "w_global",     "w_local", "w_hop",  "local_radius",
                                             "hot_start"};

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> lists) {
    std::vector<std::string> out;
    for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"anyonmc: thermal-equilibrium toolkit for interacting anyon gases on the torus"};
    app.require_subcommand(1);
    app.footer("Units: k_B = 1, T = 1/beta. Config files are flat key=value text; every key\n"
               "can be overridden by a flag of the same name. Outputs land in --outdir\n"
               "(default $ANYONMC_OUTDIR or '.'), one manifest JSON per run.");

    const std::vector<SubcommandDef> subcommands = {
        {"meanfield", "closed-form densities, parity profiles, ranges over parameter grids",
         concat({kCommonKeys,
                 {"mode", "j", "a", "alpha", "c_alpha", "delta", "beta_list", "L_list", "l_list"}}),
         run_meanfield},
        {"sample", "run one Metropolis chain and write thinned records",
         concat({kCommonKeys, kModelKeys, kChainKeys,
                 {"l_list", "anchor_x", "anchor_y", "oracle_check"}}),
         run_sample},
        {"gamma-scan", "sample and estimate pi_P(l), Gamma(l), lambda over a beta grid",
         concat({kCommonKeys, kModelKeys, kChainKeys, {"beta_list", "delta", "l_list"}}),
         run_gamma_scan},
        {"scaling", "fit the size scaling of lambda over an L grid and label the phase",
         concat({kCommonKeys, kModelKeys, kChainKeys,
                 {"L_list", "delta", "fit_model", "disordered_max", "weak_max"}}),
         run_scaling},
        {"confinement", "fixed-N pair sampler over (T, L); locate the deconfinement point",
         concat({kCommonKeys, kChainKeys,
                 {"L_list", "a", "t_list", "t_in_units_of_a", "n", "ratio", "law"}}),
         run_confinement},
        {"boson", "phase map for boson-mediated effective couplings",
         concat({kCommonKeys, {"coupling", "c_list", "kappa_list", "L_list", "t", "delta"}}),
         run_boson},
        {"oracle-check", "sampler vs exact enumeration on tiny lattices",
         concat({kCommonKeys, {"samples", "tv_bound"}}),
         run_oracle_check},
    };

    struct PerSub {
        std::string config_path;
        std::map<std::string, std::string> overrides;
        const SubcommandDef* def = nullptr;
    };
    std::vector<PerSub> states(subcommands.size());

    for (std::size_t i = 0; i < subcommands.size(); ++i) {
        const SubcommandDef& def = subcommands[i];
        PerSub& state = states[i];
        state.def = &def;
        CLI::App* sub = app.add_subcommand(def.name, def.description);
        sub->add_option("--config", state.config_path, "key=value config file");
        for (const std::string& key : def.keys) {
            sub->add_option_function<std::string>(
                "--" + key, [&state, key](const std::string& v) { state.overrides[key] = v; });
        }
    }

    std::vector<const char*> argv;
    argv.push_back("anyonmc");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    for (PerSub& state : states) {
        if (!app.get_subcommand(state.def->name)->parsed()) continue;
        try {
            KeyValueConfig cfg = state.config_path.empty() ? KeyValueConfig()
                                                           : KeyValueConfig::from_file(state.config_path);
            for (const auto& [key, value] : state.overrides) cfg.set(key, value);
            return state.def->fn(std::move(cfg));
        } catch (const ConfigError& e) {
            std::cerr << "configuration error: " << e.what() << '\n';
            return kExitConfig;
        } catch (const NumericalError& e) {
            std::cerr << "numerical failure: " << e.what() << '\n';
            return kExitNumerical;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitNumerical;
        }
    }
    return kExitConfig;
}

}  // namespace anyonmc::cli
