#include "stowave/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>

#include "stowave/errors.hpp"
#include "stowave/io.hpp"

namespace stowave {

namespace {

using nlohmann::json;

void require_valid(const Params& params) {
    const ValidationReport rep = validate(params);
    if (rep.empty()) return;
    std::string msg = "inadmissible parameters:";
    for (const ParamViolation& v : rep) msg += " [" + v.constraint + "]";
    throw ConfigError(msg);
}

/// Enforces a pinned noise.horizon window against what the experiment needs.
void check_noise_window(const RunConfig& cfg, double t_min, double t_max) {
    if (!cfg.effective.contains("noise")) return;
    const json& noise = cfg.effective.at("noise");
    if (!noise.contains("horizon")) return;
    const json& h = noise.at("horizon");
    if (!h.is_array() || h.size() != 2)
        throw ConfigError("noise.horizon must be [t_min, t_max]");
    if (h[0].get<double>() > t_min || h[1].get<double>() < t_max)
        throw ConfigError("noise.horizon does not cover the experiment window");
}

std::vector<double> vec_or(const json& block, const char* key, std::vector<double> dflt) {
    if (!block.contains(key)) return dflt;
    const json& v = block.at(key);
    if (!v.is_array() || v.empty())
        throw ConfigError(std::string("experiment.") + key + " must be a non-empty array");
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number())
            throw ConfigError(std::string("experiment.") + key + " must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

double num_or(const json& block, const char* key, double dflt) {
    if (!block.contains(key)) return dflt;
    if (!block.at(key).is_number())
        throw ConfigError(std::string("experiment.") + key + " must be a number");
    return block.at(key).get<double>();
}

int int_or(const json& block, const char* key, int dflt) {
    if (!block.contains(key)) return dflt;
    if (!block.at(key).is_number_integer())
        throw ConfigError(std::string("experiment.") + key + " must be an integer");
    return block.at(key).get<int>();
}

json run_validate(const RunConfig& cfg) {
    const ValidationReport rep = validate(cfg.params);
    json out{{"subcommand", "validate"}, {"config_hash", cfg.hash()}};
    out["valid"] = rep.empty();
    out["violations"] = json::array();
    for (const ParamViolation& v : rep)
        out["violations"].push_back({{"constraint", v.constraint}, {"margin", v.margin}});
    if (rep.empty()) {
        out["sigma"] = decay_rate_sigma(cfg.params);
        out["epsilon_max"] = max_noise_intensity(cfg.params);
        out["u_norm_weight"] = cfg.params.u_norm_weight();
    }
    write_json_file(out, cfg.out_dir / "validate.json");
    if (!rep.empty()) throw ConfigError("parameters are inadmissible; see validate.json");
    return out;
}

json run_simulate(const RunConfig& cfg) {
    require_valid(cfg.params);
    const Model model = cfg.build_model();
    SimulateConfig sc;
    sc.seed = cfg.seed;
    sc.t_end = num_or(cfg.experiment, "t_end", 20.0);
    sc.snapshot_every = num_or(cfg.experiment, "snapshot_every", 0.25);
    sc.init_enorm = num_or(cfg.experiment, "init_enorm", 1.0);
    sc.tolerance = num_or(cfg.experiment, "tolerance", 0.05);
    sc.dt = cfg.dt;
    check_noise_window(cfg, 0.0, sc.t_end);
    const SimulateResult res = simulate_run(model, sc);

    const std::string hash = cfg.hash();
    write_text_file(energy_csv(res.energy, hash), cfg.out_dir / "trajectory.csv");
    StateCloud final_cloud;
    final_cloud.states.push_back(res.trajectory.states.back());
    write_text_file(cloud_csv(final_cloud, model.grid(), hash), cfg.out_dir / "state_final.csv");
    if (res.noise) {
        save_noise_path(res.noise->path, cfg.out_dir / "noise.bin");
        write_text_file(path_csv(res.noise->path, hash), cfg.out_dir / "noise.csv");
    }
    const EnergySample& last = res.energy.samples.back();
    json out{{"subcommand", "simulate"},
             {"config_hash", hash},
             {"t_end", sc.t_end},
             {"dt", res.dt},
             {"snapshots", res.energy.samples.size()},
             {"q_final", last.q},
             {"bound_final", last.bound},
             {"min_margin_ratio", res.energy.min_margin_ratio},
             {"violations", res.energy.violations},
             {"pass", res.energy.pass}};
    write_json_file(out, cfg.out_dir / "summary.json");
    if (!res.energy.pass)
        throw CheckFailure("energy inequality violated beyond tolerance; see trajectory.csv");
    return out;
}

json run_pullback(const RunConfig& cfg) {
    require_valid(cfg.params);
    const Model model = cfg.build_model();
    PullbackEnsembleConfig pc;
    pc.master_seed = cfg.seed;
    pc.members = int_or(cfg.experiment, "members", 8);
    pc.horizons = vec_or(cfg.experiment, "horizons", {5, 10, 15, 20, 25, 30});
    pc.inits = int_or(cfg.experiment, "inits", 3);
    pc.init_enorm = num_or(cfg.experiment, "init_enorm", 2.0);
    pc.dt = cfg.dt;
    pc.threads = cfg.threads;
    check_noise_window(cfg, -pc.horizons.back(), 0.0);
    const PullbackEnsembleReport rep = pullback_ensemble(model, pc);

    const std::string hash = cfg.hash();
    write_text_file(pullback_csv(rep, pc.horizons, hash), cfg.out_dir / "pullback.csv");
    double mean_rate = 0.0;
    for (const PullbackConvergence& m : rep.per_member) mean_rate += m.fitted_rate_per_unit;
    mean_rate /= static_cast<double>(rep.per_member.size());
    json out{{"subcommand", "pullback"},   {"config_hash", hash},
             {"members", pc.members},      {"horizons", pc.horizons},
             {"mean_gaps", rep.mean_gaps}, {"decreasing", rep.decreasing},
             {"mean_fitted_rate_per_unit", mean_rate}};
    write_json_file(out, cfg.out_dir / "summary.json");
    if (!rep.decreasing)
        throw CheckFailure("pullback gaps are not decreasing; see pullback.csv");
    return out;
}

json run_absorb(const RunConfig& cfg) {
    require_valid(cfg.params);
    const Model model = cfg.build_model();
    AbsorbConfig ac;
    ac.master_seed = cfg.seed;
    ac.members = int_or(cfg.experiment, "members", 50);
    ac.t_back = num_or(cfg.experiment, "t_back", 40.0);
    ac.enorm_factors = vec_or(cfg.experiment, "factors", {1.0, 10.0});
    ac.dt = cfg.dt;
    ac.threads = cfg.threads;
    check_noise_window(cfg, -ac.t_back, 0.0);
    const AbsorbReport rep = absorbing_experiment(model, ac);

    const std::string hash = cfg.hash();
    write_text_file(absorb_csv(rep, hash), cfg.out_dir / "absorb.csv");
    double max_radius = 0.0, max_final = 0.0;
    for (const AbsorbMember& m : rep.members) {
        max_radius = std::max(max_radius, m.radius);
        max_final = std::max(max_final, m.final_enorm);
    }
    json out{{"subcommand", "absorb"},       {"config_hash", hash},
             {"members", ac.members},        {"t_back", ac.t_back},
             {"factors", ac.enorm_factors},  {"c5", rep.c5},
             {"max_radius", max_radius},     {"max_final_enorm", max_final},
             {"all_entered", rep.all_entered}};
    write_json_file(out, cfg.out_dir / "summary.json");
    if (!rep.all_entered)
        throw CheckFailure("a member missed the absorbing ball; see absorb.csv");
    return out;
}

json run_tails(const RunConfig& cfg) {
    require_valid(cfg.params);
    const Model model = cfg.build_model();
    TailExperimentConfig tc;
    tc.master_seed = cfg.seed;
    tc.members = int_or(cfg.experiment, "members", 8);
    tc.init_enorm = num_or(cfg.experiment, "init_enorm", 1.0);
    tc.t_schedule = vec_or(cfg.experiment, "horizons", {5, 10, 20, 40});
    tc.r_schedule = vec_or(cfg.experiment, "radii", {1, 2, 3, 4, 5, 6});
    tc.eta = num_or(cfg.experiment, "eta", 0.1);
    tc.dt = cfg.dt;
    tc.threads = cfg.threads;
    check_noise_window(cfg, -tc.t_schedule.back(), 0.0);
    if (tc.r_schedule.back() > 0.75 * model.grid().half_width)
        throw ConfigError("tail radii beyond 0.75 L are dominated by the truncation boundary");
    const TailReport rep = tail_experiment(model, tc);

    const std::string hash = cfg.hash();
    write_text_file(tail_csv(rep, hash), cfg.out_dir / "tails.csv");
    json out{{"subcommand", "tails"}, {"config_hash", hash},   {"eta", rep.eta},
             {"members", tc.members}, {"horizons", rep.t_schedule}, {"radii", rep.r_schedule},
             {"frontier_found", rep.frontier_found}};
    if (rep.frontier_found) {
        out["frontier_t"] = rep.t_schedule[rep.frontier_t];
        out["frontier_r"] = rep.r_schedule[rep.frontier_r];
    }
    write_json_file(out, cfg.out_dir / "summary.json");
    if (!rep.frontier_found)
        throw CheckFailure("no (t, r) frontier stayed below eta; see tails.csv");
    return out;
}

json run_attractor(const RunConfig& cfg) {
    require_valid(cfg.params);
    const Model model = cfg.build_model();
    const std::vector<double> horizons = vec_or(cfg.experiment, "horizons", {5, 10, 20, 30, 40});
    const int samples = int_or(cfg.experiment, "samples", 12);
    const double ball = num_or(cfg.experiment, "ball_radius", 4.0);
    const double shift = num_or(cfg.experiment, "invariance_shift", 1.0);
    check_noise_window(cfg, -horizons.back(), shift);

    auto noise = make_noise(model, static_cast<std::int64_t>(cfg.seed), -horizons.back(),
                            std::max(shift, 0.0), cfg.dt);
    const OuTrajectory* ou = noise ? &noise->ou : nullptr;
    const StateCloud inits = sample_ball_cloud(model.grid(), model.params, model.nl, ball, samples,
                                               derive_seed(cfg.seed, 0x434C4F5544));
    const AttractorApproximation approx =
        approximate_attractor(model, ou, horizons, inits, cfg.dt, 0.0, cfg.threads);
    const InvarianceReport inv =
        invariance_check(model, ou, horizons, inits, shift, cfg.dt, cfg.threads);

    const std::string hash = cfg.hash();
    std::string gaps = "# config_hash=" + hash + "\nt_from,t_to,gap\n";
    for (std::size_t s = 0; s + 1 < horizons.size(); ++s)
        gaps += format_double(horizons[s]) + "," + format_double(horizons[s + 1]) + "," +
                format_double(approx.stage_gaps[s]) + "\n";
    write_text_file(gaps, cfg.out_dir / "attractor_gaps.csv");
    write_text_file(cloud_csv(approx.cloud, model.grid(), hash), cfg.out_dir / "attractor_cloud.csv");

    bool decreasing = true;
    for (std::size_t s = 1; s < approx.stage_gaps.size(); ++s)
        decreasing = decreasing && approx.stage_gaps[s] < approx.stage_gaps[s - 1];
    json out{{"subcommand", "attractor"},
             {"config_hash", hash},
             {"horizons", horizons},
             {"samples", samples},
             {"stage_gaps", approx.stage_gaps},
             {"gaps_decreasing", decreasing},
             {"invariance_forward_defect", inv.forward_defect},
             {"invariance_backward_defect", inv.backward_defect}};
    write_json_file(out, cfg.out_dir / "summary.json");
    if (!decreasing)
        throw CheckFailure("attractor stage gaps are not decreasing; see attractor_gaps.csv");
    return out;
}

json run_vitali(const RunConfig& cfg) {
    const json& exp = cfg.experiment;
    const double p = num_or(exp, "p", 2.0);
    if (!(p > 1.0)) throw ConfigError("experiment.p must be > 1");
    const int length = int_or(exp, "length", 40);
    std::string family_name = "truncation";
    if (exp.contains("family")) {
        if (!exp.at("family").is_string()) throw ConfigError("experiment.family must be a string");
        family_name = exp.at("family").get<std::string>();
    }
    LatticeFamily fam;
    if (family_name == "truncation") {
        fam = family_truncation(length);
    } else if (family_name == "escaping_bump") {
        fam = family_escaping_bump(length);
    } else if (family_name == "concentrating_spike") {
        fam = family_concentrating_spike(length, p);
    } else if (family_name == "csv") {
        if (!exp.contains("csv") || !exp.at("csv").is_string())
            throw ConfigError("experiment.csv must name the family file");
        fam = load_lattice_family_csv(exp.at("csv").get<std::string>());
    } else {
        throw ConfigError("experiment.family '" + family_name +
                          "' unknown (truncation|escaping_bump|concentrating_spike|csv)");
    }
    const std::vector<double> epsilons = vec_or(exp, "epsilons", {0.5, 0.1, 0.02});
    const std::vector<double> thresholds = vec_or(exp, "thresholds", {0.25, 0.05, 0.01});
    if (epsilons.size() != thresholds.size())
        throw ConfigError("experiment.epsilons and experiment.thresholds must pair up");

    const VitaliReport rep = vitali_verdict(fam.members, fam.limit, p, epsilons, thresholds);
    const RadonRieszReport rr = radon_riesz_check(fam.members, fam.limit, p);

    const std::string hash = cfg.hash();
    std::string dist = "# config_hash=" + hash + "\nmember,distance\n";
    for (std::size_t i = 0; i < rep.oracle_distances.size(); ++i)
        dist += std::to_string(i) + "," + format_double(rep.oracle_distances[i]) + "\n";
    write_text_file(dist, cfg.out_dir / "distances.csv");
    json out{{"subcommand", "vitali"},
             {"config_hash", hash},
             {"family", fam.name},
             {"p", p},
             {"members", fam.members.size()},
             {"pointwise_ok", rep.pointwise_ok},
             {"condition_a", rep.condition_a},
             {"condition_b", rep.condition_b},
             {"predicted_convergent", rep.predicted_convergent},
             {"oracle_convergent", rep.oracle_convergent},
             {"agrees", rep.agrees},
             {"radon_riesz",
              {{"hypothesis_met", rr.hypothesis_met},
               {"conclusion_met", rr.conclusion_met},
               {"pass", rr.pass},
               {"correlation", rr.correlation},
               {"degenerate", rr.degenerate}}}};
    write_json_file(out, cfg.out_dir / "vitali.json");
    if (!rep.agrees)
        throw CheckFailure("criterion verdict disagrees with the norm oracle; see vitali.json");
    return out;
}

void write_sidecar(const RunConfig& cfg, const std::string& name,
                   std::chrono::steady_clock::time_point started) {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    json meta{{"subcommand", name},
              {"config_hash", cfg.hash()},
              {"timestamp_utc", stamp},
              {"elapsed_seconds", elapsed.count()},
              {"threads", cfg.threads}};
    write_json_file(meta, cfg.out_dir / "run_meta.json");
}

}  // namespace

nlohmann::json run_subcommand(const std::string& name, const RunConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    json out;
    try {
        if (name == "validate") {
            out = run_validate(cfg);
        } else if (name == "simulate") {
            out = run_simulate(cfg);
        } else if (name == "pullback") {
            out = run_pullback(cfg);
        } else if (name == "absorb") {
            out = run_absorb(cfg);
        } else if (name == "tails") {
            out = run_tails(cfg);
        } else if (name == "attractor") {
            out = run_attractor(cfg);
        } else if (name == "vitali") {
            out = run_vitali(cfg);
        } else {
            throw ConfigError("unknown subcommand '" + name + "'");
        }
    } catch (...) {
        // even failing runs leave the sidecar so partial artifacts are dated
        write_sidecar(cfg, name, started);
        throw;
    }
    write_sidecar(cfg, name, started);
    return out;
}

}  // namespace stowave
