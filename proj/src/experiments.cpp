#include "stowave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stowave/parallel.hpp"
#include "stowave/sampling.hpp"

namespace stowave {

namespace {

constexpr std::uint64_t kInitTag = 0x494E4954;  // initial-state stream tag

double resolve_dt(const Grid& g, double dt) {
    return dt > 0.0 ? dt : Flow::cfl_limit() * g.spacing();
}

}  // namespace

std::optional<NoiseRealization> make_noise(const Model& model, std::int64_t seed, double t_min,
                                           double t_max, double dt) {
    if (model.params.epsilon == 0.0) return std::nullopt;
    NoiseRealization nr;
    nr.path = sample_path(seed, t_min, t_max, 0.5 * dt, model.params.m);
    nr.ou = ou_trajectory(nr.path, model.params.delta);
    return nr;
}

SimulateResult simulate_run(const Model& model, const SimulateConfig& cfg) {
    SimulateResult res;
    res.dt = resolve_dt(model.grid(), cfg.dt);
    res.noise = make_noise(model, static_cast<std::int64_t>(cfg.seed), 0.0, cfg.t_end, res.dt);
    const OuTrajectory* ou = res.noise ? &res.noise->ou : nullptr;
    Flow flow(model, ou, res.dt);
    State init = sample_state(model.grid(), model.params, model.nl, cfg.init_enorm,
                              derive_seed(cfg.seed, kInitTag));
    res.trajectory = record_trajectory(flow, std::move(init), 0.0, cfg.t_end, cfg.snapshot_every);
    res.energy = check_energy_inequality(res.trajectory, model, ou, cfg.tolerance);
    return res;
}

EnergyEnsembleReport energy_ensemble(const Model& model, const EnergyEnsembleConfig& cfg) {
    if (cfg.members <= 0) throw std::invalid_argument("energy_ensemble: members must be positive");
    EnergyEnsembleReport rep;
    rep.reports.resize(static_cast<std::size_t>(cfg.members));
    parallel_for(static_cast<std::size_t>(cfg.members), cfg.threads, [&](std::size_t i) {
        SimulateConfig run;
        run.seed = derive_seed(cfg.master_seed, i);
        run.t_end = cfg.t_end;
        run.snapshot_every = cfg.snapshot_every;
        run.init_enorm = cfg.init_enorm;
        run.tolerance = cfg.tolerance;
        run.dt = cfg.dt;
        rep.reports[i] = simulate_run(model, run).energy;
    });
    rep.worst_margin_ratio = rep.reports.front().min_margin_ratio;
    rep.pass = true;
    for (const EnergyReport& r : rep.reports) {
        rep.worst_margin_ratio = std::min(rep.worst_margin_ratio, r.min_margin_ratio);
        rep.pass = rep.pass && r.pass;
    }
    return rep;
}

AbsorbReport absorbing_experiment(const Model& model, const AbsorbConfig& cfg) {
    if (cfg.members <= 0 || cfg.enorm_factors.empty())
        throw std::invalid_argument("absorbing_experiment: need members and at least one factor");
    if (model.params.epsilon != 0.0 && model.params.m <= 0)
        throw std::invalid_argument("absorbing_experiment: noisy model without modes");
    const double dt = resolve_dt(model.grid(), cfg.dt);
    const double sigma = decay_rate_sigma(model.params);
    const double c5 = model.params.epsilon != 0.0 ? c5_constant(model.params, model.profile) : 0.0;
    const double g_sq = norm_l2(model.forcing) * norm_l2(model.forcing);
    const std::size_t per = cfg.enorm_factors.size();
    AbsorbReport rep;
    rep.c5 = c5;
    rep.members.resize(static_cast<std::size_t>(cfg.members) * per);
    parallel_for(rep.members.size(), cfg.threads, [&](std::size_t idx) {
        const std::size_t i = idx / per;
        const std::size_t k = idx % per;
        AbsorbMember mem;
        mem.seed = derive_seed(cfg.master_seed, i);
        mem.factor = cfg.enorm_factors[k];
        auto noise = make_noise(model, static_cast<std::int64_t>(mem.seed), -cfg.t_back, 0.0, dt);
        const OuTrajectory* ou = noise ? &noise->ou : nullptr;
        mem.r0 = ou ? estimate_r0(*ou, sigma, model.params.p) : 0.0;
        mem.radius = absorbing_radius(model.params, model.nl, mem.r0, c5, g_sq);
        mem.init_enorm = mem.factor * mem.radius;
        State init = sample_state(model.grid(), model.params, model.nl, mem.init_enorm,
                                  derive_seed(mem.seed, kInitTag + k));
        Flow flow(model, ou, dt);
        mem.final_enorm = e_norm(flow.pullback(cfg.t_back, init), model.params, model.nl);
        mem.entered = mem.final_enorm <= mem.radius;
        rep.members[idx] = mem;
    });
    rep.all_entered =
        std::all_of(rep.members.begin(), rep.members.end(), [](const AbsorbMember& m) { return m.entered; });
    return rep;
}

PullbackEnsembleReport pullback_ensemble(const Model& model, const PullbackEnsembleConfig& cfg) {
    if (cfg.members <= 0 || cfg.inits <= 0 || cfg.horizons.size() < 2)
        throw std::invalid_argument("pullback_ensemble: need members, inits and >= 2 horizons");
    const double dt = resolve_dt(model.grid(), cfg.dt);
    PullbackEnsembleReport rep;
    rep.per_member.resize(static_cast<std::size_t>(cfg.members));
    parallel_for(static_cast<std::size_t>(cfg.members), cfg.threads, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(cfg.master_seed, i);
        auto noise =
            make_noise(model, static_cast<std::int64_t>(seed), -cfg.horizons.back(), 0.0, dt);
        StateCloud inits = sample_ball_cloud(model.grid(), model.params, model.nl, cfg.init_enorm,
                                             cfg.inits, derive_seed(seed, kInitTag));
        rep.per_member[i] = pullback_convergence_test(model, noise ? &noise->ou : nullptr, inits,
                                                      cfg.horizons, dt, 1);
    });
    const std::size_t stages = rep.per_member.front().mean_gaps.size();
    rep.mean_gaps.assign(stages, 0.0);
    for (const PullbackConvergence& pc : rep.per_member)
        for (std::size_t s = 0; s < stages; ++s) rep.mean_gaps[s] += pc.mean_gaps[s];
    for (double& g : rep.mean_gaps) g /= static_cast<double>(cfg.members);
    rep.decreasing = true;
    for (std::size_t s = 1; s < stages; ++s)
        rep.decreasing = rep.decreasing && rep.mean_gaps[s] < rep.mean_gaps[s - 1];
    return rep;
}

}  // namespace stowave
