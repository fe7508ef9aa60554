#include "stowave/tails.hpp"

#include <cmath>
#include <stdexcept>

#include "stowave/parallel.hpp"
#include "stowave/sampling.hpp"

namespace stowave {

namespace {

std::vector<double> sharp_link_weights(const Grid& g, double r) {
    std::vector<double> w = link_midpoint_radius_sq(g);
    const double r2 = r * r;
    for (double& v : w) v = v > r2 ? 1.0 : 0.0;
    return w;
}

std::vector<double> smooth_link_weights(const Grid& g, double r) {
    std::vector<double> w = link_midpoint_radius_sq(g);
    const double inv_r2 = 1.0 / (r * r);
    for (double& v : w) v = cutoff_rho(v * inv_r2);
    return w;
}

}  // namespace

double tail_norm(const State& s, double r, const Params& params, const Nonlinearity& nl) {
    if (!(r > 0.0)) throw std::invalid_argument("tail_norm: radius must be positive");
    const Grid& g = s.u.grid;
    const double vol = g.cell_volume();
    const double r2 = r * r;
    const double w = params.u_norm_weight();
    double quad = 0.0;
    double lp_pow = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        if (g.radius_sq(i) > r2) {
            quad += s.v[i] * s.v[i] + w * s.u[i] * s.u[i];
            lp_pow += std::pow(std::abs(s.u[i]), nl.p);
        }
    }
    quad *= vol;
    lp_pow *= vol;
    quad += grad_sq_weighted(s.u, sharp_link_weights(g, r));
    return std::sqrt(quad) + std::pow(lp_pow, 1.0 / nl.p);
}

double tail_energy(const State& s, double r, const Params& params, const Nonlinearity& nl) {
    if (!(r > 0.0)) throw std::invalid_argument("tail_energy: radius must be positive");
    const Grid& g = s.u.grid;
    const double vol = g.cell_volume();
    const double inv_r2 = 1.0 / (r * r);
    const double w = params.u_norm_weight();
    double cells = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const double mask = cutoff_rho(g.radius_sq(i) * inv_r2);
        if (mask == 0.0) continue;
        cells += mask * (s.v[i] * s.v[i] + w * s.u[i] * s.u[i] + 2.0 * nl.potential(s.u[i]));
    }
    cells *= vol;
    return cells + grad_sq_weighted(s.u, smooth_link_weights(g, r));
}

TailReport tail_experiment(const Model& model, const TailExperimentConfig& cfg) {
    if (cfg.t_schedule.empty() || cfg.r_schedule.empty()) {
        throw std::invalid_argument("tail_experiment: empty schedule");
    }
    if (cfg.members < 1) throw std::invalid_argument("tail_experiment: need at least one member");
    const Grid& grid = model.grid();
    const double dt = cfg.dt > 0.0 ? cfg.dt : Flow::cfl_limit() * grid.spacing();
    const double t_back_max = cfg.t_schedule.back();

    TailReport report;
    report.t_schedule = cfg.t_schedule;
    report.r_schedule = cfg.r_schedule;
    report.eta = cfg.eta;

    const std::size_t nt = cfg.t_schedule.size();
    const std::size_t nr = cfg.r_schedule.size();
    // member-major results, reduced deterministically after the parallel loop
    std::vector<std::vector<double>> member_tail(static_cast<std::size_t>(cfg.members),
                                                 std::vector<double>(nt * nr, 0.0));

    parallel_for(cfg.members, cfg.threads, [&](int i) {
        const auto seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i));
        OuTrajectory ou;
        const OuTrajectory* ou_ptr = nullptr;
        if (model.params.epsilon > 0.0) {
            const NoisePath path =
                sample_path(static_cast<std::int64_t>(seed), -t_back_max, 0.0, 0.5 * dt, model.params.m);
            ou = ou_trajectory(path, model.params.delta);
            ou_ptr = &ou;
        }
        const Flow flow(model, ou_ptr, dt);
        const State init =
            sample_state(grid, model.params, model.nl, cfg.init_enorm, derive_seed(seed, 0x494E4954ull));
        for (std::size_t it = 0; it < nt; ++it) {
            const State at_zero = flow.pullback(cfg.t_schedule[it], init);
            for (std::size_t ir = 0; ir < nr; ++ir) {
                member_tail[static_cast<std::size_t>(i)][it * nr + ir] =
                    tail_norm(at_zero, cfg.r_schedule[ir], model.params, model.nl);
            }
        }
    });

    report.max_tail.assign(nt, std::vector<double>(nr, 0.0));
    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t ir = 0; ir < nr; ++ir) {
            double worst = 0.0;
            for (const auto& row : member_tail) worst = std::max(worst, row[it * nr + ir]);
            report.max_tail[it][ir] = worst;
        }
    }

    // quadrant test: cell (it, ir) qualifies if its whole upper-right quadrant is < eta
    std::vector<std::vector<bool>> ok(nt, std::vector<bool>(nr, false));
    for (std::size_t it = nt; it-- > 0;) {
        for (std::size_t ir = nr; ir-- > 0;) {
            bool q = report.max_tail[it][ir] < cfg.eta;
            if (it + 1 < nt) q = q && ok[it + 1][ir];
            if (ir + 1 < nr) q = q && ok[it][ir + 1];
            ok[it][ir] = q;
        }
    }
    for (std::size_t it = 0; it < nt && !report.frontier_found; ++it) {
        for (std::size_t ir = 0; ir < nr; ++ir) {
            if (ok[it][ir]) {
                report.frontier_found = true;
                report.frontier_t = it;
                report.frontier_r = ir;
                break;
            }
        }
    }
    return report;
}

}  // namespace stowave
