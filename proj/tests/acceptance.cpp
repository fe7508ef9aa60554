// Acceptance gate: twelve numbered checks against the library, one line each.
// All tolerances are pinned here; the binary exits 0 only if every check holds.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "stowave/attractor.hpp"
#include "stowave/dynamics.hpp"
#include "stowave/energy.hpp"
#include "stowave/experiments.hpp"
#include "stowave/grid.hpp"
#include "stowave/noise.hpp"
#include "stowave/nonlin.hpp"
#include "stowave/params.hpp"
#include "stowave/sampling.hpp"
#include "stowave/tails.hpp"
#include "stowave/vitali.hpp"

using namespace stowave;

namespace {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Field random_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = u(rng);
    return f;
}

double phi(double x) { return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)); }

// ---------------------------------------------------------------- check 1
// The structured validator must agree with a direct re-evaluation of every
// admissibility inequality on random tuples, and the two derived constants
// must come out exactly at the canonical point.
CheckResult check_admissible_region() {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> wide(-0.5, 3.0);
    std::uniform_real_distribution<double> dl(-0.2, 1.2);
    std::uniform_real_distribution<double> ep(-0.1, 1.0);
    std::uniform_real_distribution<double> pw(1.5, 6.0);
    std::uniform_int_distribution<int> mm(0, 3);

    int agree = 0, valid_seen = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        Params pr;
        pr.alpha = wide(rng);
        pr.beta = wide(rng);
        pr.delta = dl(rng);
        pr.epsilon = ep(rng);
        pr.p = pw(rng);
        pr.c1 = wide(rng);
        pr.c2 = wide(rng);
        pr.c3 = wide(rng);
        pr.m = mm(rng);

        bool direct = pr.alpha > 0.0 && pr.beta > 0.0 && pr.delta > 0.0 && pr.epsilon >= 0.0 &&
                      pr.c1 > 0.0 && pr.c2 > 0.0 && pr.c3 > 0.0 && pr.m >= 1 && pr.p > 2.0 &&
                      pr.alpha + pr.delta * pr.delta - pr.beta * pr.delta > 0.0 &&
                      pr.beta - 3.0 * pr.delta > 0.0;
        if (direct) {
            const double eps_max = pr.delta * pr.c2 * pr.c3 * pr.p / (pr.c1 * (pr.p - 1.0));
            direct = pr.epsilon < eps_max;
        }
        const ValidationReport rep = validate(pr);
        if (rep.empty() == direct && is_valid(pr) == direct) ++agree;
        if (direct) ++valid_seen;
    }

    Params nan_pr;
    nan_pr.alpha = std::nan("");
    const bool nan_rejected = !validate(nan_pr).empty();

    const Params star = canonical_params();
    const bool exact = decay_rate_sigma(star) == 0.25 && max_noise_intensity(star) == 1.0 / 3.0;

    CheckResult r;
    r.pass = agree == n && valid_seen > 100 && n - valid_seen > 100 && nan_rejected && exact;
    r.detail = fmt("%g/10000 tuples agree; sigma=0.25 and eps_max=1/3 exact", agree);
    return r;
}

// ---------------------------------------------------------------- check 2
// Summation by parts, symmetry, and negative semidefiniteness of the
// discrete Laplacian, at 1e-12 relative, on random fields in 1D and 2D.
CheckResult check_operator_identities() {
    double worst = 0.0;
    const Grid grids[] = {Grid(1, 8.0, 256), Grid(2, 3.0, 24)};
    for (const Grid& g : grids) {
        for (int k = 0; k < 100; ++k) {
            const Field f = random_field(g, 1000 + static_cast<std::uint64_t>(k));
            const Field gg = random_field(g, 2000 + static_cast<std::uint64_t>(k));
            const Field lf = laplacian(f);
            const Field lg = laplacian(gg);
            const double dirichlet = grad_sq_norm(f);
            const double sbp = std::abs(dirichlet + inner(f, lf)) / (1.0 + dirichlet);
            const double symm = std::abs(inner(f, lg) - inner(lf, gg)) /
                                (1.0 + std::abs(inner(f, lg)));
            const double nsd = inner(f, lf) / (1.0 + dirichlet);  // must be <= ~0
            worst = std::max({worst, sbp, symm, nsd});
        }
    }
    CheckResult r;
    r.pass = worst <= 1e-12;
    r.detail = fmt("worst relative residual %.3g (gate 1e-12)", worst);
    return r;
}

// ---------------------------------------------------------------- check 3
// The sampled driver is the exact stationary process: variance 1/(2 delta)
// within 3 autocorrelation-adjusted standard errors over 1e5 samples,
// lag-autocorrelation e^{-delta tau}, and a 1% KS test on the one-step law.
CheckResult check_driver_exactness() {
    const double delta = 0.25;
    const double dt = 0.5;
    const int n = 100000;
    const NoisePath path = sample_path(33, -0.5 * n, 0.0, dt, 1);
    const OuTrajectory ou = ou_trajectory(path, delta);
    const std::size_t ns = ou.samples();

    double mean = 0.0;
    for (std::size_t k = 0; k < ns; ++k) mean += ou.z[k];
    mean /= static_cast<double>(ns);
    double var = 0.0;
    for (std::size_t k = 0; k < ns; ++k) var += (ou.z[k] - mean) * (ou.z[k] - mean);
    var /= static_cast<double>(ns - 1);

    const double target = 1.0 / (2.0 * delta);
    const double rho = std::exp(-delta * dt);
    const double se = target * std::sqrt(2.0 / static_cast<double>(ns - 1)) *
                      std::sqrt((1.0 + rho * rho) / (1.0 - rho * rho));
    const bool var_ok = std::abs(var - target) <= 3.0 * se;

    bool corr_ok = true;
    double worst_corr = 0.0;
    for (int lag : {1, 2, 8}) {
        double acc = 0.0;
        const std::size_t cnt = ns - static_cast<std::size_t>(lag);
        for (std::size_t k = 0; k < cnt; ++k)
            acc += (ou.z[k] - mean) * (ou.z[k + static_cast<std::size_t>(lag)] - mean);
        const double corr = acc / static_cast<double>(cnt) / var;
        const double err = std::abs(corr - std::exp(-delta * dt * lag));
        worst_corr = std::max(worst_corr, err);
        corr_ok = corr_ok && err <= 0.013;  // ~4 / sqrt(n)
    }

    // one-step law: z' = e^{-d dt} z0 + gain * xi must be Gaussian with the
    // closed-form mean and variance; KS against Phi at the 1% level.
    const int nks = 40000;
    const NoisePath kpath = sample_path(77, -0.25 * nks, 0.0, 0.25, 1);
    const double z0 = 0.3, kdt = 0.25;
    const double m1 = std::exp(-delta * kdt) * z0;
    const double gain = std::sqrt((1.0 - std::exp(-2.0 * delta * kdt)) / (2.0 * delta));
    std::vector<double> u(nks);
    for (int k = 0; k < nks; ++k) {
        const double xi = kpath.increment(0, static_cast<std::size_t>(k)) / std::sqrt(kdt);
        u[static_cast<std::size_t>(k)] = phi((ou_step(z0, delta, kdt, xi) - m1) / gain);
    }
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    for (int k = 0; k < nks; ++k) {
        const double lo = static_cast<double>(k) / nks, hi = static_cast<double>(k + 1) / nks;
        ks = std::max({ks, std::abs(u[static_cast<std::size_t>(k)] - lo),
                       std::abs(u[static_cast<std::size_t>(k)] - hi)});
    }
    const double ks_crit = 1.628 / std::sqrt(static_cast<double>(nks));
    const bool ks_ok = ks <= ks_crit;

    CheckResult r;
    r.pass = var_ok && corr_ok && ks_ok;
    r.detail = fmt("var err %.3g (3se %.3g), ", std::abs(var - target), 3.0 * se) +
               fmt("corr err %.3g, ", worst_corr) + fmt("KS %.4f (crit %.4f)", ks, ks_crit);
    return r;
}

// ---------------------------------------------------------------- check 4
// Quiet drift identity: the centered-difference residual of
// dQ/dt + 2 sigma Q = G drops at second order under dt halving.
CheckResult check_drift_identity_order() {
    Params pr = canonical_params();
    pr.epsilon = 0.0;
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 64);
    const Model model(pr, nl, gaussian_mode(g, 0.5, 2.0));
    const State s0 = sample_state(g, pr, nl, 2.0, 11);
    const double sigma = decay_rate_sigma(pr);
    const double t_star = 1.0;

    auto residual = [&](double dt) {
        const Flow flow(model, nullptr, dt);
        const State sm = flow.evolve(s0, 0.0, t_star - dt);
        const State sc = flow.evolve(sm, t_star - dt, t_star);
        const State sp = flow.evolve(sc, t_star, t_star + dt);
        const double dq = (energy_q(sp, pr, nl) - energy_q(sm, pr, nl)) / (2.0 * dt);
        return std::abs(dq + 2.0 * sigma * energy_q(sc, pr, nl) -
                        drift_g(sc, nullptr, pr, model.forcing, nl));
    };
    const double r1 = residual(1.0 / 16.0);
    const double r2 = residual(1.0 / 32.0);
    const double r3 = residual(1.0 / 64.0);
    const double o1 = std::log2(r1 / r2);
    const double o2 = std::log2(r2 / r3);

    CheckResult r;
    r.pass = o1 >= 1.9 && o2 >= 1.9;
    r.detail = fmt("orders %.2f, %.2f (gate 1.9)", o1, o2);
    return r;
}

// ---------------------------------------------------------------- check 5
// Quiet unforced decay: Q(t) <= 1.05 e^{-sigma t} Q(0) at every snapshot
// for ten random starts.
CheckResult check_energy_decay() {
    Params pr = canonical_params();
    pr.epsilon = 0.0;
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 256);
    const Model model(pr, nl, Field(g));
    const double sigma = decay_rate_sigma(pr);
    const Flow flow(model, nullptr, 0.5 * g.spacing());

    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const State s0 = sample_state(g, pr, nl, 2.0, seed);
        const Trajectory traj = record_trajectory(flow, s0, 0.0, 20.0, 0.5);
        const double q0 = energy_q(traj.states.front(), pr, nl);
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const double q = energy_q(traj.states[k], pr, nl);
            const double cap = 1.05 * std::exp(-sigma * traj.times[k]) * q0;
            worst = std::max(worst, q - cap);
        }
    }
    CheckResult r;
    r.pass = worst <= 0.0;
    r.detail = fmt("max excess over 1.05 e^{-sigma t} Q(0): %.3g", worst);
    return r;
}

// ---------------------------------------------------------------- check 6
// Pathwise integral bound: over 50 noisy runs at the canonical point the
// margin never dips below -5% of the bound.
CheckResult check_integral_bound_margin() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 256);
    const Model model(pr, nl, Field(g), make_profile({gaussian_mode(g)}, pr.p));
    EnergyEnsembleConfig cfg;
    cfg.master_seed = 5;
    cfg.members = 50;
    cfg.t_end = 20.0;
    cfg.snapshot_every = 0.5;
    cfg.init_enorm = 2.0;
    cfg.tolerance = 0.05;
    cfg.threads = 4;
    const EnergyEnsembleReport rep = energy_ensemble(model, cfg);
    CheckResult r;
    r.pass = rep.pass && rep.worst_margin_ratio >= -0.05;
    r.detail = fmt("worst margin ratio %.4f over 50 seeds (gate -0.05)", rep.worst_margin_ratio);
    return r;
}

// ---------------------------------------------------------------- check 7
// Absorbing ball: pullback states started at up to 10x the per-path radius
// R are inside the R-ball at time 0 after t_back = 40, for all 50 seeds.
CheckResult check_absorbing_ball() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 256);
    const Model model(pr, nl, Field(g), make_profile({gaussian_mode(g)}, pr.p));
    AbsorbConfig cfg;
    cfg.master_seed = 9;
    cfg.members = 50;
    cfg.t_back = 40.0;
    cfg.enorm_factors = {1.0, 10.0};
    // 10x the per-path radius reaches amplitudes ~90 where the cubic term
    // stiffens the wave frequency; the explicit stepper needs dt well under
    // the default half-spacing there (1/64 is marginal, 1/128 is resolved:
    // halving it again moves the worst final/R ratio by under 3%).
    cfg.dt = 1.0 / 128.0;
    cfg.threads = 4;
    const AbsorbReport rep = absorbing_experiment(model, cfg);
    int entered = 0;
    double worst_ratio = 0.0;
    for (const AbsorbMember& m : rep.members) {
        entered += m.entered ? 1 : 0;
        worst_ratio = std::max(worst_ratio, m.final_enorm / m.radius);
    }
    CheckResult r;
    r.pass = rep.all_entered;
    r.detail = fmt("%g/100 pullbacks entered; worst final/R %.3f", static_cast<double>(entered),
                   worst_ratio);
    return r;
}

// ---------------------------------------------------------------- check 8
// Tail smallness: with compactly supported data, forcing, and noise shape,
// every seed has tail energy < 0.1 at (t=20, r=6); and on short horizons
// tails beyond the finite propagation cone vanish identically.
CheckResult check_tail_smallness() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 256);
    const Model model(pr, nl, bump_mode(g, 0.25, 2.0), make_profile({bump_mode(g, 1.0, 2.0)}, pr.p));

    TailExperimentConfig cfg;
    cfg.master_seed = 13;
    cfg.members = 8;
    cfg.init_enorm = 1.0;
    cfg.t_schedule = {5.0, 20.0};
    cfg.r_schedule = {3.0, 6.0};
    cfg.eta = 0.1;
    cfg.threads = 4;
    const TailReport rep = tail_experiment(model, cfg);
    const double worst = rep.max_tail[1][1];  // t = 20, r = 6
    const bool small = worst < 0.1;

    // propagation cone: support |x| < 1, 16 steps of dt = h/2 widen the
    // support by at most 4 cells per step = 4 space units.
    const Model quiet(pr, nl, Field(g));
    const Flow flow(quiet, nullptr, 0.5 * g.spacing());
    const State s0(bump_mode(g, 1.0, 1.0), bump_mode(g, 0.5, 1.0));
    const State s = flow.evolve(s0, 0.0, 0.5);
    // positivity is probed at r = 1 (the wave has physically reached there);
    // further out the numerically allowed cone fill underflows to exact zero
    // long before the 4-cells-per-step bound at r = 5 bites.
    const bool cone = tail_norm(s0, 1.2, pr, nl) == 0.0 && tail_norm(s, 5.5, pr, nl) == 0.0 &&
                      tail_norm(s, 1.0, pr, nl) > 0.0;

    CheckResult r;
    r.pass = small && cone;
    r.detail = fmt("worst tail at (t=20, r=6): %.4g (gate 0.1); ", worst) +
               std::string(cone ? "cone tails exactly zero" : "cone leak");
    return r;
}

// ---------------------------------------------------------------- check 9
// Flow laws: two-leg concatenation and driver-window shifting reproduce the
// direct evolution to 1e-12 relative, 20 random cases, quiet and noisy.
CheckResult check_flow_laws() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 64);
    const Model noisy(pr, nl, Field(g), make_profile({gaussian_mode(g)}, pr.p));
    Params quiet_pr = pr;
    quiet_pr.epsilon = 0.0;
    const Model quiet(quiet_pr, nl, Field(g));
    const double dt = 0.5 * g.spacing();

    double worst = 0.0;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const bool with_noise = k % 2 == 0;
        const Params& mpr = with_noise ? pr : quiet_pr;
        const Model& model = with_noise ? noisy : quiet;

        NoisePath path;
        OuTrajectory ou;
        if (with_noise) {
            path = sample_path(static_cast<std::int64_t>(300 + k), -4.0, 4.0, 0.5 * dt, pr.m);
            ou = ou_trajectory(path, pr.delta);
        }
        const Flow flow(model, with_noise ? &ou : nullptr, dt);

        const double a = -2.0 + 0.25 * static_cast<double>(k % 4);
        const double b = a + 0.5 + 0.25 * static_cast<double>(k % 3);
        const double c = b + 0.75 + 0.25 * static_cast<double>(k % 5);
        const State s0 = sample_state(g, mpr, nl, 1.5, 40 + k);

        const State direct = flow.evolve(s0, a, c);
        const State two_leg = flow.evolve(flow.evolve(s0, a, b), b, c);
        const double scale = 1.0 + e_norm(direct, mpr, nl);
        worst = std::max(worst, e_norm_diff(direct, two_leg, mpr, nl) / scale);

        // shift the driver window by tau and replay on shifted times
        const double tau = 1.5;
        State shifted(g);
        if (with_noise) {
            OuTrajectory moved = ou;
            moved.t_min += tau;
            const Flow flow2(model, &moved, dt);
            shifted = flow2.evolve(s0, a + tau, c + tau);
        } else {
            shifted = flow.evolve(s0, a + tau, c + tau);
        }
        worst = std::max(worst, e_norm_diff(direct, shifted, mpr, nl) / scale);
    }
    CheckResult r;
    r.pass = worst <= 1e-12;
    r.detail = fmt("worst relative law defect %.3g (gate 1e-12)", worst);
    return r;
}

// ---------------------------------------------------------------- check 10
// Convergence criterion: verdicts match the direct norm oracle on the three
// bundled families, and the greedy partial-mass supremum matches exhaustive
// search on random instances of up to 15 cells.
CheckResult check_convergence_criterion() {
    const double p = 2.0;
    const std::vector<double> eps = {0.5, 0.1, 0.02};
    const std::vector<double> thr = {0.25, 0.05, 0.01};

    bool families_ok = true;
    const LatticeFamily fams[] = {family_truncation(40), family_escaping_bump(40),
                                  family_concentrating_spike(40, p)};
    const bool expect[] = {true, false, false};
    for (int i = 0; i < 3; ++i) {
        const VitaliReport rep = vitali_verdict(fams[i].members, fams[i].limit, p, eps, thr);
        families_ok = families_ok && rep.agrees && rep.predicted_convergent == expect[i] &&
                      rep.oracle_convergent == expect[i];
    }

    // exhaustive oracle for the partial-mass supremum: every subset plus at
    // most one fractionally included cell.
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> size_d(2, 15);
    std::uniform_real_distribution<double> mu_d(0.05, 1.0);
    std::uniform_real_distribution<double> val_d(-2.0, 2.0);
    std::uniform_real_distribution<double> thr_d(0.1, 1.5);
    const double ps[] = {1.0, 2.0, 3.5};

    double worst_gap = 0.0;
    bool atomic_ok = true;
    for (int inst = 0; inst < 40; ++inst) {
        const int ncells = size_d(rng);
        std::vector<LatticeEntry> entries;
        for (int c = 0; c < ncells; ++c)
            entries.push_back({c, mu_d(rng), val_d(rng)});
        const LatticeFunction f = make_lattice_function(entries);
        const double pp = ps[inst % 3];
        const double theta = thr_d(rng);

        const std::vector<LatticeFunction> seq = {f};
        const ConditionBResult got = check_condition_b(seq, pp, theta, 1e300);

        double best = 0.0;
        const std::uint32_t full = 1u << ncells;
        for (std::uint32_t mask = 0; mask < full; ++mask) {
            double mass = 0.0, total = 0.0;
            for (int c = 0; c < ncells; ++c) {
                if (mask & (1u << c)) {
                    mass += f.entries[static_cast<std::size_t>(c)].measure;
                    total += std::pow(std::abs(f.entries[static_cast<std::size_t>(c)].value), pp) *
                             f.entries[static_cast<std::size_t>(c)].measure;
                }
            }
            if (mass > theta) continue;
            best = std::max(best, total);
            for (int c = 0; c < ncells; ++c) {
                if (mask & (1u << c)) continue;
                const LatticeEntry& e = f.entries[static_cast<std::size_t>(c)];
                const double frac = std::min(1.0, (theta - mass) / e.measure);
                best = std::max(best,
                                total + frac * std::pow(std::abs(e.value), pp) * e.measure);
            }
        }
        worst_gap = std::max(worst_gap,
                             std::abs(got.sup_fractional - best) / (1.0 + std::abs(best)));
        atomic_ok = atomic_ok && got.sup_atomic <= got.sup_fractional + 1e-12;
    }

    CheckResult r;
    r.pass = families_ok && worst_gap <= 1e-10 && atomic_ok;
    r.detail = std::string(families_ok ? "3/3 family verdicts agree; " : "family mismatch; ") +
               fmt("greedy vs exhaustive gap %.3g (gate 1e-10)", worst_gap);
    return r;
}

// ---------------------------------------------------------------- check 11
// Pullback convergence: quiet gaps fit a geometric rate at most
// 1.1 e^{-sigma} per unit horizon, and 50 noisy seeds give a strictly
// decreasing mean Cauchy gap sequence in the full state norm.
CheckResult check_pullback_convergence() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid g(1, 8.0, 256);
    const double sigma = decay_rate_sigma(pr);

    Params quiet_pr = pr;
    quiet_pr.epsilon = 0.0;
    const Model quiet(quiet_pr, nl, Field(g));
    const StateCloud inits = sample_ball_cloud(g, quiet_pr, nl, 2.0, 3, 17);
    const std::vector<double> sched = {2.0, 4.0, 6.0, 8.0, 10.0};
    const PullbackConvergence conv =
        pullback_convergence_test(quiet, nullptr, inits, sched, 0.5 * g.spacing(), 4);
    const double cap = 1.1 * std::exp(-sigma);
    bool quiet_ok = conv.fitted_rate_per_unit > 0.0 && conv.fitted_rate_per_unit <= cap;
    for (std::size_t i = 1; i < conv.mean_gaps.size(); ++i)
        quiet_ok = quiet_ok && conv.mean_gaps[i] < conv.mean_gaps[i - 1];

    const Model noisy(pr, nl, Field(g), make_profile({gaussian_mode(g)}, pr.p));
    PullbackEnsembleConfig cfg;
    cfg.master_seed = 21;
    cfg.members = 50;
    cfg.horizons = {2.0, 4.0, 6.0, 8.0, 10.0};
    cfg.inits = 2;
    cfg.init_enorm = 2.0;
    cfg.threads = 4;
    const PullbackEnsembleReport rep = pullback_ensemble(noisy, cfg);

    CheckResult r;
    r.pass = quiet_ok && rep.decreasing;
    r.detail = fmt("quiet rate %.4f (cap %.4f); ", conv.fitted_rate_per_unit, cap) +
               std::string(rep.decreasing ? "noisy mean gaps strictly decreasing"
                                          : "noisy gaps not decreasing");
    return r;
}

// ---------------------------------------------------------------- check 12
// Truncation insensitivity: doubling the box at fixed spacing moves Q(t) on
// [0, 20] by less than 1% of its peak for compactly supported data.
CheckResult check_truncation_insensitivity() {
    const Params pr = canonical_params();
    const Nonlinearity nl{};
    const Grid small(1, 8.0, 256);
    const Grid big(1, 16.0, 512);  // same h, cell centers align
    const double dt = 0.5 * small.spacing();

    const NoisePath path = sample_path(7, 0.0, 20.0, 0.5 * dt, pr.m);
    const OuTrajectory ou = ou_trajectory(path, pr.delta);

    auto run = [&](const Grid& g) {
        const Model model(pr, nl, bump_mode(g, 0.25, 2.0),
                          make_profile({bump_mode(g, 1.0, 2.0)}, pr.p));
        const State s0(bump_mode(g, 1.0, 3.0), bump_mode(g, 0.5, 3.0));
        const Flow flow(model, &ou, dt);
        const Trajectory traj = record_trajectory(flow, s0, 0.0, 20.0, 0.5);
        std::vector<double> q;
        for (const State& s : traj.states) q.push_back(energy_q(s, pr, nl));
        return q;
    };
    const std::vector<double> qa = run(small);
    const std::vector<double> qb = run(big);

    double peak = 0.0, dev = 0.0;
    for (std::size_t k = 0; k < qa.size(); ++k) {
        peak = std::max(peak, qa[k]);
        dev = std::max(dev, std::abs(qa[k] - qb[k]));
    }
    CheckResult r;
    r.pass = dev < 0.01 * peak;
    r.detail = fmt("max |dQ| %.4g vs 1%% of peak %.4g", dev, 0.01 * peak);
    return r;
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        CheckResult (*fn)();
    };
    const Entry checks[] = {
        {"admissible-region-agreement", check_admissible_region},
        {"discrete-operator-identities", check_operator_identities},
        {"driver-exactness", check_driver_exactness},
        {"drift-identity-order", check_drift_identity_order},
        {"quiet-energy-decay", check_energy_decay},
        {"integral-bound-margin", check_integral_bound_margin},
        {"absorbing-ball-entry", check_absorbing_ball},
        {"tail-smallness", check_tail_smallness},
        {"flow-composition-laws", check_flow_laws},
        {"convergence-criterion", check_convergence_criterion},
        {"pullback-convergence", check_pullback_convergence},
        {"truncation-insensitivity", check_truncation_insensitivity},
    };

    int failed = 0;
    int idx = 0;
    for (const Entry& e : checks) {
        ++idx;
        CheckResult res;
        try {
            res = e.fn();
        } catch (const std::exception& ex) {
            res.pass = false;
            res.detail = std::string("exception: ") + ex.what();
        }
        std::printf("[%2d/12] %-30s %s  (%s)\n", idx, e.name, res.pass ? "PASS" : "FAIL",
                    res.detail.c_str());
        std::fflush(stdout);
        if (!res.pass) ++failed;
    }
    std::printf("%d/12 checks passed\n", 12 - failed);
    return failed == 0 ? 0 : 1;
}
