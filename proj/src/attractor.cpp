#include "stowave/attractor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stowave/energy.hpp"
#include "stowave/parallel.hpp"
#include "stowave/sampling.hpp"

namespace stowave {

double hausdorff_semidist(const StateCloud& a, const StateCloud& b, const Params& params,
                          const Nonlinearity& nl) {
    if (b.states.empty()) throw std::invalid_argument("hausdorff_semidist: empty target cloud");
    double worst = 0.0;
    for (const State& x : a.states) {
        double best = std::numeric_limits<double>::infinity();
        for (const State& y : b.states) best = std::min(best, e_norm_diff(x, y, params, nl));
        worst = std::max(worst, best);
    }
    return worst;
}

StateCloud sample_ball_cloud(const Grid& g, const Params& params, const Nonlinearity& nl,
                             double radius, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_ball_cloud: count must be >= 1");
    StateCloud cloud;
    cloud.states.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double target = radius * static_cast<double>(k + 1) / static_cast<double>(count);
        cloud.states.push_back(sample_state(g, params, nl, target, derive_seed(seed, static_cast<std::uint64_t>(k))));
    }
    return cloud;
}

namespace {

std::vector<StateCloud> pullback_stages(const Model& model, const OuTrajectory* ou,
                                        std::span<const double> pullback_times,
                                        const StateCloud& inits, double dt, double anchor_time,
                                        int threads) {
    if (pullback_times.empty()) throw std::invalid_argument("pullback stages: empty horizon schedule");
    if (inits.states.empty()) throw std::invalid_argument("pullback stages: empty initial cloud");
    for (std::size_t i = 1; i < pullback_times.size(); ++i) {
        if (!(pullback_times[i] > pullback_times[i - 1])) {
            throw std::invalid_argument("pullback stages: horizons must be ascending");
        }
    }
    const Flow flow(model, ou, dt);
    const auto n_init = inits.states.size();
    const auto n_stage = pullback_times.size();
    std::vector<StateCloud> stages(n_stage);
    for (auto& c : stages) c.states.resize(n_init, State(model.grid()));
    parallel_for(static_cast<int>(n_stage * n_init), threads, [&](int flat) {
        const std::size_t stage = static_cast<std::size_t>(flat) / n_init;
        const std::size_t j = static_cast<std::size_t>(flat) % n_init;
        const double T = pullback_times[stage];
        stages[stage].states[j] = flow.evolve(inits.states[j], anchor_time - T, anchor_time);
    });
    return stages;
}

}  // namespace

AttractorApproximation approximate_attractor(const Model& model, const OuTrajectory* ou,
                                             std::span<const double> pullback_times,
                                             const StateCloud& inits, double dt,
                                             double anchor_time, int threads) {
    auto stages = pullback_stages(model, ou, pullback_times, inits, dt, anchor_time, threads);
    AttractorApproximation out;
    out.pullback_times.assign(pullback_times.begin(), pullback_times.end());
    out.anchor_time = anchor_time;
    for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
        out.stage_gaps.push_back(hausdorff_semidist(stages[i + 1], stages[i], model.params, model.nl));
    }
    out.cloud = std::move(stages.back());
    return out;
}

PullbackConvergence pullback_convergence_test(const Model& model, const OuTrajectory* ou,
                                              const StateCloud& inits,
                                              std::span<const double> t_schedule, double dt,
                                              int threads) {
    if (t_schedule.size() < 2) throw std::invalid_argument("pullback_convergence_test: need >= 2 horizons");
    auto stages = pullback_stages(model, ou, t_schedule, inits, dt, 0.0, threads);
    PullbackConvergence out;
    out.t_schedule.assign(t_schedule.begin(), t_schedule.end());
    const auto n_init = inits.states.size();
    out.gaps.assign(n_init, std::vector<double>(t_schedule.size() - 1, 0.0));
    out.mean_gaps.assign(t_schedule.size() - 1, 0.0);
    for (std::size_t j = 0; j < n_init; ++j) {
        for (std::size_t i = 0; i + 1 < t_schedule.size(); ++i) {
            const double d =
                e_norm_diff(stages[i + 1].states[j], stages[i].states[j], model.params, model.nl);
            out.gaps[j][i] = d;
            out.mean_gaps[i] += d / static_cast<double>(n_init);
        }
    }
    // least-squares slope of log(mean gap) against the earlier horizon
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i + 1 < t_schedule.size(); ++i) {
        if (out.mean_gaps[i] <= 0.0) continue;
        const double x = t_schedule[i];
        const double y = std::log(out.mean_gaps[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        const double denom = static_cast<double>(n) * sxx - sx * sx;
        const double slope = (static_cast<double>(n) * sxy - sx * sy) / denom;
        out.fitted_rate_per_unit = std::exp(slope);
    }
    return out;
}

InvarianceReport invariance_check(const Model& model, const OuTrajectory* ou,
                                  std::span<const double> pullback_times, const StateCloud& inits,
                                  double t_shift, double dt, int threads) {
    if (!(t_shift > 0.0)) throw std::invalid_argument("invariance_check: t_shift must be positive");
    const AttractorApproximation at_zero =
        approximate_attractor(model, ou, pullback_times, inits, dt, 0.0, threads);
    const AttractorApproximation at_shift =
        approximate_attractor(model, ou, pullback_times, inits, dt, t_shift, threads);

    const Flow flow(model, ou, dt);
    StateCloud image;
    image.states.resize(at_zero.cloud.states.size(), State(model.grid()));
    parallel_for(static_cast<int>(image.states.size()), threads, [&](int j) {
        image.states[static_cast<std::size_t>(j)] =
            flow.evolve(at_zero.cloud.states[static_cast<std::size_t>(j)], 0.0, t_shift);
    });

    InvarianceReport report;
    report.forward_defect = hausdorff_semidist(image, at_shift.cloud, model.params, model.nl);
    report.backward_defect = hausdorff_semidist(at_shift.cloud, image, model.params, model.nl);
    return report;
}

}  // namespace stowave
