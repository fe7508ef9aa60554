#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stowave/dynamics.hpp"

namespace stowave {

struct StateCloud {
    std::vector<State> states;
};

/// max over a in A of min over b in B of e_norm(a - b); 0 for empty A.
double hausdorff_semidist(const StateCloud& a, const StateCloud& b, const Params& params,
                          const Nonlinearity& nl);

/// Norm-stratified sample of a ball: `count` random smooth states with
/// e_norm stratified uniformly over (0, radius].
StateCloud sample_ball_cloud(const Grid& g, const Params& params, const Nonlinearity& nl,
                             double radius, int count, std::uint64_t seed);

struct AttractorApproximation {
    StateCloud cloud;  ///< deepest-horizon pullback images at the anchor time
    std::vector<double> pullback_times;
    /// semidist(stage i+1 cloud, stage i cloud): the Cauchy increments of
    /// the deepening pullback approximation.
    std::vector<double> stage_gaps;
    double anchor_time = 0.0;
};

/// Pullback cloud approximation: every initial state is pulled back over
/// every horizon T (started at anchor - T, read at the anchor time); the
/// returned surrogate is the deepest-horizon cloud, with the inter-stage
/// semidistance gaps recorded.  The OU trajectory must cover
/// [anchor - max T, anchor].
AttractorApproximation approximate_attractor(const Model& model, const OuTrajectory* ou,
                                             std::span<const double> pullback_times,
                                             const StateCloud& inits, double dt,
                                             double anchor_time = 0.0, int threads = 1);

struct PullbackConvergence {
    std::vector<double> t_schedule;
    /// gaps[j][i] = e_norm difference of init j pulled back over t_{i+1} vs t_i.
    std::vector<std::vector<double>> gaps;
    std::vector<double> mean_gaps;  ///< over inits, one per consecutive pair
    /// Geometric decay factor per unit time fitted to the mean gaps
    /// (least squares on log gap vs horizon).
    double fitted_rate_per_unit = 0.0;
};

PullbackConvergence pullback_convergence_test(const Model& model, const OuTrajectory* ou,
                                              const StateCloud& inits,
                                              std::span<const double> t_schedule, double dt,
                                              int threads = 1);

struct InvarianceReport {
    double forward_defect = 0.0;   ///< semidist(flow-image of cloud(0), cloud(t))
    double backward_defect = 0.0;  ///< semidist(cloud(t), flow-image of cloud(0))
};

/// Compares the time-t flow image of the pullback cloud anchored at 0 with
/// the pullback cloud anchored at t on the same noise path.  Both defects
/// small = the surrogate behaves invariantly along the cocycle.
InvarianceReport invariance_check(const Model& model, const OuTrajectory* ou,
                                  std::span<const double> pullback_times, const StateCloud& inits,
                                  double t_shift, double dt, int threads = 1);

}  // namespace stowave
