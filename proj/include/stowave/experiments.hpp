#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stowave/attractor.hpp"
#include "stowave/energy.hpp"
#include "stowave/tails.hpp"

namespace stowave {

/// Noise support for one realization: the path and its OU trajectory on the
/// half-step grid of a given solver step.
struct NoiseRealization {
    NoisePath path;
    OuTrajectory ou;
};

/// Samples a path over [t_min, t_max] at spacing dt/2 and runs the OU
/// recursion; returns nothing when the model is noise-free.
std::optional<NoiseRealization> make_noise(const Model& model, std::int64_t seed, double t_min,
                                           double t_max, double dt);

struct SimulateConfig {
    std::uint64_t seed = 1;
    double t_end = 20.0;
    double snapshot_every = 0.25;
    double init_enorm = 1.0;
    double tolerance = 0.05;  ///< energy-margin tolerance
    double dt = 0.0;          ///< 0 picks 0.5 * h
};

struct SimulateResult {
    Trajectory trajectory;
    EnergyReport energy;
    std::optional<NoiseRealization> noise;
    double dt = 0.0;
};

/// Forward run from a sampled initial state on [0, t_end] with the energy
/// inequality evaluated at every snapshot.
SimulateResult simulate_run(const Model& model, const SimulateConfig& cfg);

struct EnergyEnsembleConfig {
    std::uint64_t master_seed = 1;
    int members = 50;
    double t_end = 20.0;
    double snapshot_every = 0.25;
    double init_enorm = 2.0;
    double tolerance = 0.05;
    double dt = 0.0;
    int threads = 1;
};

struct EnergyEnsembleReport {
    std::vector<EnergyReport> reports;  ///< one per member
    double worst_margin_ratio = 0.0;
    bool pass = false;
};

EnergyEnsembleReport energy_ensemble(const Model& model, const EnergyEnsembleConfig& cfg);

struct AbsorbConfig {
    std::uint64_t master_seed = 1;
    int members = 50;
    double t_back = 40.0;
    std::vector<double> enorm_factors = {1.0, 10.0};  ///< initial norms as multiples of R
    double dt = 0.0;
    int threads = 1;
};

struct AbsorbMember {
    std::uint64_t seed = 0;
    double factor = 0.0;
    double r0 = 0.0;
    double radius = 0.0;       ///< absorbing radius R for this path
    double init_enorm = 0.0;   ///< factor * R
    double final_enorm = 0.0;  ///< e_norm of the pullback state at time 0
    bool entered = false;      ///< final_enorm <= radius
};

struct AbsorbReport {
    std::vector<AbsorbMember> members;
    double c5 = 0.0;
    bool all_entered = false;
};

/// Pullback absorption survey: per member estimates r0 and R from its own
/// path, pulls back initial states of norm factor * R over t_back, and
/// checks entry into the R-ball at time 0.
AbsorbReport absorbing_experiment(const Model& model, const AbsorbConfig& cfg);

struct PullbackEnsembleConfig {
    std::uint64_t master_seed = 1;
    int members = 50;
    std::vector<double> horizons = {5, 10, 15, 20, 25, 30};
    int inits = 3;
    double init_enorm = 2.0;
    double dt = 0.0;
    int threads = 1;
};

struct PullbackEnsembleReport {
    std::vector<PullbackConvergence> per_member;
    std::vector<double> mean_gaps;  ///< over members and inits, one per stage pair
    bool decreasing = false;        ///< mean gaps strictly decreasing
};

PullbackEnsembleReport pullback_ensemble(const Model& model, const PullbackEnsembleConfig& cfg);

}  // namespace stowave
