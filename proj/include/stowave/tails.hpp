#pragma once

#include <cstdint>
#include <vector>

#include "stowave/dynamics.hpp"

namespace stowave {

/// Sharp-cutoff tail of the state norm: every sum of e_norm restricted to
/// cells (and link midpoints, for the gradient part) with |x| > r.
/// Identically 0 once r exceeds the largest cell-center radius.
double tail_norm(const State& s, double r, const Params& params, const Nonlinearity& nl);

/// Smooth-cutoff tail energy: the Q sums weighted by rho(|x|^2 / r^2) at
/// cell centers and link midpoints.  Sandwiched between the squared sharp
/// tails at sqrt(2)*r and r (quadratic parts).
double tail_energy(const State& s, double r, const Params& params, const Nonlinearity& nl);

struct TailExperimentConfig {
    std::uint64_t master_seed = 1;
    int members = 8;                 ///< ensemble size; member i draws seed derive_seed(master, i)
    double init_enorm = 1.0;         ///< e_norm of the sampled initial states
    std::vector<double> t_schedule;  ///< pullback horizons, ascending
    std::vector<double> r_schedule;  ///< radii, ascending; keep r <= 0.75 * L
    double eta = 0.1;
    double dt = 0.0;                 ///< time step; 0 picks 0.5 * h
    int threads = 1;
};

struct TailReport {
    std::vector<double> t_schedule;
    std::vector<double> r_schedule;
    /// max over ensemble members of tail_norm, indexed [t][r].
    std::vector<std::vector<double>> max_tail;
    double eta = 0.1;
    /// Minimal schedule cell (t index, then r index) whose upper-right
    /// quadrant of the matrix is uniformly below eta; absent if none.
    bool frontier_found = false;
    std::size_t frontier_t = 0;
    std::size_t frontier_r = 0;
};

/// Pullback tail survey over an ensemble of (noise path, initial state)
/// members: member i pulls back its sampled state over every horizon in
/// t_schedule and records tail_norm at every radius in r_schedule.
TailReport tail_experiment(const Model& model, const TailExperimentConfig& cfg);

}  // namespace stowave
