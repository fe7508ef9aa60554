#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stowave/grid.hpp"

namespace stowave {

/// Counter-based seed derivation: stream k of a master seed is the k-th
/// output of the splitmix64 sequence started at the master.  Used to fan a
/// single experiment seed out to ensemble members and noise modes.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Two-sided Wiener increments for m independent modes on the uniform grid
/// t_k = t_min + k*dt, t_min <= 0 <= t_max with 0 a grid node.  The anchored
/// path W(t_k) is the signed sum of increments between 0 and t_k, so
/// W(0) = 0 exactly.  Mode j draws its increments from the derived stream
/// derive_seed(seed, 2j); sampling is a pure function of (seed, shape).
struct NoisePath {
    std::int64_t seed = 0;
    double t_min = 0.0;
    double t_max = 0.0;
    double dt = 0.0;
    int m = 1;
    std::vector<double> increments;  ///< mode-major: m blocks of steps()

    std::size_t steps() const;
    double increment(int mode, std::size_t k) const;
    double grid_time(std::size_t k) const { return t_min + static_cast<double>(k) * dt; }
    /// Anchored node values W(t_0..t_steps), W(0) = 0.
    std::vector<double> node_values(int mode) const;
};

NoisePath sample_path(std::int64_t seed, double t_min, double t_max, double dt, int m);

/// One exact conditional step of dz + delta*z dt = dW over dt driven by a
/// standard Gaussian xi:
///   z' = e^{-delta*dt} z + sqrt((1 - e^{-2*delta*dt}) / (2*delta)) * xi.
double ou_step(double z, double delta, double dt, double xi);

/// Stationary Ornstein-Uhlenbeck trajectories for every mode of a path,
/// sampled on the path grid.  The initial value at t_min is a stationary
/// N(0, 1/(2*delta)) draw (stream derive_seed(seed, 2j+1)); subsequent
/// samples advance by ou_step with xi = increment / sqrt(dt).  The value
/// stored at grid time t is the driver evaluated along the shifted path, so
/// lookups by absolute time are shift-consistent.
struct OuTrajectory {
    std::int64_t seed = 0;
    double t_min = 0.0;
    double dt = 0.0;
    double delta = 0.0;
    int m = 1;
    std::vector<double> z;  ///< time-major: sample k holds modes [k*m, (k+1)*m)

    std::size_t samples() const { return m == 0 ? 0 : z.size() / static_cast<std::size_t>(m); }
    double time_at(std::size_t k) const { return t_min + static_cast<double>(k) * dt; }
    double t_max() const { return time_at(samples() - 1); }
    /// Grid index of an aligned time; throws if t is off the sample grid.
    std::size_t index_at(double t) const;
    std::span<const double> at_index(std::size_t k) const;
    std::span<const double> at_time(double t) const { return at_index(index_at(t)); }
};

OuTrajectory ou_trajectory(const NoisePath& path, double delta);

/// Spatial mode shapes h_j with the norms the energy estimates need.
struct NoiseProfile {
    struct ModeNorms {
        double l2_sq;    ///< |h_j|_{L2}^2
        double grad_sq;  ///< |grad h_j|_{L2}^2 (link form)
        double lp_pow;   ///< |h_j|_{Lp}^p
    };
    std::vector<Field> modes;
    std::vector<ModeNorms> norms;
    double p = 4.0;
};

NoiseProfile make_profile(std::vector<Field> modes, double p);

/// Gaussian mode amplitude * exp(-|x|^2 / width^2) sampled at cell centers.
Field gaussian_mode(const Grid& g, double amplitude = 1.0, double width = 1.0);
/// Compactly supported bump amplitude * exp(1 - 1/(1 - |x/radius|^2)) for
/// |x| < radius, zero outside; peak value = amplitude.
Field bump_mode(const Grid& g, double amplitude = 1.0, double radius = 2.0);

/// Assembles z(x) = sum_j h_j(x) z_j.
Field z_field(const NoiseProfile& profile, std::span<const double> z);
void z_field_into(const NoiseProfile& profile, std::span<const double> z, Field& out);

/// Sampled surrogate for the tempered bound on sum_j (|z_j|^2 + |z_j|^p):
/// max over the trajectory grid of e^{-(sigma/2)|t|} * sum_j (z_j^2 + |z_j|^p).
/// A maximum over finitely many grid times, not a proof of temperedness.
double estimate_r0(const OuTrajectory& ou, double sigma, double p);

}  // namespace stowave
