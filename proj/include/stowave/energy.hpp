#pragma once

#include <span>
#include <vector>

#include "stowave/dynamics.hpp"

namespace stowave {

/// Norm of the transformed phase space:
/// sqrt(|v|^2 + (alpha+delta^2-beta*delta)|u|^2 + |grad u|^2) + |u|_{Lp}.
double e_norm(const State& s, const Params& params, const Nonlinearity& nl);
double e_norm_diff(const State& a, const State& b, const Params& params, const Nonlinearity& nl);

/// Energy functional
/// Q = |v|^2 + (alpha+delta^2-beta*delta)|u|^2 + |grad u|^2 + 2 int(F(u) + phi3).
double energy_q(const State& s, const Params& params, const Nonlinearity& nl);

/// Right-hand side G of the drift identity dQ/dt + 2*sigma*Q = G, which holds
/// exactly along the spatially-discrete flow (the grad terms use the link
/// form, so the summation-by-parts cancellations are exact).  Pass z = nullptr
/// when epsilon == 0.
double drift_g(const State& s, const Field* z, const Params& params, const Field& forcing,
               const Nonlinearity& nl);

/// Grouped driver constant C0 = max{ eps^2*w/(2 delta) + eps^2*(2 delta+beta)^2/(2 delta) + eps/2,
///                                   eps^2/(2 delta), eps*c1/p },  w = alpha+delta^2-beta*delta.
double c0_constant(const Params& params);

/// Driver functional Gamma1 = C0 * (|z|^2 + |grad z|^2 + |z|_p^p).
double gamma1(const Field& z, const Params& params);

/// Offset constants assembled from the comparison-function norms (all zero
/// for the canonical nonlinearity) and the coefficients:
///   C4 = (eps/2)|phi1|^2 - delta|phi2|_1 + (eps*c1*(p-1)/(c3*p))|phi3|_1
///   C6 = 2*(delta*c2 - eps*c1*(p-1)/(c3*p))|phi3|_1 + 2*C4
double c4_constant(const Params& params, const Nonlinearity& nl);
double c6_constant(const Params& params, const Nonlinearity& nl);

/// Mode-uniform driver bound: Gamma1(z(t)) <= C5 * sum_j (z_j^2 + |z_j|^p),
///   C5 = C0 * max_j max{ m*(|h_j|^2 + |grad h_j|^2), m^{p-1} |h_j|_p^p }.
double c5_constant(const Params& params, const NoiseProfile& profile);

/// Integral energy bound at time t for a trajectory started at tau:
///   e^{-sigma (t-tau)} (q_tau + 2|phi3|_1)
///   + 2 int_tau^t e^{sigma (s-t)} Gamma1(s) ds      (trapezoid rule)
///   + (1/sigma) (C6 + |g|^2/(beta-delta)).
/// gamma_times/gamma_values sample Gamma1 on [tau, t].
double gronwall_bound(double q_tau, double tau, double t, std::span<const double> gamma_times,
                      std::span<const double> gamma_values, const Params& params,
                      const Nonlinearity& nl, double forcing_l2_sq);

/// Radius of the absorbing ball:
///   bracket = 1 + (1/sigma) (4*C5*r0 + C6 + |g|^2/(beta-delta))
///   R = sqrt(bracket / min{1, alpha+delta^2-beta*delta}) + (bracket/(2*c3))^{1/p}.
double absorbing_radius(const Params& params, const Nonlinearity& nl, double r0, double c5,
                        double forcing_l2_sq);

struct EnergySample {
    double t;
    double q;
    double bound;
    double margin;  ///< bound - q
};

struct EnergyReport {
    std::vector<EnergySample> samples;
    double tolerance = 0.05;
    double min_margin_ratio = 0.0;  ///< min over samples of margin / bound
    int violations = 0;             ///< samples with margin < -tolerance * bound
    bool pass = true;
};

/// Evaluates the integral bound along a recorded trajectory and reports the
/// margin bound - Q at every snapshot.  Gamma1 is sampled on the OU grid
/// between the first and last snapshot; pass ou = nullptr when epsilon == 0.
EnergyReport check_energy_inequality(const Trajectory& traj, const Model& model,
                                     const OuTrajectory* ou, double tolerance);

}  // namespace stowave
