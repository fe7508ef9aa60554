#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "stowave/grid.hpp"
#include "stowave/noise.hpp"
#include "stowave/nonlin.hpp"
#include "stowave/params.hpp"

namespace stowave {

/// Point of the transformed phase space: u and v = u_t + delta*u - epsilon*z.
struct State {
    Field u;
    Field v;

    explicit State(const Grid& g) : u(g), v(g) {}
    State(Field u_, Field v_);
};

State state_sub(const State& a, const State& b);

/// Maps physical initial data (u0, u1 = u_t(tau)) to the transformed pair at
/// time tau: v = u1 + delta*u0 - epsilon*z_tau.  Pass z_tau = nullptr when
/// epsilon == 0.
State transform_initial(const Field& u0, const Field& u1, const Params& params, const Field* z_tau);

/// Everything that stays fixed along a trajectory: coefficients, drift,
/// deterministic forcing and the spatial noise profile.
struct Model {
    Params params;
    Nonlinearity nl;
    Field forcing;         ///< g
    NoiseProfile profile;  ///< mode shapes; unused when epsilon == 0

    Model(Params pr, Nonlinearity n, Field g, NoiseProfile prof);
    /// Convenience for the noise-free case (epsilon forced to 0).
    Model(Params pr, Nonlinearity n, Field g);

    const Grid& grid() const { return forcing.grid; }
};

/// Time stepper for the transformed system
///   du/dt = v + eps*z - delta*u
///   dv/dt = delta*v - (delta^2 + alpha)*u + lap(u) - f(u) + g
///           - beta*(v + eps*z - delta*u) + 2*eps*delta*z
/// advanced by classical RK4.  The driver z is looked up on the trajectory's
/// half-step grid (ou.dt == dt/2), so evolutions over aligned time windows
/// compose exactly: evolve(tau, s) followed by evolve(s, t) takes the same
/// steps as evolve(tau, t).
class Flow {
  public:
    /// dt must satisfy the stability bound dt <= cfl_limit() * h.  When
    /// epsilon > 0 an OU trajectory with spacing dt/2 covering the needed
    /// window is required; pass ou = nullptr only for epsilon == 0.
    Flow(const Model& model, const OuTrajectory* ou, double dt);

    static constexpr double cfl_limit() { return 0.5; }

    double dt() const { return dt_; }
    const Model& model() const { return *model_; }

    State step(const State& s, double t) const;
    /// Integrates from time tau to t >= tau ((t - tau)/dt integral); calls
    /// observer(time, state) at tau, after every step, and at t.
    State evolve(State s, double tau, double t,
                 const std::function<void(double, const State&)>& observer = {}) const;
    /// Pullback map: starts from g0 at time -t_back and integrates to 0.
    State pullback(double t_back, const State& g0,
                   const std::function<void(double, const State&)>& observer = {}) const;

  private:
    const Model* model_;
    const OuTrajectory* ou_;
    double dt_;
};

/// Snapshot record of an evolution, produced by record_trajectory.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
};

/// Evolves from tau to t storing a snapshot every `every` units of time
/// (must be a multiple of dt); includes both endpoints.
Trajectory record_trajectory(const Flow& flow, State s, double tau, double t, double every);

}  // namespace stowave
