#include "stowave/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace stowave {

State::State(Field u_, Field v_) : u(std::move(u_)), v(std::move(v_)) {
    if (!(u.grid == v.grid)) throw std::invalid_argument("State: u and v on different grids");
}

State state_sub(const State& a, const State& b) {
    State out = a;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
        out.u[i] -= b.u[i];
        out.v[i] -= b.v[i];
    }
    return out;
}

State transform_initial(const Field& u0, const Field& u1, const Params& params, const Field* z_tau) {
    State s(u0.grid);
    if (params.epsilon != 0.0 && z_tau == nullptr) {
        throw std::invalid_argument("transform_initial: epsilon > 0 needs the driver value at tau");
    }
    for (std::size_t i = 0; i < u0.size(); ++i) {
        s.u[i] = u0[i];
        s.v[i] = u1[i] + params.delta * u0[i] - (z_tau ? params.epsilon * (*z_tau)[i] : 0.0);
    }
    return s;
}

Model::Model(Params pr, Nonlinearity n, Field g, NoiseProfile prof)
    : params(pr), nl(std::move(n)), forcing(std::move(g)), profile(std::move(prof)) {
    if (!is_valid(params)) throw std::invalid_argument("Model: parameters rejected by validate()");
    if (params.epsilon > 0.0) {
        if (profile.modes.size() != static_cast<std::size_t>(params.m)) {
            throw std::invalid_argument("Model: profile mode count != params.m");
        }
        for (const Field& h : profile.modes) {
            if (!(h.grid == forcing.grid)) throw std::invalid_argument("Model: profile grid != forcing grid");
        }
    }
}

Model::Model(Params pr, Nonlinearity n, Field g) : params(pr), nl(std::move(n)), forcing(std::move(g)) {
    params.epsilon = 0.0;
    if (!is_valid(params)) throw std::invalid_argument("Model: parameters rejected by validate()");
}

namespace {

struct RkScratch {
    Field z0, zh, z1;
    Field lap;
    Field k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    Field su, sv;

    explicit RkScratch(const Grid& g)
        : z0(g), zh(g), z1(g), lap(g), k1u(g), k1v(g), k2u(g), k2v(g), k3u(g), k3v(g), k4u(g), k4v(g), su(g), sv(g) {}
};

// du = v + eps*z - delta*u
// dv = delta*v - (delta^2 + alpha)*u + lap(u) - f(u) + g - beta*du + 2*eps*delta*z
void rhs(const Model& mdl, const Field& u, const Field& v, const Field* z, Field& du, Field& dv, Field& lap) {
    const Params& pr = mdl.params;
    laplacian_into(u, lap);
    const double dd_alpha = pr.delta * pr.delta + pr.alpha;
    const double two_eps_delta = 2.0 * pr.epsilon * pr.delta;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double zi = z ? (*z)[i] : 0.0;
        const double dui = v[i] + pr.epsilon * zi - pr.delta * u[i];
        du[i] = dui;
        dv[i] = pr.delta * v[i] - dd_alpha * u[i] + lap[i] - mdl.nl.f_value(u[i]) + mdl.forcing[i] -
                pr.beta * dui + two_eps_delta * zi;
    }
}

State rk4_step(const Model& mdl, const OuTrajectory* ou, double dt, const State& s, double t, RkScratch& scratch) {
    const bool noisy = mdl.params.epsilon > 0.0;
    const Field* z0 = nullptr;
    const Field* zh = nullptr;
    const Field* z1 = nullptr;
    if (noisy) {
        z_field_into(mdl.profile, ou->at_time(t), scratch.z0);
        z_field_into(mdl.profile, ou->at_time(t + 0.5 * dt), scratch.zh);
        z_field_into(mdl.profile, ou->at_time(t + dt), scratch.z1);
        z0 = &scratch.z0;
        zh = &scratch.zh;
        z1 = &scratch.z1;
    }

    const std::size_t n = s.u.size();
    rhs(mdl, s.u, s.v, z0, scratch.k1u, scratch.k1v, scratch.lap);
    for (std::size_t i = 0; i < n; ++i) {
        scratch.su[i] = s.u[i] + 0.5 * dt * scratch.k1u[i];
        scratch.sv[i] = s.v[i] + 0.5 * dt * scratch.k1v[i];
    }
    rhs(mdl, scratch.su, scratch.sv, zh, scratch.k2u, scratch.k2v, scratch.lap);
    for (std::size_t i = 0; i < n; ++i) {
        scratch.su[i] = s.u[i] + 0.5 * dt * scratch.k2u[i];
        scratch.sv[i] = s.v[i] + 0.5 * dt * scratch.k2v[i];
    }
    rhs(mdl, scratch.su, scratch.sv, zh, scratch.k3u, scratch.k3v, scratch.lap);
    for (std::size_t i = 0; i < n; ++i) {
        scratch.su[i] = s.u[i] + dt * scratch.k3u[i];
        scratch.sv[i] = s.v[i] + dt * scratch.k3v[i];
    }
    rhs(mdl, scratch.su, scratch.sv, z1, scratch.k4u, scratch.k4v, scratch.lap);

    State out = s;
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.u[i] += w * (scratch.k1u[i] + 2.0 * scratch.k2u[i] + 2.0 * scratch.k3u[i] + scratch.k4u[i]);
        out.v[i] += w * (scratch.k1v[i] + 2.0 * scratch.k2v[i] + 2.0 * scratch.k3v[i] + scratch.k4v[i]);
    }
    return out;
}

}  // namespace

Flow::Flow(const Model& model, const OuTrajectory* ou, double dt) : model_(&model), ou_(ou), dt_(dt) {
    const double h = model.grid().spacing();
    if (!(dt > 0.0)) throw std::invalid_argument("Flow: dt must be positive");
    if (dt > cfl_limit() * h * (1.0 + 1e-12)) {
        throw std::invalid_argument("Flow: dt violates the stability bound dt <= 0.5*h");
    }
    if (model.params.epsilon > 0.0) {
        if (ou == nullptr) throw std::invalid_argument("Flow: epsilon > 0 needs an OU trajectory");
        if (ou->m != model.params.m) throw std::invalid_argument("Flow: OU mode count != params.m");
        if (std::abs(ou->dt - 0.5 * dt) > 1e-12 * dt) {
            throw std::invalid_argument("Flow: OU sample spacing must be dt/2");
        }
    }
}

State Flow::step(const State& s, double t) const {
    RkScratch scratch(s.u.grid);
    return rk4_step(*model_, ou_, dt_, s, t, scratch);
}

State Flow::evolve(State s, double tau, double t, const std::function<void(double, const State&)>& observer) const {
    if (!(t >= tau)) throw std::invalid_argument("Flow::evolve: need t >= tau");
    const double raw = (t - tau) / dt_;
    const auto steps = static_cast<long long>(std::llround(raw));
    if (std::abs(raw - static_cast<double>(steps)) > 1e-9 * std::max(1.0, raw)) {
        throw std::invalid_argument("Flow::evolve: (t - tau) must be a multiple of dt");
    }
    if (observer) observer(tau, s);
    RkScratch scratch(s.u.grid);
    for (long long k = 0; k < steps; ++k) {
        const double tk = tau + static_cast<double>(k) * dt_;
        s = rk4_step(*model_, ou_, dt_, s, tk, scratch);
        if (observer) observer(tau + static_cast<double>(k + 1) * dt_, s);
    }
    return s;
}

State Flow::pullback(double t_back, const State& g0,
                     const std::function<void(double, const State&)>& observer) const {
    if (!(t_back >= 0.0)) throw std::invalid_argument("Flow::pullback: t_back must be >= 0");
    return evolve(g0, -t_back, 0.0, observer);
}

Trajectory record_trajectory(const Flow& flow, State s, double tau, double t, double every) {
    const double raw = every / flow.dt();
    const auto stride = static_cast<long long>(std::llround(raw));
    if (stride < 1 || std::abs(raw - static_cast<double>(stride)) > 1e-9 * std::max(1.0, raw)) {
        throw std::invalid_argument("record_trajectory: snapshot interval must be a positive multiple of dt");
    }
    const auto total = static_cast<long long>(std::llround((t - tau) / flow.dt()));
    Trajectory traj;
    long long step_index = 0;
    flow.evolve(std::move(s), tau, t, [&](double time, const State& state) {
        if (step_index % stride == 0 || step_index == total) {
            traj.times.push_back(time);
            traj.states.push_back(state);
        }
        ++step_index;
    });
    return traj;
}

}  // namespace stowave
