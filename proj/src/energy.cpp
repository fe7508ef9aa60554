#include "stowave/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stowave {

double e_norm(const State& s, const Params& params, const Nonlinearity& nl) {
    const double quad = inner(s.v, s.v) + params.u_norm_weight() * inner(s.u, s.u) + grad_sq_norm(s.u);
    return std::sqrt(quad) + norm_lp(s.u, nl.p);
}

double e_norm_diff(const State& a, const State& b, const Params& params, const Nonlinearity& nl) {
    return e_norm(state_sub(a, b), params, nl);
}

double energy_q(const State& s, const Params& params, const Nonlinearity& nl) {
    const double quad = inner(s.v, s.v) + params.u_norm_weight() * inner(s.u, s.u) + grad_sq_norm(s.u);
    return quad + 2.0 * integral(nl.potential_field(s.u));
}

double drift_g(const State& s, const Field* z, const Params& params, const Field& forcing,
               const Nonlinearity& nl) {
    const double sigma = decay_rate_sigma(params);
    const double w = params.u_norm_weight();
    const Field f_u = nl.f_field(s.u);

    double g = -2.0 * (params.beta - params.delta - sigma) * inner(s.v, s.v);
    g += -2.0 * (params.delta - sigma) * w * inner(s.u, s.u);
    g += -2.0 * (params.delta - sigma) * grad_sq_norm(s.u);
    g += 4.0 * sigma * integral(nl.potential_field(s.u));
    g += -2.0 * params.delta * inner(f_u, s.u);
    g += 2.0 * inner(forcing, s.v);
    if (z != nullptr && params.epsilon != 0.0) {
        g += 2.0 * params.epsilon * w * inner(*z, s.u);
        g += 2.0 * params.epsilon * grad_inner(*z, s.u);
        g += 2.0 * params.epsilon * inner(*z, f_u);
        g += (4.0 * params.delta - 2.0 * params.beta) * params.epsilon * inner(*z, s.v);
    }
    return g;
}

double c0_constant(const Params& params) {
    const double eps = params.epsilon;
    const double two_delta = 2.0 * params.delta;
    const double shifted = 2.0 * params.delta + params.beta;
    const double first = eps * eps * params.u_norm_weight() / two_delta +
                         eps * eps * shifted * shifted / two_delta + 0.5 * eps;
    const double second = eps * eps / two_delta;
    const double third = eps * params.c1 / params.p;
    return std::max({first, second, third});
}

double gamma1(const Field& z, const Params& params) {
    double lp_pow = 0.0;
    for (double v : z.values) lp_pow += std::pow(std::abs(v), params.p);
    lp_pow *= z.grid.cell_volume();
    return c0_constant(params) * (inner(z, z) + grad_sq_norm(z) + lp_pow);
}

double c4_constant(const Params& params, const Nonlinearity& nl) {
    const double l2 = nl.phi1_norm_l2();
    return 0.5 * params.epsilon * l2 * l2 - params.delta * nl.phi2_norm_l1() +
           params.epsilon * params.c1 * (params.p - 1.0) / (params.c3 * params.p) * nl.phi3_norm_l1();
}

double c6_constant(const Params& params, const Nonlinearity& nl) {
    const double shrink = params.delta * params.c2 -
                          params.epsilon * params.c1 * (params.p - 1.0) / (params.c3 * params.p);
    return 2.0 * shrink * nl.phi3_norm_l1() + 2.0 * c4_constant(params, nl);
}

double c5_constant(const Params& params, const NoiseProfile& profile) {
    const double c0 = c0_constant(params);
    const auto m = static_cast<double>(profile.modes.size());
    double worst = 0.0;
    for (const auto& n : profile.norms) {
        const double quad = m * (n.l2_sq + n.grad_sq);
        const double pot = std::pow(m, params.p - 1.0) * n.lp_pow;
        worst = std::max(worst, std::max(quad, pot));
    }
    return c0 * worst;
}

double gronwall_bound(double q_tau, double tau, double t, std::span<const double> gamma_times,
                      std::span<const double> gamma_values, const Params& params,
                      const Nonlinearity& nl, double forcing_l2_sq) {
    if (gamma_times.size() != gamma_values.size()) {
        throw std::invalid_argument("gronwall_bound: mismatched gamma sample arrays");
    }
    const double sigma = decay_rate_sigma(params);
    double integral_term = 0.0;
    for (std::size_t k = 0; k + 1 < gamma_times.size(); ++k) {
        const double s0 = gamma_times[k];
        const double s1 = gamma_times[k + 1];
        const double f0 = std::exp(sigma * (s0 - t)) * gamma_values[k];
        const double f1 = std::exp(sigma * (s1 - t)) * gamma_values[k + 1];
        integral_term += 0.5 * (f0 + f1) * (s1 - s0);
    }
    const double head = std::exp(-sigma * (t - tau)) * (q_tau + 2.0 * nl.phi3_norm_l1());
    const double tail = (c6_constant(params, nl) + forcing_l2_sq / (params.beta - params.delta)) / sigma;
    return head + 2.0 * integral_term + tail;
}

double absorbing_radius(const Params& params, const Nonlinearity& nl, double r0, double c5,
                        double forcing_l2_sq) {
    const double sigma = decay_rate_sigma(params);
    const double bracket =
        1.0 + (4.0 * c5 * r0 + c6_constant(params, nl) + forcing_l2_sq / (params.beta - params.delta)) / sigma;
    const double w = std::min(1.0, params.u_norm_weight());
    return std::sqrt(bracket / w) + std::pow(bracket / (2.0 * params.c3), 1.0 / params.p);
}

EnergyReport check_energy_inequality(const Trajectory& traj, const Model& model,
                                     const OuTrajectory* ou, double tolerance) {
    if (traj.times.empty()) throw std::invalid_argument("check_energy_inequality: empty trajectory");
    const Params& pr = model.params;
    const double tau = traj.times.front();
    const double t_end = traj.times.back();
    const double g_l2_sq = inner(model.forcing, model.forcing);

    // Gamma1 on the OU grid spanning [tau, t_end]; empty when noise-free.
    std::vector<double> gamma_times;
    std::vector<double> gamma_values;
    if (pr.epsilon > 0.0) {
        if (ou == nullptr) throw std::invalid_argument("check_energy_inequality: epsilon > 0 needs the OU trajectory");
        const std::size_t k0 = ou->index_at(tau);
        const std::size_t k1 = ou->index_at(t_end);
        Field z(model.grid());
        gamma_times.reserve(k1 - k0 + 1);
        gamma_values.reserve(k1 - k0 + 1);
        for (std::size_t k = k0; k <= k1; ++k) {
            z_field_into(model.profile, ou->at_index(k), z);
            gamma_times.push_back(ou->time_at(k));
            gamma_values.push_back(gamma1(z, pr));
        }
    }

    EnergyReport report;
    report.tolerance = tolerance;
    const double q_tau = energy_q(traj.states.front(), pr, model.nl);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        // Restrict the Gamma1 samples to [tau, t].
        std::size_t count = 0;
        while (count < gamma_times.size() && gamma_times[count] <= t + 1e-12) ++count;
        const double bound =
            gronwall_bound(q_tau, tau, t, std::span(gamma_times.data(), count),
                           std::span(gamma_values.data(), count), pr, model.nl, g_l2_sq);
        const double q = energy_q(traj.states[i], pr, model.nl);
        const double margin = bound - q;
        const double ratio = bound > 0.0 ? margin / bound : 0.0;
        min_ratio = std::min(min_ratio, ratio);
        if (margin < -tolerance * bound) ++report.violations;
        report.samples.push_back({t, q, bound, margin});
    }
    report.min_margin_ratio = min_ratio;
    report.pass = report.violations == 0;
    return report;
}

}  // namespace stowave
