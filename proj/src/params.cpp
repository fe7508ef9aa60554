#include "stowave/params.hpp"

#include <cmath>
#include <stdexcept>

namespace stowave {

namespace {

bool all_finite(const Params& pr) {
    return std::isfinite(pr.alpha) && std::isfinite(pr.beta) && std::isfinite(pr.delta) &&
           std::isfinite(pr.epsilon) && std::isfinite(pr.p) && std::isfinite(pr.c1) &&
           std::isfinite(pr.c2) && std::isfinite(pr.c3);
}

}  // namespace

ValidationReport validate(const Params& pr) {
    ValidationReport report;
    if (!all_finite(pr)) {
        report.push_back({"all fields finite", std::nan("")});
        return report;
    }
    auto require = [&report](bool ok, const char* text, double margin) {
        if (!ok) report.push_back({text, margin});
    };
    require(pr.alpha > 0.0, "alpha > 0", pr.alpha);
    require(pr.beta > 0.0, "beta > 0", pr.beta);
    require(pr.delta > 0.0, "delta > 0", pr.delta);
    require(pr.epsilon >= 0.0, "epsilon >= 0", pr.epsilon);
    require(pr.c1 > 0.0, "c1 > 0", pr.c1);
    require(pr.c2 > 0.0, "c2 > 0", pr.c2);
    require(pr.c3 > 0.0, "c3 > 0", pr.c3);
    require(pr.m >= 1, "m >= 1", static_cast<double>(pr.m));
    require(pr.p > 2.0, "p > 2", pr.p - 2.0);
    require(pr.u_norm_weight() > 0.0, "alpha + delta^2 - beta*delta > 0", pr.u_norm_weight());
    require(pr.beta - 3.0 * pr.delta > 0.0, "beta - 3*delta > 0", pr.beta - 3.0 * pr.delta);
    if (pr.delta > 0.0 && pr.c1 > 0.0 && pr.c2 > 0.0 && pr.c3 > 0.0 && pr.p > 2.0) {
        const double eps_max = max_noise_intensity(pr);
        require(pr.epsilon < eps_max, "epsilon < delta*c2*c3*p/(c1*(p-1))", eps_max - pr.epsilon);
    }
    return report;
}

bool is_valid(const Params& pr) { return validate(pr).empty(); }

double max_noise_intensity(const Params& pr) {
    return pr.delta * pr.c2 * pr.c3 * pr.p / (pr.c1 * (pr.p - 1.0));
}

double decay_rate_sigma(const Params& pr) {
    if (!is_valid(pr)) {
        throw std::invalid_argument("decay_rate_sigma: parameters rejected by validate()");
    }
    const double candidate = pr.delta * pr.c2 - pr.epsilon * pr.c1 * (pr.p - 1.0) / (pr.c3 * pr.p);
    return std::min(pr.delta, candidate);
}

Params canonical_params() {
    Params pr;
    pr.alpha = 1.0;
    pr.beta = 1.0;
    pr.delta = 0.25;
    pr.epsilon = 0.1;
    pr.p = 4.0;
    pr.c1 = 1.0;
    pr.c2 = 4.0;
    pr.c3 = 0.25;
    pr.m = 1;
    return pr;
}

}  // namespace stowave
