#include "stowave/nonlin.hpp"

#include <cmath>

namespace stowave {

double Nonlinearity::f_value(double u) const {
    if (zeroed) return 0.0;
    if (p == 4.0) return u * u * u;
    return u * std::pow(std::abs(u), p - 2.0);
}

double Nonlinearity::potential(double u) const {
    if (zeroed) return 0.0;
    if (p == 4.0) {
        const double u2 = u * u;
        return 0.25 * u2 * u2;
    }
    return std::pow(std::abs(u), p) / p;
}

Field Nonlinearity::f_field(const Field& u) const {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = f_value(u[i]);
    return out;
}

Field Nonlinearity::potential_field(const Field& u) const {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = potential(u[i]);
    return out;
}

Params with_canonical_constants(Params params, double p) {
    params.p = p;
    params.c1 = 1.0;
    params.c2 = p;
    params.c3 = 1.0 / p;
    return params;
}

}  // namespace stowave
