#pragma once

#include <string>
#include <vector>

namespace stowave {

/// Scalar coefficients of the damped wave model together with the transform
/// shift and the growth/coercivity constants of the nonlinearity.  Every
/// simulation and estimate in this library is gated on validate() below.
struct Params {
    double alpha = 1.0;    ///< zeroth-order restoring coefficient, > 0
    double beta = 1.0;     ///< damping coefficient, > 0
    double delta = 0.25;   ///< shift of the first-order transform, > 0
    double epsilon = 0.1;  ///< noise intensity, >= 0
    double p = 4.0;        ///< nonlinearity growth exponent, > 2
    double c1 = 1.0;       ///< growth constant of f
    double c2 = 4.0;       ///< coercivity constant in f(u)u >= c2*F(u) - phi2
    double c3 = 0.25;      ///< lower potential constant in F(u) >= c3*|u|^p - phi3
    int m = 1;             ///< number of noise modes, >= 1

    /// Coefficient alpha + delta^2 - beta*delta weighting |u|_{L2}^2 in the
    /// state norm; positive on valid parameters.
    double u_norm_weight() const { return alpha + delta * delta - beta * delta; }
};

struct ParamViolation {
    std::string constraint;  ///< the inequality that failed, as text
    double margin;           ///< quantity that had to be strictly positive
};

using ValidationReport = std::vector<ParamViolation>;

/// Empty report iff all admissibility inequalities hold strictly:
/// positivity of the fields, p > 2, alpha + delta^2 - beta*delta > 0,
/// beta - 3*delta > 0 and epsilon < max_noise_intensity().  Non-finite
/// fields are reported as their own violation.
ValidationReport validate(const Params& params);

bool is_valid(const Params& params);

/// Largest admissible noise intensity delta*c2*c3*p / (c1*(p-1)).
double max_noise_intensity(const Params& params);

/// Uniform decay rate min{delta, delta*c2 - epsilon*c1*(p-1)/(c3*p)} of the
/// energy functional.  Throws std::invalid_argument on invalid params.
double decay_rate_sigma(const Params& params);

/// Desk-scale reference parameter set used throughout the tests and docs.
Params canonical_params();

}  // namespace stowave
