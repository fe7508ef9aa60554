#pragma once

#include "stowave/grid.hpp"
#include "stowave/params.hpp"

namespace stowave {

/// Odd polynomial drift f(u) = |u|^{p-2} u with potential F(u) = |u|^p / p,
/// so f = F' and the growth/coercivity constants are (c1, c2, c3) =
/// (1, p, 1/p) with vanishing comparison offsets:
///   |f(u)| <= c1 |u|^{p-1},   f(u) u - c2 F(u) = 0,   F(u) - c3 |u|^p = 0.
struct Nonlinearity {
    double p = 4.0;
    bool zeroed = false;  ///< test-only switch: f and F identically 0

    /// Test-only instance with the drift switched off, used by the
    /// manufactured-solution convergence studies of the integrator.
    static Nonlinearity disabled(double p = 4.0) { return {p, true}; }

    double f_value(double u) const;
    double potential(double u) const;

    Field f_field(const Field& u) const;
    Field potential_field(const Field& u) const;

    double c1() const { return 1.0; }
    double c2() const { return p; }
    double c3() const { return 1.0 / p; }

    /// Comparison functions are identically zero, so their norms vanish;
    /// kept as named accessors because the energy constants are written in
    /// terms of them.
    double phi1_norm_l2() const { return 0.0; }
    double phi2_norm_l1() const { return 0.0; }
    double phi3_norm_l1() const { return 0.0; }
};

/// Copies p and the matching (c1, c2, c3) into a parameter set.
Params with_canonical_constants(Params params, double p);

}  // namespace stowave
