#include "stowave/sampling.hpp"

#include <cmath>
#include <random>

#include "stowave/energy.hpp"

namespace stowave {

Field sample_smooth_field(const Grid& g, std::uint64_t seed, int modes) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Field out(g);
    const double L = g.half_width;
    const double scale = M_PI / (2.0 * L);
    if (g.dim == 1) {
        for (int k = 1; k <= modes; ++k) {
            const double a = gauss(rng) / static_cast<double>(k);
            for (int i = 0; i < g.cells_per_axis; ++i) {
                out[static_cast<std::size_t>(i)] += a * std::sin(k * scale * (g.axis_center(i) + L));
            }
        }
        return out;
    }
    const auto row = static_cast<std::size_t>(g.cells_per_axis);
    for (int k = 1; k <= modes; ++k) {
        for (int l = 1; l <= modes; ++l) {
            const double a = gauss(rng) / std::sqrt(static_cast<double>(k * k + l * l));
            for (int iy = 0; iy < g.cells_per_axis; ++iy) {
                const double sy = std::sin(l * scale * (g.axis_center(iy) + L));
                for (int ix = 0; ix < g.cells_per_axis; ++ix) {
                    out[static_cast<std::size_t>(iy) * row + ix] +=
                        a * std::sin(k * scale * (g.axis_center(ix) + L)) * sy;
                }
            }
        }
    }
    return out;
}

State sample_state(const Grid& g, const Params& params, const Nonlinearity& nl, double target_enorm,
                   std::uint64_t seed) {
    const int modes = g.dim == 1 ? 8 : 4;
    State s(sample_smooth_field(g, derive_seed(seed, 0), modes),
            sample_smooth_field(g, derive_seed(seed, 1), modes));
    if (target_enorm == 0.0) {
        std::fill(s.u.values.begin(), s.u.values.end(), 0.0);
        std::fill(s.v.values.begin(), s.v.values.end(), 0.0);
        return s;
    }
    const double norm = e_norm(s, params, nl);
    const double scale = target_enorm / norm;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        s.u[i] *= scale;
        s.v[i] *= scale;
    }
    return s;
}

}  // namespace stowave
