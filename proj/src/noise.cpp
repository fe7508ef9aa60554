#include "stowave/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stowave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::size_t aligned_index(double t, double t_min, double dt, std::size_t count, const char* who) {
    const double raw = (t - t_min) / dt;
    const double rounded = std::nearbyint(raw);
    if (std::abs(raw - rounded) > 0.25 || rounded < 0.0 || rounded >= static_cast<double>(count)) {
        throw std::invalid_argument(std::string(who) + ": time is not on the sample grid");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + stream * 0x9E3779B97F4A7C15ull);
}

std::size_t NoisePath::steps() const {
    return m == 0 ? 0 : increments.size() / static_cast<std::size_t>(m);
}

double NoisePath::increment(int mode, std::size_t k) const {
    return increments[static_cast<std::size_t>(mode) * steps() + k];
}

std::vector<double> NoisePath::node_values(int mode) const {
    const std::size_t n = steps();
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) w[k + 1] = w[k] + increment(mode, k);
    const std::size_t k0 = aligned_index(0.0, t_min, dt, n + 1, "NoisePath::node_values");
    const double anchor = w[k0];
    for (double& v : w) v -= anchor;
    return w;
}

NoisePath sample_path(std::int64_t seed, double t_min, double t_max, double dt, int m) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_path: dt must be positive");
    if (!(t_min <= 0.0 && 0.0 <= t_max) || !(t_min < t_max)) {
        throw std::invalid_argument("sample_path: need t_min <= 0 <= t_max, t_min < t_max");
    }
    if (m < 1) throw std::invalid_argument("sample_path: need at least one mode");
    const double raw_steps = (t_max - t_min) / dt;
    const auto steps = static_cast<std::size_t>(std::llround(raw_steps));
    if (std::abs(raw_steps - static_cast<double>(steps)) > 1e-9 * std::max(1.0, raw_steps)) {
        throw std::invalid_argument("sample_path: (t_max - t_min) must be a multiple of dt");
    }
    const double zero_offset = -t_min / dt;
    if (std::abs(zero_offset - std::nearbyint(zero_offset)) > 1e-9 * std::max(1.0, zero_offset)) {
        throw std::invalid_argument("sample_path: 0 must be a grid node");
    }

    NoisePath path;
    path.seed = seed;
    path.t_min = t_min;
    path.t_max = t_max;
    path.dt = dt;
    path.m = m;
    path.increments.resize(static_cast<std::size_t>(m) * steps);
    const double sd = std::sqrt(dt);
    for (int j = 0; j < m; ++j) {
        std::mt19937_64 rng(derive_seed(static_cast<std::uint64_t>(seed), 2ull * static_cast<std::uint64_t>(j)));
        std::normal_distribution<double> gauss(0.0, sd);
        for (std::size_t k = 0; k < steps; ++k) {
            path.increments[static_cast<std::size_t>(j) * steps + k] = gauss(rng);
        }
    }
    return path;
}

double ou_step(double z, double delta, double dt, double xi) {
    const double decay = std::exp(-delta * dt);
    const double sd = std::sqrt((1.0 - decay * decay) / (2.0 * delta));
    return decay * z + sd * xi;
}

std::size_t OuTrajectory::index_at(double t) const {
    return aligned_index(t, t_min, dt, samples(), "OuTrajectory::index_at");
}

std::span<const double> OuTrajectory::at_index(std::size_t k) const {
    return {z.data() + k * static_cast<std::size_t>(m), static_cast<std::size_t>(m)};
}

OuTrajectory ou_trajectory(const NoisePath& path, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("ou_trajectory: delta must be positive");
    const std::size_t steps = path.steps();
    OuTrajectory ou;
    ou.seed = path.seed;
    ou.t_min = path.t_min;
    ou.dt = path.dt;
    ou.delta = delta;
    ou.m = path.m;
    ou.z.resize((steps + 1) * static_cast<std::size_t>(path.m));
    const double stationary_sd = std::sqrt(1.0 / (2.0 * delta));
    const double inv_sqrt_dt = 1.0 / std::sqrt(path.dt);
    for (int j = 0; j < path.m; ++j) {
        std::mt19937_64 rng(
            derive_seed(static_cast<std::uint64_t>(path.seed), 2ull * static_cast<std::uint64_t>(j) + 1ull));
        std::normal_distribution<double> gauss(0.0, stationary_sd);
        double z = gauss(rng);
        ou.z[static_cast<std::size_t>(j)] = z;
        for (std::size_t k = 0; k < steps; ++k) {
            z = ou_step(z, delta, path.dt, path.increment(j, k) * inv_sqrt_dt);
            ou.z[(k + 1) * static_cast<std::size_t>(path.m) + static_cast<std::size_t>(j)] = z;
        }
    }
    return ou;
}

NoiseProfile make_profile(std::vector<Field> modes, double p) {
    if (modes.empty()) throw std::invalid_argument("make_profile: need at least one mode");
    NoiseProfile prof;
    prof.p = p;
    prof.norms.reserve(modes.size());
    for (const Field& h : modes) {
        if (!(h.grid == modes.front().grid)) throw std::invalid_argument("make_profile: modes on different grids");
        NoiseProfile::ModeNorms n{};
        n.l2_sq = inner(h, h);
        n.grad_sq = grad_sq_norm(h);
        n.lp_pow = std::pow(norm_lp(h, p), p);
        prof.norms.push_back(n);
    }
    prof.modes = std::move(modes);
    return prof;
}

Field gaussian_mode(const Grid& g, double amplitude, double width) {
    Field h(g);
    const double inv_w2 = 1.0 / (width * width);
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = amplitude * std::exp(-g.radius_sq(i) * inv_w2);
    return h;
}

Field bump_mode(const Grid& g, double amplitude, double radius) {
    Field h(g);
    const double inv_r2 = 1.0 / (radius * radius);
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double s = g.radius_sq(i) * inv_r2;
        h[i] = (s < 1.0) ? amplitude * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    }
    return h;
}

Field z_field(const NoiseProfile& profile, std::span<const double> z) {
    Field out(profile.modes.front().grid);
    z_field_into(profile, z, out);
    return out;
}

void z_field_into(const NoiseProfile& profile, std::span<const double> z, Field& out) {
    if (z.size() != profile.modes.size()) throw std::invalid_argument("z_field: coefficient count != mode count");
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (std::size_t j = 0; j < profile.modes.size(); ++j) {
        const Field& h = profile.modes[j];
        const double c = z[j];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * h[i];
    }
}

double estimate_r0(const OuTrajectory& ou, double sigma, double p) {
    if (!(sigma > 0.0)) throw std::invalid_argument("estimate_r0: sigma must be positive");
    double best = 0.0;
    const std::size_t n = ou.samples();
    for (std::size_t k = 0; k < n; ++k) {
        const double t = ou.time_at(k);
        double s = 0.0;
        for (double zj : ou.at_index(k)) s += zj * zj + std::pow(std::abs(zj), p);
        best = std::max(best, std::exp(-0.5 * sigma * std::abs(t)) * s);
    }
    return best;
}

}  // namespace stowave
