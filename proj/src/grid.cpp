#include "stowave/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace stowave {

Grid::Grid(int n, double L, int N) : dim(n), half_width(L), cells_per_axis(N) {
    if (n != 1 && n != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
    if (!(L > 0.0)) throw std::invalid_argument("Grid: half_width must be positive");
    if (N < 2) throw std::invalid_argument("Grid: need at least 2 cells per axis");
}

std::size_t Grid::cell_count() const {
    const auto n = static_cast<std::size_t>(cells_per_axis);
    return dim == 1 ? n : n * n;
}

double Grid::cell_volume() const {
    const double h = spacing();
    return dim == 1 ? h : h * h;
}

std::array<double, 2> Grid::center(std::size_t idx) const {
    if (dim == 1) return {axis_center(static_cast<int>(idx)), 0.0};
    const int N = cells_per_axis;
    const int ix = static_cast<int>(idx % static_cast<std::size_t>(N));
    const int iy = static_cast<int>(idx / static_cast<std::size_t>(N));
    return {axis_center(ix), axis_center(iy)};
}

double Grid::radius_sq(std::size_t idx) const {
    const auto c = center(idx);
    return dim == 1 ? c[0] * c[0] : c[0] * c[0] + c[1] * c[1];
}

Field::Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != g.cell_count()) throw std::invalid_argument("Field: value count does not match grid");
}

namespace {

void check_same_grid(const Field& f, const Field& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("fields live on different grids");
}

// Visits every nearest-neighbour link once: cb(left_cell, right_cell, mid_r2)
// with SIZE_MAX marking the zero ghost on boundary faces.
template <typename Cb>
void for_each_link(const Grid& g, Cb&& cb) {
    constexpr std::size_t ghost = static_cast<std::size_t>(-1);
    const int N = g.cells_per_axis;
    const double h = g.spacing();
    if (g.dim == 1) {
        for (int j = 0; j <= N; ++j) {
            const double x = -g.half_width + j * h;
            const std::size_t a = (j == 0) ? ghost : static_cast<std::size_t>(j - 1);
            const std::size_t b = (j == N) ? ghost : static_cast<std::size_t>(j);
            cb(a, b, x * x);
        }
        return;
    }
    const auto row = static_cast<std::size_t>(N);
    for (int iy = 0; iy < N; ++iy) {
        const double y = g.axis_center(iy);
        for (int j = 0; j <= N; ++j) {
            const double x = -g.half_width + j * h;
            const std::size_t a = (j == 0) ? ghost : static_cast<std::size_t>(iy) * row + (j - 1);
            const std::size_t b = (j == N) ? ghost : static_cast<std::size_t>(iy) * row + j;
            cb(a, b, x * x + y * y);
        }
    }
    for (int ix = 0; ix < N; ++ix) {
        const double x = g.axis_center(ix);
        for (int j = 0; j <= N; ++j) {
            const double y = -g.half_width + j * h;
            const std::size_t a = (j == 0) ? ghost : static_cast<std::size_t>(j - 1) * row + ix;
            const std::size_t b = (j == N) ? ghost : static_cast<std::size_t>(j) * row + ix;
            cb(a, b, x * x + y * y);
        }
    }
}

}  // namespace

Field laplacian(const Field& f) {
    Field out(f.grid);
    laplacian_into(f, out);
    return out;
}

void laplacian_into(const Field& f, Field& out) {
    check_same_grid(f, out);
    const Grid& g = f.grid;
    const int N = g.cells_per_axis;
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    if (g.dim == 1) {
        for (int i = 0; i < N; ++i) {
            const double left = (i > 0) ? f[i - 1] : 0.0;
            const double right = (i + 1 < N) ? f[i + 1] : 0.0;
            out[i] = (left - 2.0 * f[i] + right) * inv_h2;
        }
        return;
    }
    const auto row = static_cast<std::size_t>(N);
    for (int iy = 0; iy < N; ++iy) {
        for (int ix = 0; ix < N; ++ix) {
            const std::size_t c = static_cast<std::size_t>(iy) * row + ix;
            const double left = (ix > 0) ? f[c - 1] : 0.0;
            const double right = (ix + 1 < N) ? f[c + 1] : 0.0;
            const double down = (iy > 0) ? f[c - row] : 0.0;
            const double up = (iy + 1 < N) ? f[c + row] : 0.0;
            out[c] = (left + right + down + up - 4.0 * f[c]) * inv_h2;
        }
    }
}

double inner(const Field& f, const Field& g) {
    check_same_grid(f, g);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s * f.grid.cell_volume();
}

double integral(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.cell_volume();
}

double norm_l2(const Field& f) { return std::sqrt(inner(f, f)); }

double norm_lp(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be >= 1");
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double grad_sq_norm(const Field& f) {
    const double inv_h = 1.0 / f.grid.spacing();
    double s = 0.0;
    for_each_link(f.grid, [&](std::size_t a, std::size_t b, double) {
        const double fa = (a == static_cast<std::size_t>(-1)) ? 0.0 : f[a];
        const double fb = (b == static_cast<std::size_t>(-1)) ? 0.0 : f[b];
        const double d = (fb - fa) * inv_h;
        s += d * d;
    });
    return s * f.grid.cell_volume();
}

double grad_inner(const Field& f, const Field& g) {
    check_same_grid(f, g);
    const double inv_h = 1.0 / f.grid.spacing();
    double s = 0.0;
    for_each_link(f.grid, [&](std::size_t a, std::size_t b, double) {
        const double fa = (a == static_cast<std::size_t>(-1)) ? 0.0 : f[a];
        const double fb = (b == static_cast<std::size_t>(-1)) ? 0.0 : f[b];
        const double ga = (a == static_cast<std::size_t>(-1)) ? 0.0 : g[a];
        const double gb = (b == static_cast<std::size_t>(-1)) ? 0.0 : g[b];
        s += (fb - fa) * (gb - ga) * inv_h * inv_h;
    });
    return s * f.grid.cell_volume();
}

double grad_sq_weighted(const Field& f, const std::vector<double>& weights) {
    const double inv_h = 1.0 / f.grid.spacing();
    double s = 0.0;
    std::size_t k = 0;
    for_each_link(f.grid, [&](std::size_t a, std::size_t b, double) {
        const double fa = (a == static_cast<std::size_t>(-1)) ? 0.0 : f[a];
        const double fb = (b == static_cast<std::size_t>(-1)) ? 0.0 : f[b];
        const double d = (fb - fa) * inv_h;
        s += weights[k++] * d * d;
    });
    if (k != weights.size()) throw std::invalid_argument("grad_sq_weighted: weight count does not match link count");
    return s * f.grid.cell_volume();
}

std::vector<double> link_midpoint_radius_sq(const Grid& g) {
    std::vector<double> out;
    for_each_link(g, [&](std::size_t, std::size_t, double r2) { out.push_back(r2); });
    return out;
}

double cutoff_rho(double s) {
    if (s < 0.0) throw std::invalid_argument("cutoff_rho: argument must be nonnegative");
    if (s <= 1.0) return 0.0;
    if (s >= 2.0) return 1.0;
    const double t = s - 1.0;
    return t * t * (3.0 - 2.0 * t);
}

Field tail_mask(const Grid& g, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("tail_mask: radius must be positive");
    Field out(g);
    const double inv_r2 = 1.0 / (r * r);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = cutoff_rho(g.radius_sq(i) * inv_r2);
    return out;
}

}  // namespace stowave
