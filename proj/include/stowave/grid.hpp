#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace stowave {

/// Uniform cell-centered lattice on [-L, L]^n, n = 1 or 2, with N cells per
/// axis and zero Dirichlet ghost cells outside the box.  Cell centers are
/// x_i = -L + (i + 1/2) h with h = 2L/N, so every center lies strictly
/// inside the box.
struct Grid {
    int dim;
    double half_width;
    int cells_per_axis;

    Grid(int n, double L, int N);

    double spacing() const { return 2.0 * half_width / cells_per_axis; }
    std::size_t cell_count() const;
    double cell_volume() const;

    double axis_center(int i) const { return -half_width + (i + 0.5) * spacing(); }
    /// Center of the flat-indexed cell; the second coordinate is 0 in 1D.
    std::array<double, 2> center(std::size_t idx) const;
    double radius_sq(std::size_t idx) const;

    bool operator==(const Grid&) const = default;
};

/// Scalar lattice function: one value per cell, flat row-major storage.
struct Field {
    Grid grid;
    std::vector<double> values;

    explicit Field(const Grid& g) : grid(g), values(g.cell_count(), 0.0) {}
    Field(const Grid& g, std::vector<double> v);

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

/// 3-point (1D) / 5-point (2D) Laplacian with zero Dirichlet ghost cells.
Field laplacian(const Field& f);
void laplacian_into(const Field& f, Field& out);

/// h^n * sum over cells of f*g (midpoint quadrature of the L2 pairing).
double inner(const Field& f, const Field& g);
/// h^n * sum of f (midpoint quadrature of the integral).
double integral(const Field& f);
double norm_l2(const Field& f);
/// (h^n * sum |f|^p)^(1/p), p >= 1.
double norm_lp(const Field& f, double p);

/// Discrete Dirichlet form: h^n * sum over nearest-neighbour links of the
/// squared forward difference, boundary links against the zero ghosts
/// included.  Satisfies grad_sq_norm(f) == -h^n * sum f * laplacian(f)
/// exactly (summation by parts).
double grad_sq_norm(const Field& f);
/// Polarized form of grad_sq_norm: h^n * sum over links of Df * Dg.
double grad_inner(const Field& f, const Field& g);

/// As grad_sq_norm but each link weighted individually; `weights` must come
/// from the same grid's link enumeration.
double grad_sq_weighted(const Field& f, const std::vector<double>& weights);
/// Squared distance of every link midpoint from the origin, in the canonical
/// link enumeration order used by grad_sq_weighted.  Links live on cell
/// faces, boundary faces included.
std::vector<double> link_midpoint_radius_sq(const Grid& g);

/// Smooth ramp: 0 for s <= 1, 1 for s >= 2, cubic smoothstep in between.
/// The derivative is bounded by 3/2.
double cutoff_rho(double s);

/// Per-cell mask rho(|x_i|^2 / r^2); identically zero once r exceeds the
/// largest cell-center radius.
Field tail_mask(const Grid& g, double r);

}  // namespace stowave
