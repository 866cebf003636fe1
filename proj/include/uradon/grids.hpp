#pragma once

#include <cstddef>
#include <vector>

#include "uradon/types.hpp"

namespace uradon {

/// Uniform grid of radial Radon coordinates tau.
struct RadialGrid {
    double tau_min = -1.0;
    double tau_max = 1.0;
    int count = 3;

    RadialGrid() = default;
    RadialGrid(double lo, double hi, int n);

    /// Symmetric window [-half_width, half_width].
    static RadialGrid symmetric(double half_width, int n) {
        return RadialGrid(-half_width, half_width, n);
    }

    double spacing() const { return (tau_max - tau_min) / (count - 1); }
    double value(int i) const { return tau_min + i * spacing(); }
    bool is_symmetric() const;
};

/// Directions and quadrature weights of the angular integration measure.
/// For n=2 a list of angles phi; for n=3 a (phi, theta) product grid whose
/// weights absorb the sin(theta) measure factor. Full-range grids built by
/// the factories are antipodally closed with directions negated bitwise, so
/// index-level antipodal identities hold to rounding.
struct AngularGrid {
    int dim = 2;
    std::vector<double> phi;           // per flattened entry
    std::vector<double> theta;         // per flattened entry; empty for dim=2
    std::vector<Vec3> directions;      // unit vectors
    std::vector<double> weights;
    bool full_range = false;
    int phi_count = 0;                 // product-grid shape (dim=3), else size()
    int theta_count = 0;

    std::size_t size() const { return directions.size(); }

    /// Uniform full circle [0, 2pi), weights 2pi/count.
    static AngularGrid full_circle(int count);

    /// Product sphere grid: phi uniform on [0, 2pi), theta at midpoints of
    /// [0, pi] cells, weight = dphi * (cos(edge_lo) - cos(edge_hi)). Weights
    /// sum to 4pi exactly up to rounding. theta_count must be even.
    static AngularGrid sphere(int n_phi, int n_theta);

    /// Explicit 2D angles with weights (restricted or custom grids).
    static AngularGrid from_angles_2d(std::vector<double> angles, std::vector<double> w);

    /// Index of the antipodal grid point; requires an antipodally closed full
    /// grid (even counts), else throws input_error.
    std::size_t antipode_index(std::size_t k) const;

    void validate() const;
};

Vec3 direction_2d(double phi_angle);
Vec3 direction_3d(double phi_angle, double theta_angle);

} // namespace uradon
