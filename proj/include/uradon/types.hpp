#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "uradon/errors.hpp"

namespace uradon {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using Complex = std::complex<double>;

/// Fixed-capacity point/direction; only the first `n` components are used.
using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec3& a, int n) { return std::sqrt(dot(a, a, n)); }

inline Vec3 negate(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

/// i^k for integer k (any sign).
inline Complex unit_imag_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Uniform 2D raster, row-major with x1 fastest (ascending) and x2 ascending
/// by row; values are node samples on a grid that includes the extent
/// endpoints.
struct Raster {
    int nx = 0;
    int ny = 0;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    std::vector<double> values;

    Raster() = default;
    Raster(int nx_, int ny_, double x0, double x1, double y0, double y1)
        : nx(nx_), ny(ny_), x_min(x0), x_max(x1), y_min(y0), y_max(y1),
          values(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), 0.0) {
        if (nx <= 1 || ny <= 1) throw input_error("raster: grid must have at least 2x2 nodes");
        if (!(x_max > x_min) || !(y_max > y_min)) throw input_error("raster: empty extent");
    }

    double step_x() const { return (x_max - x_min) / (nx - 1); }
    double step_y() const { return (y_max - y_min) / (ny - 1); }
    double node_x(int ix) const { return x_min + ix * step_x(); }
    double node_y(int iy) const { return y_min + iy * step_y(); }

    double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }

    /// Bilinear interpolation between cell centers; 0 outside the extent.
    double sample(double x, double y) const;
};

double rel_l2_diff(const std::vector<double>& a, const std::vector<double>& b);

} // namespace uradon
