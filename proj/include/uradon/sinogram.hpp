#pragma once

#include <span>
#include <vector>

#include "uradon/grids.hpp"
#include "uradon/phantom.hpp"
#include "uradon/types.hpp"

namespace uradon {

enum class Provenance { analytic, numeric };

/// Sampled Radon image R[f](tau, angles) on a radial x angular grid.
/// Immutable after synthesis; tau reads outside the window return 0
/// (localized sources guarantee a true zero there).
struct Sinogram {
    int n = 2;
    RadialGrid radial;
    AngularGrid angular;
    std::vector<double> values;   // [angle][radial]
    Provenance provenance = Provenance::analytic;
    double support_radius = 0.0;       // source bounding radius (incl. soft tails)
    double hard_support_radius = 0.0;  // sharp primitives only; gates tau reads

    std::size_t angle_count() const { return angular.size(); }

    std::span<const double> row(std::size_t k) const {
        return {values.data() + k * static_cast<std::size_t>(radial.count),
                static_cast<std::size_t>(radial.count)};
    }
    std::span<double> row(std::size_t k) {
        return {values.data() + k * static_cast<std::size_t>(radial.count),
                static_cast<std::size_t>(radial.count)};
    }
    double at(std::size_t k, int i) const {
        return values[k * static_cast<std::size_t>(radial.count) + static_cast<std::size_t>(i)];
    }

    /// Linear interpolation in tau within one angle row; 0 outside the window.
    double read(std::size_t k, double tau) const {
        return interp_row(row(k), tau);
    }
    double interp_row(std::span<const double> r, double tau) const {
        if (tau < radial.tau_min || tau > radial.tau_max) return 0.0;
        const double dt = radial.spacing();
        double u = (tau - radial.tau_min) / dt;
        int i = static_cast<int>(u);
        if (i >= radial.count - 1) i = radial.count - 2;
        const double t = (tau - radial.value(i)) / dt;
        return r[static_cast<std::size_t>(i)] * (1.0 - t) + r[static_cast<std::size_t>(i) + 1] * t;
    }

    void validate() const;
};

/// Exact sinogram from closed-form primitive transforms.
Sinogram direct_radon_analytic(const PhantomSpec& spec, const RadialGrid& radial,
                               const AngularGrid& angular);

/// Composite-midpoint line-integral quadrature with a fixed step (n=2 only).
Sinogram direct_radon_numeric(const PhantomSpec& spec, const RadialGrid& radial,
                              const AngularGrid& angular, double step);
Sinogram direct_radon_numeric(const Raster& raster, const RadialGrid& radial,
                              const AngularGrid& angular, double step);

/// Max |R(tau, phi) - R(-tau, phi+pi)| over the grid, by exact index lookups.
double antipodal_check(const Sinogram& s);

/// Central finite differences along tau (order 1 or 2), second-order
/// one-sided stencils at the window edges.
Sinogram radial_derivative(const Sinogram& s, int order);

/// Weighted angular sum of R(eta + <n_phi, x>, phi) (n=2).
double angular_average(const Sinogram& s, const Vec3& x, double eta);

struct SurfaceTermReport {
    double residual = 0.0;            // max over angles of the IBP defect
    double boundary_magnitude = 0.0;  // max over angles of |w*R| at window edges
};

/// Integration-by-parts check: int w * dR + int w' * R - [w*R] per angle row.
/// `weight` holds polynomial coefficients c0..c4 (degree <= 4).
SurfaceTermReport surface_term_check(const Sinogram& s, const std::vector<double>& weight);

} // namespace uradon
