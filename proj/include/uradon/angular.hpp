#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "uradon/phantom.hpp"
#include "uradon/sinogram.hpp"

namespace uradon {

/// Slope parametrization of a non-vertical line x2 = p*x1 + t.
struct SlopeLine {
    double t = 0.0;   // intercept
    double p = 0.0;   // slope
};

/// Open angular interval (endpoints excluded).
struct AngularInterval {
    double lo = 0.0;
    double hi = 0.0;
    double measure() const { return hi - lo; }
};

/// Open (phi, theta) product band for n=3; theta limits cover (0, pi).
struct AngularBand {
    AngularInterval phi;
    AngularInterval theta;
};

/// Set of open angular intervals (n=2) or bands (n=3) over which
/// backprojection integrates. Boundary angles are always excluded.
struct AngularDomain {
    int dim = 2;
    bool full = false;
    std::vector<AngularInterval> intervals;   // dim=2
    std::vector<AngularBand> bands;           // dim=3

    static AngularDomain full_range(int n);
    static AngularDomain from_intervals(std::vector<AngularInterval> iv);
    static AngularDomain from_bands(std::vector<AngularBand> bands);
    static AngularDomain half_range_2d();   // open (-pi/2, pi/2)

    /// Membership with 2pi wrap-around in phi; strict interior.
    bool contains(double phi_angle, double theta_angle = 0.0) const;
    double measure() const;   // angular measure (theta bands carry sin factor)
    void validate() const;
};

/// Line map (tau, phi) -> (t, p): t = tau/sin(phi), p = -cos(phi)/sin(phi).
SlopeLine to_slope(double tau, double phi_angle);

/// Inverse map; returns (tau, phi) with phi in (0, pi).
std::pair<double, double> from_slope(const SlopeLine& line);

/// Slope-form Radon value (1/|sin phi| Jacobian applied), interpolated on the
/// sinogram grids.
double slope_radon_value(const Sinogram& s, const SlopeLine& line);

/// Admissibility of (q1, q2, t) for the unit box support: the strict
/// inequality branches matching the quadrant and t-range; boundary equality
/// cases are rejected. Quadrants with q1 < 0 evaluate via the mirror
/// reflection q1 -> -q1.
bool admissible(double q1, double q2, double t);

/// Angular mask induced by a finite box support: the open interval
/// (-pi/2, pi/2). Non-box masks are not derivable here.
AngularDomain angular_mask(const SupportMask& support);

/// Restrict a sinogram to grid angles strictly inside the domain, with
/// quadrature weights rescaled per interval/band so they integrate to the
/// restricted measure. Identity (weights untouched) for full domains.
Sinogram mask_sinogram(const Sinogram& s, const AngularDomain& domain,
                       std::size_t* surviving = nullptr);

} // namespace uradon
