#pragma once

#include <cstddef>
#include <vector>

#include "uradon/phantom.hpp"
#include "uradon/sinogram.hpp"
#include "uradon/types.hpp"

namespace uradon {

/// 1D Fourier transform of a sinogram row along the radial coordinate,
/// sampled at radial frequencies lambda.
struct SliceSpectrum {
    Vec3 direction{1.0, 0.0, 0.0};
    std::vector<double> lambdas;   // symmetric about 0
    std::vector<Complex> values;
};

/// Trapezoid-rule transform of one sinogram row: int exp(-i*lambda*tau) R dtau.
/// No hidden prefactor. Requires |lambda| * dtau <= 1.
SliceSpectrum fourier_slice(const Sinogram& s, std::size_t angle_index,
                            std::vector<double> lambdas);

/// n-dimensional Fourier image of the phantom at wave vector q, by adaptive
/// midpoint quadrature over the support bounding box. Refines until two
/// successive grids agree to rel_tol (relative to max(|F|, total abs mass));
/// throws numeric_error after 4 refinements without convergence.
Complex fourier_direct(const PhantomSpec& spec, const Vec3& q, double rel_tol = 1e-6);

/// Relative L2 mismatch between fourier_slice and fourier_direct over the
/// given angle indices and lambda set. The direct-side tolerance defaults to
/// 1e-6 for smooth phantoms and 1e-3 when sharp (indicator) primitives make
/// the midpoint rule first-order.
double slice_residual(const PhantomSpec& spec, const Sinogram& s,
                      const std::vector<std::size_t>& angle_indices,
                      const std::vector<double>& lambdas);

/// Per-sample slice-vs-direct table (for reports).
struct SliceSample {
    std::size_t angle_index;
    double lambda;
    Complex slice;
    Complex direct;
};
std::vector<SliceSample> slice_samples(const PhantomSpec& spec, const Sinogram& s,
                                       const std::vector<std::size_t>& angle_indices,
                                       const std::vector<double>& lambdas);

} // namespace uradon
