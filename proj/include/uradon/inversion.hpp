#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "uradon/angular.hpp"
#include "uradon/sinogram.hpp"
#include "uradon/types.hpp"

namespace uradon {

enum class KernelMode { exact_limit, epsilon_kernel };

/// Settings for the radial lambda-integral limit.
struct KernelSpec {
    int n = 2;
    KernelMode mode = KernelMode::exact_limit;
    double epsilon = 0.0;                     // epsilon_kernel mode
    double window_half_width = 1.0;           // H, <= tau_max of the sinogram
    std::optional<std::pair<double, double>> richardson;   // (eps1, eps2), eps1 > eps2

    static KernelSpec exact(int n, double H) {
        return {n, KernelMode::exact_limit, 0.0, H, std::nullopt};
    }
    static KernelSpec epsilon_mode(int n, double H, double eps,
                                   std::optional<std::pair<double, double>> rich = std::nullopt) {
        return {n, KernelMode::epsilon_kernel, eps, H, rich};
    }
    void validate(const RadialGrid& radial) const;
};

/// Closed form of i^(2-n) * int_0^inf lambda^(n-1) exp(-i*lambda*(eta - i*eps))
/// = i^(2-n) * (n-1)! / (eps + i*eta)^n. Only defined for epsilon_kernel mode;
/// the exact limit is a distribution consumed by f_S/f_A directly.
Complex regularized_lambda_kernel(const KernelSpec& spec, double eta);

/// Finite-part term (Eq-level prefactor c_n * i^(n-2) * (-1)^(n-1) * (n-1)!
/// included).
Complex f_S_at(const Sinogram& s, const Vec3& x, const AngularDomain& domain,
               const KernelSpec& spec);

/// Delta-derivative term (prefactor c_n * (-1)^(n-1) * i^(n-1) * pi included).
Complex f_A_at(const Sinogram& s, const Vec3& x, const AngularDomain& domain);

/// Diagnostic: max over antipodal grid pairs of |summand(k) + summand(k')| in
/// the f_A angular sum (before prefactors). Requires an antipodally closed
/// full grid.
double f_A_pair_residual(const Sinogram& s, const Vec3& x);

enum TermSet : unsigned { kTermFS = 1u, kTermFA = 2u, kTermBoth = 3u };

/// Evaluation set for a reconstruction: raster cell centers or a point list.
struct TargetSet {
    bool is_raster = false;
    int nx = 0, ny = 0;
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    std::vector<Vec3> points;

    static TargetSet raster(int nx, int ny, double x0, double x1, double y0, double y1);
    static TargetSet point_list(std::vector<Vec3> pts);
    std::size_t size() const;
    Vec3 target(std::size_t i) const;
};

/// Complex-valued reconstruction with the two universal addends stored
/// separately; total = fS + fA.
struct ReconstructionField {
    int n = 2;
    TargetSet targets;
    std::vector<Complex> fS;
    std::vector<Complex> fA;
    KernelSpec kernel;
    AngularDomain domain;
    double c_n = 0.0;                 // (2pi)^-n
    double domain_measure = 0.0;
    unsigned terms = kTermBoth;

    std::size_t size() const { return targets.size(); }
    Complex total(std::size_t i) const { return fS[i] + fA[i]; }

    /// Re(total) on the raster target grid.
    Raster real_raster() const;
};

/// Term-wise universal inversion over an angular domain; embarrassingly
/// parallel over targets with fixed-order angle summation (results are
/// independent of `threads`).
ReconstructionField reconstruct(const Sinogram& s, const TargetSet& targets,
                                const AngularDomain& domain, const KernelSpec& spec,
                                unsigned terms = kTermBoth, int threads = 1);

struct DecompositionReport {
    double rel_err_re = 0.0;      // ||Re total - ref||_2 / ||ref||_2
    double rel_im = 0.0;          // ||Im total||_2 / ||ref||_2
    double fa_over_fs = 0.0;      // ||fA||_2 / ||fS||_2
    double max_abs_fs = 0.0;
    double max_abs_fa = 0.0;
    bool reference_was_zero = false;   // norms reported unnormalized then
};

DecompositionReport decomposition_report(const ReconstructionField& field,
                                         const Raster& reference);

} // namespace uradon
