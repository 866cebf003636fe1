#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uradon/types.hpp"

namespace uradon {

enum class PrimitiveKind { disc2d, ellipse2d, rectangle2d, gaussian2d, ball3d, gaussian3d };

enum class Quadrant { I, II, III, IV };

enum class MaskKind { none, box, quadrant };

/// Sharp indicator restricting a primitive's support.
struct SupportMask {
    MaskKind kind = MaskKind::none;
    std::array<std::array<double, 2>, 3> box{};   // per-axis closed intervals
    Quadrant quadrant = Quadrant::I;

    static SupportMask none() { return {}; }
    static SupportMask box2d(double x0, double x1, double y0, double y1);
    static SupportMask unit_box2d() { return box2d(-1.0, 1.0, -1.0, 1.0); }
    static SupportMask quadrant_mask(Quadrant q);

    bool contains(const Vec3& p, int n) const;
    bool is_none() const { return kind == MaskKind::none; }
};

/// Analytic primitive with a closed-form Radon transform. Gaussians carry an
/// 8-sigma effective support; evaluation is cut to zero outside it.
struct Primitive {
    PrimitiveKind kind = PrimitiveKind::disc2d;
    Vec3 center{0.0, 0.0, 0.0};
    std::array<double, 2> shape{1.0, 0.0};   // meaning depends on kind
    double amplitude = 1.0;

    static Primitive disc(double cx, double cy, double radius, double amplitude);
    static Primitive ellipse(double cx, double cy, double a, double b, double amplitude);
    static Primitive rectangle(double cx, double cy, double hx, double hy, double amplitude);
    static Primitive gaussian2(double cx, double cy, double width, double amplitude);
    static Primitive ball(double cx, double cy, double cz, double radius, double amplitude);
    static Primitive gaussian3(double cx, double cy, double cz, double width, double amplitude);

    int dim() const;
    double value(const Vec3& p) const;

    /// Axis-aligned bounding box of the (effective) support.
    std::array<std::array<double, 2>, 3> bounding_box() const;

    /// True for sharp (indicator-type) primitives, false for gaussians whose
    /// support radius is an effective cutoff.
    bool sharp_support() const;

    void validate() const;
};

/// The source density to reconstruct: a masked sum of primitives.
struct PhantomSpec {
    int n = 2;
    std::vector<std::pair<Primitive, SupportMask>> primitives;
    SupportMask global_mask = SupportMask::none();

    void validate() const;

    std::array<std::array<double, 2>, 3> bounding_box() const;
    /// Radius of the support bounding circle about the origin.
    double support_radius() const;
    /// Same, counting only sharp primitives (0 if none). Gaussian tails are
    /// excluded: windows that truncate them are an accuracy choice, not an
    /// error.
    double hard_support_radius() const;
    bool has_sharp_primitives() const;
};

double eval_phantom(const PhantomSpec& spec, const Vec3& point);
/// Checked entry point: the point must carry exactly spec.n coordinates.
double eval_phantom(const PhantomSpec& spec, const std::vector<double>& point);

/// Closed-form Radon value; throws capability_error for unsupported
/// (primitive, mask) combinations (caller falls back to numeric).
double analytic_radon(const PhantomSpec& spec, double tau, const Vec3& direction);
bool analytic_radon_supported(const PhantomSpec& spec);

Raster rasterize(const PhantomSpec& spec, int nx, int ny,
                 double x_min, double x_max, double y_min, double y_max);

/// Quadrant-restricted inhomogeneous construction: f1 on quadrant I plus
/// f3 on quadrant III.
PhantomSpec make_quadrant_phantom(const Primitive& f1, const Primitive& f3);

PhantomSpec phantom_from_json(const std::string& text);
std::string phantom_to_json(const PhantomSpec& spec);
PhantomSpec load_phantom_file(const std::string& path);

} // namespace uradon
