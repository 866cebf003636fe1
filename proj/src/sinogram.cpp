#include "uradon/sinogram.hpp"

#include <cmath>
#include <string>

#include "uradon/errors.hpp"

namespace uradon {

void Sinogram::validate() const {
    if (values.size() != angle_count() * static_cast<std::size_t>(radial.count))
        throw input_error("sinogram: value matrix shape does not match grids");
    for (double v : values)
        if (!std::isfinite(v)) throw input_error("sinogram: values must be finite");
    if (support_radius > 0.0 && support_radius < radial.tau_max) {
        for (std::size_t k = 0; k < angle_count(); ++k) {
            if (at(k, 0) != 0.0 || at(k, radial.count - 1) != 0.0)
                throw input_error("sinogram: boundary samples must vanish when the source "
                                  "support lies inside the radial window");
        }
    }
}

Sinogram direct_radon_analytic(const PhantomSpec& spec, const RadialGrid& radial,
                               const AngularGrid& angular) {
    spec.validate();
    if (spec.n != angular.dim)
        throw input_error("direct Radon: angular grid dimension differs from phantom");
    Sinogram s;
    s.n = spec.n;
    s.radial = radial;
    s.angular = angular;
    s.provenance = Provenance::analytic;
    s.support_radius = spec.support_radius();
    s.hard_support_radius = spec.hard_support_radius();
    s.values.resize(angular.size() * static_cast<std::size_t>(radial.count));
    for (std::size_t k = 0; k < angular.size(); ++k) {
        auto row = s.row(k);
        const Vec3& d = angular.directions[k];
        for (int i = 0; i < radial.count; ++i)
            row[static_cast<std::size_t>(i)] = analytic_radon(spec, radial.value(i), d);
    }
    return s;
}

namespace {

template <typename EvalFn>
Sinogram radon_numeric_impl(EvalFn&& eval, double bound_radius, double hard_radius, int n,
                            const RadialGrid& radial, const AngularGrid& angular, double step) {
    if (n != 2) throw input_error("numeric Radon: implemented for n=2 only");
    if (!(step > 0.0)) throw input_error("numeric Radon: step must be positive");
    if (step > 2.0 * bound_radius)
        throw input_error("numeric Radon: step exceeds the support diameter");
    Sinogram s;
    s.n = 2;
    s.radial = radial;
    s.angular = angular;
    s.provenance = Provenance::numeric;
    s.support_radius = bound_radius;
    s.hard_support_radius = hard_radius;
    s.values.assign(angular.size() * static_cast<std::size_t>(radial.count), 0.0);
    for (std::size_t k = 0; k < angular.size(); ++k) {
        auto row = s.row(k);
        const Vec3& d = angular.directions[k];
        const Vec3 perp{-d[1], d[0], 0.0};
        for (int i = 0; i < radial.count; ++i) {
            const double tau = radial.value(i);
            if (std::abs(tau) >= bound_radius) continue;   // line misses the support circle
            const double half = std::sqrt(bound_radius * bound_radius - tau * tau);
            const int m = std::max(1, static_cast<int>(std::ceil(2.0 * half / step)));
            const double h = 2.0 * half / m;
            double acc = 0.0;
            for (int q = 0; q < m; ++q) {
                const double l = -half + (q + 0.5) * h;
                acc += eval(tau * d[0] + l * perp[0], tau * d[1] + l * perp[1]);
            }
            row[static_cast<std::size_t>(i)] = acc * h;
        }
    }
    return s;
}

} // namespace

Sinogram direct_radon_numeric(const PhantomSpec& spec, const RadialGrid& radial,
                              const AngularGrid& angular, double step) {
    spec.validate();
    return radon_numeric_impl(
        [&spec](double x, double y) { return eval_phantom(spec, Vec3{x, y, 0.0}); },
        spec.support_radius(), spec.hard_support_radius(), spec.n, radial, angular, step);
}

Sinogram direct_radon_numeric(const Raster& raster, const RadialGrid& radial,
                              const AngularGrid& angular, double step) {
    const double rx = std::max(std::abs(raster.x_min), std::abs(raster.x_max));
    const double ry = std::max(std::abs(raster.y_min), std::abs(raster.y_max));
    const double r = std::sqrt(rx * rx + ry * ry);
    return radon_numeric_impl([&raster](double x, double y) { return raster.sample(x, y); },
                              r, r, 2, radial, angular, step);
}

double antipodal_check(const Sinogram& s) {
    if (s.n != 2) throw input_error("antipodal check: n=2 sinograms only");
    if (!s.angular.full_range || s.angular.phi_count % 2 != 0)
        throw input_error("antipodal check: angular grid must cover [0, 2pi) with an even count");
    if (!s.radial.is_symmetric())
        throw input_error("antipodal check: radial grid must be symmetric");
    double dev = 0.0;
    const int nr = s.radial.count;
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        const std::size_t ka = s.angular.antipode_index(k);
        for (int i = 0; i < nr; ++i) {
            const double d = std::abs(s.at(k, i) - s.at(ka, nr - 1 - i));
            if (d > dev) dev = d;
        }
    }
    return dev;
}

Sinogram radial_derivative(const Sinogram& s, int order) {
    if (order != 1 && order != 2)
        throw input_error("radial derivative: order must be 1 or 2 (n <= 3 pipelines)");
    if (s.radial.count < 2 * order + 1)
        throw input_error("radial derivative: radial grid too small");
    Sinogram out = s;
    out.provenance = Provenance::numeric;
    const int nr = s.radial.count;
    const double dt = s.radial.spacing();
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        auto src = s.row(k);
        auto dst = out.row(k);
        if (order == 1) {
            for (int i = 1; i + 1 < nr; ++i)
                dst[i] = (src[i + 1] - src[i - 1]) / (2.0 * dt);
            // second-order one-sided ends, written so mirrored rows give
            // exactly negated derivatives
            dst[0] = ((-3.0 * src[0] + 4.0 * src[1]) - src[2]) / (2.0 * dt);
            dst[nr - 1] = -(((-3.0 * src[nr - 1] + 4.0 * src[nr - 2]) - src[nr - 3]) / (2.0 * dt));
        } else {
            for (int i = 1; i + 1 < nr; ++i)
                dst[i] = (src[i + 1] - 2.0 * src[i] + src[i - 1]) / (dt * dt);
            dst[0] = ((2.0 * src[0] - 5.0 * src[1]) + (4.0 * src[2] - src[3])) / (dt * dt);
            dst[nr - 1] = ((2.0 * src[nr - 1] - 5.0 * src[nr - 2]) +
                           (4.0 * src[nr - 3] - src[nr - 4])) / (dt * dt);
        }
    }
    return out;
}

double angular_average(const Sinogram& s, const Vec3& x, double eta) {
    if (s.n != 2) throw input_error("angular average: n=2 sinograms only");
    double acc = 0.0;
    for (std::size_t k = 0; k < s.angle_count(); ++k)
        acc += s.angular.weights[k] * s.read(k, eta + dot(s.angular.directions[k], x, 2));
    return acc;
}

SurfaceTermReport surface_term_check(const Sinogram& s, const std::vector<double>& weight) {
    if (weight.empty() || weight.size() > 5)
        throw input_error("surface term check: weight polynomial degree must be <= 4");
    const int nr = s.radial.count;
    const double dt = s.radial.spacing();
    auto poly = [&weight](double t) {
        double v = 0.0;
        for (std::size_t j = weight.size(); j-- > 0;) v = v * t + weight[j];
        return v;
    };
    auto dpoly = [&weight](double t) {
        double v = 0.0;
        for (std::size_t j = weight.size(); j-- > 1;) v = v * t + weight[j] * static_cast<double>(j);
        return v;
    };
    const Sinogram deriv = radial_derivative(s, 1);
    SurfaceTermReport rep;
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        auto r = s.row(k);
        auto dr = deriv.row(k);
        double i1 = 0.0, i2 = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double tau = s.radial.value(i);
            const double wtrap = (i == 0 || i == nr - 1) ? 0.5 : 1.0;
            i1 += wtrap * poly(tau) * dr[static_cast<std::size_t>(i)];
            i2 += wtrap * dpoly(tau) * r[static_cast<std::size_t>(i)];
        }
        i1 *= dt;
        i2 *= dt;
        const double end_hi = poly(s.radial.tau_max) * r[static_cast<std::size_t>(nr - 1)];
        const double end_lo = poly(s.radial.tau_min) * r[0];
        const double bracket = end_hi - end_lo;
        rep.residual = std::max(rep.residual, std::abs(i1 + i2 - bracket));
        rep.boundary_magnitude =
            std::max(rep.boundary_magnitude, std::abs(end_hi) + std::abs(end_lo));
    }
    return rep;
}

} // namespace uradon
