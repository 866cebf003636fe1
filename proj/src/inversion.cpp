#include "uradon/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "uradon/errors.hpp"

namespace uradon {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

double c_norm(int n) { return std::pow(kTwoPi, -n); }

void check_dimension(int n) {
    if (n != 2 && n != 3)
        throw input_error("inversion: reconstruction pipelines cover n=2 and n=3 only");
}

// Shared state for evaluating f_S/f_A at many targets: the (possibly masked)
// sinogram, its radial derivatives, and the eta-quadrature tables. The eta
// grid is offset by dtau/2 so no node falls on eta=0.
struct Engine {
    Sinogram data;
    Sinogram d1;        // order-1 derivative rows
    Sinogram d2;        // order-2 (n=3 only)
    KernelSpec kspec;
    int n;
    double deta = 0.0;
    double h_eff = 0.0;
    std::vector<double> eta;   // positive half nodes

    Engine(const Sinogram& s, const AngularDomain& domain, const KernelSpec& spec, bool need_fa)
        : data(mask_sinogram(s, domain)), kspec(spec), n(s.n) {
        check_dimension(n);
        if (domain.dim != n) throw input_error("inversion: domain dimension differs from sinogram");
        if (!data.radial.is_symmetric())
            throw input_error("inversion: the radial window must be symmetric");
        kspec.validate(data.radial);
        if (kspec.n != n) throw input_error("inversion: kernel dimension differs from sinogram");
        deta = data.radial.spacing();
        const int m = static_cast<int>(std::floor(kspec.window_half_width / deta + 1e-9));
        if (m < 4) throw input_error("inversion: radial window too narrow for the eta grid");
        h_eff = m * deta;
        eta.resize(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) eta[static_cast<std::size_t>(j)] = (j + 0.5) * deta;
        if (n == 3 || need_fa) d1 = radial_derivative(data, 1);
        if (n == 3 && need_fa) d2 = radial_derivative(data, 2);
    }

    // Bare finite part over [-H, H] for one angle row: Taylor-subtracted
    // midpoint sum plus the -2 g(0)/H (n=2) or -2 g'(0)/H (n=3) boundary
    // compensation. Symmetric +-eta nodes are paired, which cancels the odd
    // subtraction terms identically.
    double finite_part(std::size_t k, double shift) const {
        const auto row = data.row(k);
        double acc = 0.0;
        if (n == 2) {
            const double g0 = data.interp_row(row, shift);
            for (double e : eta) {
                const double rp = data.interp_row(row, shift + e);
                const double rm = data.interp_row(row, shift - e);
                acc += (rp + rm - 2.0 * g0) / (e * e);
            }
            return acc * deta - 2.0 * g0 / h_eff;
        }
        const double g1 = data.interp_row(d1.row(k), shift);
        for (double e : eta) {
            const double rp = data.interp_row(row, shift + e);
            const double rm = data.interp_row(row, shift - e);
            acc += (rp - rm - 2.0 * e * g1) / (e * e * e);
        }
        return acc * deta - 2.0 * g1 / h_eff;
    }

    // Convolution with the real part of the regularized lambda kernel
    // (its eps->0 limit is (-1)^(n-1) (n-1)! FP/eta^n). Quadrature mirrors
    // the exact-limit route: the row is Taylor-subtracted and sampled at the
    // same offset nodes with the node value of the kernel, while the
    // subtracted moments are restored from closed forms. With eps -> 0 the
    // node weights go over to the finite-part weights of the exact mode, so
    // the two modes share the same discretization bias and Richardson only
    // has the genuine O(eps) mollification error to remove.
    double epsilon_sum(std::size_t k, double shift, const std::vector<double>& kernel,
                       double eps) const {
        const auto row = data.row(k);
        const double h2 = h_eff * h_eff + eps * eps;
        double acc = 0.0;
        if (n == 2) {
            const double g0 = data.interp_row(row, shift);
            for (std::size_t j = 0; j < eta.size(); ++j) {
                const double rp = data.interp_row(row, shift + eta[j]);
                const double rm = data.interp_row(row, shift - eta[j]);
                acc += kernel[j] * (rp + rm - 2.0 * g0);   // even kernel
            }
            return acc * deta + g0 * 2.0 * h_eff / h2;   // int of the kernel over [-H, H]
        }
        const double g1 = data.interp_row(d1.row(k), shift);
        for (std::size_t j = 0; j < eta.size(); ++j) {
            const double rp = data.interp_row(row, shift + eta[j]);
            const double rm = data.interp_row(row, shift - eta[j]);
            acc += kernel[j] * (rp - rm - 2.0 * eta[j] * g1);   // odd kernel
        }
        return acc * deta - g1 * 4.0 * h_eff * h_eff * h_eff / (h2 * h2);   // int eta * kernel
    }

    // Node values of Re(regularized kernel) at the positive eta nodes.
    std::vector<double> epsilon_kernel_nodes(double eps) const {
        std::vector<double> ker(eta.size());
        for (std::size_t j = 0; j < eta.size(); ++j) {
            const double e = eta[j];
            const double d = eps * eps + e * e;
            if (n == 2)
                ker[j] = (eps * eps - e * e) / (d * d);                    // -> -1/eta^2
            else
                ker[j] = 2.0 * e * (e * e - 3.0 * eps * eps) / (d * d * d);   // -> 2/eta^3
        }
        return ker;
    }

    Complex fs(const Vec3& x) const {
        if (kspec.mode == KernelMode::exact_limit) {
            double sum = 0.0;
            for (std::size_t k = 0; k < data.angle_count(); ++k)
                sum += data.angular.weights[k] *
                       finite_part(k, dot(data.angular.directions[k], x, n));
            const double sign = (n % 2 == 0) ? -1.0 : 1.0;   // (-1)^(n-1)
            return c_norm(n) * unit_imag_pow(n - 2) * sign * factorial(n - 1) * sum;
        }
        auto sum_for = [&](double eps) {
            const auto ker = epsilon_kernel_nodes(eps);
            double sum = 0.0;
            for (std::size_t k = 0; k < data.angle_count(); ++k)
                sum += data.angular.weights[k] *
                       epsilon_sum(k, dot(data.angular.directions[k], x, n), ker, eps);
            return sum;
        };
        double sum;
        if (kspec.richardson) {
            const auto [e1, e2] = *kspec.richardson;
            const double f1 = sum_for(e1), f2 = sum_for(e2);
            // the mollified integral deviates at first order in eps
            sum = (e1 * f2 - e2 * f1) / (e1 - e2);
        } else {
            sum = sum_for(kspec.epsilon);
        }
        return c_norm(n) * unit_imag_pow(n - 2) * sum;
    }

    Complex fa(const Vec3& x) const {
        const Sinogram& d = (n == 2) ? d1 : d2;
        double sum = 0.0;
        for (std::size_t k = 0; k < data.angle_count(); ++k)
            sum += data.angular.weights[k] *
                   data.interp_row(d.row(k), dot(data.angular.directions[k], x, n));
        const double sign = (n % 2 == 0) ? -1.0 : 1.0;   // (-1)^(n-1)
        return c_norm(n) * sign * unit_imag_pow(n - 1) * kPi * sum;
    }

    void check_target(const Vec3& x) const {
        const double r = norm(x, n);
        if (r + data.hard_support_radius > data.radial.tau_max + 1e-9) {
            std::ostringstream msg;
            msg << "inversion: target (|x|=" << r << ") plus source support ("
                << data.hard_support_radius << ") exceeds the radial window ("
                << data.radial.tau_max << "); tau reads would truncate the support";
            throw input_error(msg.str());
        }
    }
};

} // namespace

void KernelSpec::validate(const RadialGrid& radial) const {
    if (!(window_half_width > 0.0))
        throw input_error("kernel: window half-width must be positive");
    if (window_half_width > radial.tau_max + 1e-12)
        throw input_error("kernel: window half-width exceeds the sinogram tau_max");
    if (mode == KernelMode::epsilon_kernel) {
        if (!(epsilon > 0.0)) throw input_error("kernel: epsilon must be positive");
        if (epsilon >= window_half_width / 10.0)
            throw input_error("kernel: epsilon must be below H/10");
        if (richardson) {
            if (!(richardson->first > richardson->second) || !(richardson->second > 0.0))
                throw input_error("kernel: Richardson pair must be decreasing and positive");
            if (richardson->first >= window_half_width / 10.0)
                throw input_error("kernel: Richardson epsilon must be below H/10");
        }
    }
}

Complex regularized_lambda_kernel(const KernelSpec& spec, double eta) {
    if (spec.mode != KernelMode::epsilon_kernel)
        throw capability_error("lambda kernel: the exact limit is a distribution with no "
                               "pointwise value; use f_S/f_A");
    if (!(spec.epsilon > 0.0)) throw input_error("lambda kernel: epsilon must be positive");
    if (spec.n < 1) throw input_error("lambda kernel: dimension must be >= 1");
    Complex denom{1.0, 0.0};
    const Complex base{spec.epsilon, eta};
    for (int i = 0; i < spec.n; ++i) denom *= base;
    return unit_imag_pow(2 - spec.n) * factorial(spec.n - 1) / denom;
}

Complex f_S_at(const Sinogram& s, const Vec3& x, const AngularDomain& domain,
               const KernelSpec& spec) {
    Engine eng(s, domain, spec, false);
    eng.check_target(x);
    return eng.fs(x);
}

Complex f_A_at(const Sinogram& s, const Vec3& x, const AngularDomain& domain) {
    Engine eng(s, domain, KernelSpec::exact(s.n, s.radial.tau_max), true);
    eng.check_target(x);
    return eng.fa(x);
}

double f_A_pair_residual(const Sinogram& s, const Vec3& x) {
    if (s.n != 2) throw input_error("pair residual: n=2 sinograms only");
    if (!s.angular.full_range || s.angular.phi_count % 2 != 0)
        throw input_error("pair residual: antipodally closed full grid required");
    const Sinogram d = radial_derivative(s, 1);
    double worst = 0.0;
    const std::size_t half = s.angle_count() / 2;
    for (std::size_t k = 0; k < half; ++k) {
        const std::size_t ka = s.angular.antipode_index(k);
        const double a = s.angular.weights[k] *
                         d.interp_row(d.row(k), dot(s.angular.directions[k], x, 2));
        const double b = s.angular.weights[ka] *
                         d.interp_row(d.row(ka), dot(s.angular.directions[ka], x, 2));
        worst = std::max(worst, std::abs(a + b));
    }
    return worst;
}

TargetSet TargetSet::raster(int nx, int ny, double x0, double x1, double y0, double y1) {
    if (nx <= 1 || ny <= 1) throw input_error("targets: raster needs at least 2x2 nodes");
    TargetSet t;
    t.is_raster = true;
    t.nx = nx;
    t.ny = ny;
    t.x_min = x0;
    t.x_max = x1;
    t.y_min = y0;
    t.y_max = y1;
    return t;
}

TargetSet TargetSet::point_list(std::vector<Vec3> pts) {
    if (pts.empty()) throw input_error("targets: empty point list");
    TargetSet t;
    t.points = std::move(pts);
    return t;
}

std::size_t TargetSet::size() const {
    return is_raster ? static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)
                     : points.size();
}

Vec3 TargetSet::target(std::size_t i) const {
    if (!is_raster) return points[i];
    const int ix = static_cast<int>(i % static_cast<std::size_t>(nx));
    const int iy = static_cast<int>(i / static_cast<std::size_t>(nx));
    const double dx = (x_max - x_min) / (nx - 1);
    const double dy = (y_max - y_min) / (ny - 1);
    return {x_min + ix * dx, y_min + iy * dy, 0.0};
}

Raster ReconstructionField::real_raster() const {
    if (!targets.is_raster) throw input_error("field: point-list fields have no raster view");
    Raster r(targets.nx, targets.ny, targets.x_min, targets.x_max, targets.y_min, targets.y_max);
    for (std::size_t i = 0; i < size(); ++i) r.values[i] = total(i).real();
    return r;
}

ReconstructionField reconstruct(const Sinogram& s, const TargetSet& targets,
                                const AngularDomain& domain, const KernelSpec& spec,
                                unsigned terms, int threads) {
    if (targets.is_raster && s.n != 2)
        throw input_error("reconstruct: raster targets are for n=2 (use points for n=3)");
    if ((terms & kTermBoth) == 0) throw input_error("reconstruct: no terms requested");
    const bool want_fs = terms & kTermFS;
    const bool want_fa = terms & kTermFA;
    Engine eng(s, domain, spec, want_fa);
    const std::size_t total = targets.size();
    for (std::size_t i = 0; i < total; ++i) eng.check_target(targets.target(i));

    ReconstructionField field;
    field.n = s.n;
    field.targets = targets;
    field.kernel = spec;
    field.domain = domain;
    field.c_n = c_norm(s.n);
    field.domain_measure = domain.measure();
    field.terms = terms;
    field.fS.assign(total, Complex{0.0, 0.0});
    field.fA.assign(total, Complex{0.0, 0.0});

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Vec3 x = targets.target(i);
            if (want_fs) field.fS[i] = eng.fs(x);
            if (want_fa) field.fA[i] = eng.fa(x);
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || total < 2) {
        worker(0, total);
    } else {
        // disjoint contiguous ranges; per-target work is self-contained, so
        // results are bitwise independent of the thread count
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t b = std::min(total, static_cast<std::size_t>(t) * chunk);
            const std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return field;
}

DecompositionReport decomposition_report(const ReconstructionField& field,
                                         const Raster& reference) {
    if (!field.targets.is_raster || field.targets.nx != reference.nx ||
        field.targets.ny != reference.ny)
        throw input_error("decomposition report: field/reference shapes differ");
    double ref2 = 0.0, err2 = 0.0, im2 = 0.0, fs2 = 0.0, fa2 = 0.0;
    DecompositionReport rep;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const Complex t = field.total(i);
        const double d = t.real() - reference.values[i];
        err2 += d * d;
        im2 += t.imag() * t.imag();
        ref2 += reference.values[i] * reference.values[i];
        fs2 += std::norm(field.fS[i]);
        fa2 += std::norm(field.fA[i]);
        rep.max_abs_fs = std::max(rep.max_abs_fs, std::abs(field.fS[i]));
        rep.max_abs_fa = std::max(rep.max_abs_fa, std::abs(field.fA[i]));
    }
    if (ref2 == 0.0) {
        rep.reference_was_zero = true;
        rep.rel_err_re = std::sqrt(err2);
        rep.rel_im = std::sqrt(im2);
    } else {
        rep.rel_err_re = std::sqrt(err2 / ref2);
        rep.rel_im = std::sqrt(im2 / ref2);
    }
    rep.fa_over_fs = fs2 == 0.0 ? (fa2 == 0.0 ? 0.0 : std::sqrt(fa2))
                                : std::sqrt(fa2 / fs2);
    return rep;
}

} // namespace uradon
