#include "uradon/angular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uradon/errors.hpp"

namespace uradon {

AngularDomain AngularDomain::full_range(int n) {
    AngularDomain d;
    d.dim = n;
    d.full = true;
    return d;
}

AngularDomain AngularDomain::from_intervals(std::vector<AngularInterval> iv) {
    AngularDomain d;
    d.dim = 2;
    d.full = false;
    d.intervals = std::move(iv);
    d.validate();
    return d;
}

AngularDomain AngularDomain::from_bands(std::vector<AngularBand> bands) {
    AngularDomain d;
    d.dim = 3;
    d.full = false;
    d.bands = std::move(bands);
    d.validate();
    return d;
}

AngularDomain AngularDomain::half_range_2d() {
    return from_intervals({{-kPi / 2.0, kPi / 2.0}});
}

void AngularDomain::validate() const {
    if (full) return;
    if (dim == 2) {
        if (intervals.empty()) throw input_error("angular domain: no intervals");
        double total = 0.0;
        for (const auto& iv : intervals) {
            if (!(iv.hi > iv.lo)) throw input_error("angular domain: empty interval");
            total += iv.measure();
        }
        if (!(total > 0.0) || total > kTwoPi + 1e-12)
            throw input_error("angular domain: total measure must lie in (0, 2pi]");
        auto sorted = intervals;
        std::sort(sorted.begin(), sorted.end(),
                  [](const AngularInterval& a, const AngularInterval& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].lo < sorted[i - 1].hi)
                throw input_error("angular domain: intervals must be disjoint");
    } else {
        if (bands.empty()) throw input_error("angular domain: no bands");
        for (const auto& b : bands) {
            if (!(b.phi.hi > b.phi.lo) || !(b.theta.hi > b.theta.lo))
                throw input_error("angular domain: empty band");
            if (b.theta.lo < 0.0 || b.theta.hi > kPi)
                throw input_error("angular domain: theta band must lie in (0, pi)");
        }
    }
}

namespace {

bool interval_contains_wrapped(const AngularInterval& iv, double phi) {
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
        const double v = phi + shift;
        if (v > iv.lo && v < iv.hi) return true;
    }
    return false;
}

} // namespace

bool AngularDomain::contains(double phi_angle, double theta_angle) const {
    if (full) return true;
    if (dim == 2) {
        for (const auto& iv : intervals)
            if (interval_contains_wrapped(iv, phi_angle)) return true;
        return false;
    }
    for (const auto& b : bands)
        if (interval_contains_wrapped(b.phi, phi_angle) && theta_angle > b.theta.lo &&
            theta_angle < b.theta.hi)
            return true;
    return false;
}

double AngularDomain::measure() const {
    if (full) return dim == 2 ? kTwoPi : 4.0 * kPi;
    double total = 0.0;
    if (dim == 2) {
        for (const auto& iv : intervals) total += iv.measure();
    } else {
        for (const auto& b : bands)
            total += b.phi.measure() * (std::cos(b.theta.lo) - std::cos(b.theta.hi));
    }
    return total;
}

SlopeLine to_slope(double tau, double phi_angle) {
    const double sp = std::sin(phi_angle);
    if (std::abs(sp) <= 1e-12)
        throw capability_error("slope form: vertical lines (sin phi = 0) are not representable");
    return {tau / sp, -std::cos(phi_angle) / sp};
}

std::pair<double, double> from_slope(const SlopeLine& line) {
    // normal (cos phi, sin phi) with sin phi > 0, i.e. phi in (0, pi)
    const double phi = std::atan2(1.0, -line.p);
    return {line.t * std::sin(phi), phi};
}

double slope_radon_value(const Sinogram& s, const SlopeLine& line) {
    if (s.n != 2) throw input_error("slope Radon value: n=2 sinograms only");
    if (!std::isfinite(line.t) || !std::isfinite(line.p))
        throw input_error("slope Radon value: line parameters must be finite");
    auto [tau, phi] = from_slope(line);
    if (tau < s.radial.tau_min || tau > s.radial.tau_max)
        throw input_error("slope Radon value: tau outside the sinogram window");

    const auto& angles = s.angular.phi;
    const std::size_t m = angles.size();
    // bracket phi in the angle list (wrap-aware only for full grids)
    double value;
    auto row_at = [&](std::size_t k) { return s.read(k, tau); };
    if (phi <= angles.front()) {
        if (s.angular.full_range && m >= 2) {
            const double lo = angles.back() - kTwoPi, hi = angles.front();
            const double t = (phi - lo) / (hi - lo);
            value = row_at(m - 1) * (1.0 - t) + row_at(0) * t;
        } else if (std::abs(phi - angles.front()) < 1e-12) {
            value = row_at(0);
        } else {
            throw input_error("slope Radon value: angle outside the sinogram grid");
        }
    } else if (phi >= angles.back()) {
        if (s.angular.full_range && m >= 2) {
            const double lo = angles.back(), hi = angles.front() + kTwoPi;
            const double t = (phi - lo) / (hi - lo);
            value = row_at(m - 1) * (1.0 - t) + row_at(0) * t;
        } else if (std::abs(phi - angles.back()) < 1e-12) {
            value = row_at(m - 1);
        } else {
            throw input_error("slope Radon value: angle outside the sinogram grid");
        }
    } else {
        std::size_t hi = static_cast<std::size_t>(
            std::upper_bound(angles.begin(), angles.end(), phi) - angles.begin());
        const std::size_t lo = hi - 1;
        const double t = (phi - angles[lo]) / (angles[hi] - angles[lo]);
        value = row_at(lo) * (1.0 - t) + row_at(hi) * t;
    }
    const double sp = std::abs(std::sin(phi));
    return value / sp;
}

bool admissible(double q1, double q2, double t) {
    if (q1 == 0.0 && q2 == 0.0) throw input_error("admissible: q must be nonzero");
    if (q1 < 0.0) return admissible(-q1, q2, t);   // mirrored region
    if (q2 > 0.0) {
        // strict versions of the two branch inequalities; the second is
        // automatic for t >= 1
        if (!((t + 1.0) * q2 < q1)) return false;
        if (t < 1.0 && !((1.0 - t) * q2 < q1)) return false;
        return true;
    }
    if (q2 < 0.0) {
        if (t < -1.0) return (t + 1.0) * q2 < q1;   // -(t~ - 1) q2 < q1 with t~ = -t
        if (t > 0.0 && t < 1.0) return (1.0 - t) * q2 < q1;
        return true;   // both inequalities are automatic elsewhere
    }
    // q2 == 0: both inequalities reduce to 0 < q1
    return q1 > 0.0;
}

AngularDomain angular_mask(const SupportMask& support) {
    if (support.kind != MaskKind::box)
        throw capability_error("angular mask: derivable for box supports only");
    // The derivation depends only on boundedness, so every box yields the
    // same open interval.
    return AngularDomain::half_range_2d();
}

Sinogram mask_sinogram(const Sinogram& s, const AngularDomain& domain, std::size_t* surviving) {
    if (domain.dim != s.n)
        throw input_error("mask sinogram: domain dimension differs from sinogram");
    if (domain.full) {
        if (surviving) *surviving = s.angle_count();
        return s;
    }
    domain.validate();

    // partition the grid angles by interval/band to compute per-part weight
    // rescales; emit survivors in grid order so angle lists stay sorted
    const std::size_t nparts = s.n == 2 ? domain.intervals.size() : domain.bands.size();
    std::vector<double> part_measure(nparts, 0.0);
    std::vector<double> part_wsum(nparts, 0.0);
    for (std::size_t p = 0; p < nparts; ++p) {
        if (s.n == 2)
            part_measure[p] = domain.intervals[p].measure();
        else {
            const auto& b = domain.bands[p];
            part_measure[p] = b.phi.measure() * (std::cos(b.theta.lo) - std::cos(b.theta.hi));
        }
    }
    constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> part_of(s.angle_count(), kDropped);
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        const double phi = s.angular.phi[k];
        const double theta = s.n == 3 ? s.angular.theta[k] : 0.0;
        for (std::size_t p = 0; p < nparts; ++p) {
            const bool in = s.n == 2
                ? interval_contains_wrapped(domain.intervals[p], phi)
                : (interval_contains_wrapped(domain.bands[p].phi, phi) &&
                   theta > domain.bands[p].theta.lo && theta < domain.bands[p].theta.hi);
            if (in) {
                part_of[k] = p;
                part_wsum[p] += s.angular.weights[k];
                break;   // intervals are disjoint
            }
        }
    }

    Sinogram out;
    out.n = s.n;
    out.radial = s.radial;
    out.provenance = s.provenance;
    out.support_radius = s.support_radius;
    out.hard_support_radius = s.hard_support_radius;
    out.angular.dim = s.n;
    out.angular.full_range = false;
    std::size_t kept = 0;
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        const std::size_t p = part_of[k];
        if (p == kDropped) continue;
        // rescale so the surviving weights integrate to the open-interval
        // measure; for uniform grids this is measure/count
        const double scale = part_measure[p] / part_wsum[p];
        out.angular.phi.push_back(s.angular.phi[k]);
        if (s.n == 3) out.angular.theta.push_back(s.angular.theta[k]);
        out.angular.directions.push_back(s.angular.directions[k]);
        out.angular.weights.push_back(s.angular.weights[k] * scale);
        const auto row = s.row(k);
        out.values.insert(out.values.end(), row.begin(), row.end());
        ++kept;
    }
    if (kept == 0)
        throw input_error("mask sinogram: no grid angles fall inside the domain");
    out.angular.phi_count = static_cast<int>(kept);
    out.angular.theta_count = 0;
    if (surviving) *surviving = kept;
    return out;
}

} // namespace uradon
