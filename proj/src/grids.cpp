#include "uradon/grids.hpp"

#include <cmath>
#include <string>

#include "uradon/errors.hpp"

namespace uradon {

RadialGrid::RadialGrid(double lo, double hi, int n) : tau_min(lo), tau_max(hi), count(n) {
    if (count < 3) throw input_error("radial grid: count must be >= 3");
    if (!(tau_max > tau_min)) throw input_error("radial grid: tau_max must exceed tau_min");
}

bool RadialGrid::is_symmetric() const {
    return std::abs(tau_min + tau_max) <= 1e-12 * std::max(1.0, std::abs(tau_max));
}

Vec3 direction_2d(double phi_angle) {
    return {std::cos(phi_angle), std::sin(phi_angle), 0.0};
}

Vec3 direction_3d(double phi_angle, double theta_angle) {
    const double st = std::sin(theta_angle);
    return {st * std::cos(phi_angle), st * std::sin(phi_angle), std::cos(theta_angle)};
}

AngularGrid AngularGrid::full_circle(int count) {
    if (count < 1) throw input_error("angular grid: count must be positive");
    AngularGrid g;
    g.dim = 2;
    g.full_range = true;
    g.phi_count = count;
    g.theta_count = 0;
    const double dphi = kTwoPi / count;
    g.phi.resize(count);
    g.directions.resize(count);
    g.weights.assign(count, dphi);
    for (int k = 0; k < count; ++k) g.phi[k] = k * dphi;
    const int half = count / 2;
    for (int k = 0; k < count; ++k) {
        // second half by exact negation so antipodal identities hold bitwise
        if (count % 2 == 0 && k >= half)
            g.directions[k] = negate(g.directions[k - half]);
        else
            g.directions[k] = direction_2d(g.phi[k]);
    }
    return g;
}

AngularGrid AngularGrid::sphere(int n_phi, int n_theta) {
    if (n_phi < 2 || n_theta < 2) throw input_error("sphere grid: counts must be >= 2");
    if (n_phi % 2 != 0 || n_theta % 2 != 0)
        throw input_error("sphere grid: counts must be even (antipodal closure)");
    AngularGrid g;
    g.dim = 3;
    g.full_range = true;
    g.phi_count = n_phi;
    g.theta_count = n_theta;
    const double dphi = kTwoPi / n_phi;
    const double dth = kPi / n_theta;
    const std::size_t total = static_cast<std::size_t>(n_phi) * n_theta;
    g.phi.resize(total);
    g.theta.resize(total);
    g.directions.resize(total);
    g.weights.resize(total);
    for (int k = 0; k < n_phi; ++k) {
        for (int j = 0; j < n_theta; ++j) {
            const std::size_t idx = static_cast<std::size_t>(k) * n_theta + j;
            g.phi[idx] = k * dphi;
            g.theta[idx] = (j + 0.5) * dth;
            // cell-integrated sin(theta) weight: sums to exactly 2 over theta
            g.weights[idx] = dphi * (std::cos(j * dth) - std::cos((j + 1) * dth));
        }
    }
    // upper hemisphere directly, lower hemisphere by exact negation of the
    // antipodal entry (which is always in the upper half)
    for (int k = 0; k < n_phi; ++k) {
        for (int j = 0; j < n_theta / 2; ++j) {
            const std::size_t idx = static_cast<std::size_t>(k) * n_theta + j;
            g.directions[idx] = direction_3d(g.phi[idx], g.theta[idx]);
        }
    }
    for (int k = 0; k < n_phi; ++k) {
        for (int j = n_theta / 2; j < n_theta; ++j) {
            const std::size_t idx = static_cast<std::size_t>(k) * n_theta + j;
            const int ka = (k + n_phi / 2) % n_phi;
            const std::size_t src = static_cast<std::size_t>(ka) * n_theta + (n_theta - 1 - j);
            g.directions[idx] = negate(g.directions[src]);
        }
    }
    return g;
}

AngularGrid AngularGrid::from_angles_2d(std::vector<double> angles, std::vector<double> w) {
    if (angles.empty() || angles.size() != w.size())
        throw input_error("angular grid: angles/weights mismatch");
    AngularGrid g;
    g.dim = 2;
    g.full_range = false;
    g.phi_count = static_cast<int>(angles.size());
    g.phi = std::move(angles);
    g.weights = std::move(w);
    g.directions.resize(g.phi.size());
    for (std::size_t k = 0; k < g.phi.size(); ++k) g.directions[k] = direction_2d(g.phi[k]);
    g.validate();
    return g;
}

std::size_t AngularGrid::antipode_index(std::size_t k) const {
    if (!full_range) throw input_error("antipode lookup requires a full-range grid");
    if (dim == 2) {
        if (phi_count % 2 != 0)
            throw input_error("antipode lookup requires an even angle count");
        return (k + static_cast<std::size_t>(phi_count) / 2) % static_cast<std::size_t>(phi_count);
    }
    const std::size_t nt = static_cast<std::size_t>(theta_count);
    const std::size_t kp = k / nt, jt = k % nt;
    const std::size_t kpa = (kp + static_cast<std::size_t>(phi_count) / 2) %
                            static_cast<std::size_t>(phi_count);
    return kpa * nt + (nt - 1 - jt);
}

void AngularGrid::validate() const {
    if (directions.size() != weights.size() || directions.size() != phi.size())
        throw input_error("angular grid: inconsistent array sizes");
    for (double w : weights)
        if (!(w > 0.0)) throw input_error("angular grid: weights must be positive");
}

} // namespace uradon
