#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "uradon/angular.hpp"
#include "uradon/sinogram.hpp"

using namespace uradon;
using namespace testing_phantoms;

TEST_SUITE("radon") {

TEST_CASE("numeric radon: disc chord at the center line") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(1.5, 7);
    const AngularGrid ang = AngularGrid::full_circle(4);
    const Sinogram s = direct_radon_numeric(spec, radial, ang, 1e-3);
    CHECK(s.at(0, 3) == doctest::Approx(2.0).epsilon(1e-3));     // tau = 0
    CHECK(s.at(0, 0) == 0.0);                                    // tau beyond support
    CHECK(s.at(0, 6) == 0.0);
}

TEST_CASE("numeric radon: centered disc rows are angle independent") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(1.2, 33);
    const AngularGrid ang = AngularGrid::full_circle(8);
    const Sinogram s = direct_radon_numeric(spec, radial, ang, 1e-3);
    for (std::size_t k = 1; k < s.angle_count(); ++k)
        for (int i = 0; i < radial.count; ++i)
            CHECK(s.at(k, i) == doctest::Approx(s.at(0, i)).epsilon(2e-3));
}

TEST_CASE("numeric radon: step validation") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(1.5, 7);
    const AngularGrid ang = AngularGrid::full_circle(4);
    CHECK_THROWS_AS(direct_radon_numeric(spec, radial, ang, 5.0), input_error);
    CHECK_THROWS_AS(direct_radon_numeric(spec, radial, ang, 0.0), input_error);
}

TEST_CASE("numeric radon from raster tracks the analytic sinogram") {
    const auto spec = unit_gaussian();
    const Raster img = rasterize(spec, 256, 256, -8.0, 8.0, -8.0, 8.0);
    const RadialGrid radial = RadialGrid::symmetric(3.0, 65);
    const AngularGrid ang = AngularGrid::full_circle(8);
    const Sinogram num = direct_radon_numeric(img, radial, ang, 1e-2);
    const Sinogram ana = direct_radon_analytic(spec, radial, ang);
    CHECK(rel_l2_diff(num.values, ana.values) <= 5e-3);
}

TEST_CASE("angular grids: full-range weights sum to the sphere measures") {
    double w2 = 0.0;
    for (double w : AngularGrid::full_circle(360).weights) w2 += w;
    CHECK(std::abs(w2 - kTwoPi) <= 1e-12);
    double w3 = 0.0;
    for (double w : AngularGrid::sphere(64, 32).weights) w3 += w;
    CHECK(std::abs(w3 - 4.0 * kPi) <= 1e-12);
}

TEST_CASE("analytic sinogram: ball rows are direction independent") {
    const auto spec = unit_ball();
    const RadialGrid radial = RadialGrid::symmetric(1.5, 49);
    const AngularGrid ang = AngularGrid::sphere(8, 4);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    for (int i = 0; i < radial.count; ++i) {
        const double tau = radial.value(i);
        const double expected = std::abs(tau) <= 1.0 ? kPi * (1.0 - tau * tau) : 0.0;
        for (std::size_t k = 0; k < s.angle_count(); ++k)
            CHECK(s.at(k, i) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("analytic sinogram: off-center disc shift formula") {
    const auto spec = off_center_disc(0.5, 0.0, 1.0);
    const RadialGrid radial = RadialGrid::symmetric(2.0, 41);
    const AngularGrid ang = AngularGrid::full_circle(12);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    for (std::size_t k = 0; k < ang.size(); ++k) {
        const double c = 0.5 * ang.directions[k][0];
        for (int i = 0; i < radial.count; ++i) {
            const double u = radial.value(i) - c;
            const double expected = std::abs(u) <= 1.0 ? 2.0 * std::sqrt(1.0 - u * u) : 0.0;
            CHECK(s.at(k, i) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic sinogram: two discs equal the sum of the parts") {
    const auto both = two_discs();
    PhantomSpec first, second;
    first.n = second.n = 2;
    first.primitives.push_back(both.primitives[0]);
    second.primitives.push_back(both.primitives[1]);
    const RadialGrid radial = RadialGrid::symmetric(1.5, 33);
    const AngularGrid ang = AngularGrid::full_circle(10);
    const Sinogram sboth = direct_radon_analytic(both, radial, ang);
    const Sinogram s1 = direct_radon_analytic(first, radial, ang);
    const Sinogram s2 = direct_radon_analytic(second, radial, ang);
    for (std::size_t i = 0; i < sboth.values.size(); ++i)
        CHECK(sboth.values[i] == s1.values[i] + s2.values[i]);
}

TEST_CASE("antipodal identity on analytic sinograms") {
    const RadialGrid radial = RadialGrid::symmetric(2.0, 65);
    const AngularGrid ang = AngularGrid::full_circle(36);
    for (const auto& spec : {unit_disc(), off_center_disc(), two_discs(), quadrant_discs()}) {
        const Sinogram s = direct_radon_analytic(spec, radial, ang);
        CHECK(antipodal_check(s) <= 1e-12);
    }
}

TEST_CASE("antipodal identity on a numeric gaussian sinogram") {
    const auto spec = unit_gaussian();
    const RadialGrid radial = RadialGrid::symmetric(4.0, 65);
    const AngularGrid ang = AngularGrid::full_circle(24);
    const Sinogram s = direct_radon_numeric(spec, radial, ang, 1e-3);
    CHECK(antipodal_check(s) <= 1e-6);
}

TEST_CASE("antipodal check detects a perturbed sample") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(2.0, 33);
    const AngularGrid ang = AngularGrid::full_circle(8);
    Sinogram s = direct_radon_analytic(spec, radial, ang);
    s.values[5 * 33 + 7] += 0.1;
    CHECK(antipodal_check(s) >= 0.1);
}

TEST_CASE("antipodal check rejects unsuitable grids") {
    const auto spec = unit_disc();
    const Sinogram odd = direct_radon_analytic(spec, RadialGrid::symmetric(2.0, 33),
                                               AngularGrid::full_circle(9));
    CHECK_THROWS_AS(antipodal_check(odd), input_error);
    const Sinogram shifted = direct_radon_analytic(spec, RadialGrid(-1.5, 2.0, 33),
                                                   AngularGrid::full_circle(8));
    CHECK_THROWS_AS(antipodal_check(shifted), input_error);
}

TEST_CASE("radial derivative: ball second derivative is -2pi inside") {
    const auto spec = unit_ball();
    const RadialGrid radial = RadialGrid::symmetric(1.5, 193);
    const AngularGrid ang = AngularGrid::sphere(4, 2);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    const Sinogram d2 = radial_derivative(s, 2);
    // away from the |tau| = 1 kinks the parabola derivative is exact
    for (int i = 0; i < radial.count; ++i) {
        const double tau = radial.value(i);
        if (std::abs(tau) < 0.9)
            CHECK(d2.at(0, i) == doctest::Approx(-kTwoPi).epsilon(1e-9));
    }
}

TEST_CASE("radial derivative: constants vanish, gaussians match closed form") {
    const auto gspec = unit_gaussian();
    const RadialGrid radial = RadialGrid::symmetric(4.0, 257);
    const AngularGrid ang = AngularGrid::full_circle(4);
    Sinogram s = direct_radon_analytic(gspec, radial, ang);

    Sinogram constant = s;
    for (auto& v : constant.values) v = 3.25;
    constant.support_radius = 0.0;   // invariant does not apply to synthetic rows
    const Sinogram dc = radial_derivative(constant, 1);
    for (double v : dc.values) CHECK(v == 0.0);

    const Sinogram d1 = radial_derivative(s, 1);
    const int i1 = 160;   // tau = 1
    REQUIRE(radial.value(i1) == doctest::Approx(1.0));
    const double expected = -std::sqrt(kTwoPi) * std::exp(-0.5);
    CHECK(d1.at(0, i1) == doctest::Approx(expected).epsilon(5e-4));   // O(dtau^2) stencil

    CHECK_THROWS_AS(radial_derivative(s, 3), input_error);
}

TEST_CASE("radial derivative: halving the step divides the error by about 4") {
    const auto spec = unit_gaussian();
    const AngularGrid ang = AngularGrid::full_circle(2);
    auto max_err = [&](int count) {
        const RadialGrid radial = RadialGrid::symmetric(4.0, count);
        const Sinogram d = radial_derivative(direct_radon_analytic(spec, radial, ang), 1);
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            const double tau = radial.value(i);
            if (std::abs(tau) > 3.0) continue;   // skip the tiny-tail region
            const double exact = -tau * std::sqrt(kTwoPi) * std::exp(-tau * tau / 2.0);
            worst = std::max(worst, std::abs(d.at(0, i) - exact));
        }
        return worst;
    };
    const double e1 = max_err(129);
    const double e2 = max_err(257);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("angular average: centered disc gives 4pi at the origin") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(2.0, 129);
    const AngularGrid ang = AngularGrid::full_circle(90);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    CHECK(angular_average(s, {0.0, 0.0, 0.0}, 0.0) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
    CHECK(angular_average(s, {0.0, 0.0, 0.0}, 5.0) == 0.0);   // beyond the window
}

TEST_CASE("angular average: quadrant phantom asymmetry shows on a half-range grid") {
    const auto spec = quadrant_discs(2.0, 1.0, 1.0);
    const RadialGrid radial = RadialGrid::symmetric(2.0, 257);
    const AngularGrid ang = AngularGrid::full_circle(180);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);

    // over the full circle the antipodal identity pairs phi with phi+pi, so
    // the average is even in eta for every phantom
    const double full_plus = angular_average(s, {0.0, 0.0, 0.0}, 0.5);
    const double full_minus = angular_average(s, {0.0, 0.0, 0.0}, -0.5);
    CHECK(full_plus == doctest::Approx(full_minus).epsilon(1e-12));

    // restricting to half the angles removes the pairing and the amplitude
    // imbalance between the two quadrants becomes visible
    const Sinogram half = mask_sinogram(s, AngularDomain::from_intervals({{0.0, kPi}}));
    const double plus = angular_average(half, {0.0, 0.0, 0.0}, 0.5);
    const double minus = angular_average(half, {0.0, 0.0, 0.0}, -0.5);
    CHECK(std::abs(plus - minus) > 0.1);
}

TEST_CASE("surface terms: support inside the window has exact zero boundary") {
    PhantomSpec spec;
    spec.n = 2;
    spec.primitives.emplace_back(Primitive::disc(0.0, 0.0, 0.5, 1.0), SupportMask::none());
    const RadialGrid radial = RadialGrid::symmetric(1.0, 129);
    const AngularGrid ang = AngularGrid::full_circle(16);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    for (const auto& w : {std::vector<double>{1.0}, std::vector<double>{0.0, 1.0},
                          std::vector<double>{1.0, -2.0, 0.5, 0.0, 1.0}}) {
        CHECK(surface_term_check(s, w).boundary_magnitude == 0.0);
    }
}

TEST_CASE("surface terms: window crossing the support is detected") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(0.4, 65);
    const AngularGrid ang = AngularGrid::full_circle(8);
    const Sinogram s = direct_radon_analytic(spec, radial, ang);
    const auto rep = surface_term_check(s, {0.0, 1.0});
    // endpoint chords 2*sqrt(1-0.16), weighted by tau = +-0.4
    CHECK(rep.boundary_magnitude ==
          doctest::Approx(2.0 * 0.4 * 2.0 * std::sqrt(1.0 - 0.16)).epsilon(1e-12));
    CHECK(rep.boundary_magnitude > 0.0);
}

TEST_CASE("surface terms: IBP residual shrinks at second order") {
    const auto spec = unit_gaussian();
    const AngularGrid ang = AngularGrid::full_circle(6);
    auto residual = [&](int count) {
        const RadialGrid radial = RadialGrid::symmetric(4.0, count);
        const Sinogram s = direct_radon_analytic(spec, radial, ang);
        return surface_term_check(s, {0.0, 1.0}).residual;
    };
    const double r1 = residual(129);
    const double r2 = residual(257);
    CHECK(r1 / r2 > 3.5);
    CHECK(r1 / r2 < 4.5);
}

TEST_CASE("sinogram invariant: boundary samples must vanish for inner support") {
    const auto spec = unit_disc();
    const RadialGrid radial = RadialGrid::symmetric(2.0, 33);
    const AngularGrid ang = AngularGrid::full_circle(8);
    Sinogram s = direct_radon_analytic(spec, radial, ang);
    CHECK_NOTHROW(s.validate());
    s.values[0] = 0.5;
    CHECK_THROWS_AS(s.validate(), input_error);
}

} // TEST_SUITE
