#pragma once

#include <cmath>
#include <vector>

#include "uradon/phantom.hpp"

namespace testing_phantoms {

using namespace uradon;

inline PhantomSpec unit_disc() {
    PhantomSpec s;
    s.n = 2;
    s.primitives.emplace_back(Primitive::disc(0.0, 0.0, 1.0, 1.0), SupportMask::none());
    return s;
}

inline PhantomSpec off_center_disc(double cx = 0.5, double cy = 0.0, double r = 1.0) {
    PhantomSpec s;
    s.n = 2;
    s.primitives.emplace_back(Primitive::disc(cx, cy, r, 1.0), SupportMask::none());
    return s;
}

inline PhantomSpec unit_gaussian() {
    PhantomSpec s;
    s.n = 2;
    s.primitives.emplace_back(Primitive::gaussian2(0.0, 0.0, 1.0, 1.0), SupportMask::none());
    return s;
}

inline PhantomSpec two_discs() {
    PhantomSpec s;
    s.n = 2;
    s.primitives.emplace_back(Primitive::disc(-0.5, 0.0, 0.4, 1.0), SupportMask::none());
    s.primitives.emplace_back(Primitive::disc(0.5, 0.2, 0.3, 0.7), SupportMask::none());
    return s;
}

inline PhantomSpec quadrant_discs(double a1 = 2.0, double a3 = 1.0, double r = 1.0) {
    return make_quadrant_phantom(Primitive::disc(0.0, 0.0, r, a1),
                                 Primitive::disc(0.0, 0.0, r, a3));
}

inline PhantomSpec unit_ball() {
    PhantomSpec s;
    s.n = 3;
    s.primitives.emplace_back(Primitive::ball(0.0, 0.0, 0.0, 1.0, 1.0), SupportMask::none());
    return s;
}

} // namespace testing_phantoms
