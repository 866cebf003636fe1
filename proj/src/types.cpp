#include "uradon/types.hpp"

#include <cmath>

namespace uradon {

double Raster::sample(double x, double y) const {
    // bilinear between grid nodes, zero outside the extent
    if (x < x_min || x > x_max || y < y_min || y > y_max) return 0.0;
    double u = (x - x_min) / step_x();
    double v = (y - y_min) / step_y();
    int i = static_cast<int>(u);
    int j = static_cast<int>(v);
    if (i >= nx - 1) i = nx - 2;
    if (j >= ny - 1) j = ny - 2;
    const double tu = u - i, tv = v - j;
    const double a = at(i, j) * (1.0 - tu) + at(i + 1, j) * tu;
    const double b = at(i, j + 1) * (1.0 - tu) + at(i + 1, j + 1) * tu;
    return a * (1.0 - tv) + b * tv;
}

double rel_l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw input_error("rel_l2_diff: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        num += d * d;
        den += b[i] * b[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::sqrt(num);
    return std::sqrt(num / den);
}

} // namespace uradon
