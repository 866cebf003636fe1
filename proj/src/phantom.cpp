#include "uradon/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "uradon/errors.hpp"

namespace uradon {

namespace {

constexpr double kGaussianSupportSigmas = 8.0;   // below 1e-12 of amplitude outside

struct Interval {
    double lo, hi;
    bool empty() const { return !(hi > lo); }
};

Interval intersect(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

// Quadrant sign pattern (s1, s2): the mask keeps s1*x1 >= 0 and s2*x2 >= 0.
std::array<double, 2> quadrant_signs(Quadrant q) {
    switch (q) {
        case Quadrant::I: return {1.0, 1.0};
        case Quadrant::II: return {-1.0, 1.0};
        case Quadrant::III: return {-1.0, -1.0};
        default: return {1.0, -1.0};
    }
}

} // namespace

SupportMask SupportMask::box2d(double x0, double x1, double y0, double y1) {
    SupportMask m;
    m.kind = MaskKind::box;
    m.box[0] = {x0, x1};
    m.box[1] = {y0, y1};
    m.box[2] = {0.0, 0.0};
    if (!(x1 > x0) || !(y1 > y0)) throw input_error("box mask: intervals must be nonempty");
    return m;
}

SupportMask SupportMask::quadrant_mask(Quadrant q) {
    SupportMask m;
    m.kind = MaskKind::quadrant;
    m.quadrant = q;
    return m;
}

bool SupportMask::contains(const Vec3& p, int n) const {
    switch (kind) {
        case MaskKind::none:
            return true;
        case MaskKind::box:
            for (int i = 0; i < n; ++i)
                if (p[i] < box[i][0] || p[i] > box[i][1]) return false;
            return true;
        case MaskKind::quadrant: {
            const auto s = quadrant_signs(quadrant);
            return s[0] * p[0] >= 0.0 && s[1] * p[1] >= 0.0;
        }
    }
    return true;
}

Primitive Primitive::disc(double cx, double cy, double radius, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::disc2d;
    p.center = {cx, cy, 0.0};
    p.shape = {radius, 0.0};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

Primitive Primitive::ellipse(double cx, double cy, double a, double b, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::ellipse2d;
    p.center = {cx, cy, 0.0};
    p.shape = {a, b};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

Primitive Primitive::rectangle(double cx, double cy, double hx, double hy, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::rectangle2d;
    p.center = {cx, cy, 0.0};
    p.shape = {hx, hy};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

Primitive Primitive::gaussian2(double cx, double cy, double width, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::gaussian2d;
    p.center = {cx, cy, 0.0};
    p.shape = {width, 0.0};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

Primitive Primitive::ball(double cx, double cy, double cz, double radius, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::ball3d;
    p.center = {cx, cy, cz};
    p.shape = {radius, 0.0};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

Primitive Primitive::gaussian3(double cx, double cy, double cz, double width, double amplitude) {
    Primitive p;
    p.kind = PrimitiveKind::gaussian3d;
    p.center = {cx, cy, cz};
    p.shape = {width, 0.0};
    p.amplitude = amplitude;
    p.validate();
    return p;
}

int Primitive::dim() const {
    switch (kind) {
        case PrimitiveKind::ball3d:
        case PrimitiveKind::gaussian3d:
            return 3;
        default:
            return 2;
    }
}

bool Primitive::sharp_support() const {
    return kind != PrimitiveKind::gaussian2d && kind != PrimitiveKind::gaussian3d;
}

void Primitive::validate() const {
    if (!(shape[0] > 0.0))
        throw input_error("primitive: radius/semi-axis/half-width/width must be positive");
    if ((kind == PrimitiveKind::ellipse2d || kind == PrimitiveKind::rectangle2d) && !(shape[1] > 0.0))
        throw input_error("primitive: second shape parameter must be positive");
    if (!std::isfinite(amplitude)) throw input_error("primitive: amplitude must be finite");
    for (double c : center)
        if (!std::isfinite(c)) throw input_error("primitive: center must be finite");
}

double Primitive::value(const Vec3& p) const {
    const double dx = p[0] - center[0];
    const double dy = p[1] - center[1];
    const double dz = p[2] - center[2];
    switch (kind) {
        case PrimitiveKind::disc2d:
            return dx * dx + dy * dy <= shape[0] * shape[0] ? amplitude : 0.0;
        case PrimitiveKind::ellipse2d: {
            const double u = dx / shape[0], v = dy / shape[1];
            return u * u + v * v <= 1.0 ? amplitude : 0.0;
        }
        case PrimitiveKind::rectangle2d:
            return std::abs(dx) <= shape[0] && std::abs(dy) <= shape[1] ? amplitude : 0.0;
        case PrimitiveKind::gaussian2d: {
            const double r2 = dx * dx + dy * dy;
            const double cut = kGaussianSupportSigmas * shape[0];
            if (r2 > cut * cut) return 0.0;
            return amplitude * std::exp(-r2 / (2.0 * shape[0] * shape[0]));
        }
        case PrimitiveKind::ball3d:
            return dx * dx + dy * dy + dz * dz <= shape[0] * shape[0] ? amplitude : 0.0;
        case PrimitiveKind::gaussian3d: {
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double cut = kGaussianSupportSigmas * shape[0];
            if (r2 > cut * cut) return 0.0;
            return amplitude * std::exp(-r2 / (2.0 * shape[0] * shape[0]));
        }
    }
    return 0.0;
}

std::array<std::array<double, 2>, 3> Primitive::bounding_box() const {
    std::array<double, 3> half{0.0, 0.0, 0.0};
    switch (kind) {
        case PrimitiveKind::disc2d: half = {shape[0], shape[0], 0.0}; break;
        case PrimitiveKind::ellipse2d: half = {shape[0], shape[1], 0.0}; break;
        case PrimitiveKind::rectangle2d: half = {shape[0], shape[1], 0.0}; break;
        case PrimitiveKind::gaussian2d: {
            const double c = kGaussianSupportSigmas * shape[0];
            half = {c, c, 0.0};
            break;
        }
        case PrimitiveKind::ball3d: half = {shape[0], shape[0], shape[0]}; break;
        case PrimitiveKind::gaussian3d: {
            const double c = kGaussianSupportSigmas * shape[0];
            half = {c, c, c};
            break;
        }
    }
    std::array<std::array<double, 2>, 3> bb{};
    for (int i = 0; i < 3; ++i) bb[i] = {center[i] - half[i], center[i] + half[i]};
    return bb;
}

void PhantomSpec::validate() const {
    if (n != 2 && n != 3) throw input_error("phantom: dimension must be 2 or 3");
    for (const auto& [prim, mask] : primitives) {
        prim.validate();
        if (prim.dim() != n) throw input_error("phantom: primitive dimensionality differs from n");
        if (mask.kind == MaskKind::quadrant && n != 2)
            throw input_error("phantom: quadrant masks are 2D only");
    }
    if (global_mask.kind == MaskKind::quadrant && n != 2)
        throw input_error("phantom: quadrant masks are 2D only");
}

namespace {

// Intersect a primitive bbox with its mask region; false if empty.
bool masked_bbox(const Primitive& prim, const SupportMask& mask, const SupportMask& global,
                 int n, std::array<std::array<double, 2>, 3>& out) {
    out = prim.bounding_box();
    for (const SupportMask* m : {&mask, &global}) {
        if (m->kind == MaskKind::box) {
            for (int i = 0; i < n; ++i) {
                out[i][0] = std::max(out[i][0], m->box[i][0]);
                out[i][1] = std::min(out[i][1], m->box[i][1]);
            }
        } else if (m->kind == MaskKind::quadrant) {
            const auto s = quadrant_signs(m->quadrant);
            for (int i = 0; i < 2; ++i) {
                if (s[i] > 0)
                    out[i][0] = std::max(out[i][0], 0.0);
                else
                    out[i][1] = std::min(out[i][1], 0.0);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (out[i][0] > out[i][1]) return false;
    return true;
}

double bbox_radius(const std::array<std::array<double, 2>, 3>& bb, int n) {
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m = std::max(std::abs(bb[i][0]), std::abs(bb[i][1]));
        r2 += m * m;
    }
    return std::sqrt(r2);
}

// Exact circumradius of the unmasked primitive about the origin.
double primitive_circumradius(const Primitive& prim) {
    const double c = norm(prim.center, prim.dim());
    switch (prim.kind) {
        case PrimitiveKind::disc2d:
        case PrimitiveKind::ball3d:
            return c + prim.shape[0];
        case PrimitiveKind::ellipse2d:
            return c + std::max(prim.shape[0], prim.shape[1]);
        case PrimitiveKind::rectangle2d: {
            double worst = 0.0;
            for (double sx : {-1.0, 1.0})
                for (double sy : {-1.0, 1.0}) {
                    const double x = prim.center[0] + sx * prim.shape[0];
                    const double y = prim.center[1] + sy * prim.shape[1];
                    worst = std::max(worst, std::hypot(x, y));
                }
            return worst;
        }
        default:
            return c + kGaussianSupportSigmas * prim.shape[0];
    }
}

} // namespace

std::array<std::array<double, 2>, 3> PhantomSpec::bounding_box() const {
    std::array<std::array<double, 2>, 3> bb{};
    bool first = true;
    for (const auto& [prim, mask] : primitives) {
        std::array<std::array<double, 2>, 3> b{};
        if (!masked_bbox(prim, mask, global_mask, n, b)) continue;
        if (first) {
            bb = b;
            first = false;
        } else {
            for (int i = 0; i < n; ++i) {
                bb[i][0] = std::min(bb[i][0], b[i][0]);
                bb[i][1] = std::max(bb[i][1], b[i][1]);
            }
        }
    }
    return bb;
}

double PhantomSpec::support_radius() const {
    double r = 0.0;
    for (const auto& [prim, mask] : primitives) {
        std::array<std::array<double, 2>, 3> b{};
        if (!masked_bbox(prim, mask, global_mask, n, b)) continue;
        // masking can only shrink the support, so take the tighter bound
        r = std::max(r, std::min(bbox_radius(b, n), primitive_circumradius(prim)));
    }
    return r;
}

double PhantomSpec::hard_support_radius() const {
    double r = 0.0;
    for (const auto& [prim, mask] : primitives) {
        if (!prim.sharp_support()) continue;
        std::array<std::array<double, 2>, 3> b{};
        if (!masked_bbox(prim, mask, global_mask, n, b)) continue;
        r = std::max(r, std::min(bbox_radius(b, n), primitive_circumradius(prim)));
    }
    return r;
}

bool PhantomSpec::has_sharp_primitives() const {
    for (const auto& [prim, mask] : primitives)
        if (prim.sharp_support()) return true;
    return false;
}

double eval_phantom(const PhantomSpec& spec, const std::vector<double>& point) {
    if (static_cast<int>(point.size()) != spec.n)
        throw input_error("eval: point dimension differs from the phantom dimension");
    Vec3 p{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < point.size(); ++i) p[i] = point[i];
    return eval_phantom(spec, p);
}

double eval_phantom(const PhantomSpec& spec, const Vec3& point) {
    double sum = 0.0;
    for (const auto& [prim, mask] : spec.primitives) {
        if (!mask.contains(point, spec.n)) continue;
        if (!spec.global_mask.contains(point, spec.n)) continue;
        sum += prim.value(point);
    }
    return sum;
}

namespace {

// Combined mask for analytic evaluation; throws if the combination cannot be
// expressed as one of the implemented closed forms.
struct EffectiveMask {
    MaskKind kind;
    std::array<std::array<double, 2>, 2> box;
    Quadrant quadrant;
    bool empty;   // provably empty intersection: contributes 0
};

EffectiveMask combine_masks(const SupportMask& a, const SupportMask& b) {
    if (a.kind == MaskKind::none && b.kind == MaskKind::none)
        return {MaskKind::none, {}, Quadrant::I, false};
    if (a.kind == MaskKind::none || b.kind == MaskKind::none) {
        const SupportMask& m = a.kind == MaskKind::none ? b : a;
        if (m.kind == MaskKind::box)
            return {MaskKind::box, {m.box[0], m.box[1]}, Quadrant::I, false};
        return {MaskKind::quadrant, {}, m.quadrant, false};
    }
    if (a.kind == MaskKind::box && b.kind == MaskKind::box) {
        EffectiveMask e{MaskKind::box, {}, Quadrant::I, false};
        for (int i = 0; i < 2; ++i) {
            e.box[i][0] = std::max(a.box[i][0], b.box[i][0]);
            e.box[i][1] = std::min(a.box[i][1], b.box[i][1]);
            if (e.box[i][0] > e.box[i][1]) e.empty = true;
        }
        return e;
    }
    if (a.kind == MaskKind::quadrant && b.kind == MaskKind::quadrant) {
        if (a.quadrant == b.quadrant)
            return {MaskKind::quadrant, {}, a.quadrant, false};
        return {MaskKind::none, {}, Quadrant::I, true};   // disjoint quadrants
    }
    throw capability_error("analytic Radon: mixed box/quadrant masking has no closed form; "
                           "use numeric integration");
}

double chord_disc_quadrant(const Primitive& prim, Quadrant q, double tau, const Vec3& nv) {
    // Line P(l) = tau*n + l*n_perp; intersect the disc interval with the two
    // quadrant half-planes.
    const Vec3 np{-nv[1], nv[0], 0.0};
    const double dx = tau * nv[0] - prim.center[0];
    const double dy = tau * nv[1] - prim.center[1];
    const double b = dx * np[0] + dy * np[1];
    const double c0 = dx * dx + dy * dy - prim.shape[0] * prim.shape[0];
    const double disc = b * b - c0;
    if (disc <= 0.0) return 0.0;
    const double sq = std::sqrt(disc);
    Interval iv{-b - sq, -b + sq};
    const auto s = quadrant_signs(q);
    for (int axis = 0; axis < 2; ++axis) {
        // s * (tau*n[axis] + l*np[axis]) >= 0
        const double slope = s[axis] * np[axis];
        const double off = s[axis] * tau * nv[axis];
        if (std::abs(slope) < 1e-14) {
            if (off < 0.0) return 0.0;
        } else if (slope > 0.0) {
            iv = intersect(iv, {-off / slope, std::numeric_limits<double>::infinity()});
        } else {
            iv = intersect(iv, {-std::numeric_limits<double>::infinity(), -off / slope});
        }
        if (iv.empty()) return 0.0;
    }
    return prim.amplitude * (iv.hi - iv.lo);
}

double radon_rectangle(double hx, double hy, double amplitude, double u, const Vec3& nv) {
    const double an1 = std::abs(nv[0]), an2 = std::abs(nv[1]);
    if (an1 < 1e-14) return std::abs(u) <= hy * an2 ? amplitude * 2.0 * hx / an2 : 0.0;
    if (an2 < 1e-14) return std::abs(u) <= hx * an1 ? amplitude * 2.0 * hy / an1 : 0.0;
    const double alpha = hx * an1, beta = hy * an2;
    const double overlap = std::min(2.0 * std::min(alpha, beta), alpha + beta - std::abs(u));
    if (overlap <= 0.0) return 0.0;
    return amplitude * overlap / (an1 * an2);
}

double analytic_radon_primitive(const Primitive& prim, const EffectiveMask& mask,
                                double tau, const Vec3& nv) {
    if (mask.empty) return 0.0;
    const double u = tau - dot(nv, prim.center, prim.dim());
    if (mask.kind == MaskKind::none) {
        switch (prim.kind) {
            case PrimitiveKind::disc2d: {
                const double r = prim.shape[0];
                return std::abs(u) <= r ? prim.amplitude * 2.0 * std::sqrt(r * r - u * u) : 0.0;
            }
            case PrimitiveKind::ellipse2d: {
                const double a = prim.shape[0], b = prim.shape[1];
                const double rho2 = a * a * nv[0] * nv[0] + b * b * nv[1] * nv[1];
                if (u * u >= rho2) return 0.0;
                return prim.amplitude * 2.0 * a * b * std::sqrt(rho2 - u * u) / rho2;
            }
            case PrimitiveKind::rectangle2d:
                return radon_rectangle(prim.shape[0], prim.shape[1], prim.amplitude, u, nv);
            case PrimitiveKind::gaussian2d: {
                const double w = prim.shape[0];
                if (std::abs(u) >= kGaussianSupportSigmas * w) return 0.0;   // 8-sigma cut
                return prim.amplitude * w * std::sqrt(kTwoPi) * std::exp(-u * u / (2.0 * w * w));
            }
            case PrimitiveKind::ball3d: {
                const double r = prim.shape[0];
                return std::abs(u) <= r ? prim.amplitude * kPi * (r * r - u * u) : 0.0;
            }
            case PrimitiveKind::gaussian3d: {
                const double w = prim.shape[0];
                if (std::abs(u) >= kGaussianSupportSigmas * w) return 0.0;
                return prim.amplitude * kTwoPi * w * w * std::exp(-u * u / (2.0 * w * w));
            }
        }
    }
    if (mask.kind == MaskKind::quadrant && prim.kind == PrimitiveKind::disc2d)
        return chord_disc_quadrant(prim, mask.quadrant, tau, nv);
    if (mask.kind == MaskKind::box && prim.kind == PrimitiveKind::rectangle2d) {
        // rectangle intersected with a box is another rectangle
        std::array<double, 2> lo{}, hi{};
        for (int i = 0; i < 2; ++i) {
            lo[i] = std::max(prim.center[i] - prim.shape[i], mask.box[i][0]);
            hi[i] = std::min(prim.center[i] + prim.shape[i], mask.box[i][1]);
            if (lo[i] >= hi[i]) return 0.0;
        }
        const Vec3 c{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.0};
        const double ue = tau - dot(nv, c, 2);
        return radon_rectangle(0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1]),
                               prim.amplitude, ue, nv);
    }
    throw capability_error("analytic Radon: no closed form for this (primitive, mask) pair; "
                           "use numeric integration");
}

} // namespace

double analytic_radon(const PhantomSpec& spec, double tau, const Vec3& direction) {
    const double len = norm(direction, spec.n);
    if (std::abs(len - 1.0) > 1e-12)
        throw input_error("analytic Radon: direction must be a unit vector");
    double sum = 0.0;
    for (const auto& [prim, mask] : spec.primitives) {
        const EffectiveMask em = combine_masks(mask, spec.global_mask);
        sum += analytic_radon_primitive(prim, em, tau, direction);
    }
    return sum;
}

bool analytic_radon_supported(const PhantomSpec& spec) {
    try {
        Vec3 d{1.0, 0.0, 0.0};
        (void)analytic_radon(spec, 0.0, d);
        return true;
    } catch (const capability_error&) {
        return false;
    }
}

Raster rasterize(const PhantomSpec& spec, int nx, int ny,
                 double x_min, double x_max, double y_min, double y_max) {
    if (nx <= 0 || ny <= 0) throw input_error("rasterize: grid must have positive size");
    if (spec.n != 2) throw input_error("rasterize: 2D phantoms only");
    Raster r(nx, ny, x_min, x_max, y_min, y_max);
    for (int iy = 0; iy < ny; ++iy) {
        const double y = r.node_y(iy);
        for (int ix = 0; ix < nx; ++ix) {
            r.at(ix, iy) = eval_phantom(spec, Vec3{r.node_x(ix), y, 0.0});
        }
    }
    return r;
}

PhantomSpec make_quadrant_phantom(const Primitive& f1, const Primitive& f3) {
    if (f1.dim() != 2 || f3.dim() != 2)
        throw input_error("quadrant phantom: both primitives must be 2D");
    PhantomSpec spec;
    spec.n = 2;
    spec.primitives.emplace_back(f1, SupportMask::quadrant_mask(Quadrant::I));
    spec.primitives.emplace_back(f3, SupportMask::quadrant_mask(Quadrant::III));
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw input_error(std::string("phantom JSON: unknown key \"") + it.key() +
                                   "\" in " + where);
    }
}

SupportMask mask_from_json(const json& j) {
    if (!j.is_object()) throw input_error("phantom JSON: mask must be an object");
    reject_unknown_keys(j, {"kind", "box", "quadrant"}, "mask");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "none") return SupportMask::none();
    if (kind == "box") {
        const auto& b = j.at("box");
        if (!b.is_array() || b.size() < 2) throw input_error("phantom JSON: box needs 2 intervals");
        SupportMask m;
        m.kind = MaskKind::box;
        for (std::size_t i = 0; i < std::min<std::size_t>(b.size(), 3); ++i) {
            m.box[i] = {b[i].at(0).get<double>(), b[i].at(1).get<double>()};
            if (!(m.box[i][1] > m.box[i][0]))
                throw input_error("phantom JSON: box interval must be nonempty");
        }
        return m;
    }
    if (kind == "quadrant") {
        const std::string q = j.at("quadrant").get<std::string>();
        if (q == "I") return SupportMask::quadrant_mask(Quadrant::I);
        if (q == "II") return SupportMask::quadrant_mask(Quadrant::II);
        if (q == "III") return SupportMask::quadrant_mask(Quadrant::III);
        if (q == "IV") return SupportMask::quadrant_mask(Quadrant::IV);
        throw input_error("phantom JSON: quadrant must be one of I, II, III, IV");
    }
    throw input_error("phantom JSON: mask kind must be none, box or quadrant");
}

json mask_to_json(const SupportMask& m, int n) {
    json j;
    switch (m.kind) {
        case MaskKind::none:
            j["kind"] = "none";
            break;
        case MaskKind::box: {
            j["kind"] = "box";
            json b = json::array();
            for (int i = 0; i < n; ++i) b.push_back({m.box[i][0], m.box[i][1]});
            j["box"] = b;
            break;
        }
        case MaskKind::quadrant: {
            j["kind"] = "quadrant";
            static const char* names[] = {"I", "II", "III", "IV"};
            j["quadrant"] = names[static_cast<int>(m.quadrant)];
            break;
        }
    }
    return j;
}

const char* kind_name(PrimitiveKind k) {
    switch (k) {
        case PrimitiveKind::disc2d: return "disc2d";
        case PrimitiveKind::ellipse2d: return "ellipse2d";
        case PrimitiveKind::rectangle2d: return "rectangle2d";
        case PrimitiveKind::gaussian2d: return "gaussian2d";
        case PrimitiveKind::ball3d: return "ball3d";
        default: return "gaussian3d";
    }
}

Primitive primitive_from_json(const json& j) {
    reject_unknown_keys(j, {"kind", "center", "params", "amplitude", "mask"}, "primitive");
    const std::string kind = j.at("kind").get<std::string>();
    const auto& cj = j.at("center");
    if (!cj.is_array()) throw input_error("phantom JSON: center must be an array");
    Vec3 c{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < std::min<std::size_t>(cj.size(), 3); ++i)
        c[i] = cj[i].get<double>();
    const double amp = j.at("amplitude").get<double>();
    const json& pj = j.at("params");

    if (kind == "disc2d") {
        reject_unknown_keys(pj, {"radius"}, "disc2d params");
        return Primitive::disc(c[0], c[1], pj.at("radius").get<double>(), amp);
    }
    if (kind == "ellipse2d") {
        reject_unknown_keys(pj, {"semi_axes"}, "ellipse2d params");
        const auto& a = pj.at("semi_axes");
        return Primitive::ellipse(c[0], c[1], a.at(0).get<double>(), a.at(1).get<double>(), amp);
    }
    if (kind == "rectangle2d") {
        reject_unknown_keys(pj, {"half_widths"}, "rectangle2d params");
        const auto& h = pj.at("half_widths");
        return Primitive::rectangle(c[0], c[1], h.at(0).get<double>(), h.at(1).get<double>(), amp);
    }
    if (kind == "gaussian2d") {
        reject_unknown_keys(pj, {"width"}, "gaussian2d params");
        return Primitive::gaussian2(c[0], c[1], pj.at("width").get<double>(), amp);
    }
    if (kind == "ball3d") {
        reject_unknown_keys(pj, {"radius"}, "ball3d params");
        return Primitive::ball(c[0], c[1], c[2], pj.at("radius").get<double>(), amp);
    }
    if (kind == "gaussian3d") {
        reject_unknown_keys(pj, {"width"}, "gaussian3d params");
        return Primitive::gaussian3(c[0], c[1], c[2], pj.at("width").get<double>(), amp);
    }
    throw input_error("phantom JSON: unknown primitive kind \"" + kind + "\"");
}

json primitive_to_json(const Primitive& p, const SupportMask& m) {
    json j;
    j["kind"] = kind_name(p.kind);
    json c = json::array();
    for (int i = 0; i < p.dim(); ++i) c.push_back(p.center[i]);
    j["center"] = c;
    json params;
    switch (p.kind) {
        case PrimitiveKind::disc2d:
        case PrimitiveKind::ball3d:
            params["radius"] = p.shape[0];
            break;
        case PrimitiveKind::ellipse2d:
            params["semi_axes"] = {p.shape[0], p.shape[1]};
            break;
        case PrimitiveKind::rectangle2d:
            params["half_widths"] = {p.shape[0], p.shape[1]};
            break;
        default:
            params["width"] = p.shape[0];
            break;
    }
    j["params"] = params;
    j["amplitude"] = p.amplitude;
    j["mask"] = mask_to_json(m, p.dim());
    return j;
}

} // namespace

PhantomSpec phantom_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("phantom JSON: parse failure: ") + e.what());
    }
    try {
        reject_unknown_keys(j, {"n", "primitives", "global_mask"}, "document root");
        PhantomSpec spec;
        spec.n = j.at("n").get<int>();
        for (const auto& pj : j.at("primitives")) {
            Primitive p = primitive_from_json(pj);
            SupportMask m = pj.contains("mask") ? mask_from_json(pj.at("mask"))
                                                : SupportMask::none();
            spec.primitives.emplace_back(p, m);
        }
        if (j.contains("global_mask")) spec.global_mask = mask_from_json(j.at("global_mask"));
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw input_error(std::string("phantom JSON: ") + e.what());
    }
}

std::string phantom_to_json(const PhantomSpec& spec) {
    json j;
    j["n"] = spec.n;
    json prims = json::array();
    for (const auto& [p, m] : spec.primitives) prims.push_back(primitive_to_json(p, m));
    j["primitives"] = prims;
    j["global_mask"] = mask_to_json(spec.global_mask, spec.n);
    return j.dump(2);
}

PhantomSpec load_phantom_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open phantom spec file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return phantom_from_json(ss.str());
}

} // namespace uradon
