#include "uradon/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uradon/errors.hpp"

namespace uradon {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);   // binary: byte-stable newlines
    if (!out) throw input_error("cannot open output file: " + path);
    return out;
}

std::vector<double> parse_csv_doubles(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

} // namespace

void write_sinogram_csv(const Sinogram& s, const std::string& path) {
    auto out = open_out(path);
    out << "# n=" << s.n << "\n";
    out << "# radial=" << format_double(s.radial.tau_min) << ","
        << format_double(s.radial.tau_max) << "," << s.radial.count << "\n";
    out << "# angular=";
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        if (k) out << ",";
        out << format_double(s.angular.phi[k]);
        if (s.n == 3) out << ":" << format_double(s.angular.theta[k]);
    }
    out << "\n";
    out << "# weights=";
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        if (k) out << ",";
        out << format_double(s.angular.weights[k]);
    }
    out << "\n";
    out << "# support=" << format_double(s.support_radius) << ","
        << format_double(s.hard_support_radius) << "," << (s.angular.full_range ? 1 : 0)
        << "," << (s.provenance == Provenance::analytic ? "analytic" : "numeric") << "\n";
    for (std::size_t k = 0; k < s.angle_count(); ++k) {
        const auto row = s.row(k);
        for (int i = 0; i < s.radial.count; ++i) {
            if (i) out << ",";
            out << format_double(row[static_cast<std::size_t>(i)]);
        }
        out << "\n";
    }
}

Sinogram read_sinogram_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open sinogram file: " + path);
    std::string line;
    Sinogram s;
    std::vector<double> weights;
    std::vector<double> phis, thetas;
    bool full_range = false;
    bool have_radial = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto strip = [&](const char* prefix) -> std::string {
                const std::string p = std::string("# ") + prefix + "=";
                if (line.rfind(p, 0) == 0) return line.substr(p.size());
                return {};
            };
            if (auto v = strip("n"); !v.empty()) s.n = std::stoi(v);
            if (auto v = strip("radial"); !v.empty()) {
                const auto f = parse_csv_doubles(v);
                if (f.size() != 3) throw input_error("sinogram CSV: malformed radial header");
                s.radial = RadialGrid(f[0], f[1], static_cast<int>(f[2]));
                have_radial = true;
            }
            if (auto v = strip("angular"); !v.empty()) {
                std::stringstream ss(v);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    const auto colon = tok.find(':');
                    if (colon == std::string::npos) {
                        phis.push_back(std::stod(tok));
                    } else {
                        phis.push_back(std::stod(tok.substr(0, colon)));
                        thetas.push_back(std::stod(tok.substr(colon + 1)));
                    }
                }
            }
            if (auto v = strip("weights"); !v.empty()) weights = parse_csv_doubles(v);
            if (auto v = strip("support"); !v.empty()) {
                std::stringstream ss(v);
                std::string tok;
                std::vector<std::string> parts;
                while (std::getline(ss, tok, ',')) parts.push_back(tok);
                if (parts.size() >= 2) {
                    s.support_radius = std::stod(parts[0]);
                    s.hard_support_radius = std::stod(parts[1]);
                }
                if (parts.size() >= 3) full_range = parts[2] == "1";
                if (parts.size() >= 4)
                    s.provenance = parts[3] == "analytic" ? Provenance::analytic
                                                          : Provenance::numeric;
            }
            continue;
        }
        const auto row = parse_csv_doubles(line);
        s.values.insert(s.values.end(), row.begin(), row.end());
    }
    if (!have_radial || phis.empty())
        throw input_error("sinogram CSV: missing radial or angular header");
    if (weights.empty()) weights.assign(phis.size(), kTwoPi / phis.size());
    if (weights.size() != phis.size())
        throw input_error("sinogram CSV: weights/angles length mismatch");

    s.angular.dim = s.n;
    s.angular.phi = phis;
    s.angular.theta = thetas;
    s.angular.weights = weights;
    s.angular.full_range = full_range;
    s.angular.phi_count = static_cast<int>(phis.size());
    s.angular.theta_count = 0;
    s.angular.directions.resize(phis.size());
    if (s.n == 2) {
        if (full_range && phis.size() % 2 == 0) {
            // rebuild with exact antipodal negation, matching the factory
            s.angular = AngularGrid::full_circle(static_cast<int>(phis.size()));
            s.angular.weights = weights;
        } else {
            for (std::size_t k = 0; k < phis.size(); ++k)
                s.angular.directions[k] = direction_2d(phis[k]);
        }
    } else {
        if (thetas.size() != phis.size())
            throw input_error("sinogram CSV: 3D sinograms need phi:theta angle pairs");
        for (std::size_t k = 0; k < phis.size(); ++k)
            s.angular.directions[k] = direction_3d(phis[k], thetas[k]);
    }
    s.validate();
    return s;
}

void write_raster_csv(const Raster& r, const std::string& path) {
    auto out = open_out(path);
    out << "# grid=" << r.nx << "," << r.ny << "\n";
    out << "# extent=" << format_double(r.x_min) << "," << format_double(r.x_max) << ","
        << format_double(r.y_min) << "," << format_double(r.y_max) << "\n";
    for (int iy = 0; iy < r.ny; ++iy) {
        for (int ix = 0; ix < r.nx; ++ix) {
            if (ix) out << ",";
            out << format_double(r.at(ix, iy));
        }
        out << "\n";
    }
}

Raster read_raster_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open raster file: " + path);
    std::string line;
    int nx = 0, ny = 0;
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# grid=", 0) == 0) {
                const auto f = parse_csv_doubles(line.substr(7));
                if (f.size() != 2) throw input_error("raster CSV: malformed grid header");
                nx = static_cast<int>(f[0]);
                ny = static_cast<int>(f[1]);
            } else if (line.rfind("# extent=", 0) == 0) {
                const auto f = parse_csv_doubles(line.substr(9));
                if (f.size() != 4) throw input_error("raster CSV: malformed extent header");
                x0 = f[0];
                x1 = f[1];
                y0 = f[2];
                y1 = f[3];
            }
            continue;
        }
        const auto row = parse_csv_doubles(line);
        vals.insert(vals.end(), row.begin(), row.end());
    }
    if (nx <= 0 || ny <= 0) throw input_error("raster CSV: missing grid header");
    Raster r(nx, ny, x0, x1, y0, y1);
    if (vals.size() != r.values.size()) throw input_error("raster CSV: value count mismatch");
    r.values = std::move(vals);
    return r;
}

void write_field_csv(const ReconstructionField& f, const std::string& path) {
    auto out = open_out(path);
    out << "# columns=x1,x2" << (f.n == 3 ? ",x3" : "") << ",re_fs,im_fs,re_fa,im_fa\n";
    out << "# c_n=" << format_double(f.c_n) << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3 x = f.targets.target(i);
        // consistency guard: stored addends must reproduce the total
        const Complex tot = f.fS[i] + f.fA[i];
        if (!std::isfinite(tot.real()) || !std::isfinite(tot.imag()))
            throw numeric_error("field CSV: non-finite reconstruction value");
        out << format_double(x[0]) << "," << format_double(x[1]);
        if (f.n == 3) out << "," << format_double(x[2]);
        out << "," << format_double(f.fS[i].real()) << "," << format_double(f.fS[i].imag())
            << "," << format_double(f.fA[i].real()) << "," << format_double(f.fA[i].imag())
            << "\n";
    }
}

namespace {

void write_pgm_matrix(const std::vector<double>& vals, int w, int h, bool flip_rows,
                      const std::string& path) {
    double lo = vals.empty() ? 0.0 : vals[0];
    double hi = lo;
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    auto out = open_out(path);
    out << "P2\n";
    out << "# scale min=" << format_double(lo) << " max=" << format_double(hi) << "\n";
    out << w << " " << h << "\n65535\n";
    for (int row = 0; row < h; ++row) {
        const int r = flip_rows ? h - 1 - row : row;
        for (int col = 0; col < w; ++col) {
            const double v = vals[static_cast<std::size_t>(r) * w + col];
            const long pix = std::lround((v - lo) / span * 65535.0);
            out << pix << (col + 1 == w ? "" : " ");
        }
        out << "\n";
    }
}

} // namespace

void write_pgm(const Raster& r, const std::string& path) {
    write_pgm_matrix(r.values, r.nx, r.ny, /*flip_rows=*/true, path);
}

void write_pgm(const Sinogram& s, const std::string& path) {
    write_pgm_matrix(s.values, s.radial.count, static_cast<int>(s.angle_count()),
                     /*flip_rows=*/false, path);
}

} // namespace uradon
