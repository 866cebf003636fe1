// Command-line shell: phantom -> sinogram -> reconstruction -> verification,
// with reproducible CSV/PGM outputs and a resolved-config echo per run.
//
// Exit codes: 0 pass, 1 check failed, 2 usage/validation, 3 numeric
// non-convergence.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uradon/angular.hpp"
#include "uradon/inversion.hpp"
#include "uradon/io.hpp"
#include "uradon/phantom.hpp"
#include "uradon/sinogram.hpp"
#include "uradon/slice.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace uradon;

namespace {

struct check_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw input_error(std::string("cannot parse ") + what + ": \"" + tok + "\"");
            }
        }
    if (out.empty()) throw input_error(std::string("empty list for ") + what);
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double lap() {
        const auto t1 = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(t1 - t0).count();
        t0 = t1;
        return s;
    }
};

// ---------------------------------------------------------------------------
// shared options

struct CommonOpts {
    std::string spec_path;
    std::string out_dir;
    std::string grid = "64";
    std::string extent = "2";
    std::string angles = "360";
    int radial = 513;
    double window = 4.0;
    int threads = 1;
    std::uint64_t seed = 20240901ull;
};

struct GridSpec {
    int nx, ny;
    double x0, x1, y0, y1;
};

GridSpec parse_grid(const std::string& grid, const std::string& extent) {
    GridSpec g{};
    const auto x = grid.find('x');
    if (x == std::string::npos) {
        g.nx = g.ny = std::stoi(grid);
    } else {
        g.nx = std::stoi(grid.substr(0, x));
        g.ny = std::stoi(grid.substr(x + 1));
    }
    const auto vals = parse_list(extent, "--extent");
    if (vals.size() == 1) {
        g.x0 = g.y0 = -vals[0];
        g.x1 = g.y1 = vals[0];
    } else if (vals.size() == 4) {
        g.x0 = vals[0];
        g.x1 = vals[1];
        g.y0 = vals[2];
        g.y1 = vals[3];
    } else {
        throw input_error("--extent expects one half-width or x0,x1,y0,y1");
    }
    return g;
}

AngularGrid parse_angles(const std::string& angles, int n) {
    const auto x = angles.find('x');
    if (n == 3 || x != std::string::npos) {
        if (x == std::string::npos)
            throw input_error("3D sinograms need --angles KxJ (phi x theta counts)");
        return AngularGrid::sphere(std::stoi(angles.substr(0, x)),
                                   std::stoi(angles.substr(x + 1)));
    }
    return AngularGrid::full_circle(std::stoi(angles));
}

PhantomSpec load_spec(const std::string& path) {
    if (path.empty()) throw input_error("--spec is required");
    return load_phantom_file(path);
}

void ensure_out(const std::string& dir) {
    if (dir.empty()) throw input_error("--out is required");
    fs::create_directories(dir);
}

ordered_json spec_json(const PhantomSpec& spec) {
    return ordered_json::parse(phantom_to_json(spec));
}

void write_config(const std::string& dir, const std::string& subcommand,
                  const ordered_json& options, const PhantomSpec* spec) {
    ordered_json j;
    j["subcommand"] = subcommand;
    j["options"] = options;
    if (spec) j["phantom"] = spec_json(*spec);
    std::ofstream out(fs::path(dir) / "config.json", std::ios::binary);
    out << j.dump(2) << "\n";
}

Sinogram synthesize_sinogram(const PhantomSpec& spec, const AngularGrid& ang, int radial,
                             double window, bool numeric, double step) {
    if (spec.hard_support_radius() >= window)
        throw input_error("radial window does not enclose the source support "
                          "(boundary exclusion would be violated); widen --window");
    const RadialGrid rg = RadialGrid::symmetric(window, radial);
    Sinogram s = numeric ? direct_radon_numeric(spec, rg, ang, step)
                         : direct_radon_analytic(spec, rg, ang);
    s.validate();
    return s;
}

AngularDomain parse_range(const std::string& range, int n) {
    if (range == "full") return AngularDomain::full_range(n);
    if (range == "half") {
        if (n != 2) throw input_error("--range half is a 2D option");
        return AngularDomain::half_range_2d();
    }
    if (range.rfind("custom:", 0) == 0) {
        if (n != 2) throw input_error("--range custom is a 2D option");
        std::vector<AngularInterval> ivs;
        std::stringstream ss(range.substr(7));
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            const auto v = parse_list(tok, "--range interval");
            if (v.size() != 2) throw input_error("--range custom expects lo,hi pairs");
            ivs.push_back({v[0], v[1]});
        }
        return AngularDomain::from_intervals(ivs);
    }
    throw input_error("--range must be full, half or custom:lo,hi[;lo,hi...]");
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_phantom(const CommonOpts& o) {
    const PhantomSpec spec = load_spec(o.spec_path);
    if (spec.n != 2) throw input_error("phantom rasters are 2D; use sinogram for n=3");
    ensure_out(o.out_dir);
    const GridSpec g = parse_grid(o.grid, o.extent);
    const Raster r = rasterize(spec, g.nx, g.ny, g.x0, g.x1, g.y0, g.y1);
    write_raster_csv(r, (fs::path(o.out_dir) / "raster.csv").string());
    write_pgm(r, (fs::path(o.out_dir) / "raster.pgm").string());
    ordered_json opts;
    opts["spec"] = o.spec_path;
    opts["grid"] = o.grid;
    opts["extent"] = o.extent;
    write_config(o.out_dir, "phantom", opts, &spec);
    std::printf("phantom: wrote %dx%d raster to %s\n", g.nx, g.ny, o.out_dir.c_str());
    return 0;
}

int cmd_sinogram(const CommonOpts& o, bool numeric, double step) {
    const PhantomSpec spec = load_spec(o.spec_path);
    ensure_out(o.out_dir);
    const AngularGrid ang = parse_angles(o.angles, spec.n);
    Timer timer;
    const Sinogram s = synthesize_sinogram(spec, ang, o.radial, o.window, numeric, step);
    const double t_synth = timer.lap();
    write_sinogram_csv(s, (fs::path(o.out_dir) / "sinogram.csv").string());
    write_pgm(s, (fs::path(o.out_dir) / "sinogram.pgm").string());
    ordered_json opts;
    opts["spec"] = o.spec_path;
    opts["angles"] = o.angles;
    opts["radial"] = o.radial;
    opts["window"] = o.window;
    opts["numeric"] = numeric;
    opts["step"] = step;
    write_config(o.out_dir, "sinogram", opts, &spec);
    std::printf("sinogram: %zu angles x %d radial samples in %.2fs -> %s\n",
                s.angle_count(), s.radial.count, t_synth, o.out_dir.c_str());
    return 0;
}

struct ReconstructOpts {
    std::string sinogram_path;
    std::string range = "full";
    std::string terms = "fs,fa";
    std::string mode = "exact";
    std::string points;          // "x,y[,z];x,y[,z];..." alternative to a raster
    std::string reference;
    double eps = 0.0;            // 0: default 4*dtau
    double kernel_window = 0.0;  // 0: default tau_max
    bool no_richardson = false;
    bool double_half_range = false;
};

unsigned parse_terms(const std::string& text) {
    unsigned t = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "fs") t |= kTermFS;
        else if (tok == "fa") t |= kTermFA;
        else throw input_error("--terms accepts fs, fa or fs,fa");
    }
    if (t == 0) throw input_error("--terms must request at least one term");
    return t;
}

int cmd_reconstruct(const CommonOpts& o, const ReconstructOpts& r) {
    ensure_out(o.out_dir);
    Timer timer;
    PhantomSpec spec;
    const bool have_spec = !o.spec_path.empty();
    if (have_spec) spec = load_spec(o.spec_path);

    Sinogram s;
    if (!r.sinogram_path.empty()) {
        s = read_sinogram_csv(r.sinogram_path);
    } else {
        if (!have_spec) throw input_error("reconstruct needs --spec or --sinogram");
        s = synthesize_sinogram(spec, parse_angles(o.angles, spec.n), o.radial, o.window,
                                false, 0.0);
    }
    const double t_sino = timer.lap();

    const AngularDomain domain = parse_range(r.range, s.n);
    if (r.double_half_range && std::abs(domain.measure() - kPi) > 1e-9)
        throw input_error("--double-half-range applies only to domains of total measure pi");

    const double H = r.kernel_window > 0.0 ? r.kernel_window : s.radial.tau_max;
    KernelSpec kspec = KernelSpec::exact(s.n, H);
    if (r.mode == "eps") {
        const double eps = r.eps > 0.0 ? r.eps : 4.0 * s.radial.spacing();
        kspec = KernelSpec::epsilon_mode(s.n, H, eps,
                                         r.no_richardson
                                             ? std::nullopt
                                             : std::make_optional(std::make_pair(eps, eps / 2.0)));
    } else if (r.mode != "exact") {
        throw input_error("--mode must be exact or eps");
    }

    TargetSet targets;
    if (!r.points.empty()) {
        std::vector<Vec3> pts;
        std::stringstream ss(r.points);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            const auto v = parse_list(tok, "--points");
            if (static_cast<int>(v.size()) != s.n)
                throw input_error("--points entries must have n coordinates");
            pts.push_back({v[0], v[1], v.size() > 2 ? v[2] : 0.0});
        }
        targets = TargetSet::point_list(pts);
    } else {
        if (s.n != 2) throw input_error("raster reconstruction is 2D; pass --points for n=3");
        const GridSpec g = parse_grid(o.grid, o.extent);
        targets = TargetSet::raster(g.nx, g.ny, g.x0, g.x1, g.y0, g.y1);
    }

    ReconstructionField field =
        reconstruct(s, targets, domain, kspec, parse_terms(r.terms), o.threads);
    if (r.double_half_range) {
        for (auto& v : field.fS) v = Complex{2.0 * v.real(), v.imag()};
        for (auto& v : field.fA) v = Complex{2.0 * v.real(), v.imag()};
    }
    const double t_rec = timer.lap();

    write_field_csv(field, (fs::path(o.out_dir) / "field.csv").string());
    if (targets.is_raster)
        write_pgm(field.real_raster(), (fs::path(o.out_dir) / "field.pgm").string());

    // metrics
    double fs2 = 0, fa2 = 0, re2 = 0, im2 = 0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        fs2 += std::norm(field.fS[i]);
        fa2 += std::norm(field.fA[i]);
        re2 += field.total(i).real() * field.total(i).real();
        im2 += field.total(i).imag() * field.total(i).imag();
    }
    ordered_json metrics;
    if (!r.reference.empty()) {
        const Raster ref = read_raster_csv(r.reference);
        const auto rep = decomposition_report(field, ref);
        metrics["rel_l2"] = rep.rel_err_re;
        double max_abs = 0.0;
        for (std::size_t i = 0; i < field.size(); ++i)
            max_abs = std::max(max_abs,
                               std::abs(field.total(i).real() - ref.values[i]));
        metrics["max_abs_err"] = max_abs;
    }
    metrics["fa_over_fs"] = fs2 > 0.0 ? std::sqrt(fa2 / fs2) : 0.0;
    metrics["im_over_re"] = re2 > 0.0 ? std::sqrt(im2 / re2) : 0.0;
    const double t_io = timer.lap();
    metrics["runtime_seconds"] =
        ordered_json{{"sinogram", t_sino}, {"reconstruct", t_rec}, {"write", t_io}};
    std::ofstream mout(fs::path(o.out_dir) / "metrics.json", std::ios::binary);
    mout << metrics.dump(2) << "\n";

    ordered_json opts;
    opts["spec"] = o.spec_path;
    opts["sinogram"] = r.sinogram_path;
    opts["grid"] = o.grid;
    opts["extent"] = o.extent;
    opts["points"] = r.points;
    opts["angles"] = o.angles;
    opts["radial"] = o.radial;
    opts["window"] = o.window;
    opts["range"] = r.range;
    opts["terms"] = r.terms;
    opts["mode"] = r.mode;
    opts["eps"] = r.eps;
    opts["kernel_window"] = r.kernel_window;
    opts["no_richardson"] = r.no_richardson;
    opts["double_half_range"] = r.double_half_range;
    opts["reference"] = r.reference;
    opts["threads"] = o.threads;
    write_config(o.out_dir, "reconstruct", opts, have_spec ? &spec : nullptr);
    std::printf("reconstruct: %zu targets, fa/fs=%.3e, %.2fs -> %s\n", field.size(),
                fs2 > 0.0 ? std::sqrt(fa2 / fs2) : 0.0, t_rec, o.out_dir.c_str());
    return 0;
}

int cmd_verify_antipodal(const CommonOpts& o, double threshold) {
    const PhantomSpec spec = load_spec(o.spec_path);
    const Sinogram s = synthesize_sinogram(spec, parse_angles(o.angles, spec.n), o.radial,
                                           o.window, false, 0.0);
    const double dev = antipodal_check(s);
    std::printf("antipodal_deviation=%.6e (threshold %.1e)\n", dev, threshold);
    if (dev > threshold) throw check_failed("antipodal identity violated");
    return 0;
}

int cmd_verify_slice(const CommonOpts& o, const std::string& lambdas_text, int dirs,
                     double threshold) {
    const PhantomSpec spec = load_spec(o.spec_path);
    if (spec.n != 2) throw input_error("verify slice runs on 2D phantoms");
    const AngularGrid ang = AngularGrid::full_circle(dirs);
    const Sinogram s = synthesize_sinogram(spec, ang, o.radial, o.window, false, 0.0);
    std::vector<double> lambdas = parse_list(lambdas_text, "--lambdas");
    // symmetrize: every lambda needs its mirror
    {
        std::vector<double> sym;
        for (double l : lambdas) {
            sym.push_back(l);
            if (l != 0.0) sym.push_back(-l);
        }
        lambdas = sym;
    }
    std::vector<std::size_t> idx(ang.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    const auto samples = slice_samples(spec, s, idx, lambdas);
    if (!o.out_dir.empty()) {
        ensure_out(o.out_dir);
        std::ofstream csv(fs::path(o.out_dir) / "slice.csv", std::ios::binary);
        csv << "# columns=direction_angle,lambda,abs_slice,abs_direct,abs_diff\n";
        for (const auto& sm : samples)
            csv << format_double(ang.phi[sm.angle_index]) << "," << format_double(sm.lambda)
                << "," << format_double(std::abs(sm.slice)) << ","
                << format_double(std::abs(sm.direct)) << ","
                << format_double(std::abs(sm.slice - sm.direct)) << "\n";
        ordered_json opts;
        opts["spec"] = o.spec_path;
        opts["dirs"] = dirs;
        opts["radial"] = o.radial;
        opts["window"] = o.window;
        opts["lambdas"] = lambdas_text;
        opts["threshold"] = threshold;
        write_config(o.out_dir, "verify-slice", opts, &spec);
    }
    double num = 0, den = 0;
    for (const auto& sm : samples) {
        num += std::norm(sm.slice - sm.direct);
        den += std::norm(sm.direct);
    }
    const double residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
    std::printf("slice_residual=%.6e (threshold %.1e)\n", residual, threshold);
    if (residual > threshold) throw check_failed("Fourier slice mismatch");
    return 0;
}

int cmd_verify_surface(const CommonOpts& o, const std::string& weight_text, double threshold) {
    const PhantomSpec spec = load_spec(o.spec_path);
    if (spec.n != 2) throw input_error("verify surface runs on 2D phantoms");
    const AngularGrid ang = parse_angles(o.angles, spec.n);
    const RadialGrid rg = RadialGrid::symmetric(o.window, o.radial);
    // deliberately no support refusal here: probing windows that cut the
    // support is this check's whole point
    const Sinogram s = direct_radon_analytic(spec, rg, ang);
    const auto rep = surface_term_check(s, parse_list(weight_text, "--weight"));
    std::printf("boundary_magnitude=%.6e residual=%.6e (threshold %.1e)\n",
                rep.boundary_magnitude, rep.residual, threshold);
    if (rep.boundary_magnitude > 1e-12)
        throw check_failed("surface terms present: support crosses the radial window");
    if (rep.residual > threshold)
        throw check_failed("integration-by-parts residual above threshold");
    return 0;
}

int cmd_verify_modes(const CommonOpts& o, int n_targets, double threshold) {
    const PhantomSpec spec = load_spec(o.spec_path);
    if (spec.n != 2) throw input_error("verify modes runs on 2D phantoms");
    const Sinogram s = synthesize_sinogram(spec, parse_angles(o.angles, spec.n), o.radial,
                                           o.window, false, 0.0);
    const double dtau = s.radial.spacing();
    const double H = s.radial.tau_max;
    const KernelSpec exact = KernelSpec::exact(2, H);
    const double eps = 4.0 * dtau;
    const KernelSpec epsk =
        KernelSpec::epsilon_mode(2, H, eps, std::make_pair(eps, eps / 2.0));
    const AngularDomain full = AngularDomain::full_range(2);

    const double r_max =
        std::min(1.5, std::max(0.1, H - std::max(s.hard_support_radius, 1.0)));
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-r_max, r_max);
    std::vector<Vec3> targets;
    while (static_cast<int>(targets.size()) < n_targets) {
        const double x = u(rng), y = u(rng);
        if (x * x + y * y <= r_max * r_max) targets.push_back({x, y, 0.0});
    }
    double peak = 0.0, worst = 0.0;
    for (const auto& x : targets) {
        const Complex a = f_S_at(s, x, full, exact) + f_A_at(s, x, full);
        const Complex b = f_S_at(s, x, full, epsk) + f_A_at(s, x, full);
        peak = std::max(peak, std::abs(a));
        worst = std::max(worst, std::abs(a - b));
    }
    const double rel = peak > 0.0 ? worst / peak : 0.0;
    std::printf("mode_agreement=%.6e of peak over %d targets (threshold %.1e)\n", rel,
                n_targets, threshold);
    if (rel > threshold) throw check_failed("kernel modes disagree beyond threshold");
    return 0;
}

int cmd_angular_report(const std::string& box_text, const std::string& out_dir, int angles,
                       int qgrid, const std::string& tvals_text) {
    const auto b = parse_list(box_text, "--box");
    if (b.size() != 4) throw input_error("--box expects x0,x1,y0,y1");
    const SupportMask box = SupportMask::box2d(b[0], b[1], b[2], b[3]);
    const AngularDomain domain = angular_mask(box);
    ensure_out(out_dir);

    const AngularGrid grid = AngularGrid::full_circle(angles);
    std::size_t inside = 0;
    for (double phi : grid.phi)
        if (domain.contains(phi)) ++inside;

    const bool canonical = b[0] == -1.0 && b[1] == 1.0 && b[2] == -1.0 && b[3] == 1.0;
    {
        std::ofstream rep(fs::path(out_dir) / "report.txt", std::ios::binary);
        rep << "support box: [" << format_double(b[0]) << ", " << format_double(b[1])
            << "] x [" << format_double(b[2]) << ", " << format_double(b[3]) << "]\n";
        rep << "derived angular interval: (-pi/2, pi/2), boundary excluded\n";
        rep << "interval measure: " << format_double(domain.measure()) << "\n";
        rep << "grid angles strictly inside (" << angles << " total): " << inside << "\n";
        if (!canonical)
            rep << "note: non-canonical box; the interval follows from boundedness alone "
                   "and the admissibility table below is stated for the unit box\n";
    }

    const auto tvals = parse_list(tvals_text, "--tvals");
    std::ofstream csv(fs::path(out_dir) / "admissible.csv", std::ios::binary);
    csv << "# columns=q1,q2,t,admissible\n";
    for (int i = 0; i < qgrid; ++i) {
        for (int j = 0; j < qgrid; ++j) {
            const double q1 = -2.0 + 4.0 * i / (qgrid - 1);
            const double q2 = -2.0 + 4.0 * j / (qgrid - 1);
            if (q1 == 0.0 && q2 == 0.0) continue;
            for (double t : tvals)
                csv << format_double(q1) << "," << format_double(q2) << ","
                    << format_double(t) << "," << (admissible(q1, q2, t) ? 1 : 0) << "\n";
        }
    }

    ordered_json opts;
    opts["box"] = box_text;
    opts["angles"] = angles;
    opts["qgrid"] = qgrid;
    opts["tvals"] = tvals_text;
    write_config(out_dir, "angular-report", opts, nullptr);
    std::printf("angular-report: %zu of %d grid angles admissible -> %s\n", inside, angles,
                out_dir.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal Radon transform toolkit"};
    app.require_subcommand(1);

    CommonOpts o;
    ReconstructOpts r;
    bool numeric = false;
    double step = 1e-3;
    double threshold_antipodal = 1e-10;
    double threshold_slice = 1e-3;
    double threshold_surface = 1e-3;
    double threshold_modes = 1e-2;
    std::string lambdas = "0,0.5,1,2";
    std::string weight = "0,1";
    int dirs = 8;
    int n_targets = 100;
    std::string box_text = "-1,1,-1,1";
    int qgrid = 21;
    std::string tvals = "-2,-1,-0.5,0,0.25,0.5,0.75,1,2";

    auto add_common = [&](CLI::App* cmd, bool needs_out) {
        cmd->add_option("--spec", o.spec_path, "phantom spec JSON");
        auto* out = cmd->add_option("--out", o.out_dir, "output directory");
        if (needs_out) out->required();
        cmd->add_option("--angles", o.angles, "angle count (or KxJ for n=3)");
        cmd->add_option("--radial", o.radial, "radial sample count");
        cmd->add_option("--window", o.window, "radial half-width");
        cmd->add_option("--threads", o.threads, "worker thread cap");
        cmd->add_option("--seed", o.seed, "seed for sampled checks");
    };

    auto* phantom = app.add_subcommand("phantom", "rasterize a phantom spec");
    add_common(phantom, true);
    phantom->add_option("--grid", o.grid, "raster size N or NxM");
    phantom->add_option("--extent", o.extent, "half-width or x0,x1,y0,y1");

    auto* sino = app.add_subcommand("sinogram", "synthesize a sinogram");
    add_common(sino, true);
    sino->add_flag("--numeric", numeric, "line-integral quadrature instead of closed forms");
    sino->add_option("--step", step, "quadrature step for --numeric");

    auto* rec = app.add_subcommand("reconstruct", "universal inverse transform");
    add_common(rec, true);
    rec->add_option("--grid", o.grid, "raster size N or NxM");
    rec->add_option("--extent", o.extent, "half-width or x0,x1,y0,y1");
    rec->add_option("--sinogram", r.sinogram_path, "sinogram CSV (else synthesized)");
    rec->add_option("--points", r.points, "point targets x,y[,z];... instead of a raster");
    rec->add_option("--range", r.range, "full, half or custom:lo,hi[;...]");
    rec->add_option("--terms", r.terms, "fs, fa or fs,fa");
    rec->add_option("--mode", r.mode, "exact or eps");
    rec->add_option("--eps", r.eps, "epsilon (default 4*dtau)");
    rec->add_option("--kernel-window", r.kernel_window, "finite-part half-width H");
    rec->add_flag("--no-richardson", r.no_richardson, "single-epsilon kernel");
    rec->add_flag("--double-half-range", r.double_half_range,
                  "double Re for measure-pi domains");
    rec->add_option("--reference", r.reference, "reference raster CSV for metrics");

    auto* verify = app.add_subcommand("verify", "numeric identity checks");
    verify->require_subcommand(1);
    auto* v_anti = verify->add_subcommand("antipodal", "R(-tau,phi) = R(tau,phi+pi)");
    add_common(v_anti, false);
    v_anti->add_option("--threshold", threshold_antipodal, "max allowed deviation");
    auto* v_slice = verify->add_subcommand("slice", "Fourier slice theorem");
    add_common(v_slice, false);
    v_slice->add_option("--lambdas", lambdas, "frequencies (mirrored automatically)");
    v_slice->add_option("--dirs", dirs, "number of directions");
    v_slice->add_option("--threshold", threshold_slice, "max relative L2 residual");
    auto* v_surface = verify->add_subcommand("surface", "surface terms and IBP residual");
    add_common(v_surface, false);
    v_surface->add_option("--weight", weight, "weight polynomial coefficients c0,c1,...");
    v_surface->add_option("--threshold", threshold_surface, "max IBP residual");
    auto* v_modes = verify->add_subcommand("modes", "exact limit vs epsilon kernel");
    add_common(v_modes, false);
    v_modes->add_option("--targets", n_targets, "number of random targets");
    v_modes->add_option("--threshold", threshold_modes, "max pointwise deviation of peak");

    auto* report = app.add_subcommand("angular-report", "support-induced angular analysis");
    report->add_option("--box", box_text, "support box x0,x1,y0,y1")->required();
    report->add_option("--out", o.out_dir, "output directory")->required();
    report->add_option("--angles", o.angles, "grid angle count");
    report->add_option("--qgrid", qgrid, "q-plane sample grid size");
    report->add_option("--tvals", tvals, "intercept values for the admissibility table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (phantom->parsed()) return cmd_phantom(o);
        if (sino->parsed()) return cmd_sinogram(o, numeric, step);
        if (rec->parsed()) return cmd_reconstruct(o, r);
        if (verify->parsed()) {
            if (v_anti->parsed()) return cmd_verify_antipodal(o, threshold_antipodal);
            if (v_slice->parsed()) return cmd_verify_slice(o, lambdas, dirs, threshold_slice);
            if (v_surface->parsed()) return cmd_verify_surface(o, weight, threshold_surface);
            if (v_modes->parsed()) return cmd_verify_modes(o, n_targets, threshold_modes);
        }
        if (report->parsed())
            return cmd_angular_report(box_text, o.out_dir, std::stoi(o.angles), qgrid, tvals);
        std::fprintf(stderr, "no subcommand selected\n");
        return 2;
    } catch (const check_failed& e) {
        std::fprintf(stderr, "check failed: %s\n", e.what());
        return 1;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const capability_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
