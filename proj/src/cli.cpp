#include "tanplane/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tanplane/classify.hpp"
#include "tanplane/error.hpp"
#include "tanplane/render.hpp"
#include "tanplane/shell.hpp"
#include "tanplane/solve.hpp"

namespace tanplane {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    std::size_t used = 0;
    long v;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

std::vector<long> parse_int_list(const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_long(item));
    return out;
}

// Everything a subcommand may need; validated before use.
struct JobConfig {
    std::string center = "0,0";
    std::string size = "6x6";
    std::string px = "512";
    int budget = kDefaultClassifyBudget;
    std::string out_path;
    std::string csv_path;
    bool supersample = false;
    std::string lambda;
    int order = 1;
    std::string k_range = "1..5";
    std::string code;
    std::string branches;
    double alpha = 0.0;
    double r_stop = 1e-6;
    int steps = 200;
    std::string arg = "1/2";
    double radius = 0.05;
    int probes = kQuadrupletProbes;
    std::string x_range = "0..6";
    std::string half = "upper";
    std::string suite = "all";
    int samples = 200;
    std::uint64_t seed = 1;
    int threads = 0;
};

void require_positive(int v, const char* name) {
    if (v < 1) throw std::invalid_argument(std::string(name) + " must be positive");
}

Region region_of(const JobConfig& cfg) {
    const auto [w, h] = [&] {
        const auto x = cfg.size.find('x');
        if (x == std::string::npos) {
            const double s = parse_double(cfg.size);
            return std::pair{s, s};
        }
        return std::pair{parse_double(cfg.size.substr(0, x)), parse_double(cfg.size.substr(x + 1))};
    }();
    if (!(w > 0.0) || !(h > 0.0)) throw std::invalid_argument("region size must be positive");
    return Region{parse_complex(cfg.center), w, h};
}

std::pair<long, long> int_range(const std::string& text) {
    const auto [a, b] = parse_range(text);
    if (a != std::floor(a) || b != std::floor(b)) throw std::invalid_argument("range bounds must be integers");
    return {static_cast<long>(a), static_cast<long>(b)};
}

void print_classification(std::ostream& out, Complex lambda, const Classification& c) {
    out << "lambda " << num(lambda.real()) << "," << num(lambda.imag()) << " verdict " << to_string(c.tag);
    if (c.tag == Verdict::CaptureDepth) out << " depth " << c.depth;
    if (c.tag == Verdict::Shell)
        out << " period " << c.period << " multiplier " << num(c.multiplier.real()) << "," << num(c.multiplier.imag())
            << " modulus " << num(std::abs(c.multiplier));
    if (c.tag == Verdict::Unresolved) out << " reason " << to_string(c.reason);
    out << "\n";
}

int cmd_render_param(const JobConfig& cfg, std::ostream& out) {
    const Region region = region_of(cfg);
    const auto [w, h] = parse_dims(cfg.px);
    require_positive(cfg.budget, "budget");
    if (cfg.out_path.empty()) throw std::invalid_argument("--out is required");
    if (cfg.supersample) {
        write_bytes(cfg.out_path, encode_ppm(w, h, supersampled_parameter_image(region, w, h, cfg.budget, cfg.threads)));
    } else {
        const ParameterRaster raster = render_parameter_plane(region, w, h, cfg.budget, cfg.threads);
        write_ppm<Classification>(raster, [](const Classification& c) { return default_color(c); }, cfg.out_path);
        if (!cfg.csv_path.empty()) write_grid_csv(raster, cfg.csv_path);
    }
    out << "wrote " << cfg.out_path << " (" << w << "x" << h << ")\n";
    return 0;
}

int cmd_render_dyn(const JobConfig& cfg, std::ostream& out) {
    if (cfg.lambda.empty()) throw std::invalid_argument("--lambda is required");
    const Complex lambda = parse_complex(cfg.lambda);
    if (lambda == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
    const Region region = region_of(cfg);
    const auto [w, h] = parse_dims(cfg.px);
    require_positive(cfg.budget, "budget");
    if (cfg.out_path.empty()) throw std::invalid_argument("--out is required");
    const DynamicRaster raster = render_dynamic_plane(lambda, region, w, h, cfg.budget, cfg.threads);
    write_ppm<OrbitOutcome>(raster, [](const OrbitOutcome& o) { return default_color(o); }, cfg.out_path);
    if (!cfg.csv_path.empty()) write_bytes(cfg.csv_path, encode_grid_csv(raster, lambda));
    out << "wrote " << cfg.out_path << " (" << w << "x" << h << ")\n";
    return 0;
}

int cmd_classify(const JobConfig& cfg, std::ostream& out) {
    if (cfg.lambda.empty()) throw std::invalid_argument("--lambda is required");
    const Complex lambda = parse_complex(cfg.lambda);
    if (lambda == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
    require_positive(cfg.budget, "budget");
    print_classification(out, lambda, classify(lambda, cfg.budget));
    return 0;
}

ComponentCode code_from(const JobConfig& cfg, long base, CodeKind kind, std::size_t branch_count) {
    ComponentCode code;
    code.kind = kind;
    code.base_index = base;
    code.branch_indices = parse_int_list(cfg.branches);
    if (code.branch_indices.empty()) code.branch_indices.assign(branch_count, 0);
    if (code.branch_indices.size() != branch_count)
        throw std::invalid_argument("--branches needs " + std::to_string(branch_count) + " entries");
    return code;
}

void print_report(std::ostream& out, const ComponentCode& code, const SolveReport& r) {
    out << code.base_index;
    for (long j : code.branch_indices) out << "," << j;
    out << " " << num(r.root.real()) << " " << num(r.root.imag()) << " " << num(r.residual) << " " << r.iterations << "\n";
}

int cmd_centers(const JobConfig& cfg, std::ostream& out) {
    require_positive(cfg.order, "order");
    out << "# code re im residual iterations\n";
    if (!cfg.code.empty()) {
        const auto idx = parse_int_list(cfg.code);
        if (idx.size() != static_cast<std::size_t>(cfg.order))
            throw std::invalid_argument("--code needs exactly --order entries");
        ComponentCode code;
        code.base_index = idx[0];
        code.branch_indices.assign(idx.begin() + 1, idx.end());
        if (code.base_index == 0) throw std::invalid_argument("base index must be nonzero");
        print_report(out, code, capture_center(code));
        return 0;
    }
    const auto [a, b] = int_range(cfg.k_range);
    for (long k = a; k <= b; ++k) {
        if (k == 0) continue;
        const ComponentCode code = code_from(cfg, k, CodeKind::PreZero, static_cast<std::size_t>(cfg.order - 1));
        print_report(out, code, capture_center(code));
    }
    return 0;
}

int cmd_virtual_centers(const JobConfig& cfg, std::ostream& out) {
    const int p = cfg.order;
    if (p < 2) throw std::invalid_argument("virtual centers need --order (period) >= 2");
    out << "# code re im residual iterations\n";
    const auto [a, b] = int_range(cfg.k_range);
    for (long k = a; k <= b; ++k) {
        const ComponentCode code = code_from(cfg, k, CodeKind::PrePole, static_cast<std::size_t>(p - 2));
        print_report(out, code, virtual_center(code, p));
    }
    return 0;
}

int cmd_ray(const JobConfig& cfg, std::ostream& out) {
    if (cfg.lambda.empty()) throw std::invalid_argument("--lambda is required");
    require_positive(cfg.steps, "steps");
    if (!(cfg.r_stop > 0.0 && cfg.r_stop < 1.0)) throw std::invalid_argument("--r-stop must lie in (0,1)");
    const auto ray = trace_internal_ray(parse_complex(cfg.lambda), cfg.alpha, cfg.r_stop, cfg.steps);
    out << "# r re im mult_re mult_im\n";
    for (const RayPoint& p : ray)
        out << num(p.r) << " " << num(p.lambda.real()) << " " << num(p.lambda.imag()) << " "
            << num(p.cycle.multiplier.real()) << " " << num(p.cycle.multiplier.imag()) << "\n";
    if (!ray.empty()) {
        const Complex end = ray.back().lambda;
        double best = INFINITY;
        Complex nearest;
        for (const Complex& s : prepole_parameters_order1(50))
            if (std::abs(end - s) < best) best = std::abs(end - s), nearest = s;
        out << "# endpoint " << num(end.real()) << "," << num(end.imag()) << " nearest_order1_virtual_center "
            << num(nearest.real()) << "," << num(nearest.imag()) << " distance " << num(best) << "\n";
    }
    return 0;
}

int cmd_buds(const JobConfig& cfg, std::ostream& out) {
    const auto slash = cfg.arg.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("--arg must look like q/p");
    const long q = parse_long(cfg.arg.substr(0, slash)), p = parse_long(cfg.arg.substr(slash + 1));
    if (p < 1 || q < 0 || q >= p) throw std::invalid_argument("--arg needs 0 <= q < p");
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("--radius must be positive");
    const Complex boundary = cfg.lambda.empty()
        ? period_one_boundary_point(static_cast<double>(q) / static_cast<double>(p)).lambda
        : parse_complex(cfg.lambda);
    out << "boundary " << num(boundary.real()) << "," << num(boundary.imag()) << "\n";
    const auto bud = find_bud(boundary, static_cast<int>(p), static_cast<int>(q), 1, cfg.radius);
    if (!bud) {
        out << "bud none\n";
        return 0;
    }
    out << "bud " << num(bud->real()) << "," << num(bud->imag()) << "\n";
    print_classification(out, *bud, classify(*bud, kDefaultVerifyBudget));
    return 0;
}

int cmd_quadruplets(const JobConfig& cfg, std::ostream& out) {
    const Complex star = cfg.lambda.empty() ? pole_point(0) * Complex(0.0, 1.0) : parse_complex(cfg.lambda);
    const int p = cfg.order < 2 ? 2 : cfg.order;
    require_positive(cfg.probes, "probes");
    if (!(cfg.radius > 0.0)) throw std::invalid_argument("--radius must be positive");
    const auto reps = quadruplet(star, p, cfg.radius, cfg.probes);
    out << "# tract re im\n";
    for (const auto& r : reps) out << r.tract << " " << num(r.lambda.real()) << " " << num(r.lambda.imag()) << "\n";
    out << "# tracts found " << reps.size() << "\n";
    return 0;
}

int cmd_boundary(const JobConfig& cfg, std::ostream& out) {
    const auto [a, b] = parse_range(cfg.x_range);
    if (cfg.steps < 2) throw std::invalid_argument("--steps must be >= 2");
    if (cfg.half != "upper" && cfg.half != "lower") throw std::invalid_argument("--half must be upper or lower");
    const auto samples = trace_period_one_boundary(a, b, cfg.steps, cfg.half == "upper" ? HalfPlane::Upper : HalfPlane::Lower);
    out << "# x y lambda_re lambda_im\n";
    for (const auto& s : samples)
        out << num(s.x) << " " << num(s.u.imag()) << " " << num(s.lambda.real()) << " " << num(s.lambda.imag()) << "\n";
    return 0;
}

int cmd_verify(const JobConfig& cfg, std::ostream& out) {
    require_positive(cfg.samples, "samples");
    if (cfg.suite != "all" &&
        std::find(verify_suites().begin(), verify_suites().end(), cfg.suite) == verify_suites().end())
        throw std::invalid_argument("unknown suite: " + cfg.suite);
    const auto records = run_verify(cfg.suite, cfg.samples, cfg.seed, cfg.threads);
    bool ok = true;
    for (const auto& r : records) {
        out << to_json_line(r, cfg.seed) << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 2;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b: '" + text + "'");
    const double a = parse_double(text.substr(0, dots)), b = parse_double(text.substr(dots + 2));
    if (b < a) throw std::invalid_argument("range is empty: '" + text + "'");
    return {a, b};
}

std::pair<int, int> parse_dims(const std::string& text) {
    const auto x = text.find('x');
    const long w = parse_long(x == std::string::npos ? text : text.substr(0, x));
    const long h = x == std::string::npos ? w : parse_long(text.substr(x + 1));
    if (w < 1 || h < 1 || w > 1 << 15 || h > 1 << 15) throw std::invalid_argument("pixel dimensions out of range");
    return {static_cast<int>(w), static_cast<int>(h)};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parameter-plane explorer for lambda * tan(z^2)", "tanplane"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto add_view = [&](CLI::App* sub) {
        sub->add_option("--center", cfg.center, "region centre re,im")->capture_default_str();
        sub->add_option("--size", cfg.size, "region size WxH")->capture_default_str();
        sub->add_option("--px", cfg.px, "pixels N or WxH")->capture_default_str();
        sub->add_option("--budget", cfg.budget, "iteration budget")->capture_default_str();
        sub->add_option("--out", cfg.out_path, "output PPM path");
        sub->add_option("--csv", cfg.csv_path, "optional grid CSV path");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
    };

    auto* render_param = app.add_subcommand("render-param", "render the parameter plane");
    add_view(render_param);
    render_param->add_flag("--supersample", cfg.supersample, "2x2 supersampled presentation image");

    auto* render_dyn = app.add_subcommand("render-dyn", "render the dynamic plane of one map");
    add_view(render_dyn);
    render_dyn->add_option("--lambda", cfg.lambda, "parameter re,im")->required();

    auto* cls = app.add_subcommand("classify", "classify one parameter");
    cls->add_option("--lambda", cfg.lambda, "parameter re,im")->required();
    cls->add_option("--budget", cfg.budget, "iteration budget")->capture_default_str();

    auto* centers = app.add_subcommand("centers", "capture-component centers");
    centers->add_option("--order", cfg.order, "order p of the center")->capture_default_str();
    centers->add_option("--k-range", cfg.k_range, "base indices a..b")->capture_default_str();
    centers->add_option("--code", cfg.code, "explicit code k,j1,...");
    centers->add_option("--branches", cfg.branches, "branch indices j1,... (default zeros)");

    auto* vcs = app.add_subcommand("virtual-centers", "virtual centers (pre-poles)");
    vcs->add_option("--order", cfg.order, "period p >= 2")->capture_default_str();
    vcs->add_option("--k-range", cfg.k_range, "pole indices a..b")->capture_default_str();
    vcs->add_option("--branches", cfg.branches, "branch indices (default zeros)");

    auto* ray = app.add_subcommand("ray", "trace an internal ray");
    ray->add_option("--lambda", cfg.lambda, "seed parameter re,im")->required();
    ray->add_option("--alpha", cfg.alpha, "internal argument")->capture_default_str();
    ray->add_option("--r-stop", cfg.r_stop, "final multiplier modulus")->capture_default_str();
    ray->add_option("--steps", cfg.steps, "nominal step count")->capture_default_str();

    auto* buds = app.add_subcommand("buds", "find a bud at a period-one boundary point");
    buds->add_option("--arg", cfg.arg, "internal argument q/p")->capture_default_str();
    buds->add_option("--lambda", cfg.lambda, "boundary parameter (default: computed from --arg)");
    buds->add_option("--radius", cfg.radius, "search radius")->capture_default_str();

    auto* quads = app.add_subcommand("quadruplets", "shell components around a virtual center");
    quads->add_option("--lambda", cfg.lambda, "virtual center (default i*sqrt(pi/2))");
    quads->add_option("--order", cfg.order, "period (default 2)");
    quads->add_option("--radius", cfg.radius, "probe radius")->capture_default_str();
    quads->add_option("--samples", cfg.probes, "probe count")->capture_default_str();

    auto* boundary = app.add_subcommand("boundary", "trace the period-one boundary");
    boundary->add_option("--x-range", cfg.x_range, "x range a..b")->capture_default_str();
    boundary->add_option("--steps", cfg.steps, "samples")->capture_default_str();
    boundary->add_option("--half", cfg.half, "upper|lower")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", cfg.suite, "suite name or all")->capture_default_str();
    verify->add_option("--samples", cfg.samples, "sample count")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    verify->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }
    if (cfg.threads < 0) {
        err << "error: --threads must be >= 0\n";
        return 1;
    }

    try {
        if (*render_param) return cmd_render_param(cfg, out);
        if (*render_dyn) return cmd_render_dyn(cfg, out);
        if (*cls) return cmd_classify(cfg, out);
        if (*centers) return cmd_centers(cfg, out);
        if (*vcs) return cmd_virtual_centers(cfg, out);
        if (*ray) return cmd_ray(cfg, out);
        if (*buds) return cmd_buds(cfg, out);
        if (*quads) return cmd_quadruplets(cfg, out);
        if (*boundary) return cmd_boundary(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace tanplane
