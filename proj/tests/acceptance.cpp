// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: acceptance [N]   (no argument runs all and exits nonzero if any fails)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tanplane/classify.hpp"
#include "tanplane/cycles.hpp"
#include "tanplane/render.hpp"
#include "tanplane/shell.hpp"
#include "tanplane/solve.hpp"

using namespace tanplane;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt2(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome structural_constants() {
    double worst = 0.0;
    for (long k = 1; k <= 5; ++k) {
        ComponentCode code;
        code.base_index = k;
        worst = std::max(worst, std::abs(capture_center(code).root - std::sqrt(k * pi)));
    }
    for (int j = 0; j <= 5; ++j) {
        const double s = std::sqrt((2.0 * j + 1.0) * pi / 2.0);
        worst = std::max(worst, std::abs(newton_param(1, ExtendedValue::infinity(), 1.02 * s).root - s));
    }
    return {worst < 1e-10, fmt("worst |root - closed form| = %.3e (tol 1e-10)", worst)};
}

Outcome repelling_fixed_point() {
    const double lam = std::sqrt(pi / 4.0);
    const std::vector<Complex> approx{lam};
    const Cycle c = refine_cycle(lam, approx, 1);
    const double dev = std::abs(c.multiplier - pi);
    return {dev < 1e-10 && c.stability == Stability::Repelling, fmt("|rho - pi| = %.3e (tol 1e-10)", dev)};
}

Complex random_admissible_u(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> xs(-12.0, 12.0), ys(1.0, 8.0), coin(0.0, 1.0);
    for (;;) {
        const Complex u(xs(rng), coin(rng) < 0.5 ? ys(rng) : -ys(rng));
        const double m = std::abs(period_one_multiplier(u));
        if (m < 0.9 && m > 1e-6) return u;
    }
}

Outcome period_one_parametrization() {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    int wrong = 0;
    for (int k = 0; k < 100; ++k) {
        const Complex u = random_admissible_u(rng);
        const Classification c = classify(period_one_parameter(u), kDefaultVerifyBudget);
        if (c.tag != Verdict::Shell || c.period != 1) {
            ++wrong;
            continue;
        }
        worst = std::max(worst, std::abs(c.multiplier - period_one_multiplier(u)));
    }
    return {wrong == 0 && worst < 1e-8, fmt2("non-Shell(1) = %.0f, worst |rho - H(u)| = %.3e (tol 1e-8)", wrong, worst)};
}

Complex axis_point(int k, double t) {
    const Complex dirs[] = {1.0, -1.0, I, -I};
    return dirs[k % 4] * t;
}

Outcome axis_exclusion() {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> t(0.0, 10.0);
    int shells = 0;
    for (int k = 0; k < 1000; ++k) {
        double s = t(rng);
        if (s == 0.0) s = 10.0;
        shells += classify(axis_point(k, s), kDefaultVerifyBudget).tag == Verdict::Shell;
    }
    return {shells == 0, fmt("Shell verdicts on 1000 axis samples: %.0f", shells)};
}

Outcome axis_capture() {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> t(0.0, 0.886227);
    int bad = 0;
    double excess = 0.0;
    for (int k = 0; k < 200; ++k) {
        double s = t(rng);
        if (s == 0.0) s = 0.5;
        const Complex lambda = axis_point(k, s);
        const Classification c = classify(lambda, kDefaultVerifyBudget);
        if (c.tag != Verdict::CaptureDepth || c.depth != 0) ++bad;
        const OrbitOutcome o = orbit(lambda, lambda * I, kDefaultVerifyBudget, zero_trap_radius(lambda),
                                     kDefaultEscapeRadius, true);
        if (o.tag != OrbitTag::TrapEntry) ++bad;
        for (const Complex& z : o.trace) excess = std::max(excess, std::abs(z) - s);
    }
    return {bad == 0 && excess <= 1e-12 * 0.886227,
            fmt2("not CaptureDepth(0): %.0f, max(|z_k| - |lambda|) = %.3e", bad, excess)};
}

struct SymmetryData {
    int mismatches = 0;
    double modulus = 0.0;
    double cross = 0.0;
    int cycles = 0;
};

const SymmetryData& symmetry_data() {
    static const SymmetryData data = [] {
        SymmetryData d;
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> box(-3.0, 3.0);
        std::vector<Complex> lambdas;
        for (int k = 0; k < 200; ++k) lambdas.emplace_back(box(rng), box(rng));
        std::vector<SymmetryData> rows(lambdas.size());
        parallel_rows(static_cast<int>(lambdas.size()), 0, [&](int k) {
            SymmetryData& r = rows[static_cast<std::size_t>(k)];
            const auto members = symmetry_images(lambdas[static_cast<std::size_t>(k)]).members;
            const Classification first = classify(members[0], kDefaultVerifyBudget);
            for (const Complex& m : members) {
                const Classification c = classify(m, kDefaultVerifyBudget);
                if (c.tag != first.tag || c.depth != first.depth || c.period != first.period) ++r.mismatches;
                if (c.tag == Verdict::Shell && first.tag == Verdict::Shell)
                    r.modulus = std::max(r.modulus, std::abs(std::abs(c.multiplier) - std::abs(first.multiplier)));
                if (c.tag != Verdict::Shell) continue;
                if (const auto cyc = detect_cycle(m, kDefaultVerifyBudget)) {
                    const Complex chain = multiplier_chain(m, *cyc);
                    r.cross = std::max(r.cross, std::abs(chain - multiplier_product_formula(*cyc)) / (1.0 + std::abs(chain)));
                    ++r.cycles;
                }
            }
        });
        for (const auto& r : rows) {
            d.mismatches += r.mismatches;
            d.modulus = std::max(d.modulus, r.modulus);
            d.cross = std::max(d.cross, r.cross);
            d.cycles += r.cycles;
        }
        return d;
    }();
    return data;
}

Outcome symmetry_suite() {
    const auto& d = symmetry_data();
    return {d.mismatches == 0 && d.modulus <= 1e-9,
            fmt2("verdict mismatches = %.0f, worst modulus gap = %.3e (tol 1e-9)", d.mismatches, d.modulus)};
}

Outcome cross_formula() {
    const auto& d = symmetry_data();
    return {d.cycles > 0 && d.cross <= 1e-8,
            fmt2("cycles = %.0f, worst relative chain/product gap = %.3e (tol 1e-8)", d.cycles, d.cross)};
}

Outcome boundary_asymptote() {
    const auto samples = trace_period_one_boundary(3.0, 6.0, 31, HalfPlane::Upper);
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.u.imag() / std::exp(2.0 * s.x) - 1.0));
    const double a = std::arg(samples.back().lambda);
    const double diag_gap = std::abs(std::remainder(a - pi / 4.0, pi / 2.0));
    return {worst < 0.05 && diag_gap < 0.05,
            fmt2("max |y/e^{2x} - 1| = %.4f (tol 0.05); angle from diagonal at x=6 = %.3f rad", worst, diag_gap) +
                fmt(", y(6) = %.4f", samples.back().u.imag())};
}

Outcome ray_to_virtual_center() {
    const BoundarySample b = period_one_boundary_point(0.5);
    const auto bud = find_bud(b.lambda, 2, 1, 1, 0.05);
    if (!bud) return {false, "no period-2 seed found"};
    const auto ray = trace_internal_ray(*bud, 0.0, 1e-6, 200);
    const Complex end = ray.back().lambda;
    double best = INFINITY;
    for (const Complex& s : prepole_parameters_order1(50)) best = std::min(best, std::abs(end - s));
    return {best < 1e-3, fmt2("endpoint at r = %.1e is %.4f from the nearest +-s_k, +-i s_k (tol 1e-3)", ray.back().r, best)};
}

Outcome quadruplets() {
    const auto a = quadruplet(pole_point(0) * I, 2, 0.02);
    const auto b = quadruplet(pole_point(0), 2, 0.02);
    return {a.size() == 4 && b.size() == 4, fmt2("tracts found: %.0f at i*s0, %.0f at s0", a.size(), b.size())};
}

Outcome buds() {
    const BoundarySample half = period_one_boundary_point(0.5);
    const BoundarySample third = period_one_boundary_point(1.0 / 3.0);
    const auto b2 = find_bud(half.lambda, 2, 1, 1, 0.05);
    const auto b3 = find_bud(third.lambda, 3, 1, 1, 0.05);
    const bool ok2 = b2 && classify(*b2, kDefaultVerifyBudget).period == 2;
    const bool ok3 = b3 && classify(*b3, kDefaultVerifyBudget).period == 3;
    return {ok2 && ok3, fmt2("Shell(2) bud found: %.0f, Shell(3) bud found: %.0f", ok2, ok3)};
}

Outcome accumulation() {
    const Complex limit = pole_point(0) * I;
    double prev = INFINITY, last = INFINITY;
    bool monotone = true;
    for (long k = 1; k <= 10; ++k) {
        ComponentCode code;
        code.kind = CodeKind::PrePole;
        code.base_index = k;
        code.branch_indices = {0};
        last = std::abs(virtual_center(code, 3).root - limit);
        monotone = monotone && last < prev;
        prev = last;
    }
    return {monotone && last < 1e-2, fmt2("monotone = %.0f, distance at k=10 = %.4f (tol 1e-2)", monotone, last)};
}

Outcome determinism() {
    const Region view{Complex(0.0, 0.0), 6.0, 6.0};
    auto bytes = [&](int threads) {
        const ParameterRaster r = render_parameter_plane(view, 64, 64, kDefaultClassifyBudget, threads);
        return encode_ppm<Classification>(r, [](const Classification& c) { return default_color(c); });
    };
    const std::string a = bytes(1), b = bytes(1), c = bytes(8);
    return {a == b && a == c, fmt2("identical run-to-run: %.0f, identical 1 vs 8 threads: %.0f", a == b, a == c)};
}

struct Criterion {
    int id;
    const char* name;
    double time_limit;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "structural constants", 1.0, structural_constants},
        {2, "repelling fixed point multiplier", 1.0, repelling_fixed_point},
        {3, "period-one parametrization", 5.0, period_one_parametrization},
        {4, "axis exclusion", 30.0, axis_exclusion},
        {5, "axis capture", 5.0, axis_capture},
        {6, "symmetry suite", 60.0, symmetry_suite},
        {7, "multiplier cross-formula", 60.0, cross_formula},
        {8, "boundary asymptote", 10.0, boundary_asymptote},
        {9, "ray to virtual center", 30.0, ray_to_virtual_center},
        {10, "quadruplets", 30.0, quadruplets},
        {11, "bud existence", 60.0, buds},
        {12, "accumulation of virtual centers", 60.0, accumulation},
        {13, "determinism", 10.0, determinism},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::printf("criterion %2d: %s  %s: %s [%.2fs, limit %.0fs%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), secs, c.time_limit, in_time ? "" : ", TOO SLOW");
    }
    return failures == 0 ? 0 : 1;
}
