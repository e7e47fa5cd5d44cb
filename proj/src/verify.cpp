#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "tanplane/classify.hpp"
#include "tanplane/cli.hpp"
#include "tanplane/cycles.hpp"
#include "tanplane/error.hpp"
#include "tanplane/render.hpp"
#include "tanplane/shell.hpp"
#include "tanplane/solve.hpp"

namespace tanplane {

namespace {

using std::numbers::pi;
const Complex I(0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Worst {
    double value = 0.0;
    void add(double x) {
        if (std::isnan(x) || x > value) value = std::isnan(x) ? kInf : x;
    }
};

VerifyRecord record(const std::string& suite, const std::string& property, int samples, double worst, bool pass) {
    return {suite, property, samples, worst, pass};
}

// Parallel map over indices with results stored by index (schedule-invariant).
template <class T>
std::vector<T> par_map(int n, int threads, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<std::size_t>(n));
    parallel_rows(n, threads, [&](int k) { out[static_cast<std::size_t>(k)] = fn(k); });
    return out;
}

double nearest_distance(Complex z, const std::vector<Complex>& set) {
    double best = kInf;
    for (const Complex& s : set) best = std::min(best, std::abs(z - s));
    return best;
}

// Multiplier expected at each symmetry image, in symmetry_images order
Complex expected_multiplier(std::size_t member, Complex rho) { return member < 4 ? rho : std::conj(rho); }

// ----------------------------------------------------------------- symmetry

std::vector<VerifyRecord> suite_symmetry(int n, std::uint64_t seed, int threads) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-3.0, 3.0);
    std::vector<Complex> lambdas;
    for (int k = 0; k < n; ++k) lambdas.emplace_back(box(rng), box(rng));

    struct Row {
        int mismatches = 0;
        double modulus = 0.0, phase = 0.0, cross = 0.0;
        int cycles = 0;
    };
    const auto rows = par_map<Row>(n, threads, [&](int k) {
        Row row;
        const SymmetryOrbit orb = symmetry_images(lambdas[static_cast<std::size_t>(k)]);
        std::vector<Classification> cls;
        for (const Complex& m : orb.members) cls.push_back(classify(m, kDefaultVerifyBudget));
        for (std::size_t i = 0; i < cls.size(); ++i) {
            const auto& a = cls[0];
            const auto& b = cls[i];
            if (a.tag != b.tag || a.depth != b.depth || a.period != b.period) ++row.mismatches;
            if (a.tag == Verdict::Shell && b.tag == Verdict::Shell) {
                row.modulus = std::max(row.modulus, std::abs(std::abs(a.multiplier) - std::abs(b.multiplier)));
                if (orb.members.size() == 8)
                    row.phase = std::max(row.phase, std::abs(b.multiplier - expected_multiplier(i, a.multiplier)));
            }
            if (b.tag == Verdict::Shell) {
                if (const auto c = detect_cycle(orb.members[i], kDefaultVerifyBudget)) {
                    const Complex chain = multiplier_chain(orb.members[i], *c);
                    const Complex prod = multiplier_product_formula(*c);
                    row.cross = std::max(row.cross, std::abs(chain - prod) / (1.0 + std::abs(chain)));
                    ++row.cycles;
                }
            }
        }
        return row;
    });
    int mismatches = 0, cycles = 0;
    Worst modulus, phase, cross;
    for (const Row& r : rows) {
        mismatches += r.mismatches;
        cycles += r.cycles;
        modulus.add(r.modulus);
        phase.add(r.phase);
        cross.add(r.cross);
    }

    // orbit-level identities over 100 steps
    Worst conj_dev, rot_dev;
    const int orbit_samples = std::min(n, 100);
    for (int k = 0; k < orbit_samples; ++k) {
        const Complex lambda = lambdas[static_cast<std::size_t>(k)];
        const Complex z0(box(rng), box(rng));
        Complex a = lambda * I, b = std::conj(lambda) * I;  // f_lambda, f_conj(lambda)
        Complex c = z0, d = -I * z0;                         // f_lambda, f_{i lambda}
        bool conj_live = true, rot_live = true;
        for (int step = 1; step <= 100 && (conj_live || rot_live); ++step) {
            if (conj_live) {
                const ExtendedValue fa = eval_f(lambda, a), fb = eval_f(std::conj(lambda), b);
                if (fa.is_infinite() || fb.is_infinite()) conj_live = false;
                else {
                    a = fa.value(), b = fb.value();
                    conj_dev.add(std::abs(b - std::conj(a)) / (1e-8 * step));
                }
            }
            if (rot_live) {
                const ExtendedValue fc = eval_f(lambda, c), fd = eval_f(I * lambda, d);
                if (fc.is_infinite() || fd.is_infinite()) rot_live = false;
                else {
                    c = fc.value(), d = fd.value();
                    rot_dev.add(std::abs(d + I * c) / (1e-8 * step));
                }
            }
        }
    }

    return {
        record("symmetry", "verdict_invariance", n, mismatches, mismatches == 0),
        record("symmetry", "multiplier_modulus", n, modulus.value, modulus.value <= 1e-9),
        record("symmetry", "multiplier_phase", n, phase.value, phase.value <= 1e-9),
        record("symmetry", "cross_formula", cycles, cross.value, cross.value <= 1e-8),
        // deviations below are in units of the allowed 1e-8*k
        record("symmetry", "orbit_conjugation", orbit_samples, conj_dev.value, conj_dev.value <= 1.0),
        record("symmetry", "orbit_rotation", orbit_samples, rot_dev.value, rot_dev.value <= 1.0),
    };
}

// ----------------------------------------------------------------- axes

Complex axis_point(int k, double t) {
    switch (k % 4) {
        case 0: return {t, 0.0};
        case 1: return {-t, 0.0};
        case 2: return {0.0, t};
        default: return {0.0, -t};
    }
}

std::vector<VerifyRecord> suite_axes(int n, std::uint64_t seed, int threads) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wide(0.0, 10.0), narrow(0.0, 0.8862269254527580);
    std::vector<Complex> far, near;
    for (int k = 0; k < n; ++k) {
        double t = wide(rng);
        if (t == 0.0) t = 10.0;
        far.push_back(axis_point(k, t));
    }
    for (int k = 0; k < n; ++k) {
        double t = narrow(rng);
        if (t == 0.0) t = 0.5;
        near.push_back(axis_point(k, t));
    }
    const auto shells = par_map<int>(n, threads, [&](int k) {
        return classify(far[static_cast<std::size_t>(k)], kDefaultVerifyBudget).tag == Verdict::Shell ? 1 : 0;
    });
    struct Row {
        int bad = 0;
        double excess = 0.0;
    };
    const auto capture = par_map<Row>(n, threads, [&](int k) {
        const Complex lambda = near[static_cast<std::size_t>(k)];
        Row row;
        const Classification c = classify(lambda, kDefaultVerifyBudget);
        if (c.tag != Verdict::CaptureDepth || c.depth != 0) row.bad = 1;
        const OrbitOutcome o = orbit(lambda, lambda * I, kDefaultVerifyBudget, zero_trap_radius(lambda),
                                     kDefaultEscapeRadius, true);
        for (const Complex& z : o.trace) row.excess = std::max(row.excess, std::abs(z) / std::abs(lambda) - 1.0);
        return row;
    });
    int shell_count = 0, bad = 0;
    Worst excess;
    for (int s : shells) shell_count += s;
    for (const Row& r : capture) bad += r.bad, excess.add(r.excess);
    return {
        record("axes", "no_shell_on_axes", n, shell_count, shell_count == 0),
        record("axes", "axis_capture_depth_zero", n, bad, bad == 0),
        record("axes", "axis_orbit_bounded_by_modulus", n, excess.value, excess.value <= 1e-12),
    };
}

// ----------------------------------------------------------------- period one

Complex random_admissible_u(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> xs(-12.0, 12.0), ys(1.0, 8.0), coin(0.0, 1.0);
    for (;;) {
        const Complex u(xs(rng), coin(rng) < 0.5 ? ys(rng) : -ys(rng));
        const double m = std::abs(period_one_multiplier(u));
        if (m < 0.9 && m > 1e-6) return u;
    }
}

std::vector<VerifyRecord> suite_period1(int n, std::uint64_t seed, int threads) {
    std::mt19937_64 rng(seed);
    std::vector<Complex> us;
    for (int k = 0; k < n; ++k) us.push_back(random_admissible_u(rng));
    struct Row {
        double rho_dev = kInf, fixed_dev = kInf;
    };
    const auto rows = par_map<Row>(n, threads, [&](int k) {
        Row row;
        const Complex u = us[static_cast<std::size_t>(k)];
        const Complex lambda = period_one_parameter(u);
        const Complex z = std::sqrt(u / 2.0);
        const ExtendedValue fz = eval_f(lambda, z);
        if (fz.is_finite()) row.fixed_dev = std::abs(fz.value() - z) / (1.0 + std::abs(z));
        const Classification c = classify(lambda, kDefaultVerifyBudget);
        if (c.tag == Verdict::Shell && c.period == 1) row.rho_dev = std::abs(c.multiplier - period_one_multiplier(u));
        return row;
    });
    Worst rho, fixed;
    for (const Row& r : rows) rho.add(r.rho_dev), fixed.add(r.fixed_dev);

    const double lam = std::sqrt(pi / 4.0);
    const std::vector<Complex> approx{lam};
    const Cycle rep = refine_cycle(lam, approx, 1);
    const double rep_dev = std::abs(rep.multiplier - pi);
    return {
        record("period1", "parametrization_identity", n, rho.value, rho.value < 1e-8),
        record("period1", "fixed_point_residual", n, fixed.value, fixed.value < 1e-10),
        record("period1", "repelling_fixed_point_multiplier_pi", 1, rep_dev,
               rep_dev < 1e-10 && rep.stability == Stability::Repelling),
    };
}

// ----------------------------------------------------------------- multiplier

std::vector<VerifyRecord> suite_multiplier(int n, std::uint64_t seed, int threads) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-6.0, 6.0), angle(0.0, 2.0 * pi);
    std::vector<Complex> lambdas;
    for (int k = 0; k < n; ++k) lambdas.push_back(period_one_parameter(random_admissible_u(rng)));
    for (int k = 0; k < n; ++k) lambdas.emplace_back(box(rng), box(rng));
    const Complex centers[] = {pole_point(0) * I, pole_point(0), pole_point(1) * I, -pole_point(1)};
    for (int k = 0; k < n; ++k) lambdas.push_back(centers[k % 4] + std::polar(0.02, angle(rng)));

    struct Row {
        double dev = -1.0;
        int period = 0;
        Complex lambda;
    };
    const auto rows = par_map<Row>(static_cast<int>(lambdas.size()), threads, [&](int k) {
        Row row;
        row.lambda = lambdas[static_cast<std::size_t>(k)];
        if (row.lambda == Complex(0.0, 0.0)) return row;
        const auto c = detect_cycle(row.lambda, kDefaultVerifyBudget);
        if (!c || c->stability == Stability::Superattracting) return row;
        const Complex chain = multiplier_chain(row.lambda, *c);
        row.dev = std::abs(chain - multiplier_product_formula(*c)) / (1.0 + std::abs(chain));
        row.period = c->period;
        return row;
    });
    Worst dev;
    int cycles = 0;
    double box_extent = 0.0;
    int period2 = 0;
    for (const Row& r : rows) {
        if (r.dev < 0.0) continue;
        ++cycles;
        dev.add(r.dev);
        if (r.period == 2 && std::abs(r.lambda.real()) < 6 && std::abs(r.lambda.imag()) < 6) {
            ++period2;
            box_extent = std::max(box_extent, std::max(std::abs(r.lambda.real()), std::abs(r.lambda.imag())));
        }
    }
    return {
        record("multiplier", "cross_formula", cycles, dev.value, dev.value < 1e-8),
        // reported only: boundedness of period-2 components has no finite certificate
        record("multiplier", "period2_bounding_box_extent", period2, box_extent, true),
    };
}

// ----------------------------------------------------------------- rays

std::vector<VerifyRecord> suite_rays(int, std::uint64_t, int) {
    std::vector<VerifyRecord> out;
    {
        const Complex seed_lambda = period_one_parameter(Complex(0.0, -3.0));
        const auto ray = trace_internal_ray(seed_lambda, 0.0, 1e-3, 60);
        Worst mult, axis, diag;
        int non_decreasing = 0;
        for (std::size_t k = 0; k < ray.size(); ++k) {
            const RayPoint& p = ray[k];
            mult.add(std::abs(p.cycle.multiplier - p.r));
            const Complex u = 2.0 * p.cycle.points[0] * p.cycle.points[0];
            axis.add(std::abs(u.real()) / std::abs(u) + (u.imag() < 0 ? 0.0 : 1.0));
            diag.add(std::abs(std::arg(p.lambda) - pi / 4.0));
            if (k > 0 && !(p.r < ray[k - 1].r)) ++non_decreasing;
        }
        const int m = static_cast<int>(ray.size());
        out.push_back(record("rays", "period1_multiplier_exactness", m, mult.value, mult.value < 1e-9));
        out.push_back(record("rays", "period1_r_strictly_decreasing", m, non_decreasing, non_decreasing == 0));
        out.push_back(record("rays", "period1_u_on_negative_imaginary_axis", m, axis.value, axis.value < 1e-8));
        out.push_back(record("rays", "period1_lambda_on_diagonal", m, diag.value, diag.value < 1e-8));
    }
    {
        const BoundarySample b = period_one_boundary_point(0.5);
        const auto bud = find_bud(b.lambda, 2, 1, 1, 0.05);
        if (!bud) {
            out.push_back(record("rays", "period2_seed_found", 0, kInf, false));
            return out;
        }
        const auto ray = trace_internal_ray(*bud, 0.0, 1e-6, 200);
        const auto pole_set = poles(50);
        Worst mult;
        int non_decreasing = 0, pole_violations = 0, growth_violations = 0;
        for (std::size_t k = 0; k < ray.size(); ++k) {
            const RayPoint& p = ray[k];
            mult.add(std::abs(p.cycle.multiplier - p.r));
            if (k == 0) continue;
            const RayPoint& q = ray[k - 1];
            if (!(p.r < q.r)) ++non_decreasing;
            if (nearest_distance(p.cycle.points[1], pole_set) > nearest_distance(q.cycle.points[1], pole_set))
                ++pole_violations;
            if (std::abs(p.cycle.points[0]) < std::abs(q.cycle.points[0])) ++growth_violations;
        }
        const RayPoint& end = ray.back();
        const double z1_gap = std::abs(end.cycle.points[1] - end.lambda * I);
        const double vc_gap = nearest_distance(end.lambda, prepole_parameters_order1(50));
        const int m = static_cast<int>(ray.size());
        out.push_back(record("rays", "period2_multiplier_exactness", m, mult.value, mult.value < 1e-9));
        out.push_back(record("rays", "period2_r_strictly_decreasing", m, non_decreasing, non_decreasing == 0));
        out.push_back(record("rays", "period2_cycle_point_approaches_pole", m, pole_violations, pole_violations == 0));
        out.push_back(record("rays", "period2_far_point_grows", m, growth_violations, growth_violations == 0));
        out.push_back(record("rays", "period2_z1_near_asymptotic_value", m, z1_gap, z1_gap < 1e-3));
        out.push_back(record("rays", "period2_endpoint_at_virtual_center", m, vc_gap, vc_gap < 1e-3));
    }
    return out;
}

// ----------------------------------------------------------------- quadruplets

int tract_partner_under_reflection(int t) { return t == 1 ? 2 : t == 2 ? 1 : t == 3 ? 4 : 3; }

std::vector<VerifyRecord> suite_quadruplets(int, std::uint64_t, int) {
    std::vector<VerifyRecord> out;
    const Complex stars[] = {pole_point(0) * I, pole_point(0)};
    const char* names[] = {"imaginary", "real"};
    for (int s = 0; s < 2; ++s)
        for (double radius : {0.02, 0.01}) {
            const auto reps = quadruplet(stars[s], 2, radius);
            const std::string name = std::string("four_tracts_") + names[s] + "_r" + (radius == 0.02 ? "0.02" : "0.01");
            out.push_back(record("quadruplets", name, kQuadrupletProbes, 4.0 - reps.size(), reps.size() == 4));
        }
    // lambda -> -conj(lambda) fixes i*s0 and swaps tracts 1<->2, 3<->4
    const auto reps = quadruplet(stars[0], 2, 0.02);
    int violations = 0;
    for (const auto& r : reps) {
        const Complex image = -std::conj(r.lambda);
        const Classification c = classify(image, kDefaultVerifyBudget);
        const ExtendedValue w = asymptotic_orbit(image, 1);
        const auto t = w.is_finite() ? tract_of(w.value(), kQuadrupletTractThreshold) : std::nullopt;
        if (c.tag != Verdict::Shell || c.period != 2 || !t || t->quadrant != tract_partner_under_reflection(r.tract))
            ++violations;
    }
    out.push_back(record("quadruplets", "tract_symmetry", static_cast<int>(reps.size()), violations,
                         violations == 0 && reps.size() == 4));
    return out;
}

// ----------------------------------------------------------------- buds

std::vector<VerifyRecord> suite_buds(int, std::uint64_t, int) {
    std::vector<VerifyRecord> out;
    for (int p : {2, 3}) {
        const BoundarySample b = period_one_boundary_point(1.0 / p);
        const auto bud = find_bud(b.lambda, p, 1, 1, 0.05);
        const double gap = bud ? std::abs(*bud - b.lambda) : kInf;
        out.push_back(record("buds", "bud_1_" + std::to_string(p), 1, gap, bud.has_value()));
    }
    const BoundarySample b0 = period_one_boundary_point(0.5);
    const bool none = !find_bud(b0.lambda, 1, 0, 1, 0.05).has_value();
    out.push_back(record("buds", "argument_zero_has_no_bud", 1, none ? 0.0 : 1.0, none));
    return out;
}

// ----------------------------------------------------------------- boundary

std::vector<VerifyRecord> suite_boundary(int, std::uint64_t, int) {
    std::vector<VerifyRecord> out;
    const auto trace = trace_period_one_boundary(0.0, 6.0, 61, HalfPlane::Upper);
    Worst unit, neutral;
    for (const auto& s : trace) {
        unit.add(std::abs(std::abs(period_one_multiplier(s.u)) - 1.0));
        if (s.x == 0.0) continue;
        try {
            const std::vector<Complex> approx{std::sqrt(s.u / 2.0)};
            const Cycle c = refine_cycle(s.lambda, approx, 1);
            neutral.add(std::abs(std::abs(c.multiplier) - 1.0));
        } catch (const NumericError&) {
            neutral.add(kInf);
        }
    }
    const int m = static_cast<int>(trace.size());
    out.push_back(record("boundary", "unit_multiplier_modulus", m, unit.value, unit.value < 1e-10));
    out.push_back(record("boundary", "neutral_cycle_at_boundary", m, neutral.value, neutral.value < 1e-4));

    // independent oracle for x = 0: sinh y = 2y
    double lo = 1.0, hi = 4.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::sinh(mid) - 2.0 * mid < 0.0 ? lo : hi) = mid;
    }
    const double y0 = trace.front().u.imag();
    out.push_back(record("boundary", "x0_root", 1, std::abs(y0 - lo), std::abs(y0 - lo) < 1e-9));

    const auto at4 = trace_period_one_boundary(4.0, 4.0, 2, HalfPlane::Upper);
    const double dev4 = std::abs(at4.front().u.imag() / std::exp(8.0) - 1.0);
    out.push_back(record("boundary", "asymptote_relative_deviation_x4", 1, dev4, dev4 < 0.05));

    Worst asym, diag;
    const auto far = trace_period_one_boundary(3.0, 6.0, 31, HalfPlane::Upper);
    for (const auto& s : far) {
        asym.add(std::abs(s.u.imag() / std::exp(2.0 * s.x) - 1.0));
    }
    // angular distance of the mapped boundary from the nearest diagonal, at the far end
    const double a = std::arg(far.back().lambda);
    const double to_diag = std::abs(std::remainder(a - pi / 4.0, pi / 2.0));
    diag.add(to_diag);
    out.push_back(record("boundary", "asymptote_relative_deviation_x3_6", static_cast<int>(far.size()), asym.value,
                         asym.value < 0.05));
    out.push_back(record("boundary", "mapped_boundary_diagonal_angle", 1, diag.value, diag.value < 0.05));

    // the diagonal rays themselves sit inside period-one components
    int off = 0;
    for (double t = 2.0; t <= 40.0; t += 2.0)
        for (const Complex dir : {Complex(1, 1), Complex(-1, 1), Complex(-1, -1), Complex(1, -1)}) {
            const Complex lambda = dir / std::sqrt(2.0) * std::sqrt(t);
            const Classification c = classify(lambda, kDefaultVerifyBudget);
            if (c.tag != Verdict::Shell || c.period != 1) ++off;
        }
    out.push_back(record("boundary", "diagonal_rays_in_period_one", 80, off, off == 0));
    return out;
}

// ----------------------------------------------------------------- solve residuals

std::vector<VerifyRecord> suite_solve(int, std::uint64_t, int) {
    std::vector<VerifyRecord> out;
    Worst centers, pole_err;
    for (long k = 1; k <= 5; ++k) {
        ComponentCode code;
        code.base_index = k;
        centers.add(std::abs(capture_center(code).root - std::sqrt(k * pi)));
    }
    for (int j = 0; j <= 5; ++j) {
        const double s = std::sqrt((2.0 * j + 1.0) * pi / 2.0);
        pole_err.add(std::abs(newton_param(1, ExtendedValue::infinity(), 1.02 * s).root - s));
    }
    out.push_back(record("solve-residuals", "capture_centers_order1", 5, centers.value, centers.value < 1e-10));
    out.push_back(record("solve-residuals", "prepole_parameters_order1", 6, pole_err.value, pole_err.value < 1e-10));

    Worst order2, closure;
    std::vector<ComponentCode> codes;
    for (long j = 0; j <= 5; ++j) codes.push_back(ComponentCode{1, {j}, {}, 1, CodeKind::PreZero, {}});
    for (long k : {-2L, -1L, 2L, 3L}) codes.push_back(ComponentCode{k, {0}, {}, 1, CodeKind::PreZero, {}});
    for (const auto& code : codes) {
        const Complex root = capture_center(code).root;
        const ExtendedValue v = asymptotic_orbit(root, 2);
        order2.add(v.is_finite() ? std::abs(v.value()) : kInf);
        for (const Complex& image : symmetry_images(root).members) {
            const ExtendedValue w = asymptotic_orbit(image, 2);
            closure.add(w.is_finite() ? std::abs(w.value()) : kInf);
        }
    }
    out.push_back(record("solve-residuals", "capture_centers_order2", static_cast<int>(codes.size()), order2.value,
                         order2.value < 1e-9));
    out.push_back(record("solve-residuals", "root_set_symmetry_closure", static_cast<int>(codes.size()), closure.value,
                         closure.value < 1e-9));

    Worst vc;
    for (long n = 0; n <= 5; ++n) {
        const ComponentCode code{n, {0}, {}, 1, CodeKind::PrePole, {}};
        const SolveReport r = virtual_center(code, 3);
        const ExtendedValue v = asymptotic_orbit(r.root, 1);
        vc.add(v.is_finite() ? std::abs(v.value() - pole_point(n)) : kInf);
    }
    out.push_back(record("solve-residuals", "virtual_centers_period3", 6, vc.value, vc.value < 1e-9));

    // pre-zero roots of order 2 follow the pole skeleton as the branch index grows
    int pz_violations = 0;
    double prev = kInf, last = kInf;
    const auto pole_set = poles(60);
    for (long j = 5; j <= 20; ++j) {
        const double d = nearest_distance(capture_center(ComponentCode{1, {j}, {}, 1, CodeKind::PreZero, {}}).root, pole_set);
        if (d > prev) ++pz_violations;
        prev = last = d;
    }
    out.push_back(record("solve-residuals", "prezero_accumulation_monotone", 16, pz_violations, pz_violations == 0));
    out.push_back(record("solve-residuals", "prezero_accumulation_within_half", 1, last, last < 0.5));

    // order-2 virtual centers with growing pole index approach the order-1 one
    const Complex limit = pole_point(0) * I;
    int vc_violations = 0;
    prev = kInf;
    for (long k = 1; k <= 10; ++k) {
        const double d = std::abs(virtual_center(ComponentCode{k, {0}, {}, 1, CodeKind::PrePole, {}}, 3).root - limit);
        if (d >= prev) ++vc_violations;
        prev = last = d;
    }
    out.push_back(record("solve-residuals", "virtual_center_accumulation_monotone", 10, vc_violations, vc_violations == 0));
    out.push_back(record("solve-residuals", "virtual_center_accumulation_distance_k10", 1, last, last < 1e-2));
    return out;
}

using SuiteFn = std::vector<VerifyRecord> (*)(int, std::uint64_t, int);

const std::map<std::string, SuiteFn>& suite_table() {
    static const std::map<std::string, SuiteFn> table = {
        {"symmetry", suite_symmetry},       {"axes", suite_axes},     {"multiplier", suite_multiplier},
        {"period1", suite_period1},         {"rays", suite_rays},     {"quadruplets", suite_quadruplets},
        {"buds", suite_buds},               {"boundary", suite_boundary}, {"solve-residuals", suite_solve},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"symmetry", "axes",  "multiplier", "period1",        "rays",
                                                   "quadruplets", "buds", "boundary", "solve-residuals"};
    return names;
}

std::vector<VerifyRecord> run_verify(const std::string& suite, int samples, std::uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (suite == "all") {
        std::vector<VerifyRecord> out;
        for (const auto& name : verify_suites()) {
            auto part = suite_table().at(name)(samples, seed, threads);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    const auto it = suite_table().find(suite);
    if (it == suite_table().end()) throw std::invalid_argument("unknown suite: " + suite);
    return it->second(samples, seed, threads);
}

std::string to_json_line(const VerifyRecord& r, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["property"] = r.property;
    j["samples"] = r.samples;
    if (std::isfinite(r.worst_deviation)) j["worst_deviation"] = r.worst_deviation;
    else j["worst_deviation"] = nullptr;
    j["pass"] = r.pass;
    j["seed"] = seed;
    return j.dump();
}

}  // namespace tanplane
