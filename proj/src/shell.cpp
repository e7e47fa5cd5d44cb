#include "tanplane/shell.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tanplane/classify.hpp"
#include "tanplane/error.hpp"
#include "tanplane/solve.hpp"

namespace tanplane {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double wrap_angle(double a) { return std::remainder(a, kTwoPi); }  // (-pi, pi]

// log|2u/sin u|, stable for large |Im u|
double log_abs_multiplier(double x, double y) {
    // |sin(x+iy)|^2 = sin^2 x + sinh^2 y
    const double ay = std::abs(y);
    double log_sin2;
    if (ay > 20.0) {
        // sinh^2 y ~ e^{2|y|}/4, sin^2 x negligible at this size
        log_sin2 = 2.0 * ay - std::log(4.0) + std::log1p(-2.0 * std::exp(-2.0 * ay) + 4.0 * std::sin(x) * std::sin(x) * std::exp(-2.0 * ay));
    } else {
        const double sh = std::sinh(y);
        log_sin2 = std::log(std::sin(x) * std::sin(x) + sh * sh);
    }
    return std::log(2.0 * std::hypot(x, y)) - 0.5 * log_sin2;
}

Complex multiplier_derivative(Complex u) {
    const Complex s = std::sin(u);
    return 2.0 / s - 2.0 * u * std::cos(u) / (s * s);
}

}  // namespace

Complex period_one_multiplier(Complex u) {
    if (std::abs(u) < 1e-4) {
        const Complex u2 = u * u;
        return 2.0 * (1.0 + u2 / 6.0 + 7.0 * u2 * u2 / 360.0);
    }
    if (std::abs(u.imag()) > 350.0) {
        // 1/sin u through the small exponential; sin u itself would overflow
        const Complex e = u.imag() > 0 ? std::exp(Complex(-u.imag(), u.real())) : std::exp(Complex(u.imag(), -u.real()));
        const Complex csc = u.imag() > 0 ? Complex(0.0, 2.0) * e / (e * e - 1.0) : Complex(0.0, 2.0) * e / (1.0 - e * e);
        return 2.0 * u * csc;
    }
    const Complex s = std::sin(u);
    if (std::abs(s) < 1e-14) throw NumericError(ErrorKind::SineVanishes, "sin u = 0");
    return 2.0 * u / s;
}

Complex period_one_parameter(Complex u, int branch) {
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    if (u == Complex(0.0, 0.0)) throw NumericError(ErrorKind::TangentVanishes, "u = 0");
    const Complex t = std::tan(u / 2.0);
    if (std::abs(t) < 1e-14 || !finite(t)) throw NumericError(ErrorKind::TangentVanishes, "tan(u/2) = 0");
    return static_cast<double>(branch) * std::sqrt(u) / (std::sqrt(2.0) * t);
}

std::vector<BoundarySample> trace_period_one_boundary(double x_min, double x_max, int steps, HalfPlane half) {
    if (steps < 2) throw std::invalid_argument("steps must be >= 2");
    if (!(x_max >= x_min)) throw std::invalid_argument("x_max must be >= x_min");
    std::vector<BoundarySample> out;
    for (int k = 0; k < steps; ++k) {
        const double x = x_min + (x_max - x_min) * k / (steps - 1);
        auto g = [x](double y) { return log_abs_multiplier(x, y); };  // < 0 inside the component
        // above the curve |H| < 1; walk down to bracket the crossing
        double hi = std::asinh(2.0 * (std::abs(x) + 1.0)) + 4.0;
        double lo = hi;
        bool bracketed = false;
        while (lo > 1e-9) {
            lo = std::max(lo - 0.05, 1e-9);
            if (g(lo) > 0.0) {
                bracketed = true;
                break;
            }
            hi = lo;
        }
        if (!bracketed) throw NumericError(ErrorKind::BracketFailed, "no sign change for x = " + std::to_string(x));
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        const double y = 0.5 * (lo + hi);
        BoundarySample s;
        s.x = x;
        s.t = x * x;
        s.u = Complex(x, half == HalfPlane::Upper ? y : -y);
        s.lambda = period_one_parameter(s.u);
        if (out.empty() || out.back().x != s.x) out.push_back(s);
    }
    return out;
}

BoundarySample period_one_boundary_point(double angle, double x_min, double x_max, HalfPlane half) {
    const auto trace = trace_period_one_boundary(x_min, x_max, 2000, half);
    const double goal = kTwoPi * angle;
    Complex seed;
    bool found = false;
    for (std::size_t k = 0; k + 1 < trace.size() && !found; ++k) {
        const double a = wrap_angle(std::arg(period_one_multiplier(trace[k].u)) - goal);
        const double b = wrap_angle(std::arg(period_one_multiplier(trace[k + 1].u)) - goal);
        if (a == 0.0 || (a < 0) != (b < 0)) {
            if (std::abs(a - b) > pi) continue;  // wrap, not a crossing
            const double w = a == b ? 0.0 : a / (a - b);
            seed = trace[k].u + w * (trace[k + 1].u - trace[k].u);
            found = true;
        }
    }
    if (!found) throw NumericError(ErrorKind::BracketFailed, "internal angle not reached on the traced branch");
    const Complex target = std::polar(1.0, goal);
    Complex u = seed;
    for (int it = 0; it < 50; ++it) {
        const Complex du = (period_one_multiplier(u) - target) / multiplier_derivative(u);
        u -= du;
        if (std::abs(du) < 1e-15 * (1.0 + std::abs(u))) break;
    }
    if (std::abs(period_one_multiplier(u) - target) > 1e-12)
        throw NumericError(ErrorKind::Diverged, "boundary point polish failed");
    BoundarySample s;
    s.x = u.real();
    s.t = u.real() * u.real();
    s.u = u;
    s.lambda = period_one_parameter(u);
    return s;
}

// ---------------------------------------------------------------- internal rays

namespace {

struct RayState {
    Complex lambda;
    Complex z;  // followed cycle point
};

struct RayResidual {
    Complex cycle;       // f^p(z) - z
    Complex multiplier;  // Log(rho / m), imaginary part wrapped
};

RayResidual ray_residual(const RayState& s, int p, Complex log_target) {
    Complex w = s.z, log_rho = 0.0;
    for (int i = 0; i < p; ++i) {
        log_rho += std::log(eval_df(s.lambda, w));
        const ExtendedValue v = eval_f(s.lambda, w);
        if (v.is_infinite()) throw NumericError(ErrorKind::PoleProximity, "ray cycle hit a pole");
        w = v.value();
    }
    const Complex d = log_rho - log_target;
    return {w - s.z, Complex(d.real(), wrap_angle(d.imag()))};
}

bool residual_small(const RayResidual& r, const RayState& s) {
    return std::abs(r.cycle) < 1e-12 * (1.0 + std::abs(s.z)) && std::abs(r.multiplier) < 1e-11;
}

enum class StepFailure { None, Corrector, Collapse };

struct Corrected {
    RayState state;
    Cycle cycle;
};

// Newton on the coupled system in (lambda, z); FD Jacobian, 2x2 complex solve.
std::optional<Corrected> correct(RayState s, int p, Complex log_target, StepFailure& why) {
    why = StepFailure::Corrector;
    try {
        bool ok = false;
        for (int it = 0; it < 20; ++it) {
            const RayResidual r = ray_residual(s, p, log_target);
            if (residual_small(r, s)) {
                ok = true;
                break;
            }
            Eigen::Matrix2cd J;
            const double hl = 1e-7 * (1.0 + std::abs(s.lambda));
            const double hz = 1e-7 * (1.0 + std::abs(s.z));
            const RayResidual lp = ray_residual({s.lambda + hl, s.z}, p, log_target);
            const RayResidual lm = ray_residual({s.lambda - hl, s.z}, p, log_target);
            const RayResidual zp = ray_residual({s.lambda, s.z + hz}, p, log_target);
            const RayResidual zm = ray_residual({s.lambda, s.z - hz}, p, log_target);
            auto dm = [](Complex a, Complex b) { return Complex(a.real() - b.real(), wrap_angle(a.imag() - b.imag())); };
            J(0, 0) = (lp.cycle - lm.cycle) / (2.0 * hl);
            J(1, 0) = dm(lp.multiplier, lm.multiplier) / (2.0 * hl);
            J(0, 1) = (zp.cycle - zm.cycle) / (2.0 * hz);
            J(1, 1) = dm(zp.multiplier, zm.multiplier) / (2.0 * hz);
            const Eigen::Vector2cd F(r.cycle, r.multiplier);
            const Eigen::Vector2cd delta = J.partialPivLu().solve(-F);
            if (!finite(delta(0)) || !finite(delta(1))) return std::nullopt;
            if (std::abs(delta(0)) > 0.25 * (1.0 + std::abs(s.lambda))) return std::nullopt;
            s.lambda += delta(0);
            s.z += delta(1);
        }
        if (!ok) return std::nullopt;

        std::vector<Complex> approx{s.z};
        for (int i = 1; i < p; ++i) {
            const ExtendedValue v = eval_f(s.lambda, approx.back());
            if (v.is_infinite()) return std::nullopt;
            approx.push_back(v.value());
        }
        Cycle c;
        try {
            c = refine_cycle(s.lambda, approx, p);
        } catch (const NotMinimalPeriodError&) {
            why = StepFailure::Collapse;
            return std::nullopt;
        }
        if (std::abs(c.multiplier - std::exp(log_target)) >= 1e-9) return std::nullopt;
        s.z = c.points[0];
        if (p > 1) c = rotate_cycle(c, static_cast<std::size_t>(p - 1));
        why = StepFailure::None;
        return Corrected{s, c};
    } catch (const NumericError&) {
        return std::nullopt;
    }
}

// Continue the state along s in [from, to]; target(s) gives log of the wanted multiplier.
template <class Target, class Record>
void continue_path(RayState& st, int p, double from, double to, double nominal, Target target, Record record) {
    double s = from;
    double step = nominal;
    bool have_prev = false;
    RayState prev{};
    double s_prev = 0.0;
    StepFailure last = StepFailure::None;
    const double dir = to > from ? 1.0 : -1.0;
    while (dir * (to - s) > 0.0) {
        if (step < 1e-12) {
            if (last == StepFailure::Collapse) throw NumericError(ErrorKind::LostCycle, "cycle period collapsed along the ray");
            throw NumericError(ErrorKind::ContinuationStalled, "step fell below 1e-12");
        }
        double s_next = s + dir * step;
        if (dir * (s_next - to) > 0.0) s_next = to;
        RayState pred = st;
        if (have_prev) {
            const double w = (s_next - s) / (s - s_prev);
            pred.lambda += w * (st.lambda - prev.lambda);
            pred.z += w * (st.z - prev.z);
        }
        StepFailure why;
        auto next = correct(pred, p, target(s_next), why);
        if (!next && have_prev) next = correct(st, p, target(s_next), why);
        if (!next) {
            last = why;
            step *= 0.5;
            continue;
        }
        prev = st;
        s_prev = s;
        have_prev = true;
        st = next->state;
        s = s_next;
        record(s, next->cycle, st);
        step = std::min(nominal, 2.0 * step);
    }
}

}  // namespace

std::vector<RayPoint> trace_internal_ray(Complex lambda_seed, double alpha, double r_stop, int step_count) {
    if (!(r_stop > 0.0 && r_stop < 1.0)) throw std::invalid_argument("r_stop must lie in (0, 1)");
    if (step_count < 1) throw std::invalid_argument("step_count must be >= 1");
    const Classification cls = classify(lambda_seed, kDefaultVerifyBudget);
    if (cls.tag != Verdict::Shell) throw std::invalid_argument("ray seed must classify as a shell parameter");
    const auto seed_cycle = detect_cycle(lambda_seed, kDefaultVerifyBudget);
    if (!seed_cycle) throw std::invalid_argument("ray seed has no detectable cycle");
    const int p = seed_cycle->period;

    // follow the cycle point closest to the asymptotic value
    const Complex av = lambda_seed * Complex(0.0, 1.0);
    std::size_t near = 0;
    for (std::size_t i = 1; i < seed_cycle->points.size(); ++i)
        if (std::abs(seed_cycle->points[i] - av) < std::abs(seed_cycle->points[near] - av)) near = i;
    RayState st{lambda_seed, seed_cycle->points[near]};

    alpha -= std::floor(alpha);
    const double r0 = std::abs(seed_cycle->multiplier);
    const double a0 = std::arg(seed_cycle->multiplier) / kTwoPi;
    const double turn = std::remainder(alpha - a0, 1.0);
    const double log_r0 = std::log(r0);
    auto nop = [](double, const Cycle&, const RayState&) {};

    // rotate the multiplier onto the ray's argument at constant modulus
    if (turn != 0.0)
        continue_path(st, p, 0.0, 1.0, 1.0 / 20.0,
                      [&](double s) { return Complex(log_r0, kTwoPi * (a0 + s * turn)); }, nop);

    std::vector<RayPoint> out;
    if (r_stop >= r0) return out;
    const double log_stop = std::log(r_stop);
    const double nominal = std::min(-std::log(0.8), (log_r0 - log_stop) / step_count);
    continue_path(st, p, log_r0, log_stop, nominal,
                  [&](double lr) { return Complex(lr, kTwoPi * alpha); },
                  [&](double lr, const Cycle& c, const RayState& s) {
                      out.push_back(RayPoint{s.lambda, c, std::exp(lr), alpha});
                  });
    return out;
}

std::optional<Complex> find_bud(Complex lambda_boundary, int p, int q, int n, double search_radius) {
    if (p < 2 || n < 1 || std::gcd(q, p) != 1) return std::nullopt;
    if (!(search_radius > 0.0)) throw std::invalid_argument("search radius must be positive");
    constexpr int kDirections = 64, kRadii = 8;
    for (int k = 0; k < kRadii; ++k) {
        const double radius = search_radius * std::pow(2.0, k - (kRadii - 1));
        for (int d = 0; d < kDirections; ++d) {
            const Complex lambda = lambda_boundary + std::polar(radius, kTwoPi * d / kDirections);
            if (lambda == Complex(0.0, 0.0)) continue;
            const Classification c = classify(lambda, kDefaultVerifyBudget);
            if (c.tag == Verdict::Shell && c.period == n * p) return lambda;
        }
    }
    return std::nullopt;
}

std::vector<TractRepresentative> quadruplet(Complex lambda_star, int p, double probe_radius, int probes,
                                            double tract_threshold) {
    if (p < 2) throw std::invalid_argument("quadruplets need period >= 2");
    if (!(probe_radius > 0.0) || probes < 1) throw std::invalid_argument("probe radius and count must be positive");
    if (lambda_star == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
    const ExtendedValue pre = asymptotic_orbit(lambda_star, p - 2);
    if (pre.is_finite()) {
        const Complex w = pre.value() * pre.value();
        const double m = std::floor(w.real() / pi);
        if (std::abs(w - (m + 0.5) * pi) > 1e-8 * (1.0 + std::norm(pre.value())))
            throw std::invalid_argument("lambda_star is not a virtual center of this period");
    }
    std::vector<TractRepresentative> out;
    for (int k = 0; k < probes; ++k) {
        const Complex lambda = lambda_star + std::polar(probe_radius, kTwoPi * k / probes);
        const Classification c = classify(lambda, kDefaultVerifyBudget);
        if (c.tag != Verdict::Shell || c.period != p) continue;
        const ExtendedValue w = asymptotic_orbit(lambda, p - 1);
        if (w.is_infinite()) continue;
        const auto t = tract_of(w.value(), tract_threshold);
        if (!t) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& r) { return r.tract == t->quadrant; });
        if (!seen) out.push_back({t->quadrant, lambda});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.tract < b.tract; });
    return out;
}

}  // namespace tanplane
