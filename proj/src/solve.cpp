#include "tanplane/solve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tanplane/classify.hpp"
#include "tanplane/error.hpp"

namespace tanplane {

namespace {

using std::numbers::pi;

constexpr int kFixedPointMaxSteps = 200;
const Complex I(0.0, 1.0);

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// f^n(lambda i) - target, or 1/f^n(lambda i) for an infinite target.
// The last step of the reciprocal is cos w / (lambda sin w): finite through the pole.
Complex residual_fn(Complex lambda, int n, const ExtendedValue& target) {
    Complex z = lambda * I;
    const int finite_steps = target.is_infinite() ? n - 1 : n;
    for (int k = 0; k < finite_steps; ++k) {
        const ExtendedValue v = eval_f(lambda, z);
        if (v.is_infinite())
            throw NumericError(ErrorKind::HitSingularity, "orbit of lambda*i hits a pole at step " + std::to_string(k + 1));
        z = v.value();
    }
    if (target.is_finite()) return z - target.value();
    const Complex w = z * z;
    return std::cos(w) / (lambda * std::sin(w));
}

// Fixed-point iteration of the inverse-branch composition that lands lambda*i on `landing`
// after `steps` forward steps (steps >= 1).
Complex compose_seed(const ComponentCode& code, Complex landing, int steps, Complex start) {
    Complex lambda = start;
    for (int it = 0; it < kFixedPointMaxSteps; ++it) {
        Complex z = landing;
        try {
            for (int i = 0; i + 1 < steps; ++i) z = inverse_branch(lambda, z, code.branch_indices[i], code.sign_at(i));
            const std::size_t last = static_cast<std::size_t>(steps - 1);
            const Complex next = lambda_step(lambda, z, code.branch_indices[last], code.sign_at(last));
            if (!finite(next) || next == Complex(0.0, 0.0)) break;
            const double delta = std::abs(next - lambda);
            lambda = next;
            if (delta < 1e-14 * (1.0 + std::abs(lambda))) break;
        } catch (const NumericError&) {
            break;
        }
    }
    return lambda;
}

Complex base_guess(const ComponentCode& code, int steps) {
    const std::size_t last = static_cast<std::size_t>(steps - 1);
    const double j = static_cast<double>(code.branch_indices[last]);
    return static_cast<double>(code.sign_at(last)) * std::sqrt(Complex(j * pi + pi / 4.0, 0.5));
}

}  // namespace

Complex pole_point(long j) { return std::sqrt(Complex((2.0 * static_cast<double>(j) + 1.0) * pi / 2.0, 0.0)); }

Complex zero_point(long k) { return std::sqrt(Complex(static_cast<double>(k) * pi, 0.0)); }

std::vector<Complex> poles(int max_index) {
    if (max_index < 0) throw std::invalid_argument("max_index must be >= 0");
    std::vector<Complex> out;
    for (int j = 0; j <= max_index; ++j) {
        const double s = std::sqrt((2.0 * j + 1.0) * pi / 2.0);
        out.insert(out.end(), {Complex(s, 0.0), Complex(-s, 0.0), Complex(0.0, s), Complex(0.0, -s)});
    }
    return out;
}

std::vector<Complex> prepole_parameters_order1(int max_index) { return poles(max_index); }

ExtendedValue asymptotic_orbit(Complex lambda, int n) {
    Complex z = lambda * I;
    for (int k = 0; k < n; ++k) {
        const ExtendedValue v = eval_f(lambda, z);
        if (v.is_infinite()) return v;
        z = v.value();
    }
    return z;
}

SolveReport newton_param(int n, ExtendedValue target, Complex seed, double tol) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    SolveReport rep;
    rep.seed = seed;
    Complex lambda = seed;
    for (int it = 0; it <= kNewtonMaxSteps; ++it) {
        if (lambda == Complex(0.0, 0.0)) break;
        const Complex r = residual_fn(lambda, n, target);
        rep.root = lambda;
        rep.residual = std::abs(r);
        rep.iterations = it;
        if (rep.residual < tol) return rep;
        if (it == kNewtonMaxSteps) break;
        const double h = 1e-7 * (1.0 + std::abs(lambda));
        const Complex d = (residual_fn(lambda + h, n, target) - residual_fn(lambda - h, n, target)) / (2.0 * h);
        const Complex step = r / d;
        if (!finite(step)) break;
        lambda -= step;
    }
    throw NumericError(ErrorKind::Diverged, "Newton did not reach tolerance in 60 steps");
}

Complex lambda_step(Complex lambda, Complex z1, long j, int sign) {
    if (lambda == Complex(0.0, 0.0)) throw NumericError(ErrorKind::DomainError, "lambda = 0");
    const Complex q = -z1 / lambda;
    const double tol = 1e-12 * (1.0 + std::abs(q));
    if (std::abs(q - I) < tol || std::abs(q + I) < tol)
        throw NumericError(ErrorKind::BranchPointHit, "-z1/lambda is at +-i");
    return static_cast<double>(sign) * std::sqrt(std::atan(q) + static_cast<double>(j) * pi);
}

Complex fixed_point_iteration_step(Complex lambda_m, double p_k, long j, int sign) {
    const double x = lambda_m.real(), y = lambda_m.imag();
    const double near = x * x + (p_k + y) * (p_k + y);
    const double far = std::sqrt(4 * x * x * y * y + (p_k * p_k + x * x - y * y) * (p_k * p_k + x * x - y * y));
    if (lambda_m == Complex(0.0, 0.0) || near == 0.0 || far == 0.0)
        throw NumericError(ErrorKind::DomainError, "vanishing denominator in the iteration");
    // real and imaginary parts of Arctan(-p_k/lambda) + j pi
    const double X = 0.5 * std::atan2(-2.0 * x * p_k, x * x + y * y - p_k * p_k) + static_cast<double>(j) * pi;
    const double Y = 0.5 * std::log(near / far);
    const double mod = std::hypot(X, Y);
    const double phi1 = std::sqrt(0.5 * (mod + X));
    const double phi2 = std::copysign(std::sqrt(0.5 * (mod - X)), Y);
    return static_cast<double>(sign) * Complex(phi1, phi2);
}

SolveReport capture_center(const ComponentCode& code) {
    if (code.kind != CodeKind::PreZero) throw std::invalid_argument("capture_center needs a PreZero code");
    if (code.base_index == 0) throw std::invalid_argument("base index must be nonzero");
    const int p = static_cast<int>(code.branch_indices.size()) + 1;
    const Complex landing = static_cast<double>(code.base_sign) * zero_point(code.base_index);

    const Complex seed = p == 1 ? landing : compose_seed(code, landing, p - 1, base_guess(code, p - 1));
    SolveReport rep = newton_param(p, Complex(0.0, 0.0), seed, 1e-11 * (1.0 + std::abs(seed)));
    rep.seed = seed;
    const Classification c = classify(rep.root);
    if (c.tag != Verdict::CaptureDepth)
        throw NumericError(ErrorKind::WrongBasin, "root does not classify as a capture parameter");
    return rep;
}

SolveReport virtual_center(const ComponentCode& code, int p) {
    if (code.kind != CodeKind::PrePole) throw std::invalid_argument("virtual_center needs a PrePole code");
    if (p < 2) throw std::invalid_argument("period must be >= 2");
    if (static_cast<int>(code.branch_indices.size()) != p - 2)
        throw std::invalid_argument("PrePole code of period p needs p-2 branch indices");
    const Complex pole = static_cast<double>(code.base_sign) * pole_point(code.base_index);
    if (p == 2) {
        // (lambda i)^2 = pole^2: lambda = -i * pole
        SolveReport rep;
        rep.root = -I * pole;
        rep.seed = rep.root;
        rep.residual = std::abs(residual_fn(rep.root, 1, ExtendedValue::infinity()));
        return rep;
    }
    const Complex seed = compose_seed(code, pole, p - 2, base_guess(code, p - 2));
    SolveReport rep = newton_param(p - 2, pole, seed, 1e-11 * (1.0 + std::abs(pole)));
    rep.seed = seed;
    return rep;
}

}  // namespace tanplane
