#include "tanplane/cycles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tanplane/classify.hpp"
#include "tanplane/error.hpp"

namespace tanplane {

namespace {

constexpr double kRefineTolerance = 1e-12;
constexpr double kDivisorTolerance = 1e-9;

Complex step_or_throw(Complex lambda, Complex z, ErrorKind kind) {
    const ExtendedValue v = eval_f(lambda, z);
    if (v.is_infinite()) throw NumericError(kind, "orbit hit a pole");
    return v.value();
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// 1/sin v, stable for large |Im v|
Complex csc(Complex v) {
    Complex e, den;
    if (v.imag() >= 0.0) {
        e = std::exp(Complex(-v.imag(), v.real()));  // exp(iv)
        den = e * e - 1.0;
    } else {
        e = std::exp(Complex(v.imag(), -v.real()));  // exp(-iv)
        den = 1.0 - e * e;
    }
    if (std::abs(den) < 1e-14 * std::abs(2.0 * e) || !finite(den))
        throw NumericError(ErrorKind::SineVanishes, "sin(2 z^2) vanishes on the cycle");
    return Complex(0.0, 2.0) * e / den;
}

}  // namespace

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Superattracting: return "Superattracting";
        case Stability::Attracting: return "Attracting";
        case Stability::Neutral: return "Neutral";
        case Stability::Repelling: return "Repelling";
    }
    return "?";
}

Stability stability_of(Complex multiplier) {
    const double m = std::abs(multiplier);
    if (m == 0.0) return Stability::Superattracting;
    if (m < 1.0 - kNeutralBand) return Stability::Attracting;
    if (m <= 1.0 + kNeutralBand) return Stability::Neutral;
    return Stability::Repelling;
}

Cycle refine_cycle(Complex lambda, std::span<const Complex> approx, int p) {
    if (p < 1) throw std::invalid_argument("period must be >= 1");
    if (approx.size() != static_cast<std::size_t>(p)) throw std::invalid_argument("approx must have length p");

    Complex z = approx[0];
    bool converged = false;
    try {
        for (int it = 0; it <= kRefineMaxSteps && !converged; ++it) {
            Complex w = z, d = 1.0;
            for (int i = 0; i < p; ++i) {
                d *= eval_df(lambda, w);
                w = step_or_throw(lambda, w, ErrorKind::RefinementDiverged);
            }
            const Complex F = w - z;
            if (std::abs(F) < kRefineTolerance * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
            if (it == kRefineMaxSteps) break;
            const Complex dz = F / (d - 1.0);
            if (!finite(dz)) break;
            z -= dz;
            // stagnation at roundoff level counts as converged
            if (std::abs(dz) < 8 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) converged = true;
        }
    } catch (const NumericError& e) {
        if (e.kind() == ErrorKind::RefinementDiverged) throw;
        throw NumericError(ErrorKind::RefinementDiverged, e.what());
    }
    if (!converged || !finite(z))
        throw NumericError(ErrorKind::RefinementDiverged, "Newton did not converge in 50 steps");

    for (int q = 1; q < p; ++q) {
        if (p % q != 0) continue;
        Complex w = z;
        bool pole = false;
        for (int i = 0; i < q && !pole; ++i) {
            const ExtendedValue v = eval_f(lambda, w);
            if (v.is_infinite()) pole = true;
            else w = v.value();
        }
        if (!pole && std::abs(w - z) < kDivisorTolerance * (1.0 + std::abs(z))) throw NotMinimalPeriodError(p, q);
    }

    Cycle c;
    c.period = p;
    c.points.reserve(p);
    c.points.push_back(z);
    for (int i = 1; i < p; ++i) c.points.push_back(step_or_throw(lambda, c.points.back(), ErrorKind::RefinementDiverged));
    try {
        c.multiplier = multiplier_chain(lambda, c);
    } catch (const NumericError& e) {
        throw NumericError(ErrorKind::RefinementDiverged, e.what());
    }
    c.stability = stability_of(c.multiplier);
    return c;
}

std::optional<Cycle> detect_cycle(Complex lambda, int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    const OrbitOutcome o = orbit(lambda, lambda * Complex(0.0, 1.0), budget, zero_trap_radius(lambda));
    if (o.tag != OrbitTag::CycleCandidate) return std::nullopt;
    int p = o.period;
    // sampling can alias a multiple of the true period; shrink until minimal
    for (;;) {
        try {
            return refine_cycle(lambda, std::span<const Complex>(o.candidate).last(p), p);
        } catch (const NotMinimalPeriodError& e) {
            p = e.divisor();
        }
    }
}

Complex multiplier_chain(Complex lambda, const Cycle& cycle) {
    Complex rho = 1.0;
    for (const Complex& z : cycle.points) rho *= eval_df(lambda, z);
    return rho;
}

Complex multiplier_product_formula(const Cycle& cycle) {
    const std::size_t p = cycle.points.size();
    if (p == 0) throw std::invalid_argument("empty cycle");
    Complex rho = 1.0;
    for (std::size_t i = 0; i < p; ++i) {
        const Complex zi = cycle.points[i];
        const Complex zprev = cycle.points[(i + p - 1) % p];
        if (zi == Complex(0.0, 0.0)) throw NumericError(ErrorKind::ZeroInCycle, "cycle contains 0");
        rho *= 2.0 * (2.0 * zi * zprev) * csc(2.0 * zprev * zprev);
    }
    return rho;
}

Cycle rotate_cycle(const Cycle& cycle, std::size_t first) {
    Cycle out = cycle;
    const std::size_t p = cycle.points.size();
    for (std::size_t i = 0; i < p; ++i) out.points[i] = cycle.points[(first + i) % p];
    return out;
}

}  // namespace tanplane
