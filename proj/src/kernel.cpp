#include "tanplane/kernel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tanplane/error.hpp"

namespace tanplane {

namespace {

using std::numbers::pi;

void require_nonzero(Complex lambda) {
    if (lambda == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
}

bool square_near_pole(Complex w, double zz) {
    const double m = std::floor(w.real() / pi);  // nearest (m + 1/2) pi
    const double pole = (m + 0.5) * pi;
    return std::abs(w - Complex(pole, 0.0)) < kPoleTolerance * (1.0 + zz);
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PoleProximity: return "PoleProximity";
        case ErrorKind::BranchPointHit: return "BranchPointHit";
        case ErrorKind::RefinementDiverged: return "RefinementDiverged";
        case ErrorKind::NotMinimalPeriod: return "NotMinimalPeriod";
        case ErrorKind::ZeroInCycle: return "ZeroInCycle";
        case ErrorKind::SineVanishes: return "SineVanishes";
        case ErrorKind::TangentVanishes: return "TangentVanishes";
        case ErrorKind::Diverged: return "Diverged";
        case ErrorKind::HitSingularity: return "HitSingularity";
        case ErrorKind::WrongBasin: return "WrongBasin";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::BracketFailed: return "BracketFailed";
        case ErrorKind::ContinuationStalled: return "ContinuationStalled";
        case ErrorKind::LostCycle: return "LostCycle";
    }
    return "?";
}

const char* to_string(OrbitTag tag) {
    switch (tag) {
        case OrbitTag::TrapEntry: return "TrapEntry";
        case OrbitTag::PoleHit: return "PoleHit";
        case OrbitTag::CycleCandidate: return "CycleCandidate";
        case OrbitTag::Escaped: return "Escaped";
        case OrbitTag::Exhausted: return "Exhausted";
    }
    return "?";
}

Complex ExtendedValue::value() const {
    if (!value_) throw std::logic_error("ExtendedValue: infinity has no finite value");
    return *value_;
}

bool near_pole(Complex z) { return square_near_pole(z * z, std::norm(z)); }

ExtendedValue eval_f(Complex lambda, Complex z) {
    require_nonzero(lambda);
    const Complex w = z * z;
    if (square_near_pole(w, std::norm(z))) return ExtendedValue::infinity();
    const Complex t = std::tan(w);
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || std::abs(t) > kOverflowThreshold)
        return ExtendedValue::infinity();
    return lambda * t;
}

Complex eval_df(Complex lambda, Complex z) {
    require_nonzero(lambda);
    const Complex w = z * z;
    if (square_near_pole(w, std::norm(z)))
        throw NumericError(ErrorKind::PoleProximity, "derivative requested at a pole");
    // sec^2 w = 4e/(1+e)^2 with e = exp(2iw) or exp(-2iw), whichever is small.
    // Keeps full relative accuracy when |Im w| is large and sec^2 is tiny.
    const Complex q = w.imag() >= 0.0 ? Complex(-2.0 * w.imag(), 2.0 * w.real())
                                      : Complex(2.0 * w.imag(), -2.0 * w.real());
    const Complex e = std::exp(q);
    const Complex d = 1.0 + e;
    const Complex sec2 = 4.0 * e / (d * d);
    if (!std::isfinite(sec2.real()) || !std::isfinite(sec2.imag()) || std::abs(sec2) > kOverflowThreshold * kOverflowThreshold)
        throw NumericError(ErrorKind::PoleProximity, "sec^2 overflows");
    return 2.0 * lambda * z * sec2;
}

Complex inverse_branch(Complex lambda, Complex w, long n, int sign) {
    require_nonzero(lambda);
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const Complex q = w / lambda;
    const double tol = 1e-12 * (1.0 + std::abs(q));
    if (std::abs(q - Complex(0.0, 1.0)) < tol || std::abs(q + Complex(0.0, 1.0)) < tol)
        throw NumericError(ErrorKind::BranchPointHit, "w/lambda is at +-i");
    return static_cast<double>(sign) * std::sqrt(std::atan(q) + static_cast<double>(n) * pi);
}

std::optional<Tract> tract_of(Complex z, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("tract threshold must be positive");
    const double x = z.real(), y = z.imag();
    if (x == 0.0 || y == 0.0) return std::nullopt;
    const double im = (z * z).imag();
    int quadrant;
    if (x > 0 && y > 0) quadrant = 1;
    else if (x < 0 && y > 0) quadrant = 2;
    else if (x < 0 && y < 0) quadrant = 3;
    else quadrant = 4;
    // quadrants 1,3 carry Im z^2 > 0, quadrants 2,4 the rotated copies with Im z^2 < 0
    const bool inside = (quadrant % 2 == 1) ? im > r : im < -r;
    if (!inside) return std::nullopt;
    return Tract{quadrant, r};
}

OrbitOutcome orbit(Complex lambda, Complex z0, int budget, double trap_radius, double escape_radius,
                   bool keep_trace) {
    require_nonzero(lambda);
    if (budget < 1) throw std::invalid_argument("orbit budget must be >= 1");
    if (!(trap_radius > 0.0) || !(escape_radius > 0.0)) throw std::invalid_argument("radii must be positive");

    OrbitOutcome out;
    std::array<Complex, kCycleWindow> ring{};
    int filled = 0;
    Complex z = z0;
    for (int k = 0; k < budget; ++k) {
        if (keep_trace) out.trace.push_back(z);
        out.step = k;
        if (std::abs(z) < trap_radius) {
            out.tag = OrbitTag::TrapEntry;
            return out;
        }
        const double tol = kCycleTolerance * (1.0 + std::abs(z));
        for (int lag = 1; lag <= filled; ++lag) {
            const Complex prev = ring[(k - lag) % kCycleWindow];
            if (std::abs(z - prev) < tol) {
                out.tag = OrbitTag::CycleCandidate;
                out.period = lag;
                for (int back = lag - 1; back >= 1; --back) out.candidate.push_back(ring[(k - back) % kCycleWindow]);
                out.candidate.push_back(z);
                return out;
            }
        }
        if (std::abs(z) > escape_radius) {
            out.tag = OrbitTag::Escaped;
            return out;
        }
        const ExtendedValue next = eval_f(lambda, z);
        if (next.is_infinite()) {
            out.tag = OrbitTag::PoleHit;
            return out;
        }
        ring[k % kCycleWindow] = z;
        if (filled < kCycleWindow) ++filled;
        z = next.value();
    }
    out.tag = OrbitTag::Exhausted;
    out.step = budget - 1;  // last examined iterate
    return out;
}

}  // namespace tanplane
