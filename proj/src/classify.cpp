#include "tanplane/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tanplane/error.hpp"

namespace tanplane {

namespace {

constexpr int kSegmentSeedPoints = 17;
constexpr int kSegmentPointCap = 2048;
constexpr int kSegmentMaxSteps = 500;

}  // namespace

Classification Classification::capture(int depth) {
    Classification c;
    c.tag = Verdict::CaptureDepth;
    c.depth = depth;
    return c;
}

Classification Classification::shell(int period, Complex multiplier) {
    Classification c;
    c.tag = Verdict::Shell;
    c.period = period;
    c.multiplier = multiplier;
    return c;
}

Classification Classification::unresolved(UnresolvedReason reason) {
    Classification c;
    c.tag = Verdict::Unresolved;
    c.reason = reason;
    return c;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::CaptureDepth: return "CaptureDepth";
        case Verdict::Shell: return "Shell";
        case Verdict::Unresolved: return "Unresolved";
    }
    return "?";
}

const char* to_string(UnresolvedReason r) {
    switch (r) {
        case UnresolvedReason::None: return "None";
        case UnresolvedReason::PoleHit: return "PoleHit";
        case UnresolvedReason::Escaped: return "Escaped";
        case UnresolvedReason::Exhausted: return "Exhausted";
        case UnresolvedReason::RefinementFailed: return "RefinementFailed";
        case UnresolvedReason::NotAttracting: return "NotAttracting";
    }
    return "?";
}

double zero_trap_radius(Complex lambda) {
    if (lambda == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
    return std::min(0.5, 1.0 / (4.0 * std::abs(lambda)));
}

bool segment_in_basin(Complex lambda, Complex w) {
    const double r0 = zero_trap_radius(lambda);
    if (std::abs(w) < r0) return true;
    const double gap = r0 / 4.0;

    std::vector<double> ts;
    std::vector<Complex> ws;
    for (int i = 0; i < kSegmentSeedPoints; ++i) {
        const double t = static_cast<double>(i) / (kSegmentSeedPoints - 1);
        ts.push_back(t);
        ws.push_back(t * w);
    }

    // image of t*w after m steps, or false on pole/escape
    auto push = [&](Complex z, int m, Complex& out) {
        for (int i = 0; i < m; ++i) {
            const ExtendedValue v = eval_f(lambda, z);
            if (v.is_infinite() || std::abs(v.value()) > kDefaultEscapeRadius) return false;
            z = v.value();
        }
        out = z;
        return true;
    };

    for (int m = 0; m < kSegmentMaxSteps; ++m) {
        if (std::all_of(ws.begin(), ws.end(), [&](Complex z) { return std::abs(z) < r0; })) return true;
        for (Complex& z : ws)
            if (!push(z, 1, z)) return false;
        for (std::size_t i = 0; i + 1 < ts.size();) {
            if (std::abs(ws[i + 1] - ws[i]) <= gap) {
                ++i;
                continue;
            }
            if (ts.size() >= kSegmentPointCap) return false;
            const double tm = 0.5 * (ts[i] + ts[i + 1]);
            Complex img;
            if (!push(tm * w, m + 1, img)) return false;
            ts.insert(ts.begin() + static_cast<std::ptrdiff_t>(i) + 1, tm);
            ws.insert(ws.begin() + static_cast<std::ptrdiff_t>(i) + 1, img);
        }
    }
    return false;
}

std::optional<Cycle> cycle_from_candidate(Complex lambda, const OrbitOutcome& outcome) {
    if (outcome.tag != OrbitTag::CycleCandidate) return std::nullopt;
    int p = outcome.period;
    for (;;) {
        try {
            return refine_cycle(lambda, std::span<const Complex>(outcome.candidate).last(p), p);
        } catch (const NotMinimalPeriodError& e) {
            p = e.divisor();
        } catch (const NumericError&) {
            return std::nullopt;
        }
    }
}

Classification classify(Complex lambda, int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    const double r0 = zero_trap_radius(lambda);
    const OrbitOutcome o = orbit(lambda, lambda * Complex(0.0, 1.0), budget, r0, kDefaultEscapeRadius, true);
    switch (o.tag) {
        case OrbitTag::TrapEntry: {
            // smallest d whose segment [0, z_d] lies in the basin; membership is
            // forward invariant, so bisect on [0, trap step]
            int lo = 0, hi = o.step;
            while (lo < hi) {
                const int mid = lo + (hi - lo) / 2;
                if (segment_in_basin(lambda, o.trace[mid])) hi = mid;
                else lo = mid + 1;
            }
            return Classification::capture(lo);
        }
        case OrbitTag::CycleCandidate: {
            const auto c = cycle_from_candidate(lambda, o);
            if (!c) return Classification::unresolved(UnresolvedReason::RefinementFailed);
            const bool has_zero = std::any_of(c->points.begin(), c->points.end(),
                                              [](Complex z) { return z == Complex(0.0, 0.0); });
            if (has_zero || std::abs(c->multiplier) >= 1.0 || c->multiplier == Complex(0.0, 0.0))
                return Classification::unresolved(UnresolvedReason::NotAttracting);
            return Classification::shell(c->period, c->multiplier);
        }
        case OrbitTag::PoleHit: return Classification::unresolved(UnresolvedReason::PoleHit);
        case OrbitTag::Escaped: return Classification::unresolved(UnresolvedReason::Escaped);
        case OrbitTag::Exhausted: break;
    }
    return Classification::unresolved(UnresolvedReason::Exhausted);
}

SymmetryOrbit symmetry_images(Complex lambda) {
    if (lambda == Complex(0.0, 0.0)) throw std::invalid_argument("lambda must be nonzero");
    const Complex c = std::conj(lambda);
    // multiplying by +-i is exact: (x, y) -> (-y, x)
    auto rot = [](Complex z) { return Complex(-z.imag(), z.real()); };
    const Complex all[] = {lambda, -lambda, rot(lambda), -rot(lambda), c, -c, rot(c), -rot(c)};
    SymmetryOrbit out;
    for (const Complex& z : all)
        if (std::find(out.members.begin(), out.members.end(), z) == out.members.end()) out.members.push_back(z);
    return out;
}

}  // namespace tanplane
