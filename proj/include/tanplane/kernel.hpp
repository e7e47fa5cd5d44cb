#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace tanplane {

using Complex = std::complex<double>;

inline constexpr double kPoleTolerance = 1e-12;
inline constexpr double kOverflowThreshold = 1e15;
inline constexpr double kDefaultEscapeRadius = 1e8;
inline constexpr int kCycleWindow = 64;
inline constexpr double kCycleTolerance = 1e-9;

// A point of the Riemann sphere: either finite or the point at infinity.
class ExtendedValue {
public:
    ExtendedValue(Complex z) : value_(z) {}  // NOLINT: implicit on purpose
    static ExtendedValue infinity() { return ExtendedValue(); }

    bool is_infinite() const { return !value_.has_value(); }
    bool is_finite() const { return value_.has_value(); }
    Complex value() const;  // throws std::logic_error on infinity

    friend bool operator==(const ExtendedValue&, const ExtendedValue&) = default;

private:
    ExtendedValue() = default;
    std::optional<Complex> value_;
};

// Nearest pole index m (z^2 close to (m+1/2)pi) and whether z is within pole tolerance.
bool near_pole(Complex z);

ExtendedValue eval_f(Complex lambda, Complex z);
Complex eval_df(Complex lambda, Complex z);

// sign * sqrt(Arctan(w/lambda) + n*pi), principal branches.
Complex inverse_branch(Complex lambda, Complex w, long n, int sign);

struct Tract {
    int quadrant;
    double threshold;
};

std::optional<Tract> tract_of(Complex z, double r);

enum class OrbitTag { TrapEntry, PoleHit, CycleCandidate, Escaped, Exhausted };

struct OrbitOutcome {
    OrbitTag tag = OrbitTag::Exhausted;
    int step = 0;
    int period = 0;                  // CycleCandidate only
    std::vector<Complex> candidate;  // CycleCandidate: the last `period` iterates, oldest first
    std::vector<Complex> trace;      // filled when requested
};

OrbitOutcome orbit(Complex lambda, Complex z0, int budget, double trap_radius,
                   double escape_radius = kDefaultEscapeRadius, bool keep_trace = false);

const char* to_string(OrbitTag tag);

}  // namespace tanplane
