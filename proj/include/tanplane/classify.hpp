#pragma once

#include <vector>

#include "tanplane/cycles.hpp"
#include "tanplane/kernel.hpp"

namespace tanplane {

inline constexpr int kDefaultClassifyBudget = 5000;
inline constexpr int kDefaultVerifyBudget = 20000;

enum class Verdict { CaptureDepth, Shell, Unresolved };

enum class UnresolvedReason { None, PoleHit, Escaped, Exhausted, RefinementFailed, NotAttracting };

struct Classification {
    Verdict tag = Verdict::Unresolved;
    int depth = 0;       // CaptureDepth
    int period = 0;      // Shell
    Complex multiplier;  // Shell
    UnresolvedReason reason = UnresolvedReason::None;

    static Classification capture(int depth);
    static Classification shell(int period, Complex multiplier);
    static Classification unresolved(UnresolvedReason reason);

    friend bool operator==(const Classification&, const Classification&) = default;
};

const char* to_string(Verdict v);
const char* to_string(UnresolvedReason r);

// Disk |z| < r0 that f maps into itself, contracting towards 0.
double zero_trap_radius(Complex lambda);

// Is the segment [0, w] inside the basin of 0? Checked by pushing an adaptively
// refined polyline forward until every vertex sits in the trap disk.
bool segment_in_basin(Complex lambda, Complex w);

Classification classify(Complex lambda, int budget = kDefaultClassifyBudget);

// Cycle extracted from a CycleCandidate outcome (period minimised); none if refinement fails.
std::optional<Cycle> cycle_from_candidate(Complex lambda, const OrbitOutcome& outcome);

struct SymmetryOrbit {
    std::vector<Complex> members;  // lambda first; exact duplicates removed
};

SymmetryOrbit symmetry_images(Complex lambda);

}  // namespace tanplane
