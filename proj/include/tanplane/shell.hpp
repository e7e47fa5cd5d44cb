#pragma once

#include <optional>
#include <vector>

#include "tanplane/cycles.hpp"
#include "tanplane/kernel.hpp"

namespace tanplane {

// Multiplier of the fixed point z with u = 2 z^2: 2u / sin u (series near u = 0).
Complex period_one_multiplier(Complex u);

// Parameter whose fixed point is branch*sqrt(u/2): branch*sqrt(u) / (sqrt2 tan(u/2)).
Complex period_one_parameter(Complex u, int branch = 1);

enum class HalfPlane { Upper, Lower };

struct BoundarySample {
    double x = 0.0;  // Re u
    double t = 0.0;  // x^2
    Complex u;       // |multiplier(u)| = 1
    Complex lambda;  // period_one_parameter(u)
};

// For each x in [x_min, x_max] solve |period_one_multiplier(x + iy)| = 1 for y in the chosen half.
std::vector<BoundarySample> trace_period_one_boundary(double x_min, double x_max, int steps, HalfPlane half);

// Boundary point of the period-one component where the multiplier equals exp(2 pi i angle),
// located on the traced branch over [x_min, x_max] and polished by Newton.
BoundarySample period_one_boundary_point(double angle, double x_min = 0.0, double x_max = 20.0,
                                         HalfPlane half = HalfPlane::Upper);

struct RayPoint {
    Complex lambda;
    Cycle cycle;  // points[1] (points[0] for p = 1) is the point followed from lambda*i
    double r = 0.0;
    double alpha = 0.0;
};

std::vector<RayPoint> trace_internal_ray(Complex lambda_seed, double alpha, double r_stop, int step_count);

// Parameter near a period-n boundary point with multiplier exp(2 pi i q/p) that
// classifies as a shell of period n*p.
std::optional<Complex> find_bud(Complex lambda_boundary, int p, int q, int n, double search_radius);

struct TractRepresentative {
    int tract = 0;
    Complex lambda;
};

inline constexpr double kQuadrupletTractThreshold = 5.0;
inline constexpr int kQuadrupletProbes = 360;

std::vector<TractRepresentative> quadruplet(Complex lambda_star, int p, double probe_radius,
                                            int probes = kQuadrupletProbes,
                                            double tract_threshold = kQuadrupletTractThreshold);

}  // namespace tanplane
