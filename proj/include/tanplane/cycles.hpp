#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tanplane/kernel.hpp"

namespace tanplane {

inline constexpr double kNeutralBand = 1e-9;
inline constexpr int kRefineMaxSteps = 50;

enum class Stability { Superattracting, Attracting, Neutral, Repelling };

struct Cycle {
    std::vector<Complex> points;  // z0 -> z1 -> ... under f
    int period = 0;
    Complex multiplier;
    Stability stability = Stability::Repelling;
};

Stability stability_of(Complex multiplier);
const char* to_string(Stability s);

// Orbit of the asymptotic value lambda*i; none when it traps at 0, hits a pole or runs out.
std::optional<Cycle> detect_cycle(Complex lambda, int budget);

// Newton on f^p(z) - z from approx[0], then forward iteration and divisor check.
Cycle refine_cycle(Complex lambda, std::span<const Complex> approx, int p);

Complex multiplier_chain(Complex lambda, const Cycle& cycle);

// lambda-free form: 2^p prod 2 z_i z_{i-1} / sin(2 z_{i-1}^2)
Complex multiplier_product_formula(const Cycle& cycle);

// Rotate the cycle so points[0] is the one with the given index; keeps multiplier.
Cycle rotate_cycle(const Cycle& cycle, std::size_t first);

}  // namespace tanplane
