#pragma once

#include <optional>
#include <vector>

#include "tanplane/kernel.hpp"

namespace tanplane {

enum class CodeKind { PreZero, PrePole };

// Integer itinerary naming a capture center (PreZero) or a virtual center (PrePole).
//
// PreZero, order p: the asymptotic value lands on base_sign*sqrt(k*pi) after p-1 steps.
//   branch_indices has p-1 entries: the pull-back branches of f^{-1} starting at that
//   target, the last one being the branch j of lambda^2 = Arctan(-z1/lambda) + j*pi.
// PrePole, period p: same, but the landing point is the pole base_sign*sqrt((2k+1)pi/2)
//   after p-2 steps; branch_indices has p-2 entries.
// signs holds the square-root sign for each branch index (empty means all +1).
struct ComponentCode {
    long base_index = 1;
    std::vector<long> branch_indices;
    std::vector<int> signs;
    int base_sign = 1;
    CodeKind kind = CodeKind::PreZero;
    std::optional<int> tract;

    int sign_at(std::size_t i) const { return i < signs.size() ? signs[i] : 1; }
};

struct SolveReport {
    Complex root;
    double residual = 0.0;
    int iterations = 0;
    Complex seed;
};

inline constexpr int kNewtonMaxSteps = 60;

// principal sqrt((2j+1)pi/2); imaginary for j < 0
Complex pole_point(long j);
// principal sqrt(k pi); imaginary for k < 0
Complex zero_point(long k);

std::vector<Complex> poles(int max_index);
std::vector<Complex> prepole_parameters_order1(int max_index = 10);

// f_lambda^n(lambda i)
ExtendedValue asymptotic_orbit(Complex lambda, int n);

SolveReport newton_param(int n, ExtendedValue target, Complex seed, double tol = 1e-12);

// sign * sqrt(Arctan(-z1/lambda) + j pi): the lambda solving f_lambda(lambda i) = z1 on branch j
Complex lambda_step(Complex lambda, Complex z1, long j, int sign = 1);

// One step of the real-arithmetic iteration for f_lambda(lambda i) = p_k.
Complex fixed_point_iteration_step(Complex lambda_m, double p_k, long j, int sign = 1);

SolveReport capture_center(const ComponentCode& code);
SolveReport virtual_center(const ComponentCode& code, int p);

}  // namespace tanplane
