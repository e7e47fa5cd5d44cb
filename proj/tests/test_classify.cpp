#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tanplane/classify.hpp"
#include "tanplane/shell.hpp"
#include "tanplane/solve.hpp"

using namespace tanplane;
using std::numbers::pi;

namespace {
const Complex I(0.0, 1.0);
}

TEST_CASE("zero_trap_radius") {
    CHECK(zero_trap_radius(1.0) == 0.25);
    CHECK(zero_trap_radius(0.1) == 0.5);
    CHECK(zero_trap_radius(Complex(0, -4)) == 1.0 / 16);
    CHECK_THROWS_AS(zero_trap_radius(0.0), std::invalid_argument);
}

TEST_CASE("classify examples") {
    auto c = classify(0.5);
    CHECK(c.tag == Verdict::CaptureDepth);
    CHECK(c.depth == 0);

    c = classify(period_one_parameter(Complex(0, -3)));
    REQUIRE(c.tag == Verdict::Shell);
    CHECK(c.period == 1);
    CHECK(std::abs(std::abs(c.multiplier) - 6.0 / std::sinh(3.0)) < 1e-10);

    c = classify(std::sqrt(pi));
    REQUIRE(c.tag == Verdict::CaptureDepth);
    CHECK(c.depth == 1);  // f(lambda i) = 0 exactly
}

TEST_CASE("classify reports unresolved orbits with their reason") {
    // lambda = s0: the asymptotic value is itself a pole
    const auto c = classify(std::sqrt(pi / 2));
    CHECK(c.tag == Verdict::Unresolved);
    CHECK(c.reason == UnresolvedReason::PoleHit);
    CHECK_THROWS_AS(classify(0.0), std::invalid_argument);
    CHECK_THROWS_AS(classify(1.0, 0), std::invalid_argument);
}

TEST_CASE("capture depth is the first certified basin point") {
    // axis parameters below sqrt(pi/4): lambda*i is already in the immediate basin
    for (double t : {0.3, 0.6, 0.85, 0.886}) {
        CHECK(classify(t).depth == 0);
        CHECK(classify(I * t).depth == 0);
    }
    // order-2 centers land after two steps; depth is at most that
    for (long j = 0; j <= 3; ++j) {
        const SolveReport r = capture_center(ComponentCode{1, {j}, {}, 1, CodeKind::PreZero, {}});
        const auto c = classify(r.root);
        REQUIRE(c.tag == Verdict::CaptureDepth);
        CHECK(c.depth <= 2);
    }
    for (long k = 1; k <= 5; ++k) {
        const auto c = classify(std::sqrt(k * pi));
        REQUIRE(c.tag == Verdict::CaptureDepth);
        CHECK(c.depth <= 1);
    }
}

TEST_CASE("capture verdicts: the orbit enters the trap and stays") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2, 2);
    int seen = 0;
    for (int k = 0; k < 300 && seen < 40; ++k) {
        const Complex lambda(u(rng), u(rng));
        const auto c = classify(lambda);
        if (c.tag != Verdict::CaptureDepth) continue;
        ++seen;
        const double r0 = zero_trap_radius(lambda);
        const auto o = orbit(lambda, lambda * I, 5000, r0, 1e8, true);
        REQUIRE(o.tag == OrbitTag::TrapEntry);
        CHECK(c.depth <= o.step);
        CHECK(segment_in_basin(lambda, o.trace[c.depth]));
        Complex z = o.trace.back();
        for (int s = 0; s < 50; ++s) {
            z = eval_f(lambda, z).value();
            CHECK(std::abs(z) < r0);
        }
    }
    CHECK(seen > 10);
}

TEST_CASE("segment_in_basin") {
    CHECK(segment_in_basin(0.5, 0.1));
    CHECK(segment_in_basin(0.5, 0.5 * I));
    // the repelling fixed point z = lambda = sqrt(pi/4) bounds the basin on the real line
    const double lam = std::sqrt(pi / 4);
    CHECK_FALSE(segment_in_basin(lam, lam));
    CHECK_FALSE(segment_in_basin(lam, 1.2 * lam));
}

TEST_CASE("shell verdicts carry attracting non-zero cycles") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int k = 0; k < 200; ++k) {
        const Complex lambda(u(rng), u(rng));
        const auto c = classify(lambda);
        if (c.tag != Verdict::Shell) continue;
        CHECK(std::abs(c.multiplier) < 1.0);
        CHECK(c.multiplier != Complex(0.0, 0.0));
        CHECK(c.period >= 1);
    }
}

TEST_CASE("symmetry_images") {
    auto o = symmetry_images(1.0);
    CHECK(o.members.size() == 4);
    for (const Complex z : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)})
        CHECK(std::find(o.members.begin(), o.members.end(), z) != o.members.end());
    CHECK(symmetry_images({1, 2}).members.size() == 8);
    // the diagonals are fixed by lambda -> i conj(lambda)
    CHECK(symmetry_images({1, 1}).members.size() == 4);
    CHECK(symmetry_images({1, 2}).members[0] == Complex(1, 2));
}

TEST_CASE("all symmetry images classify identically") {
    for (const Complex lambda : {Complex(1, 1), Complex(1, 2), Complex(0.3, 1.17), Complex(-1.2, 0.7),
                                 period_one_parameter(Complex(0, -3)), Complex(0.3546, -1.4575)}) {
        const auto members = symmetry_images(lambda).members;
        const auto first = classify(members[0], kDefaultVerifyBudget);
        for (const Complex& m : members) {
            const auto c = classify(m, kDefaultVerifyBudget);
            CHECK(c.tag == first.tag);
            CHECK(c.depth == first.depth);
            CHECK(c.period == first.period);
            CHECK(std::abs(std::abs(c.multiplier) - std::abs(first.multiplier)) < 1e-9);
        }
    }
}

TEST_CASE("axis parameters are never shell") {
    for (int k = 1; k <= 400; ++k) {
        const double t = 10.0 * k / 400;
        for (const Complex lambda : {Complex(t, 0), Complex(-t, 0), Complex(0, t), Complex(0, -t)})
            CHECK(classify(lambda).tag != Verdict::Shell);
    }
}

TEST_CASE("classify is deterministic") {
    for (const Complex lambda : {Complex(0.7, 0.2), Complex(2, 0.1), Complex(-0.4, 1.3)})
        CHECK(classify(lambda) == classify(lambda));
}
