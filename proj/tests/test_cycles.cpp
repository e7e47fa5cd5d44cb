#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tanplane/classify.hpp"
#include "tanplane/cycles.hpp"
#include "tanplane/error.hpp"
#include "tanplane/shell.hpp"

using namespace tanplane;
using std::numbers::pi;

namespace {

const Complex I(0.0, 1.0);

// parameter with an attracting fixed point at sqrt(-3i/2) = 0.866(1-i)
Complex example_lambda() { return period_one_parameter(Complex(0, -3)); }

// u with H(u) = target, Newton from a seed
Complex solve_multiplier(Complex target, Complex u) {
    for (int k = 0; k < 60; ++k) {
        const double h = 1e-7;
        const Complex d = (period_one_multiplier(u + h) - period_one_multiplier(u - h)) / (2 * h);
        u -= (period_one_multiplier(u) - target) / d;
    }
    return u;
}

}  // namespace

TEST_CASE("detect_cycle finds the constructed attracting fixed point") {
    const Complex lambda = example_lambda();
    CHECK(std::abs(lambda - Complex(0.9567774122052524, 0.9567774122052521)) < 1e-13);
    const auto c = detect_cycle(lambda, 5000);
    REQUIRE(c);
    CHECK(c->period == 1);
    CHECK(std::abs(c->points[0] - std::sqrt(1.5) * std::polar(1.0, -pi / 4)) < 1e-12);
    CHECK(std::abs(std::abs(c->multiplier) - 6.0 / std::sinh(3.0)) < 1e-10);
    CHECK(c->stability == Stability::Attracting);
}

TEST_CASE("detect_cycle returns none for captured parameters") {
    CHECK_FALSE(detect_cycle(0.5, 5000));
    CHECK_FALSE(detect_cycle(std::sqrt(pi), 5000));
    CHECK_THROWS_AS(detect_cycle(0.5, 0), std::invalid_argument);
}

TEST_CASE("refine_cycle converges to the residual tolerance") {
    const Complex lambda = example_lambda();
    const std::vector<Complex> approx{Complex(0.86, -0.87)};
    const Cycle c = refine_cycle(lambda, approx, 1);
    const Complex z = c.points[0];
    CHECK(std::abs(eval_f(lambda, z).value() - z) < 1e-12 * (1.0 + std::abs(z)));
}

TEST_CASE("refine_cycle at the superattracting fixed point") {
    const std::vector<Complex> approx{0.0};
    const Cycle c = refine_cycle({2.0, -1.0}, approx, 1);
    CHECK(c.points == std::vector<Complex>{0.0});
    CHECK(c.multiplier == Complex(0.0, 0.0));
    CHECK(c.stability == Stability::Superattracting);
}

TEST_CASE("refine_cycle at the repelling fixed point z = lambda = sqrt(pi/4)") {
    const double lam = std::sqrt(pi / 4);
    const std::vector<Complex> approx{0.8862269};
    const Cycle c = refine_cycle(lam, approx, 1);
    CHECK(std::abs(c.points[0] - lam) < 1e-14);
    CHECK(std::abs(c.multiplier - pi) < 1e-10);
    CHECK(c.stability == Stability::Repelling);
}

TEST_CASE("refine_cycle enforces minimal period") {
    const Complex lambda = example_lambda();
    const Complex z = detect_cycle(lambda, 5000)->points[0];
    const std::vector<Complex> approx{z, z};
    try {
        refine_cycle(lambda, approx, 2);
        FAIL("expected NotMinimalPeriod");
    } catch (const NotMinimalPeriodError& e) {
        CHECK(e.kind() == ErrorKind::NotMinimalPeriod);
        CHECK(e.divisor() == 1);
    }
}

TEST_CASE("refine_cycle reports RefinementDiverged at a pole") {
    const std::vector<Complex> approx{std::sqrt(pi / 2)};
    try {
        refine_cycle(1.0, approx, 1);
        FAIL("expected RefinementDiverged");
    } catch (const NumericError& e) {
        CHECK(e.kind() == ErrorKind::RefinementDiverged);
    }
    CHECK_THROWS_AS(refine_cycle(1.0, approx, 2), std::invalid_argument);
}

TEST_CASE("detect_cycle removes period aliasing of slowly oscillating orbits") {
    // multiplier -0.998: the orbit flips sides every step and a lag-2 revisit is seen first
    const Complex u = solve_multiplier(-0.998, {4.0741, 2.99});
    CHECK(std::abs(period_one_multiplier(u) + 0.998) < 1e-12);
    const Complex lambda = period_one_parameter(u);
    const auto c = detect_cycle(lambda, 20000);
    REQUIRE(c);
    CHECK(c->period == 1);
    CHECK(std::abs(c->multiplier + 0.998) < 1e-9);
}

TEST_CASE("multiplier formulas agree with the closed form for a fixed point") {
    const Complex lambda = example_lambda();
    const Cycle c = *detect_cycle(lambda, 5000);
    const Complex h = period_one_multiplier(Complex(0, -3));
    CHECK(std::abs(h - 6.0 / std::sinh(3.0)) < 1e-14);
    CHECK(std::abs(multiplier_chain(lambda, c) - h) < 1e-10);
    CHECK(std::abs(multiplier_product_formula(c) - h) < 1e-10);
}

TEST_CASE("multiplier product formula preconditions") {
    Cycle zero;
    zero.points = {0.0};
    zero.period = 1;
    CHECK(multiplier_chain(1.0, zero) == Complex(0.0, 0.0));
    try {
        multiplier_product_formula(zero);
        FAIL("expected ZeroInCycle");
    } catch (const NumericError& e) {
        CHECK(e.kind() == ErrorKind::ZeroInCycle);
    }
    Cycle bad;
    bad.points = {std::sqrt(pi / 2)};  // sin(2 z^2) = sin(pi) = 0
    bad.period = 1;
    try {
        multiplier_product_formula(bad);
        FAIL("expected SineVanishes");
    } catch (const NumericError& e) {
        CHECK(e.kind() == ErrorKind::SineVanishes);
    }
}

TEST_CASE("cross-formula on period-2 and period-3 bud cycles") {
    for (int p : {2, 3}) {
        const BoundarySample b = period_one_boundary_point(1.0 / p);
        const auto bud = find_bud(b.lambda, p, 1, 1, 0.05);
        REQUIRE(bud);
        const auto c = detect_cycle(*bud, 20000);
        REQUIRE(c);
        CHECK(c->period == p);
        const Complex chain = multiplier_chain(*bud, *c);
        CHECK(std::abs(chain - multiplier_product_formula(*c)) <= 1e-8 * (1.0 + std::abs(chain)));
        for (std::size_t i = 0; i < c->points.size(); ++i) {
            const Complex next = c->points[(i + 1) % c->points.size()];
            CHECK(std::abs(eval_f(*bud, c->points[i]).value() - next) < 1e-9 * (1.0 + std::abs(next)));
        }
    }
}

TEST_CASE("cycles and multipliers transform under the symmetries") {
    const BoundarySample b = period_one_boundary_point(0.5);
    const Complex lambda = *find_bud(b.lambda, 2, 1, 1, 0.05);
    const Cycle c = *detect_cycle(lambda, 20000);
    struct Image {
        Complex lambda;
        Complex (*point)(Complex);
        bool conjugate;
    };
    const Image images[] = {
        {-lambda, [](Complex z) { return -z; }, false},
        {I * lambda, [](Complex z) { return -Complex(0, 1) * z; }, false},
        {-I * lambda, [](Complex z) { return Complex(0, 1) * z; }, false},
        {std::conj(lambda), [](Complex z) { return std::conj(z); }, true},
    };
    for (const auto& img : images) {
        std::vector<Complex> approx;
        for (const Complex& z : c.points) approx.push_back(img.point(z));
        const Cycle t = refine_cycle(img.lambda, approx, c.period);
        for (std::size_t i = 0; i < approx.size(); ++i) CHECK(std::abs(t.points[i] - approx[i]) < 1e-10);
        CHECK(std::abs(std::abs(t.multiplier) - std::abs(c.multiplier)) < 1e-9);
        // the phase is preserved exactly (conjugated for conjugate parameters)
        const Complex expect = img.conjugate ? std::conj(c.multiplier) : c.multiplier;
        CHECK(std::abs(t.multiplier - expect) < 1e-9);
    }
}

TEST_CASE("stability classes") {
    CHECK(stability_of(0.0) == Stability::Superattracting);
    CHECK(stability_of(0.5) == Stability::Attracting);
    CHECK(stability_of(1.0 - 2e-9) == Stability::Attracting);
    CHECK(stability_of(std::polar(1.0 + 5e-10, 1.0)) == Stability::Neutral);
    CHECK(stability_of(1.0 + 2e-9) == Stability::Repelling);
}

TEST_CASE("rotate_cycle") {
    Cycle c;
    c.points = {1.0, 2.0, 3.0};
    c.period = 3;
    CHECK(rotate_cycle(c, 1).points == std::vector<Complex>{2.0, 3.0, 1.0});
}
