#include <doctest.h>

#include <cmath>
#include <vector>

#include "faddeev/ansatz_geometry.hpp"
#include "test_helpers.hpp"

using namespace faddeev;
using faddeev::testing::log_uniform;
using faddeev::testing::solved;
using faddeev::testing::synthetic_profile;
using faddeev::testing::uniform;

TEST_CASE("geometry factors: hand values and the general cross-check") {
    const GeometryFactors f = geometry_factors(1.0, 1.0, 1.0, 1.0, 1);
    CHECK(f.Gamma == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.Xi == 0.0);
    CHECK(f.Sigma == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(geometry_factors(1.3, 0.7, 2.0, 0.0, 2).Sigma == 0.0);  // Sigma ~ l'

    CHECK_THROWS_AS(geometry_factors(1.0, 1.0, 0.0, 1.0, 1), DomainError);

    // general vs specialized at random states, including Xi == 0 exactly
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double rho = log_uniform(0.05, 4.0);
        const double g = log_uniform(0.03, 20.0);
        const double gp = (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * log_uniform(0.1, 10.0);
        const double lp = uniform(-3.0, 3.0);
        const int m = 1 + (i % 3);
        const GeometryFactors spec = geometry_factors(rho, g, gp, lp, m);
        const GeometryFactors gen = geometry_factors_general(rho, g, gp, lp, m);
        CHECK(gen.Xi == 0.0);
        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
        };
        worst = std::max({worst, rel(spec.Gamma, gen.Gamma),
                          spec.Sigma == gen.Sigma ? 0.0 : rel(spec.Sigma, gen.Sigma)});
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("abc coefficients: hand values and inequalities") {
    const AbcCoefficients abc = abc_coefficients(1.0, 1.0, 1.0, 1.0, 1);
    CHECK(abc.a == 0.0);
    CHECK(abc.b == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(abc.c == doctest::Approx(0.5).epsilon(1e-15));

    for (int i = 0; i < 1000; ++i) {
        const AbcCoefficients r =
            abc_coefficients(log_uniform(0.05, 4.0), log_uniform(0.03, 20.0),
                             log_uniform(0.05, 10.0), uniform(-3.0, 3.0), 1 + (i % 3));
        CHECK(r.b >= 0.0);
        CHECK(r.c >= 0.0);
        CHECK(r.a * r.a - r.b * r.c <= 0.0);
        CHECK(r.a * r.a - r.b * r.c < 0.0);
    }

    // c -> 0 as g' grows
    CHECK(abc_coefficients(1.0, 1.0, 1e8, 1.0, 1).c < 1e-10);

    CHECK_THROWS_AS(abc_coefficients(1.0, 0.0, 1.0, 1.0, 1), DomainError);
}

TEST_CASE("first-order relations are identities for arbitrary positive profiles") {
    // not a solution of anything; the relations are algebraic
    const ProfileSolution prof = synthetic_profile(
        [](double r) { return 0.4 + 0.3 * std::sin(r) + 0.2 * r; },
        [](double r) { return 0.3 * std::cos(r) + 0.2; }, 0.1, 3.0, 400, AnsatzParams{2, 1, 1.0},
        Bounded{3.0, 1.4});

    std::vector<CylPoint> probes;
    for (int i = 0; i < 1000; ++i)
        probes.push_back({uniform(0.12, 2.95), uniform(0.0, two_pi), uniform(0.0, two_pi)});
    const FirstOrderDeviation dev = first_order_residual(prof, probes);
    CHECK(dev.grad_R_sq < 1e-10);
    CHECK(dev.mixed == 0.0);  // a = 0 and grad R is orthogonal to R grad Phi
    CHECK(dev.grad_Phi_sq < 1e-10);
    CHECK(dev.skipped == 0);

    // axis probes are skipped, not evaluated
    std::vector<CylPoint> with_axis = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    CHECK(first_order_residual(prof, with_axis).skipped == 1);
}

TEST_CASE("first-order sensitivity: perturbing b is detected") {
    // Reevaluate relation 1 with b multiplied by 1.01: the deviation is ~1e-2,
    // confirming the residual would catch a wrong coefficient.
    const ProfileSolution& sol = solved(1, 1);
    const double rho = 1.0;
    const double g = sol.g_at(rho), gp = sol.gp_at(rho);
    const AbcCoefficients abc = abc_coefficients(rho, g, gp, sol.params.n, sol.params.m);
    const double X = 1.0 / (1.0 + g * g);
    // perturb b in the numerator only; a global rescale of b cancels at a = 0
    const double rhs_bad = -(1.01 * abc.b) * X / (abc.a * abc.a - abc.b * abc.c);
    const double lhs = gp * gp;
    const double dev = std::abs(lhs - rhs_bad) / std::max(std::abs(lhs), std::abs(rhs_bad));
    CHECK(dev > 5e-3);
    CHECK(dev < 5e-2);
}

TEST_CASE("phase linearity defect singles out l(z) = n z") {
    const ProfileSolution& sol = solved(1, 1);
    const double rho = 1.0;
    const double g = sol.g_at(rho), gp = sol.gp_at(rho);
    const int m = sol.params.m, n = sol.params.n;

    const PhaseFunction linear{[n](double z) { return n * z; }, [n](double) { return double(n); }};
    CHECK(phase_linearity_defect(linear, rho, g, gp, m, n) < 1e-12);

    const PhaseFunction wobble{[n](double z) { return n * z + 0.1 * std::sin(z); },
                               [n](double z) { return n + 0.1 * std::cos(z); }};
    CHECK(phase_linearity_defect(wobble, rho, g, gp, m, n) > 1e-3);

    const PhaseFunction quadratic{[n](double z) { return n * z * z / two_pi; },
                                  [n](double z) { return 2.0 * n * z / two_pi; }};
    CHECK(phase_linearity_defect(quadratic, rho, g, gp, m, n) > 1e-3);

    const PhaseFunction bad_boundary{[n](double z) { return 1.1 * n * z; },
                                     [n](double) { return 1.1 * n; }};
    CHECK_THROWS_AS(phase_linearity_defect(bad_boundary, rho, g, gp, m, n), DomainError);
}

TEST_CASE("equation form equivalence along a solved profile") {
    const ProfileSolution& sol = solved(1, 1);
    const double rho0 = sol.singular().rho0;
    std::vector<double> probes;
    for (int i = 0; i < 64; ++i) probes.push_back(0.05 + (0.9 * rho0 - 0.05) * i / 63.0);

    const double res = by_form_residual(sol, probes);
    CHECK(res < 1e-5);

    // scaled profile no longer satisfies the equation
    std::vector<Sample> scaled = sol.samples;
    for (Sample& s : scaled) {
        s.g *= 1.1;
        s.gp *= 1.1;
    }
    const ProfileSolution bad(sol.params, sol.config, std::move(scaled), sol.classification);
    CHECK(by_form_residual(bad, probes) > 1e-2);

    // the trivial g == 0 neighborhood is outside the g > 0 domain rule
    const ProfileSolution zero = synthetic_profile(
        [](double) { return 0.0; }, [](double) { return 0.0; }, 0.1, 3.0, 50,
        AnsatzParams{1, 1, 1.0}, Bounded{3.0, 0.0});
    std::vector<double> one{1.0};
    CHECK_THROWS_AS(by_form_residual(zero, one), DomainError);
}
