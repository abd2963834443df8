#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vaxgame/coupled.hpp"

using namespace vaxgame;

TEST_CASE("contraction window") {
    SUBCASE("unbounded when the coupling is off") {
        const Scenario sc = vaxtest::decoupled_scenario();
        CHECK(std::isinf(contraction_window(sc, ScalarField(11, 1.0), 0.5)));
    }
    SUBCASE("matches an independent bisection of the scalar equation") {
        // Lip = 1, |S_o| = 1, I_o = 0, beta = 1: condition T^2 e^{4T} = 1,
        // equivalently T e^{2T} = 1.
        const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(1.0),
                          VaccinationSpec::identity(), FluxSpec::zero());
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            (mid * std::exp(2.0 * mid) <= 1.0 ? lo : hi) = mid;
        }
        const double T = contraction_window(sc, ScalarField(11, 1.0), 0.0);
        CHECK(T == doctest::Approx(lo).epsilon(1e-8));
        CHECK(T == doctest::Approx(0.4263).epsilon(1e-3));
    }
    SUBCASE("doubling the initial mass shrinks the window") {
        const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(1.0),
                          VaccinationSpec::identity(), FluxSpec::zero());
        const double T1 = contraction_window(sc, ScalarField(11, 1.0), 0.2);
        const double T2 = contraction_window(sc, ScalarField(11, 2.0), 0.2);
        CHECK(T2 < T1);
    }
    SUBCASE("negative data rejected") {
        const Scenario sc = vaxtest::decoupled_scenario();
        CHECK_THROWS_AS(contraction_window(sc, ScalarField(11, 1.0), -0.5), DomainError);
    }
}

TEST_CASE("decoupled system: exact solution and two-iteration Picard") {
    const Scenario sc = vaxtest::decoupled_scenario();
    const auto s_o =
        vaxtest::make_field(201, [](double x) { return 1.0 + 0.5 * std::sin(M_PI * x); });
    const double i_o = 0.8;
    const ControlSignal z1 = ControlSignal::constant(0.0, 1.0);
    const ControlSignal z2 = ControlSignal::constant(0.0, 1.0);
    const CoupledSolution sol = solve(sc, s_o, i_o, z1, z2, 1.0, 201, 0.01);

    double worst_s = 0.0, worst_i = 0.0;
    for (int k = 0; k < sol.trajectory.steps(); ++k) {
        const double t = sol.trajectory.times[k];
        worst_i = std::max(worst_i,
                           std::abs(sol.trajectory.i_path[k] - i_o * std::exp(-t)));
        const ScalarField& f = sol.trajectory.fields[k];
        for (int i = 0; i < f.n(); ++i) {
            const double xi = f.xi(i);
            const double expect = (1.0 + 0.5 * std::sin(M_PI * xi)) * std::exp(-xi * t);
            worst_s = std::max(worst_s, std::abs(f.values[i] - expect));
        }
    }
    CHECK(worst_s <= 1e-6);
    CHECK(worst_i <= 1e-8);
    for (const auto& w : sol.report.windows) CHECK(w.iterations == 2);
}

TEST_CASE("zero data gives the zero trajectory") {
    const Scenario sc = vaxtest::canonical_scenario();
    const ControlSignal u1 = ControlSignal::constant(0.7, 1.0);
    const ControlSignal u2 = ControlSignal::constant(0.2, 1.0);
    const CoupledSolution sol = solve(sc, ScalarField(101, 0.0), 0.0, u1, u2, 1.0, 101, 0.05);
    for (int k = 0; k < sol.trajectory.steps(); ++k) {
        CHECK(sol.trajectory.i_path[k] == 0.0);
        for (double v : sol.trajectory.fields[k].values) CHECK(v == 0.0);
    }
}

TEST_CASE("canonical refinement oracle") {
    // Resolvable ramp width; see the semigroup note in test_transport.
    const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(0.5),
                      VaccinationSpec::smoothstep(5), vaxtest::canonical_flux(1.0, 1.0, 0.1));
    const auto s_o =
        vaxtest::make_field(201, [](double x) { return 1.0 + 0.4 * std::cos(M_PI * x); });
    const double i_o = 0.5;
    const ControlSignal u1(0.5, {0.8, 0.2, 0.6, 0.4}, 1.0);
    const ControlSignal u2(0.5, {0.3, 0.9, 0.1, 0.7}, 1.0);

    const CoupledSolution coarse = solve(sc, s_o, i_o, u1, u2, 2.0, 201, 0.05, 1e-10, 50, 8);
    const CoupledSolution fine =
        solve(sc, resample(s_o, 801), i_o, u1, u2, 2.0, 801, 0.0125, 1e-12, 50, 32);

    double worst_i = 0.0, worst_s = 0.0;
    for (int k = 0; k < coarse.trajectory.steps(); ++k) {
        const double t = coarse.trajectory.times[k];
        const auto kf = static_cast<std::size_t>(std::llround(t / 0.0125));
        worst_i = std::max(worst_i, std::abs(coarse.trajectory.i_path[k] -
                                             fine.trajectory.i_path[kf]));
        ScalarField diff = coarse.trajectory.fields[k];
        const ScalarField ref = resample(fine.trajectory.fields[kf], 201);
        for (int i = 0; i < diff.n(); ++i) diff.values[i] -= ref.values[i];
        worst_s = std::max(worst_s, l1_norm(diff));
    }
    CHECK(worst_i <= 1e-3);
    CHECK(worst_s <= 1e-3);
}

TEST_CASE("mass monotonicity and growth bounds") {
    const Scenario sc = vaxtest::canonical_scenario();
    const auto s_o =
        vaxtest::make_field(201, [](double x) { return 0.9 + 0.3 * std::sin(2.0 * M_PI * x); });
    const ControlSignal u1(0.25, {1.0, 0.1, 0.8, 0.3}, 1.0);
    const ControlSignal u2(0.25, {0.2, 0.9, 0.4, 1.0}, 1.0);
    const CoupledSolution sol = solve(sc, s_o, 0.6, u1, u2, 1.5, 201, 0.05);
    const auto& tr = sol.trajectory;
    const double mass0 = tr.mass.front();
    const double region = tr.l1.front() + tr.i_path.front();
    const double gamma = flux_gamma(sc.g, sc.m1, sc.m2);
    double run_min = mass0;
    for (int k = 0; k < tr.steps(); ++k) {
        CHECK(tr.mass[k] <= run_min + 1e-3 * mass0);
        run_min = std::min(run_min, tr.mass[k]);
        CHECK(tr.l1[k] <= tr.l1.front() * (1.0 + 1e-3));
        CHECK(tr.l2[k] <= std::exp(tr.times[k] * gamma / 2.0) * tr.l2.front() * (1.0 + 2e-3));
        CHECK(tr.i_path[k] <= region * (1.0 + 1e-3));
    }
}

TEST_CASE("picard residuals contract") {
    const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(1.0),
                      VaccinationSpec::smoothstep(5), vaxtest::canonical_flux());
    const auto s_o = vaxtest::make_field(201, [](double) { return 1.2; });
    const ControlSignal u1 = ControlSignal::constant(0.5, 1.0);
    const ControlSignal u2 = ControlSignal::constant(0.5, 1.0);
    const CoupledSolution sol = solve(sc, s_o, 0.9, u1, u2, 1.0, 201, 0.05);
    for (const auto& w : sol.report.windows) {
        for (std::size_t k = 1; k < w.residuals.size(); ++k) {
            if (w.residuals[k - 1] < 1e-8) break; // below this the ratio is round-off noise
            CHECK(w.residuals[k] <= 0.55 * w.residuals[k - 1]);
            if (w.residuals[k - 1] < 1.0) CHECK(w.residuals[k] < w.residuals[k - 1]);
        }
    }
}

TEST_CASE("determinism") {
    const Scenario sc = vaxtest::canonical_scenario();
    const auto s_o = vaxtest::make_field(101, [](double x) { return 1.0 + x * (1.0 - x); });
    const ControlSignal u1(0.25, {0.9, 0.3, 0.7, 0.1}, 1.0);
    const ControlSignal u2(0.25, {0.2, 0.8, 0.4, 0.6}, 1.0);
    const CoupledSolution a = solve(sc, s_o, 0.4, u1, u2, 1.0, 101, 0.05);
    const CoupledSolution b = solve(sc, s_o, 0.4, u1, u2, 1.0, 101, 0.05);
    REQUIRE(a.trajectory.steps() == b.trajectory.steps());
    for (int k = 0; k < a.trajectory.steps(); ++k) {
        CHECK(a.trajectory.i_path[k] == b.trajectory.i_path[k]);
        for (int i = 0; i < a.trajectory.fields[k].n(); ++i)
            CHECK(a.trajectory.fields[k].values[i] == b.trajectory.fields[k].values[i]);
    }
}

TEST_CASE("holling rate couples and respects the bounds") {
    const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::holling(1.0, 1.0, 2.0, 1.0),
                      VaccinationSpec::smoothstep(5), vaxtest::canonical_flux(1.0, 1.0, 0.1));
    const auto s_o = vaxtest::make_field(201, [](double x) { return 1.0 + 0.3 * x; });
    const ControlSignal u1 = ControlSignal::constant(0.4, 1.0);
    const ControlSignal u2 = ControlSignal::constant(0.6, 1.0);
    const CoupledSolution sol = solve(sc, s_o, 0.7, u1, u2, 1.0, 201, 0.05);
    const auto& tr = sol.trajectory;
    const double region = tr.l1.front() + tr.i_path.front();
    for (int k = 0; k < tr.steps(); ++k) {
        CHECK(tr.i_path[k] >= 0.0);
        CHECK(tr.i_path[k] <= region * (1.0 + 1e-3));
        CHECK(tr.l1[k] <= tr.l1.front() * (1.0 + 1e-3));
    }
    CHECK(sol.report.converged);
    // The contraction window stays finite and positive here.
    const double cw = contraction_window(sc, s_o, 0.7);
    CHECK(cw > 0.0);
    CHECK(std::isfinite(cw));
}

TEST_CASE("nonconvergence carries the report") {
    // A genuinely coupled run needs more than one sweep; max_iters = 1
    // must throw with the residual history attached.
    const Scenario sc(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(1.0),
                      VaccinationSpec::smoothstep(5), vaxtest::canonical_flux(1.0, 1.0, 0.1));
    const ScalarField s_o(101, 1.0);
    const ControlSignal z = ControlSignal::constant(0.3, 1.0);
    try {
        solve(sc, s_o, 0.8, z, z, 0.5, 101, 0.05, 1e-10, 1);
        FAIL("expected PicardNonconvergence");
    } catch (const PicardNonconvergence& e) {
        REQUIRE(e.report().windows.size() == 1);
        CHECK(e.report().windows[0].iterations == 1);
        CHECK(e.report().windows[0].final_residual > 1e-10);
        CHECK_FALSE(e.report().converged);
    }
}

TEST_CASE("solver preconditions") {
    const Scenario sc = vaxtest::canonical_scenario();
    const ScalarField s_o(11, 1.0);
    const ControlSignal z = ControlSignal::constant(0.0, 1.0);
    CHECK_THROWS_AS(solve(sc, s_o, -1.0, z, z, 1.0, 11, 0.1), DomainError);
    CHECK_THROWS_AS(solve(sc, s_o, 1.0, z, z, 0.0, 11, 0.1), DomainError);
    Scenario testonly(1.0, 1.0, 1.0, 1.0, 1.0, RateSpec::linear(0.5),
                      VaccinationSpec::identity(),
                      FluxSpec::test_generic(Polynomial{{0.0, -1.0}}));
    CHECK_THROWS_AS(solve(testonly, s_o, 1.0, z, z, 1.0, 11, 0.1), DomainError);
}
