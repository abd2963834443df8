#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vaxgame/infection.hpp"

using namespace vaxgame;

namespace {
SampledPath const_mass(double value, double t_end, double dt) {
    SampledPath p{0.0, dt, {}};
    const auto steps = static_cast<long long>(std::llround(t_end / dt));
    p.values.assign(static_cast<std::size_t>(steps) + 1, value);
    return p;
}
} // namespace

TEST_CASE("pure decay") {
    const auto res = solve_ode(1.0, RateSpec::linear(0.0), 2.0, const_mass(0.0, 1.0, 0.01), 0.01);
    CHECK(std::abs(res.path.values.back() - 2.0 * std::exp(-1.0)) <= 1e-8);
    CHECK(res.clamp_count == 0);
}

TEST_CASE("pure growth") {
    // beta = 0, alpha(I) = I, mass = 1: I' = I, I(1) = e.
    const auto res = solve_ode(0.0, RateSpec::linear(1.0), 1.0, const_mass(1.0, 1.0, 0.01), 0.01);
    CHECK(std::abs(res.path.values.back() - std::exp(1.0)) <= 1e-6);
}

TEST_CASE("zero is an equilibrium") {
    for (const auto& alpha : {RateSpec::linear(0.7), RateSpec::holling(1.0, 1.0, 1.0, 2.0)}) {
        const auto res = solve_ode(0.5, alpha, 0.0, const_mass(3.0, 2.0, 0.1), 0.1);
        for (double v : res.path.values) CHECK(v == 0.0);
    }
}

TEST_CASE("nonnegativity and growth bound") {
    const RateSpec alpha = RateSpec::linear(0.8);
    const double mass = 1.5, i_o = 0.7, T = 2.0;
    const auto res = solve_ode(0.3, alpha, i_o, const_mass(mass, T, 0.01), 0.01);
    const double Kt = 0.3 + 0.8 * mass;
    for (std::size_t j = 0; j < res.path.values.size(); ++j) {
        const double t = 0.01 * static_cast<double>(j);
        CHECK(res.path.values[j] >= 0.0);
        CHECK(res.path.values[j] <= i_o * std::exp(Kt * t) * (1.0 + 1e-6));
    }
}

TEST_CASE("rk4 order under dt halving") {
    double prev = 0.0;
    double order = 1e9;
    for (double dt : {0.2, 0.1, 0.05, 0.025}) {
        const auto res = solve_ode(1.0, RateSpec::linear(0.0), 2.0, const_mass(0.0, 1.0, dt), dt);
        const double err = std::abs(res.path.values.back() - 2.0 * std::exp(-1.0));
        if (prev > 0.0 && err > 1e-15) order = std::min(order, std::log2(prev / err));
        prev = err;
    }
    CHECK(order >= 3.5);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(solve_ode(1.0, RateSpec::linear(0.0), -1.0, const_mass(0.0, 1.0, 0.1), 0.1),
                    DomainError);
    CHECK_THROWS_AS(solve_ode(1.0, RateSpec::linear(0.0), 1.0, const_mass(0.0, 1.0, 0.1), 0.3),
                    DomainError);
}
