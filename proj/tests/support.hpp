#ifndef VAXGAME_TESTS_SUPPORT_HPP
#define VAXGAME_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "vaxgame/model.hpp"
#include "vaxgame/transport.hpp"

namespace vaxtest {

inline vaxgame::FluxSpec canonical_flux(double m1 = 1.0, double m2 = 1.0,
                                        double delta = 0.02) {
    return vaxgame::FluxSpec::regularized_vax(0.5, 0.1, 0.666, 0.45, 0.85, delta, m1, m2);
}

inline vaxgame::Scenario canonical_scenario() {
    return vaxgame::Scenario(1.0, 1.0, 1.0, 1.0, 1.0, vaxgame::RateSpec::linear(0.5),
                             vaxgame::VaccinationSpec::smoothstep(5), canonical_flux());
}

// Decoupled baseline: alpha = Linear(0), g = Zero, f(xi) = xi.
inline vaxgame::Scenario decoupled_scenario(double beta = 1.0, double kappa = 1.0,
                                            double theta = 1.0) {
    return vaxgame::Scenario(beta, kappa, theta, 1.0, 1.0, vaxgame::RateSpec::linear(0.0),
                             vaxgame::VaccinationSpec::identity(), vaxgame::FluxSpec::zero());
}

inline vaxgame::ScalarField make_field(int n, const std::function<double(double)>& fn) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = fn(static_cast<double>(i) / (n - 1));
    return vaxgame::ScalarField(std::move(v));
}

inline const std::string kCanonicalConfig =
    "[model]\n"
    "beta = 1.0\n"
    "kappa = 1.0\n"
    "theta = 1.0\n"
    "m1 = 1.0\n"
    "m2 = 1.0\n"
    "[alpha]\n"
    "alpha.variant = linear\n"
    "alpha.abar = 0.5\n"
    "[f]\n"
    "f.variant = smoothstep5\n"
    "[g]\n"
    "g.variant = regularized_vax\n"
    "g.lambda = 0.5\n"
    "g.a1_lo = 0.1\n"
    "g.a1_hi = 0.666\n"
    "g.a2_lo = 0.45\n"
    "g.a2_hi = 0.85\n"
    "g.delta = 0.02\n";

} // namespace vaxtest

#endif
