#include "vaxgame/cost.hpp"

#include <algorithm>
#include <cmath>

namespace vaxgame {

namespace {
constexpr int kGQuadNodes = 201;
}

double running_cost(const Scenario& scenario, double infected, double u1, double u2) {
    if (u1 < 0.0 || u1 > scenario.m1 * (1.0 + 1e-12))
        throw DomainError("running_cost: u1 outside [0, M1]");
    if (u2 < 0.0 || u2 > scenario.m2 * (1.0 + 1e-12))
        throw DomainError("running_cost: u2 outside [0, M2]");
    double gint = 0.5 * (eval_g(scenario.g, 0.0, u1, u2) + eval_g(scenario.g, 1.0, u1, u2));
    for (int i = 1; i + 1 < kGQuadNodes; ++i)
        gint += eval_g(scenario.g, static_cast<double>(i) / (kGQuadNodes - 1), u1, u2);
    gint /= (kGQuadNodes - 1);
    return scenario.kappa * (infected + u1) - u2 - gint;
}

double cost_bound_constant(const Scenario& scenario, const ScalarField& s_o, double i_o) {
    const double gamma = flux_gamma(scenario.g, scenario.m1, scenario.m2);
    return scenario.kappa * (l1_norm(s_o) + i_o + scenario.m1) + scenario.m2 + gamma;
}

double horizon_for_tolerance(const Scenario& scenario, const ScalarField& s_o, double i_o,
                             double eps) {
    if (eps <= 0.0) throw DomainError("horizon_for_tolerance: eps must be positive");
    const double C = cost_bound_constant(scenario, s_o, i_o);
    return std::max(0.0, std::log(C / (scenario.theta * eps)) / scenario.theta);
}

FunctionalResult functional(const Scenario& scenario, const ScalarField& s_o, double i_o,
                            const ControlSignal& u1, const ControlSignal& u2, double eps,
                            int grid_n, int substeps_per_dt) {
    const double t_h = horizon_for_tolerance(scenario, s_o, i_o, eps);

    // Quadrature step: at most 0.05, dividing the finest control interval
    // so the controls stay constant within every quadrature cell.
    const double base = std::min({u1.dt, u2.dt, 1.0});
    const double dt_q = base / std::ceil(base / 0.05 - 1e-12);
    const auto steps = static_cast<long long>(std::ceil(t_h / dt_q - 1e-12));
    const double t_end = std::max(static_cast<double>(std::max<long long>(steps, 1)) * dt_q, dt_q);

    const CoupledSolution sol = solve(scenario, s_o, i_o, u1, u2, t_end, grid_n, dt_q,
                                      1e-10, 50, substeps_per_dt);

    const auto& tr = sol.trajectory;
    double value = 0.0;
    for (std::size_t j = 0; j + 1 < tr.times.size(); ++j) {
        const double ta = tr.times[j], tb = tr.times[j + 1];
        const double mid = 0.5 * (ta + tb);
        const double ua = u1.at(mid), va = u2.at(mid);
        const double la = std::exp(-scenario.theta * ta) *
                          running_cost(scenario, tr.i_path[j], ua, va);
        const double lb = std::exp(-scenario.theta * tb) *
                          running_cost(scenario, tr.i_path[j + 1], ua, va);
        value += 0.5 * (tb - ta) * (la + lb);
    }

    FunctionalResult res;
    res.value = value;
    res.horizon = t_end;
    const double C = cost_bound_constant(scenario, s_o, i_o);
    res.tail_bound = C / scenario.theta * std::exp(-scenario.theta * t_end);
    return res;
}

} // namespace vaxgame
