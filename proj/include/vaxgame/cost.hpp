#ifndef VAXGAME_COST_HPP
#define VAXGAME_COST_HPP

#include "vaxgame/coupled.hpp"

namespace vaxgame {

/// Running cost l(I, u1, u2) = kappa (I + u1) - u2 - integral of
/// g(., u1, u2) over [0,1] (201-node trapezoid).
double running_cost(const Scenario& scenario, double infected, double u1, double u2);

/// The constant C = kappa (|S_o|_L1 + I_o + M1) + M2 + gamma bounding
/// |l| along any admissible evolution from (S_o, I_o).
double cost_bound_constant(const Scenario& scenario, const ScalarField& s_o, double i_o);

/// Horizon T with tail integral of e^(-theta t) |l| below eps:
/// T = (1/theta) ln(C / (theta eps)).
double horizon_for_tolerance(const Scenario& scenario, const ScalarField& s_o, double i_o,
                             double eps);

struct FunctionalResult {
    double value = 0.0;
    double tail_bound = 0.0; // certified bound on the discarded tail, <= eps
    double horizon = 0.0;    // truncation horizon actually integrated
};

/// Discounted cost of the pair (u1, u2) from (S_o, I_o): solves the
/// coupled system to the certified horizon and applies the trapezoid rule
/// to e^(-theta t) l(I(t), u1(t), u2(t)), with the controls held at their
/// per-step constants inside each quadrature interval.
FunctionalResult functional(const Scenario& scenario, const ScalarField& s_o, double i_o,
                            const ControlSignal& u1, const ControlSignal& u2, double eps,
                            int grid_n = 201, int substeps_per_dt = 8);

} // namespace vaxgame

#endif
