#ifndef VAXGAME_GAME_HPP
#define VAXGAME_GAME_HPP

#include "vaxgame/cost.hpp"

namespace vaxgame {

/// Uniform sample set {0, M/(L-1), ..., M} of a control box (L = 1 means {0}).
struct ControlLattice {
    double bound = 1.0;
    int levels = 2;

    double at(int i) const {
        return levels == 1 ? 0.0
                           : bound * static_cast<double>(i) / (levels - 1);
    }
};

/// Value assigned past the last step. The discount makes plain truncation
/// certifiable, so zero is the only rule.
enum class TerminalRule { zero };

struct GameConfig {
    int n_steps = 1;
    double dt = 0.25;
    ControlLattice lat1;
    ControlLattice lat2;
    int grid_n = 101;
    int substeps = 8;
    TerminalRule terminal_rule = TerminalRule::zero;
    double eps_tail = 1e-4;   // reporting tolerance for the truncation bound
    double budget = 1e6;      // cap on (lat1.levels * lat2.levels)^n_steps
    int quad_pts = 8;         // per-step cost quadrature intervals
};

struct GameResult {
    double value = 0.0;
    double u1_first = 0.0;
    double u2_first = 0.0;
    double truncation_bound = 0.0;
    long nodes_expanded = 0;
};

/// Dual direction (p, q) in L2 x R for the pre-Hamiltonian.
struct Costate {
    ScalarField p;
    double q = 0.0;
};

struct StepOutcome {
    double cost = 0.0; // integral of e^(-theta s) l over one game step
    ScalarField s_end;
    double i_end = 0.0;
};

/// One backward-induction step: solve the coupled system over [0, dt]
/// from (S, I) with frozen controls and integrate the discounted cost.
StepOutcome one_step(const Scenario& scenario, const ScalarField& s, double i,
                     double u1, double u2, const GameConfig& cfg);

/// Discrete lower game value: per-step resolution
///   V_k = max over v of min over u of [stepcost + e^(-theta dt) V_(k+1)],
/// terminal value 0, ties broken toward smaller controls (v first, then u).
GameResult lower_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg);

/// Discrete upper game value: min over u of max over v per step.
GameResult upper_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg);

enum class GameSide { lower, upper };

/// Brute-force oracle: enumerates every non-anticipating discrete strategy
/// (per-step reaction maps from the opponent's control history through the
/// current step) against every opponent control sequence, and takes
/// inf-sup (lower) or sup-inf (upper). Equals the recursion bit for bit
/// when both use identical one-step solves. Guarded to n_steps <= 2 and
/// lattices <= 3x3.
double enumerate_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg, GameSide side);

struct BestResponse {
    ControlSignal control;
    double value = 0.0;
};

/// Player 1's best reply to u2: compass search (coordinate pattern moves
/// with step halving, projected onto [0, M1]) over the piecewise-constant
/// coefficients of u1 on n_intervals equal pieces of the certified
/// horizon, minimizing the discounted cost. Terminates when the pattern
/// step falls below 1e-4 * M1; the best visited point is returned (a
/// local minimizer).
BestResponse best_response_u1(const Scenario& scenario, const ScalarField& s_o, double i_o,
                              const ControlSignal& u2, int n_intervals, double eps,
                              int grid_n = 101, int substeps = 8);

/// Player 2's best reply to u1 (maximizing mirror).
BestResponse best_response_u2(const Scenario& scenario, const ScalarField& s_o, double i_o,
                              const ControlSignal& u1, int n_intervals, double eps,
                              int grid_n = 101, int substeps = 8);

/// Pre-Hamiltonian
///   H(Y, P, u1, u2) = <d_xi(g S) + (f + alpha(I)) S, p> +
///                     (beta I - alpha(I) integral(S)) q - l(I, u1, u2),
/// with d_xi(gS) = (d_xi g) S + g (d_xi S), the field derivative taken by
/// centered differences (one-sided second order at the boundary), and the
/// pairing by trapezoid.
double pre_hamiltonian(const Scenario& scenario, const ScalarField& s, double infected,
                       const Costate& costate, double u1, double u2);

struct HamiltonianResult {
    double value = 0.0;
    double u1 = 0.0;
    double u2 = 0.0;
    // The pre-Hamiltonian is affine in each control under (G-1), so every
    // inner optimum must sit on a lattice endpoint; verified per call.
    bool inner_on_endpoint = true;
};

/// min over u2 of max over u1 of H, exact on the lattices, ties toward
/// smaller controls.
HamiltonianResult lower_hamiltonian(const Scenario& scenario, const ScalarField& s,
                                    double infected, const Costate& costate,
                                    const ControlLattice& lat1, const ControlLattice& lat2);

/// max over u1 of min over u2 of H.
HamiltonianResult upper_hamiltonian(const Scenario& scenario, const ScalarField& s,
                                    double infected, const Costate& costate,
                                    const ControlLattice& lat1, const ControlLattice& lat2);

} // namespace vaxgame

#endif
