#ifndef VAXGAME_COUPLED_HPP
#define VAXGAME_COUPLED_HPP

#include <vector>

#include "vaxgame/infection.hpp"
#include "vaxgame/transport.hpp"

namespace vaxgame {

/// Time-indexed solution snapshots with per-time diagnostics.
struct Trajectory {
    std::vector<double> times;
    std::vector<ScalarField> fields;
    std::vector<double> i_path;
    std::vector<double> l1;
    std::vector<double> l2;
    std::vector<double> mass; // integral(S) + I

    int steps() const { return static_cast<int>(times.size()); }
};

struct PicardWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residuals; // one per iteration
};

struct PicardReport {
    std::vector<PicardWindow> windows;
    bool converged = false;
    int ode_clamps = 0;
};

struct CoupledSolution {
    Trajectory trajectory;
    PicardReport report;
};

/// Thrown when a window exhausts max_iters; carries the per-window
/// residual history accumulated so far.
class PicardNonconvergence : public NonconvergenceError {
public:
    PicardNonconvergence(const std::string& what, PicardReport report)
        : NonconvergenceError(what), report_(std::move(report)) {}
    const PicardReport& report() const { return report_; }

private:
    PicardReport report_;
};

/// Largest horizon T on which the alternating map I -> S -> I is a
/// provable contraction:
///   Lip(alpha)^2 (|I_o| + |S_o|_L1) |S_o|_L1 T^2 e^(2 K T) <= 1,
///   K = beta + Lip(alpha) |S_o|_L1,
/// found by bisection to 1e-10 relative. Returns +infinity when
/// Lip(alpha) * |S_o|_L1 = 0 (the left side vanishes identically).
double contraction_window(const Scenario& scenario, const ScalarField& s_o, double i_o);

/// Solves the coupled system on [0, T] by windowed Picard iteration:
/// [0, T] is split into windows no longer than min(contraction window at
/// each restart, 0.5), aligned to the output grid of step dt. Within a
/// window, I^0 is frozen at the window-start value, S^k solves the
/// transport equation against I^(k-1), and I^k solves the scalar ODE
/// against S^k, until the sup over output times of |I^k - I^(k-1)| drops
/// below picard_tol. Windows are concatenated.
CoupledSolution solve(const Scenario& scenario, const ScalarField& s_o, double i_o,
                      const ControlSignal& u1, const ControlSignal& u2, double horizon,
                      int grid_n, double dt, double picard_tol = 1e-10,
                      int max_iters = 50, int substeps_per_dt = 8);

} // namespace vaxgame

#endif
