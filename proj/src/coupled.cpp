#include "vaxgame/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vaxgame {

namespace {

constexpr double kWindowCap = 0.5; // bounds per-window memory on long horizons

double fixed_point_lhs(double lip, double i_o, double s_mass, double beta, double T) {
    const double K = beta + lip * s_mass;
    return lip * lip * (i_o + s_mass) * s_mass * T * T * std::exp(2.0 * K * T);
}

} // namespace

double contraction_window(const Scenario& scenario, const ScalarField& s_o, double i_o) {
    if (i_o < 0.0) throw DomainError("contraction_window: I_o must be nonnegative");
    for (double v : s_o.values)
        if (v < 0.0) throw DomainError("contraction_window: S_o must be nonnegative");
    const double s_mass = l1_norm(s_o);
    const double lip = alpha_lipschitz(scenario.alpha, s_mass + i_o);
    if (lip * s_mass == 0.0) return std::numeric_limits<double>::infinity();

    double hi = 1.0;
    while (fixed_point_lhs(lip, i_o, s_mass, scenario.beta, hi) < 1.0) {
        hi *= 2.0;
        if (hi > 1e12) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (fixed_point_lhs(lip, i_o, s_mass, scenario.beta, mid) <= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

CoupledSolution solve(const Scenario& scenario, const ScalarField& s_o, double i_o,
                      const ControlSignal& u1, const ControlSignal& u2, double horizon,
                      int grid_n, double dt, double picard_tol, int max_iters,
                      int substeps_per_dt) {
    scenario.assert_admissible();
    if (i_o < 0.0) throw DomainError("solve: I_o must be nonnegative");
    if (horizon <= 0.0) throw DomainError("solve: horizon must be positive");
    if (dt <= 0.0) throw DomainError("solve: dt must be positive");
    if (grid_n < 3) throw DomainError("solve: grid_n must be >= 3");
    if (picard_tol <= 0.0) throw DomainError("solve: picard_tol must be positive");

    const auto n_out = static_cast<long long>(std::llround(horizon / dt));
    if (n_out < 1 || std::abs(static_cast<double>(n_out) * dt - horizon) >
                         1e-9 * std::max(1.0, horizon))
        throw DomainError("solve: horizon must be a multiple of dt");

    // Inner sampling grid for the Picard exchange: at least 4 samples per
    // control interval, never coarser than the output grid, dividing dt.
    const double raw_inner = std::min(dt, std::min(u1.dt, u2.dt) / 4.0);
    const int per_out = std::max(1, static_cast<int>(std::ceil(dt / raw_inner - 1e-12)));
    const double dt_inner = dt / per_out;

    ScalarField s_cur = resample(s_o, grid_n);
    for (double v : s_cur.values)
        if (v < 0.0) throw DomainError("solve: S_o must be nonnegative");
    double i_cur = i_o;

    CoupledSolution out;
    Trajectory& traj = out.trajectory;
    auto push_state = [&](double t, const ScalarField& f, double I) {
        traj.times.push_back(t);
        traj.fields.push_back(f);
        traj.i_path.push_back(I);
        traj.l1.push_back(l1_norm(f));
        traj.l2.push_back(l2_norm(f));
        traj.mass.push_back(field_integral(f) + I);
    };
    push_state(0.0, s_cur, i_cur);

    long long k_cur = 0;
    while (k_cur < n_out) {
        const double t0 = static_cast<double>(k_cur) * dt;
        const double cw = contraction_window(scenario, s_cur, i_cur);
        const double w_max = std::min(cw, kWindowCap);
        long long w_steps = static_cast<long long>(std::floor(w_max / dt + 1e-12));
        w_steps = std::max<long long>(1, std::min(w_steps, n_out - k_cur));
        const double t1 = static_cast<double>(k_cur + w_steps) * dt;

        const int m_in = static_cast<int>(w_steps) * per_out;
        std::vector<double> inner_times(static_cast<std::size_t>(m_in));
        for (int j = 0; j < m_in; ++j) inner_times[j] = t0 + dt_inner * (j + 1);

        PicardWindow win;
        win.t_start = t0;
        win.t_end = t1;

        SampledPath i_prev;
        i_prev.t0 = t0;
        i_prev.dt = dt_inner;
        i_prev.values.assign(static_cast<std::size_t>(m_in) + 1, i_cur);

        std::vector<ScalarField> fields;
        SampledPath i_new;
        bool converged = false;
        for (int it = 1; it <= max_iters; ++it) {
            fields = solve_pde(scenario, s_cur, i_prev, u1, u2, inner_times,
                               substeps_per_dt, t0);
            SampledPath mass;
            mass.t0 = t0;
            mass.dt = dt_inner;
            mass.values.resize(static_cast<std::size_t>(m_in) + 1);
            mass.values[0] = field_integral(s_cur);
            for (int j = 0; j < m_in; ++j) mass.values[j + 1] = field_integral(fields[j]);

            const OdeResult ode = solve_ode(scenario.beta, scenario.alpha, i_cur, mass, dt_inner);
            out.report.ode_clamps += ode.clamp_count;
            i_new = ode.path;

            double res = 0.0;
            for (std::size_t j = 0; j < i_new.values.size(); ++j)
                res = std::max(res, std::abs(i_new.values[j] - i_prev.values[j]));
            win.residuals.push_back(res);
            win.iterations = it;
            win.final_residual = res;
            i_prev = i_new;
            if (res <= picard_tol) {
                converged = true;
                break;
            }
        }
        out.report.windows.push_back(win);
        if (!converged) {
            out.report.converged = false;
            std::ostringstream msg;
            msg << "Picard iteration did not reach " << picard_tol << " within "
                << max_iters << " iterations on window [" << t0 << ", " << t1
                << "] (last residual " << win.final_residual << ")";
            throw PicardNonconvergence(msg.str(), out.report);
        }

        for (long long k = 1; k <= w_steps; ++k) {
            const int j = static_cast<int>(k) * per_out; // index into inner grid
            push_state(static_cast<double>(k_cur + k) * dt, fields[j - 1],
                       i_new.values[static_cast<std::size_t>(j)]);
        }
        s_cur = traj.fields.back();
        i_cur = traj.i_path.back();
        k_cur += w_steps;
    }
    out.report.converged = true;
    return out;
}

} // namespace vaxgame
