#ifndef VAXGAME_CHARACTERISTICS_HPP
#define VAXGAME_CHARACTERISTICS_HPP

#include <vector>

#include "vaxgame/model.hpp"
#include "vaxgame/util.hpp"

namespace vaxgame {

/// Right-continuous piecewise-constant control on a uniform partition:
/// u(t) = values[floor(t/dt)], clamped to the last value past the end.
struct ControlSignal {
    double dt;
    std::vector<double> values;
    double bound;

    ControlSignal(double dt, std::vector<double> values, double bound);

    static ControlSignal constant(double value, double bound);

    double at(double t) const {
        if (t <= 0.0) return values.front();
        const double s = t / dt;
        const auto last = static_cast<double>(values.size() - 1);
        if (s >= last) return values.back();
        return values[static_cast<std::size_t>(s)];
    }

    double end_time() const { return dt * static_cast<double>(values.size()); }
};

/// One stored characteristic curve X(s; t, xi), sampled on the RK4 ladder.
struct CharCurve {
    std::vector<double> times;
    std::vector<double> positions;
};

/// X(s; t, xi): position at time s of the characteristic through (t, xi).
/// Classical RK4 on dX/dsigma = g(X, u1(sigma), u2(sigma)); integration
/// substeps are aligned to control breakpoints so the controls are
/// constant within every step, with at least substeps_per_dt steps per
/// control interval. Positions are clamped to [0,1] after every substep.
double flow(const FluxSpec& g, const ControlSignal& u1, const ControlSignal& u2,
            double xi, double t, double s, int substeps_per_dt);

/// Same integration as flow, but keeps every ladder sample; the first
/// entry is (t, xi) and the last is (s, X(s; t, xi)).
CharCurve trace_flow(const FluxSpec& g, const ControlSignal& u1, const ControlSignal& u2,
                     double xi, double t, double s, int substeps_per_dt);

/// Backward-flow positions X(0; t, xi_i) for the n uniform grid nodes,
/// monotone nondecreasing in i.
std::vector<double> foot_points(const FluxSpec& g, const ControlSignal& u1,
                                const ControlSignal& u2, int n, double t,
                                int substeps_per_dt);

/// Integral of f(X) + alpha(I) + d_xi g(X, u1, u2) along the
/// characteristic through (t, xi), over s in [0, t]. Composite trapezoid
/// on the RK4 substep ladder; I interpolated linearly between samples.
double exponent_along(const FluxSpec& g, const VaccinationSpec& f, const RateSpec& alpha,
                      const SampledPath& i_path, const ControlSignal& u1,
                      const ControlSignal& u2, double xi, double t, int substeps_per_dt);

/// Backward pass from (t, xi) to t_init computing the foot point and the
/// exponent integral in one sweep. Transport's workhorse.
struct CharWalk {
    double foot = 0.0;
    double exponent = 0.0;
};

CharWalk backward_walk(const FluxSpec& g, const VaccinationSpec& f, const RateSpec& alpha,
                       const SampledPath& i_path, const ControlSignal& u1,
                       const ControlSignal& u2, double xi, double t, double t_init,
                       int substeps_per_dt);

} // namespace vaxgame

#endif
