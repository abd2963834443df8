#include "vaxgame/characteristics.hpp"

#include <algorithm>
#include <cmath>

namespace vaxgame {

ControlSignal::ControlSignal(double dt_, std::vector<double> values_, double bound_)
    : dt(dt_), values(std::move(values_)), bound(bound_) {
    if (dt <= 0.0) throw DomainError("ControlSignal: dt must be positive");
    if (values.empty()) throw DomainError("ControlSignal: needs at least one value");
    if (bound < 0.0) throw DomainError("ControlSignal: bound must be nonnegative");
    for (double v : values)
        if (v < 0.0 || v > bound)
            throw DomainError("ControlSignal: value outside [0, bound]");
}

ControlSignal ControlSignal::constant(double value, double bound) {
    return ControlSignal(1.0, {value}, bound);
}

namespace {

// Times from t_from to t_to (either direction): every control breakpoint
// of both signals in between, each span split into equal RK4 steps of
// size at most min(dt1, dt2, 1/4) / substeps.
std::vector<double> build_ladder(double t_from, double t_to, const ControlSignal& u1,
                                 const ControlSignal& u2, int substeps) {
    if (substeps <= 0) throw ConfigError("substeps_per_dt must be positive");
    const double lo = std::min(t_from, t_to), hi = std::max(t_from, t_to);
    std::vector<double> marks{lo, hi};
    for (const double cdt : {u1.dt, u2.dt}) {
        const auto k0 = static_cast<long long>(std::floor(lo / cdt)) + 1;
        for (long long k = k0; k * cdt < hi - 1e-12 * std::max(1.0, hi); ++k) {
            const double t = static_cast<double>(k) * cdt;
            if (t > lo + 1e-12) marks.push_back(t);
        }
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                marks.end());

    const double h_max = std::min({u1.dt, u2.dt, 0.25}) / static_cast<double>(substeps);
    std::vector<double> ladder;
    ladder.push_back(marks.front());
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double span = marks[i + 1] - marks[i];
        const int steps = std::max(1, static_cast<int>(std::ceil(span / h_max - 1e-12)));
        for (int k = 1; k <= steps; ++k)
            ladder.push_back(marks[i] + span * static_cast<double>(k) / steps);
    }
    if (t_from > t_to) std::reverse(ladder.begin(), ladder.end());
    return ladder;
}

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// One RK4 step of dX/ds = g(X, u, v) with controls frozen at (u, v).
inline double rk4_step(const FluxSpec& g, double x, double h, double u, double v) {
    const double k1 = eval_g(g, x, u, v);
    const double k2 = eval_g(g, clamp01(x + 0.5 * h * k1), u, v);
    const double k3 = eval_g(g, clamp01(x + 0.5 * h * k2), u, v);
    const double k4 = eval_g(g, clamp01(x + h * k3), u, v);
    return clamp01(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

} // namespace

double flow(const FluxSpec& g, const ControlSignal& u1, const ControlSignal& u2,
            double xi, double t, double s, int substeps_per_dt) {
    if (xi < 0.0 || xi > 1.0) throw DomainError("flow: xi outside [0,1]");
    if (t < 0.0 || s < 0.0) throw DomainError("flow: times must be nonnegative");
    if (t == s) return xi;
    const auto ladder = build_ladder(t, s, u1, u2, substeps_per_dt);
    double x = xi;
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const double mid = 0.5 * (ladder[i] + ladder[i + 1]);
        x = rk4_step(g, x, ladder[i + 1] - ladder[i], u1.at(mid), u2.at(mid));
    }
    return x;
}

CharCurve trace_flow(const FluxSpec& g, const ControlSignal& u1, const ControlSignal& u2,
                     double xi, double t, double s, int substeps_per_dt) {
    if (xi < 0.0 || xi > 1.0) throw DomainError("trace_flow: xi outside [0,1]");
    if (t < 0.0 || s < 0.0) throw DomainError("trace_flow: times must be nonnegative");
    CharCurve curve;
    if (t == s) {
        curve.times = {t};
        curve.positions = {xi};
        return curve;
    }
    const auto ladder = build_ladder(t, s, u1, u2, substeps_per_dt);
    curve.times = ladder;
    curve.positions.resize(ladder.size());
    curve.positions[0] = xi;
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const double mid = 0.5 * (ladder[i] + ladder[i + 1]);
        curve.positions[i + 1] = rk4_step(g, curve.positions[i], ladder[i + 1] - ladder[i],
                                          u1.at(mid), u2.at(mid));
    }
    return curve;
}

std::vector<double> foot_points(const FluxSpec& g, const ControlSignal& u1,
                                const ControlSignal& u2, int n, double t,
                                int substeps_per_dt) {
    if (n < 2) throw DomainError("foot_points: need at least 2 grid nodes");
    std::vector<double> feet(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double xi = static_cast<double>(i) / (n - 1);
        feet[i] = flow(g, u1, u2, xi, t, 0.0, substeps_per_dt);
    });
    // The exact flow is order-preserving; round-off may not be.
    for (std::size_t i = 1; i < feet.size(); ++i) feet[i] = std::max(feet[i], feet[i - 1]);
    return feet;
}

CharWalk backward_walk(const FluxSpec& g, const VaccinationSpec& f, const RateSpec& alpha,
                       const SampledPath& i_path, const ControlSignal& u1,
                       const ControlSignal& u2, double xi, double t, double t_init,
                       int substeps_per_dt) {
    if (t < t_init) throw DomainError("backward_walk: t must be >= t_init");
    if (!i_path.covers(t_init) || !i_path.covers(t))
        throw DomainError("backward_walk: I path does not cover [t_init, t]");
    auto integrand = [&](double s, double x, double u, double v) {
        return eval_f(f, x) + eval_alpha(alpha, std::max(0.0, i_path.at(s))) +
               eval_dg(g, x, u, v);
    };
    CharWalk w;
    w.foot = clamp01(xi);
    if (t == t_init) {
        return w;
    }
    const auto ladder = build_ladder(t, t_init, u1, u2, substeps_per_dt);
    double x = clamp01(xi);
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const double s0 = ladder[i], s1 = ladder[i + 1];
        const double mid = 0.5 * (s0 + s1);
        const double u = u1.at(mid), v = u2.at(mid);
        const double x1 = rk4_step(g, x, s1 - s0, u, v);
        w.exponent += 0.5 * (s0 - s1) * (integrand(s0, x, u, v) + integrand(s1, x1, u, v));
        x = x1;
    }
    w.foot = x;
    return w;
}

double exponent_along(const FluxSpec& g, const VaccinationSpec& f, const RateSpec& alpha,
                      const SampledPath& i_path, const ControlSignal& u1,
                      const ControlSignal& u2, double xi, double t, int substeps_per_dt) {
    if (t < 0.0) throw DomainError("exponent_along: t must be nonnegative");
    if (!i_path.covers(t)) throw DomainError("exponent_along: I path does not cover [0,t]");
    return backward_walk(g, f, alpha, i_path, u1, u2, xi, t, 0.0, substeps_per_dt).exponent;
}

} // namespace vaxgame
