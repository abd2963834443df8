#include "vaxgame/transport.hpp"

#include <algorithm>
#include <cmath>

namespace vaxgame {

ScalarField::ScalarField(std::vector<double> v) : values(std::move(v)) {
    if (values.size() < 3) throw DomainError("ScalarField: need at least 3 nodes");
    for (double x : values)
        if (!std::isfinite(x)) throw DomainError("ScalarField: values must be finite");
}

ScalarField::ScalarField(int n, double fill)
    : ScalarField(std::vector<double>(static_cast<std::size_t>(n), fill)) {}

double l1_norm(const ScalarField& s) {
    const int n = s.n();
    double acc = 0.5 * (std::abs(s.values.front()) + std::abs(s.values.back()));
    for (int i = 1; i + 1 < n; ++i) acc += std::abs(s.values[i]);
    return acc * s.h();
}

double l2_norm(const ScalarField& s) {
    const int n = s.n();
    double acc = 0.5 * (s.values.front() * s.values.front() +
                        s.values.back() * s.values.back());
    for (int i = 1; i + 1 < n; ++i) acc += s.values[i] * s.values[i];
    return std::sqrt(acc * s.h());
}

double field_integral(const ScalarField& s) {
    const int n = s.n();
    double acc = 0.5 * (s.values.front() + s.values.back());
    for (int i = 1; i + 1 < n; ++i) acc += s.values[i];
    return acc * s.h();
}

double interp(const ScalarField& s, double x) {
    if (x <= 0.0) return s.values.front();
    if (x >= 1.0) return s.values.back();
    const double pos = x * (s.n() - 1);
    const int i = static_cast<int>(pos);
    const double w = pos - i;
    if (i + 1 >= s.n()) return s.values.back();
    return s.values[i] + w * (s.values[i + 1] - s.values[i]);
}

ScalarField resample(const ScalarField& s, int n) {
    if (n == s.n()) return s;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[i] = interp(s, static_cast<double>(i) / (n - 1));
    return ScalarField(std::move(v));
}

std::vector<ScalarField> solve_pde(const Scenario& scenario, const ScalarField& s_o,
                                   const SampledPath& i_path, const ControlSignal& u1,
                                   const ControlSignal& u2,
                                   const std::vector<double>& out_times,
                                   int substeps_per_dt, double t_init) {
    for (double v : s_o.values)
        if (v < 0.0) throw DomainError("solve_pde: S_o must be nonnegative");
    for (double t : out_times) {
        if (t < t_init) throw DomainError("solve_pde: output time precedes t_init");
        if (!i_path.covers(t)) throw DomainError("solve_pde: I path does not cover output times");
    }
    const int n = s_o.n();
    std::vector<ScalarField> out;
    out.reserve(out_times.size());
    for (double t : out_times) {
        ScalarField field(n, 0.0);
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
            const double xi = static_cast<double>(i) / (n - 1);
            const CharWalk w = backward_walk(scenario.g, scenario.f, scenario.alpha, i_path,
                                             u1, u2, xi, t, t_init, substeps_per_dt);
            field.values[i] = interp(s_o, w.foot) * std::exp(-w.exponent);
        });
        out.push_back(std::move(field));
    }
    return out;
}

} // namespace vaxgame
