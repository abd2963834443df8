#include "vaxgame/infection.hpp"

#include <cmath>

namespace vaxgame {

OdeResult solve_ode(double beta, const RateSpec& alpha, double i_o,
                    const SampledPath& mass_path, double dt_out) {
    if (i_o < 0.0) throw DomainError("solve_ode: I_o must be nonnegative");
    if (dt_out <= 0.0) throw DomainError("solve_ode: dt_out must be positive");
    if (mass_path.values.empty()) throw DomainError("solve_ode: empty mass path");
    const double t0 = mass_path.t0;
    const double t_end = mass_path.end_time();
    const auto steps = static_cast<long long>(std::llround((t_end - t0) / dt_out));
    if (steps < 0 || std::abs(t0 + steps * dt_out - t_end) > 1e-9 * std::max(1.0, t_end))
        throw DomainError("solve_ode: dt_out must divide the mass path span");

    auto rhs = [&](double t, double I) {
        return -beta * I + eval_alpha(alpha, std::max(0.0, I)) * mass_path.at(t);
    };

    OdeResult res;
    res.path.t0 = t0;
    res.path.dt = dt_out;
    res.path.values.reserve(static_cast<std::size_t>(steps) + 1);
    double I = i_o;
    res.path.values.push_back(I);
    for (long long k = 0; k < steps; ++k) {
        const double t = t0 + static_cast<double>(k) * dt_out;
        const double h = dt_out;
        const double k1 = rhs(t, I);
        const double k2 = rhs(t + 0.5 * h, I + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, I + 0.5 * h * k2);
        const double k4 = rhs(t + h, I + h * k3);
        I += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (I < 0.0) {
            ++res.clamp_count;
            I = 0.0;
        }
        res.path.values.push_back(I);
    }
    res.clamp_warning = res.clamp_count > 10;
    return res;
}

} // namespace vaxgame
