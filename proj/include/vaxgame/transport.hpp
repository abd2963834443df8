#ifndef VAXGAME_TRANSPORT_HPP
#define VAXGAME_TRANSPORT_HPP

#include <vector>

#include "vaxgame/characteristics.hpp"
#include "vaxgame/model.hpp"
#include "vaxgame/util.hpp"

namespace vaxgame {

/// Samples of S on the uniform grid xi_i = i/(n-1) over [0,1].
struct ScalarField {
    std::vector<double> values;

    explicit ScalarField(std::vector<double> v);
    ScalarField(int n, double fill);

    int n() const { return static_cast<int>(values.size()); }
    double xi(int i) const { return static_cast<double>(i) / (n() - 1); }
    double h() const { return 1.0 / (n() - 1); }
};

double l1_norm(const ScalarField& s);
double l2_norm(const ScalarField& s);
double field_integral(const ScalarField& s);

/// Linear interpolation of the field at x in [0,1].
double interp(const ScalarField& s, double x);

/// Resample onto an n-node uniform grid (linear interpolation).
ScalarField resample(const ScalarField& s, int n);

/// Solves the controlled transport equation for S with a known I path by
/// the characteristics representation: at each output time t and node xi,
/// S(t, xi) = S_o(X(t_init; t, xi)) * exp(-integral along the curve).
/// S_o must be nonnegative; outputs are nonnegative.
std::vector<ScalarField> solve_pde(const Scenario& scenario, const ScalarField& s_o,
                                   const SampledPath& i_path, const ControlSignal& u1,
                                   const ControlSignal& u2,
                                   const std::vector<double>& out_times,
                                   int substeps_per_dt = 8, double t_init = 0.0);

} // namespace vaxgame

#endif
