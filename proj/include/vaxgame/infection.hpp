#ifndef VAXGAME_INFECTION_HPP
#define VAXGAME_INFECTION_HPP

#include "vaxgame/model.hpp"
#include "vaxgame/util.hpp"

namespace vaxgame {

struct OdeResult {
    SampledPath path;     // I sampled at multiples of dt_out from mass_path.t0
    int clamp_count = 0;  // negative round-off values clamped to zero
    bool clamp_warning = false;
};

/// RK4 solve of I' = -beta I + alpha(I) * mass(t) over the span of
/// mass_path, sampled every dt_out. mass_path is interpolated linearly at
/// the RK4 stage times. Output is clamped at 0 against round-off; more
/// than 10 clamps per solve raises the warning flag.
OdeResult solve_ode(double beta, const RateSpec& alpha, double i_o,
                    const SampledPath& mass_path, double dt_out);

} // namespace vaxgame

#endif
