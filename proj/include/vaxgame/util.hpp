#ifndef VAXGAME_UTIL_HPP
#define VAXGAME_UTIL_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "vaxgame/errors.hpp"

namespace vaxgame {

/// A scalar path sampled on a uniform time grid t0, t0+dt, ...
/// Values between samples are read off by linear interpolation.
struct SampledPath {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    double end_time() const {
        return values.empty() ? t0 : t0 + dt * static_cast<double>(values.size() - 1);
    }

    bool covers(double t) const {
        return !values.empty() && t >= t0 - 1e-9 && t <= end_time() + 1e-9;
    }

    double at(double t) const {
        if (values.size() == 1) return values.front();
        double s = (t - t0) / dt;
        if (s <= 0.0) return values.front();
        const double last = static_cast<double>(values.size() - 1);
        if (s >= last) return values.back();
        const std::size_t i = static_cast<std::size_t>(s);
        const double w = s - static_cast<double>(i);
        return values[i] + w * (values[i + 1] - values[i]);
    }
};

/// Runs fn(i) for i in [0, n). Iterations must be independent; each writes
/// only its own output slot, so results do not depend on the schedule.
/// Worker count is capped by VAXGAME_THREADS (0 or unset = hardware auto).
/// Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace vaxgame

#endif
