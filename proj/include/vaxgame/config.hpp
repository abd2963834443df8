#ifndef VAXGAME_CONFIG_HPP
#define VAXGAME_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "vaxgame/model.hpp"

namespace vaxgame {

/// Parses the line-oriented scenario config:
///
///   [model]
///   beta = 1.0
///   ...
///   [alpha]
///   alpha.variant = linear
///   alpha.abar = 0.5
///   [f]
///   f.variant = smoothstep5
///   [g]
///   g.variant = regularized_vax
///   g.lambda = 0.5
///   ...
///
/// Blank lines and lines starting with '#' are ignored. Unknown keys,
/// keys in the wrong section, or missing required keys raise ConfigError
/// naming the key and line number.
Scenario parse_scenario(std::istream& in, const std::string& origin = "<config>");
Scenario load_scenario(const std::string& path);

} // namespace vaxgame

#endif
