#ifndef VAXGAME_CSV_HPP
#define VAXGAME_CSV_HPP

#include <iosfwd>
#include <string>

#include "vaxgame/coupled.hpp"
#include "vaxgame/game.hpp"
#include "vaxgame/verify.hpp"

namespace vaxgame {

/// 17 significant digits, '.' decimal separator; round-trips any double.
std::string format_double(double v);

/// Header t,I,l1,l2,mass; one row per output time.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Header t,xi,S; n rows per output time.
void write_fields_csv(std::ostream& out, const Trajectory& t);

/// Header side,value,u1_first,u2_first,truncation_bound,nodes.
void write_game_result_csv(std::ostream& out, const std::string& side, const GameResult& r,
                           bool header = true);

/// Header check,trial,seed,time,lhs,rhs,margin,pass.
void write_report_csv(std::ostream& out, const InequalityReport& rep, bool header = true);

/// Control file: header t,value, piecewise constant from each breakpoint.
/// Breakpoints must be uniformly spaced starting at 0.
ControlSignal read_control_csv(std::istream& in, double bound, const std::string& origin);
void write_control_csv(std::ostream& out, const ControlSignal& sig);

} // namespace vaxgame

#endif
