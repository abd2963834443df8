#include "vaxgame/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <vector>

namespace vaxgame {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
    out << "t,I,l1,l2,mass\n";
    for (int k = 0; k < t.steps(); ++k) {
        out << format_double(t.times[k]) << ',' << format_double(t.i_path[k]) << ','
            << format_double(t.l1[k]) << ',' << format_double(t.l2[k]) << ','
            << format_double(t.mass[k]) << '\n';
    }
}

void write_fields_csv(std::ostream& out, const Trajectory& t) {
    out << "t,xi,S\n";
    for (int k = 0; k < t.steps(); ++k) {
        const ScalarField& f = t.fields[k];
        for (int i = 0; i < f.n(); ++i) {
            out << format_double(t.times[k]) << ',' << format_double(f.xi(i)) << ','
                << format_double(f.values[i]) << '\n';
        }
    }
}

void write_game_result_csv(std::ostream& out, const std::string& side, const GameResult& r,
                           bool header) {
    if (header) out << "side,value,u1_first,u2_first,truncation_bound,nodes\n";
    out << side << ',' << format_double(r.value) << ',' << format_double(r.u1_first) << ','
        << format_double(r.u2_first) << ',' << format_double(r.truncation_bound) << ','
        << r.nodes_expanded << '\n';
}

void write_report_csv(std::ostream& out, const InequalityReport& rep, bool header) {
    if (header) out << "check,trial,seed,time,lhs,rhs,margin,pass\n";
    for (const auto& r : rep.rows) {
        out << r.check << ',' << r.trial << ',' << r.seed << ','
            << format_double(r.time) << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.margin) << ','
            << (r.pass ? 1 : 0) << '\n';
    }
}

ControlSignal read_control_csv(std::istream& in, double bound, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(origin + ": empty control file");
    std::vector<double> times, values;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double t = 0.0, v = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &t, &v) != 2)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 't,value'");
        times.push_back(t);
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError(origin + ": control file has no rows");
    if (std::abs(times.front()) > 1e-9)
        throw ConfigError(origin + ": control breakpoints must start at t = 0");
    double dt = 1.0;
    if (times.size() > 1) {
        dt = times[1] - times[0];
        if (dt <= 0.0) throw ConfigError(origin + ": control breakpoints must increase");
        for (std::size_t k = 1; k < times.size(); ++k) {
            const double expect = dt * static_cast<double>(k);
            if (std::abs(times[k] - expect) > 1e-9 * std::max(1.0, expect))
                throw ConfigError(origin + ": control breakpoints must be uniformly spaced");
        }
    }
    return ControlSignal(dt, values, bound);
}

void write_control_csv(std::ostream& out, const ControlSignal& sig) {
    out << "t,value\n";
    for (std::size_t k = 0; k < sig.values.size(); ++k)
        out << format_double(sig.dt * static_cast<double>(k)) << ','
            << format_double(sig.values[k]) << '\n';
}

} // namespace vaxgame
