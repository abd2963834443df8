#ifndef VAXGAME_VERIFY_HPP
#define VAXGAME_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vaxgame/coupled.hpp"

namespace vaxgame {

struct TrialRow {
    long trial = 0;
    std::uint64_t seed = 0;
    double time = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // (rhs - lhs) / max(rhs, 1e-300), min over checks
    bool pass = false;
    std::string check;
};

struct InequalityReport {
    std::string name;
    long trials = 0;
    long passes = 0;
    double worst_margin = 0.0;
    std::uint64_t offending_seed = 0; // seed of the first failing trial
    std::vector<TrialRow> rows;

    bool all_pass() const { return passes == trials; }
};

/// One randomly sampled problem instance. All draws are functions of the
/// seed alone.
struct RandomCase {
    Scenario scenario;
    ScalarField s_o;
    double i_o;
    ControlSignal u1;
    ControlSignal u2;
};

RandomCase sample_case(std::uint64_t seed, int grid_n = 201);

/// Tolerances used throughout: 1e-3 relative, doubled for L2-type bounds.
struct VerifySlack {
    double l1 = 1e-3;
    double l2 = 2e-3;
};

/// Solution-pair stability for the full system at the requested times:
/// L1 distance of S plus |I - Ibar| against the proven bound with the
/// constants K1 = beta + Lip(alpha)|S_o|, K2 = Lip(alpha)|Sbar_o|, and
/// Kt = K2 + Lip(alpha)|Ibar_o| e^(K1 t).
InequalityReport check_system_stability(const Scenario& scenario, const ScalarField& s_o,
                                        double i_o, const ScalarField& sbar_o, double ibar_o,
                                        const ControlSignal& u1, const ControlSignal& u2,
                                        const std::vector<double>& times, int grid_n = 201,
                                        double dt = 0.05);

/// Transport-only stability against two prescribed I paths: the L1 bound
/// with Lip(alpha)|Sbar_o| |I - Ibar|_L1(0,t) and the L2 bound with the
/// e^(t gamma / 2) and sqrt(t) factors.
InequalityReport check_pde_stability(const Scenario& scenario, const ScalarField& s_o,
                                     const SampledPath& i_path, const ScalarField& sbar_o,
                                     const SampledPath& ibar_path, const ControlSignal& u1,
                                     const ControlSignal& u2, const std::vector<double>& times,
                                     int substeps = 8);

/// ODE-only stability against two prescribed field paths.
InequalityReport check_ode_stability(const Scenario& scenario,
                                     const std::vector<ScalarField>& s_path, double i_o,
                                     const std::vector<ScalarField>& sbar_path, double ibar_o,
                                     double path_dt, const std::vector<double>& times);

/// Growth bounds along one trajectory: L1 contraction, L2 growth at rate
/// gamma/2, the invariant-region bound on I, and mass monotonicity.
InequalityReport check_growth(const Trajectory& trajectory, const Scenario& scenario);

/// Seeded randomized suites; trial k uses seed base_seed + k.
InequalityReport run_growth_suite(std::uint64_t base_seed, int trials, double horizon = 1.0,
                                  int grid_n = 201, double dt = 0.05);
InequalityReport run_system_stability_suite(std::uint64_t base_seed, int trials,
                                            const std::vector<double>& times, int grid_n = 201);
InequalityReport run_pde_stability_suite(std::uint64_t base_seed, int trials,
                                         const std::vector<double>& times, int grid_n = 201);
InequalityReport run_ode_stability_suite(std::uint64_t base_seed, int trials,
                                         const std::vector<double>& times, int grid_n = 201);

} // namespace vaxgame

#endif
