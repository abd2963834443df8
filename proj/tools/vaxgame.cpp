#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vaxgame/config.hpp"
#include "vaxgame/csv.hpp"
#include "vaxgame/verify.hpp"

using namespace vaxgame;

namespace {

ControlSignal parse_control(const std::string& arg, double bound) {
    if (arg.rfind("const:", 0) == 0) {
        const std::string num = arg.substr(6);
        char* end = nullptr;
        const double v = std::strtod(num.c_str(), &end);
        if (end == num.c_str() || *end != '\0')
            throw ConfigError("control 'const:" + num + "' is not a number");
        return ControlSignal::constant(v, bound);
    }
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot open control file '" + arg + "'");
    return read_control_csv(in, bound, arg);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

// State file: header xi,S,I with I taken from the first row.
std::pair<ScalarField, double> read_state_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open state file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty state file");
    std::vector<double> s;
    double i_val = 0.0;
    bool first = true;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double xi = 0.0, sv = 0.0, iv = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &xi, &sv, &iv) != 3)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'xi,S,I'");
        s.push_back(sv);
        if (first) {
            i_val = iv;
            first = false;
        }
    }
    return {ScalarField(std::move(s)), i_val};
}

// Costate file: header xi,p,q with q taken from the first row.
Costate read_costate_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open costate file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty costate file");
    std::vector<double> p;
    double q = 0.0;
    bool first = true;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double xi = 0.0, pv = 0.0, qv = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &xi, &pv, &qv) != 3)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'xi,p,q'");
        p.push_back(pv);
        if (first) {
            q = qv;
            first = false;
        }
    }
    return Costate{ScalarField(std::move(p)), q};
}

int run(int argc, char** argv) {
    CLI::App app{"Coupled vaccination-leaning transport/infection system: "
                 "simulation, costs, best responses, game values, Hamiltonians, "
                 "and inequality verification"};
    app.require_subcommand(1);

    // validate
    auto* c_val = app.add_subcommand("validate", "check structural hypotheses of a config");
    std::string val_cfg;
    double val_imax = 1.0;
    int val_grid = 256;
    c_val->add_option("config", val_cfg)->required();
    c_val->add_option("--imax", val_imax);
    c_val->add_option("--grid", val_grid);

    // simulate
    auto* c_sim = app.add_subcommand("simulate", "solve the coupled system, write CSV");
    std::string sim_cfg, sim_u1 = "const:0", sim_u2 = "const:0", sim_out = ".";
    double sim_t = 1.0, sim_dt = 0.01, sim_io = 0.0;
    int sim_grid = 201;
    std::string sim_s0 = "const:1";
    c_sim->add_option("config", sim_cfg)->required();
    c_sim->add_option("--t", sim_t);
    c_sim->add_option("--u1", sim_u1);
    c_sim->add_option("--u2", sim_u2);
    c_sim->add_option("--grid", sim_grid);
    c_sim->add_option("--dt", sim_dt);
    c_sim->add_option("--out", sim_out);
    c_sim->add_option("--i0", sim_io);
    c_sim->add_option("--s0", sim_s0, "const:v or amplitude profile file (xi,S,I)");

    // cost
    auto* c_cost = app.add_subcommand("cost", "evaluate the discounted cost functional");
    std::string cost_cfg, cost_u1 = "const:0", cost_u2 = "const:0";
    double cost_eps = 1e-4, cost_io = 0.0;
    int cost_grid = 201;
    std::string cost_s0 = "const:1";
    c_cost->add_option("config", cost_cfg)->required();
    c_cost->add_option("--u1", cost_u1);
    c_cost->add_option("--u2", cost_u2);
    c_cost->add_option("--eps", cost_eps);
    c_cost->add_option("--grid", cost_grid);
    c_cost->add_option("--i0", cost_io);
    c_cost->add_option("--s0", cost_s0);

    // best-response
    auto* c_br = app.add_subcommand("best-response", "optimize one player against the other");
    std::string br_cfg, br_against = "const:0";
    int br_player = 1, br_intervals = 4, br_grid = 101;
    double br_eps = 1e-3, br_io = 0.0;
    std::string br_s0 = "const:1";
    c_br->add_option("config", br_cfg)->required();
    c_br->add_option("--player", br_player)->check(CLI::IsMember({1, 2}));
    c_br->add_option("--against", br_against);
    c_br->add_option("--intervals", br_intervals);
    c_br->add_option("--eps", br_eps);
    c_br->add_option("--grid", br_grid);
    c_br->add_option("--i0", br_io);
    c_br->add_option("--s0", br_s0);

    // value
    auto* c_value = app.add_subcommand("value", "discrete lower/upper game values");
    std::string v_cfg, v_side = "both";
    int v_steps = 2, v_lat1 = 2, v_lat2 = 2, v_grid = 101;
    double v_dt = 0.25, v_io = 0.0;
    std::string v_s0 = "const:1";
    c_value->add_option("config", v_cfg)->required();
    c_value->add_option("--side", v_side)->check(CLI::IsMember({"lower", "upper", "both"}));
    c_value->add_option("--steps", v_steps);
    c_value->add_option("--dt", v_dt);
    c_value->add_option("--lat1", v_lat1);
    c_value->add_option("--lat2", v_lat2);
    c_value->add_option("--grid", v_grid);
    c_value->add_option("--i0", v_io);
    c_value->add_option("--s0", v_s0);

    // hamiltonian
    auto* c_ham = app.add_subcommand("hamiltonian", "lattice Isaacs Hamiltonians at a point");
    std::string h_cfg, h_state, h_costate;
    int h_lat1 = 5, h_lat2 = 5;
    c_ham->add_option("config", h_cfg)->required();
    c_ham->add_option("--state", h_state)->required();
    c_ham->add_option("--costate", h_costate)->required();
    c_ham->add_option("--lat1", h_lat1);
    c_ham->add_option("--lat2", h_lat2);

    // verify
    auto* c_ver = app.add_subcommand("verify", "randomized inequality suites");
    std::string ver_cfg, ver_suite = "all";
    long ver_trials = 20;
    unsigned long long ver_seed = 1;
    int ver_grid = 201;
    c_ver->add_option("config", ver_cfg)->required();
    c_ver->add_option("--suite", ver_suite)
        ->check(CLI::IsMember({"growth", "stability", "all"}));
    c_ver->add_option("--trials", ver_trials);
    c_ver->add_option("--seed", ver_seed);
    c_ver->add_option("--grid", ver_grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::ostringstream out;
    auto make_s0 = [](const std::string& arg, int grid) {
        if (arg.rfind("const:", 0) == 0) {
            const std::string num = arg.substr(6);
            char* end = nullptr;
            const double v = std::strtod(num.c_str(), &end);
            if (end == num.c_str() || *end != '\0')
                throw ConfigError("--s0 'const:" + num + "' is not a number");
            if (v < 0.0) throw ConfigError("--s0 must be nonnegative");
            return ScalarField(grid, v);
        }
        return read_state_csv(arg).first;
    };

    if (*c_val) {
        const Scenario sc = load_scenario(val_cfg);
        const ValidationReport rep = validate_scenario(sc, val_grid, val_imax);
        std::cout << rep.summary();
        return rep.ok() ? 0 : 1;
    }

    if (*c_sim) {
        if (sim_t <= 0.0) throw ConfigError("--t must be positive");
        if (sim_dt <= 0.0) throw ConfigError("--dt must be positive");
        if (sim_io < 0.0) throw ConfigError("--i0 must be nonnegative");
        const Scenario sc = load_scenario(sim_cfg);
        const ControlSignal u1 = parse_control(sim_u1, sc.m1);
        const ControlSignal u2 = parse_control(sim_u2, sc.m2);
        const ScalarField s0 = make_s0(sim_s0, sim_grid);
        const CoupledSolution sol = solve(sc, s0, sim_io, u1, u2, sim_t, sim_grid, sim_dt);
        std::ostringstream traj, fields;
        write_trajectory_csv(traj, sol.trajectory);
        write_fields_csv(fields, sol.trajectory);
        const std::filesystem::path dir(sim_out);
        std::filesystem::create_directories(dir);
        write_file(dir / "trajectory.csv", traj.str());
        write_file(dir / "fields.csv", fields.str());
        std::cout << "wrote " << (dir / "trajectory.csv").string() << " and "
                  << (dir / "fields.csv").string() << "\n";
        return 0;
    }

    if (*c_cost) {
        if (cost_eps <= 0.0) throw ConfigError("--eps must be positive");
        if (cost_io < 0.0) throw ConfigError("--i0 must be nonnegative");
        const Scenario sc = load_scenario(cost_cfg);
        const ControlSignal u1 = parse_control(cost_u1, sc.m1);
        const ControlSignal u2 = parse_control(cost_u2, sc.m2);
        const ScalarField s0 = make_s0(cost_s0, cost_grid);
        const FunctionalResult r = functional(sc, s0, cost_io, u1, u2, cost_eps, cost_grid);
        std::cout << "value,tail_bound,horizon\n"
                  << format_double(r.value) << ',' << format_double(r.tail_bound) << ','
                  << format_double(r.horizon) << '\n';
        return 0;
    }

    if (*c_br) {
        if (br_eps <= 0.0) throw ConfigError("--eps must be positive");
        if (br_intervals < 1) throw ConfigError("--intervals must be >= 1");
        const Scenario sc = load_scenario(br_cfg);
        const ScalarField s0 = make_s0(br_s0, br_grid);
        const ControlSignal opp =
            parse_control(br_against, br_player == 1 ? sc.m2 : sc.m1);
        const BestResponse br =
            br_player == 1
                ? best_response_u1(sc, s0, br_io, opp, br_intervals, br_eps, br_grid)
                : best_response_u2(sc, s0, br_io, opp, br_intervals, br_eps, br_grid);
        std::cout << "value," << format_double(br.value) << "\n";
        write_control_csv(std::cout, br.control);
        return 0;
    }

    if (*c_value) {
        if (v_dt <= 0.0) throw ConfigError("--dt must be positive");
        const Scenario sc = load_scenario(v_cfg);
        GameConfig cfg;
        cfg.n_steps = v_steps;
        cfg.dt = v_dt;
        cfg.lat1 = ControlLattice{sc.m1, v_lat1};
        cfg.lat2 = ControlLattice{sc.m2, v_lat2};
        cfg.grid_n = v_grid;
        const ScalarField s0 = make_s0(v_s0, v_grid);
        bool header = true;
        if (v_side == "lower" || v_side == "both") {
            write_game_result_csv(std::cout, "lower", lower_value(sc, s0, v_io, cfg), header);
            header = false;
        }
        if (v_side == "upper" || v_side == "both") {
            write_game_result_csv(std::cout, "upper", upper_value(sc, s0, v_io, cfg), header);
        }
        return 0;
    }

    if (*c_ham) {
        const Scenario sc = load_scenario(h_cfg);
        const auto [s, infected] = read_state_csv(h_state);
        const Costate p = read_costate_csv(h_costate);
        const ControlLattice lat1{sc.m1, h_lat1}, lat2{sc.m2, h_lat2};
        const HamiltonianResult lo = lower_hamiltonian(sc, s, infected, p, lat1, lat2);
        const HamiltonianResult up = upper_hamiltonian(sc, s, infected, p, lat1, lat2);
        std::cout << "side,value,u1,u2\n"
                  << "lower," << format_double(lo.value) << ',' << format_double(lo.u1)
                  << ',' << format_double(lo.u2) << '\n'
                  << "upper," << format_double(up.value) << ',' << format_double(up.u1)
                  << ',' << format_double(up.u2) << '\n';
        return 0;
    }

    if (*c_ver) {
        if (ver_trials < 1) throw ConfigError("--trials must be >= 1");
        // The config gates the run through validation; the suites draw
        // their scenarios from the seeded sampler.
        const Scenario sc = load_scenario(ver_cfg);
        if (!validate_scenario(sc, 64).ok())
            throw ConfigError(ver_cfg + ": scenario fails hypothesis validation");
        bool header = true;
        if (ver_suite == "growth" || ver_suite == "all") {
            const InequalityReport rep =
                run_growth_suite(ver_seed, static_cast<int>(ver_trials), 1.0, ver_grid, 0.05);
            write_report_csv(std::cout, rep, header);
            header = false;
            if (!rep.all_pass()) return 1;
        }
        if (ver_suite == "stability" || ver_suite == "all") {
            const InequalityReport sys = run_system_stability_suite(
                ver_seed + 1000000, static_cast<int>(ver_trials), {0.25, 0.5, 1.0}, ver_grid);
            write_report_csv(std::cout, sys, header);
            header = false;
            const InequalityReport pde = run_pde_stability_suite(
                ver_seed + 2000000, static_cast<int>(ver_trials), {0.5, 1.0}, ver_grid);
            write_report_csv(std::cout, pde, false);
            const InequalityReport ode = run_ode_stability_suite(
                ver_seed + 3000000, static_cast<int>(ver_trials), {0.5, 1.0}, ver_grid);
            write_report_csv(std::cout, ode, false);
            if (!sys.all_pass() || !pde.all_pass() || !ode.all_pass()) return 1;
        }
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const NonconvergenceError& e) {
        std::cerr << "nonconvergence: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
