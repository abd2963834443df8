#include "vaxgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace vaxgame {

namespace {

void check_cfg(const GameConfig& cfg) {
    if (cfg.n_steps < 1) throw ConfigError("GameConfig: n_steps must be >= 1");
    if (cfg.dt <= 0.0) throw ConfigError("GameConfig: dt must be positive");
    if (cfg.lat1.levels < 1 || cfg.lat2.levels < 1)
        throw ConfigError("GameConfig: lattices need at least one level");
    if (cfg.grid_n < 3) throw ConfigError("GameConfig: grid_n must be >= 3");
    if (cfg.quad_pts < 1) throw ConfigError("GameConfig: quad_pts must be >= 1");
    const double work = std::pow(
        static_cast<double>(cfg.lat1.levels) * static_cast<double>(cfg.lat2.levels),
        static_cast<double>(cfg.n_steps));
    if (work > cfg.budget)
        throw ConfigError("GameConfig: (lat1*lat2)^n_steps exceeds the node budget");
}

} // namespace

StepOutcome one_step(const Scenario& scenario, const ScalarField& s, double i,
                     double u1, double u2, const GameConfig& cfg) {
    const ControlSignal cu1 = ControlSignal::constant(u1, scenario.m1);
    const ControlSignal cu2 = ControlSignal::constant(u2, scenario.m2);
    const double dt_q = cfg.dt / cfg.quad_pts;
    const CoupledSolution sol = solve(scenario, s, i, cu1, cu2, cfg.dt, s.n(), dt_q,
                                      1e-10, 50, cfg.substeps);
    const auto& tr = sol.trajectory;
    // l(I) = kappa I + offset with a control-only offset; integrate the
    // discount against the sampled I.
    const double offset = running_cost(scenario, 0.0, u1, u2);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < tr.times.size(); ++j) {
        const double la = std::exp(-scenario.theta * tr.times[j]) *
                          (scenario.kappa * tr.i_path[j] + offset);
        const double lb = std::exp(-scenario.theta * tr.times[j + 1]) *
                          (scenario.kappa * tr.i_path[j + 1] + offset);
        acc += 0.5 * (tr.times[j + 1] - tr.times[j]) * (la + lb);
    }
    return StepOutcome{acc, tr.fields.back(), tr.i_path.back()};
}

namespace {

struct ValueRec {
    const Scenario& sc;
    const GameConfig& cfg;
    double disc;
    long nodes = 0;

    // side == lower: max over v of min over u; side == upper: min over u
    // of max over v. Ties resolve toward smaller control values.
    double run(const ScalarField& s, double i, int k, GameSide side,
               int* root_iu = nullptr, int* root_jv = nullptr) {
        if (k == cfg.n_steps) return 0.0;
        const int L1 = cfg.lat1.levels, L2 = cfg.lat2.levels;
        if (side == GameSide::lower) {
            double outer = 0.0;
            int best_j = -1, best_i_at_j = -1;
            for (int j = 0; j < L2; ++j) {
                double inner = 0.0;
                int best_i = -1;
                for (int iu = 0; iu < L1; ++iu) {
                    ++nodes;
                    const StepOutcome st =
                        one_step(sc, s, i, cfg.lat1.at(iu), cfg.lat2.at(j), cfg);
                    const double val = st.cost + disc * run(st.s_end, st.i_end, k + 1, side);
                    if (best_i < 0 || val < inner) {
                        inner = val;
                        best_i = iu;
                    }
                }
                if (best_j < 0 || inner > outer) {
                    outer = inner;
                    best_j = j;
                    best_i_at_j = best_i;
                }
            }
            if (root_iu) *root_iu = best_i_at_j;
            if (root_jv) *root_jv = best_j;
            return outer;
        }
        double outer = 0.0;
        int best_i = -1, best_j_at_i = -1;
        for (int iu = 0; iu < L1; ++iu) {
            double inner = 0.0;
            int best_j = -1;
            for (int j = 0; j < L2; ++j) {
                ++nodes;
                const StepOutcome st =
                    one_step(sc, s, i, cfg.lat1.at(iu), cfg.lat2.at(j), cfg);
                const double val = st.cost + disc * run(st.s_end, st.i_end, k + 1, side);
                if (best_j < 0 || val > inner) {
                    inner = val;
                    best_j = j;
                }
            }
            if (best_i < 0 || inner < outer) {
                outer = inner;
                best_i = iu;
                best_j_at_i = best_j;
            }
        }
        if (root_iu) *root_iu = best_i;
        if (root_jv) *root_jv = best_j_at_i;
        return outer;
    }
};

GameResult value_impl(const Scenario& scenario, const ScalarField& s_o, double i_o,
                      const GameConfig& cfg, GameSide side) {
    check_cfg(cfg);
    scenario.assert_admissible();
    const ScalarField s0 = resample(s_o, cfg.grid_n);
    ValueRec rec{scenario, cfg, std::exp(-scenario.theta * cfg.dt)};
    int iu = 0, jv = 0;
    GameResult res;
    res.value = rec.run(s0, i_o, 0, side, &iu, &jv);
    res.u1_first = cfg.lat1.at(iu);
    res.u2_first = cfg.lat2.at(jv);
    res.nodes_expanded = rec.nodes;
    res.truncation_bound = cost_bound_constant(scenario, s0, i_o) / scenario.theta *
                           std::exp(-scenario.theta * cfg.dt * cfg.n_steps);
    return res;
}

} // namespace

GameResult lower_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg) {
    return value_impl(scenario, s_o, i_o, cfg, GameSide::lower);
}

GameResult upper_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg) {
    return value_impl(scenario, s_o, i_o, cfg, GameSide::upper);
}

namespace {

// Path costs for every control-index path, Horner-folded exactly like the
// recursion: value(path) = c_0 + disc * (c_1 + disc * 0).
struct PathTable {
    int L1 = 1, L2 = 1;
    std::vector<double> value; // indexed by mixed-radix path (u0,v0,u1,v1,...)
};

void fill_paths(const Scenario& sc, const GameConfig& cfg, const ScalarField& s, double i,
                int k, double disc, std::vector<int>& digits, std::vector<double>& costs,
                PathTable& table) {
    if (k == cfg.n_steps) {
        double acc = 0.0;
        for (int j = cfg.n_steps - 1; j >= 0; --j) acc = costs[j] + disc * acc;
        int idx = 0;
        for (std::size_t d = 0; d < digits.size(); ++d)
            idx = idx * (d % 2 == 0 ? table.L1 : table.L2) + digits[d];
        table.value[static_cast<std::size_t>(idx)] = acc;
        return;
    }
    for (int iu = 0; iu < cfg.lat1.levels; ++iu) {
        for (int jv = 0; jv < cfg.lat2.levels; ++jv) {
            const StepOutcome st = one_step(sc, s, i, cfg.lat1.at(iu), cfg.lat2.at(jv), cfg);
            digits.push_back(iu);
            digits.push_back(jv);
            costs[k] = st.cost;
            fill_paths(sc, cfg, st.s_end, st.i_end, k + 1, disc, digits, costs, table);
            digits.pop_back();
            digits.pop_back();
        }
    }
}

long long ipow(long long b, int e) {
    long long r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

} // namespace

double enumerate_value(const Scenario& scenario, const ScalarField& s_o, double i_o,
                       const GameConfig& cfg, GameSide side) {
    check_cfg(cfg);
    scenario.assert_admissible();
    if (cfg.n_steps > 2 || cfg.lat1.levels > 3 || cfg.lat2.levels > 3)
        throw ConfigError("enumerate_value: guard is n_steps <= 2 and lattices <= 3x3");
    const int L1 = cfg.lat1.levels, L2 = cfg.lat2.levels, N = cfg.n_steps;
    const double disc = std::exp(-scenario.theta * cfg.dt);

    PathTable table;
    table.L1 = L1;
    table.L2 = L2;
    table.value.assign(static_cast<std::size_t>(ipow(static_cast<long long>(L1) * L2, N)), 0.0);
    {
        std::vector<int> digits;
        std::vector<double> costs(static_cast<std::size_t>(N), 0.0);
        const ScalarField s0 = resample(s_o, cfg.grid_n);
        fill_paths(scenario, cfg, s0, i_o, 0, disc, digits, costs, table);
    }

    auto path_value = [&](int u0, int v0, int u1, int v1) {
        std::size_t idx = static_cast<std::size_t>(u0) * L2 + v0;
        if (N == 2) idx = (idx * L1 + static_cast<std::size_t>(u1)) * L2 + v1;
        return table.value[idx];
    };

    if (side == GameSide::lower) {
        // Player 1 reaction maps: sigma0(v0) and, for N = 2, sigma1(v0, v1).
        const long long n_s0 = ipow(L1, L2);
        const long long n_s1 = N == 2 ? ipow(L1, L2 * L2) : 1;
        double best = 0.0;
        bool have_best = false;
        std::vector<int> s0d(static_cast<std::size_t>(L2));
        std::vector<int> s1d(static_cast<std::size_t>(L2 * L2));
        for (long long a = 0; a < n_s0; ++a) {
            long long aa = a;
            for (int d = 0; d < L2; ++d) {
                s0d[d] = static_cast<int>(aa % L1);
                aa /= L1;
            }
            for (long long b = 0; b < n_s1; ++b) {
                long long bb = b;
                for (int d = 0; d < L2 * L2; ++d) {
                    s1d[d] = static_cast<int>(bb % L1);
                    bb /= L1;
                }
                double worst = 0.0;
                bool have_worst = false;
                for (int v0 = 0; v0 < L2; ++v0) {
                    if (N == 1) {
                        const double val = path_value(s0d[v0], v0, 0, 0);
                        if (!have_worst || val > worst) {
                            worst = val;
                            have_worst = true;
                        }
                        continue;
                    }
                    for (int v1 = 0; v1 < L2; ++v1) {
                        const double val =
                            path_value(s0d[v0], v0, s1d[v0 * L2 + v1], v1);
                        if (!have_worst || val > worst) {
                            worst = val;
                            have_worst = true;
                        }
                    }
                }
                if (!have_best || worst < best) {
                    best = worst;
                    have_best = true;
                }
            }
        }
        return best;
    }

    // Player 2 reaction maps: tau0(u0) and, for N = 2, tau1(u0, u1).
    const long long n_t0 = ipow(L2, L1);
    const long long n_t1 = N == 2 ? ipow(L2, L1 * L1) : 1;
    double best = 0.0;
    bool have_best = false;
    std::vector<int> t0d(static_cast<std::size_t>(L1));
    std::vector<int> t1d(static_cast<std::size_t>(L1 * L1));
    for (long long a = 0; a < n_t0; ++a) {
        long long aa = a;
        for (int d = 0; d < L1; ++d) {
            t0d[d] = static_cast<int>(aa % L2);
            aa /= L2;
        }
        for (long long b = 0; b < n_t1; ++b) {
            long long bb = b;
            for (int d = 0; d < L1 * L1; ++d) {
                t1d[d] = static_cast<int>(bb % L2);
                bb /= L2;
            }
            double worst = 0.0;
            bool have_worst = false;
            for (int u0 = 0; u0 < L1; ++u0) {
                if (N == 1) {
                    const double val = path_value(u0, t0d[u0], 0, 0);
                    if (!have_worst || val < worst) {
                        worst = val;
                        have_worst = true;
                    }
                    continue;
                }
                for (int u1 = 0; u1 < L1; ++u1) {
                    const double val = path_value(u0, t0d[u0], u1, t1d[u0 * L1 + u1]);
                    if (!have_worst || val < worst) {
                        worst = val;
                        have_worst = true;
                    }
                }
            }
            if (!have_best || worst > best) {
                best = worst;
                have_best = true;
            }
        }
    }
    return best;
}

namespace {

struct Compass {
    std::function<double(const std::vector<double>&)> objective;
    bool maximize = false;
    std::map<std::vector<double>, double> cache;

    double eval(const std::vector<double>& x) {
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
        const double v = objective(x);
        cache.emplace(x, v);
        return v;
    }

    bool better(double a, double b) const { return maximize ? a > b : a < b; }

    std::pair<std::vector<double>, double> run(std::vector<double> x, double bound) {
        double fx = eval(x);
        double step = bound / 4.0;
        const double tol = 1e-4 * bound;
        while (step >= tol) {
            std::vector<double> best_x;
            double best_f = fx;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (double dir : {+1.0, -1.0}) {
                    std::vector<double> cand = x;
                    cand[i] = std::clamp(cand[i] + dir * step, 0.0, bound);
                    if (cand[i] == x[i]) continue;
                    const double f = eval(cand);
                    if (better(f, best_f)) {
                        best_f = f;
                        best_x = std::move(cand);
                    }
                }
            }
            if (!best_x.empty()) {
                x = std::move(best_x);
                fx = best_f;
            } else {
                step *= 0.5;
            }
        }
        return {x, fx};
    }
};

BestResponse best_response_impl(const Scenario& scenario, const ScalarField& s_o, double i_o,
                                const ControlSignal& opponent, int n_intervals, double eps,
                                int grid_n, int substeps, bool player_one) {
    if (n_intervals < 1) throw DomainError("best_response: n_intervals must be >= 1");
    const double t_h = horizon_for_tolerance(scenario, s_o, i_o, eps);
    const double bound = player_one ? scenario.m1 : scenario.m2;
    const double sig_dt = std::max(t_h, 1e-6) / n_intervals;
    if (opponent.end_time() < t_h - 1e-9 && opponent.values.size() > 1)
        throw DomainError("best_response: opponent control does not cover the horizon");

    Compass search;
    search.maximize = !player_one;
    search.objective = [&](const std::vector<double>& coeffs) {
        const ControlSignal mine(sig_dt, coeffs, bound);
        const FunctionalResult r =
            player_one ? functional(scenario, s_o, i_o, mine, opponent, eps, grid_n, substeps)
                       : functional(scenario, s_o, i_o, opponent, mine, eps, grid_n, substeps);
        return r.value;
    };

    const std::vector<std::vector<double>> starts = {
        std::vector<double>(static_cast<std::size_t>(n_intervals), 0.0),
        std::vector<double>(static_cast<std::size_t>(n_intervals), bound / 2.0)};
    std::vector<double> best_x;
    double best_f = 0.0;
    for (const auto& s : starts) {
        auto [x, f] = search.run(s, bound);
        if (best_x.empty() || search.better(f, best_f)) {
            best_x = std::move(x);
            best_f = f;
        }
    }
    return BestResponse{ControlSignal(sig_dt, best_x, bound), best_f};
}

} // namespace

BestResponse best_response_u1(const Scenario& scenario, const ScalarField& s_o, double i_o,
                              const ControlSignal& u2, int n_intervals, double eps,
                              int grid_n, int substeps) {
    return best_response_impl(scenario, s_o, i_o, u2, n_intervals, eps, grid_n, substeps, true);
}

BestResponse best_response_u2(const Scenario& scenario, const ScalarField& s_o, double i_o,
                              const ControlSignal& u1, int n_intervals, double eps,
                              int grid_n, int substeps) {
    return best_response_impl(scenario, s_o, i_o, u1, n_intervals, eps, grid_n, substeps, false);
}

double pre_hamiltonian(const Scenario& scenario, const ScalarField& s, double infected,
                       const Costate& costate, double u1, double u2) {
    if (s.n() != costate.p.n())
        throw DomainError("pre_hamiltonian: S and p must share one grid");
    const int n = s.n();
    const double h = s.h();
    const auto& S = s.values;
    const auto& p = costate.p.values;
    const double a = eval_alpha(scenario.alpha, std::max(0.0, infected));

    auto ds = [&](int i) {
        if (i == 0) return (-3.0 * S[0] + 4.0 * S[1] - S[2]) / (2.0 * h);
        if (i == n - 1) return (3.0 * S[n - 1] - 4.0 * S[n - 2] + S[n - 3]) / (2.0 * h);
        return (S[i + 1] - S[i - 1]) / (2.0 * h);
    };
    auto node = [&](int i) {
        const double xi = static_cast<double>(i) / (n - 1);
        const double adv = eval_dg(scenario.g, xi, u1, u2) * S[i] +
                           eval_g(scenario.g, xi, u1, u2) * ds(i);
        return (adv + (eval_f(scenario.f, xi) + a) * S[i]) * p[i];
    };
    double pairing = 0.5 * (node(0) + node(n - 1));
    for (int i = 1; i + 1 < n; ++i) pairing += node(i);
    pairing *= h;

    const double drift = (scenario.beta * infected - a * field_integral(s)) * costate.q;
    return pairing + drift - running_cost(scenario, infected, u1, u2);
}

namespace {

HamiltonianResult hamiltonian_impl(const Scenario& scenario, const ScalarField& s,
                                   double infected, const Costate& costate,
                                   const ControlLattice& lat1, const ControlLattice& lat2,
                                   bool lower) {
    if (lat1.levels < 1 || lat2.levels < 1)
        throw DomainError("hamiltonian: lattices must be nonempty");
    const int L1 = lat1.levels, L2 = lat2.levels;
    std::vector<double> H(static_cast<std::size_t>(L1) * L2);
    for (int i = 0; i < L1; ++i)
        for (int j = 0; j < L2; ++j)
            H[static_cast<std::size_t>(i) * L2 + j] =
                pre_hamiltonian(scenario, s, infected, costate, lat1.at(i), lat2.at(j));

    HamiltonianResult res;
    if (lower) {
        // min over u2 of max over u1
        double outer = 0.0;
        int best_j = -1, arg_i = -1;
        for (int j = 0; j < L2; ++j) {
            double inner = 0.0;
            int best_i = -1;
            for (int i = 0; i < L1; ++i) {
                const double v = H[static_cast<std::size_t>(i) * L2 + j];
                if (best_i < 0 || v > inner) {
                    inner = v;
                    best_i = i;
                }
            }
            if (best_i != 0 && best_i != L1 - 1) res.inner_on_endpoint = false;
            if (best_j < 0 || inner < outer) {
                outer = inner;
                best_j = j;
                arg_i = best_i;
            }
        }
        res.value = outer;
        res.u1 = lat1.at(arg_i);
        res.u2 = lat2.at(best_j);
        return res;
    }
    // max over u1 of min over u2
    double outer = 0.0;
    int best_i = -1, arg_j = -1;
    for (int i = 0; i < L1; ++i) {
        double inner = 0.0;
        int best_j = -1;
        for (int j = 0; j < L2; ++j) {
            const double v = H[static_cast<std::size_t>(i) * L2 + j];
            if (best_j < 0 || v < inner) {
                inner = v;
                best_j = j;
            }
        }
        if (best_j != 0 && best_j != L2 - 1) res.inner_on_endpoint = false;
        if (best_i < 0 || inner > outer) {
            outer = inner;
            best_i = i;
            arg_j = best_j;
        }
    }
    res.value = outer;
    res.u1 = lat1.at(best_i);
    res.u2 = lat2.at(arg_j);
    return res;
}

} // namespace

HamiltonianResult lower_hamiltonian(const Scenario& scenario, const ScalarField& s,
                                    double infected, const Costate& costate,
                                    const ControlLattice& lat1, const ControlLattice& lat2) {
    return hamiltonian_impl(scenario, s, infected, costate, lat1, lat2, true);
}

HamiltonianResult upper_hamiltonian(const Scenario& scenario, const ScalarField& s,
                                    double infected, const Costate& costate,
                                    const ControlLattice& lat1, const ControlLattice& lat2) {
    return hamiltonian_impl(scenario, s, infected, costate, lat1, lat2, false);
}

} // namespace vaxgame
