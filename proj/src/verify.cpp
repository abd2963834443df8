#include "vaxgame/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vaxgame {

namespace {

double urand(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Trapezoid of |a - b| over the common sample grid up to time t.
double path_l1_dist(const SampledPath& a, const SampledPath& b, double t) {
    const auto steps = static_cast<long long>(std::llround((t - a.t0) / a.dt));
    double acc = 0.0;
    for (long long j = 0; j < steps; ++j) {
        const double d0 = std::abs(a.values[j] - b.values[j]);
        const double d1 = std::abs(a.values[j + 1] - b.values[j + 1]);
        acc += 0.5 * a.dt * (d0 + d1);
    }
    return acc;
}

double path_l2_dist(const SampledPath& a, const SampledPath& b, double t) {
    const auto steps = static_cast<long long>(std::llround((t - a.t0) / a.dt));
    double acc = 0.0;
    for (long long j = 0; j < steps; ++j) {
        const double d0 = a.values[j] - b.values[j];
        const double d1 = a.values[j + 1] - b.values[j + 1];
        acc += 0.5 * a.dt * (d0 * d0 + d1 * d1);
    }
    return std::sqrt(acc);
}

double field_l1_dist(const ScalarField& a, const ScalarField& b) {
    ScalarField d = a;
    for (int i = 0; i < d.n(); ++i) d.values[i] -= b.values[i];
    return l1_norm(d);
}

double field_l2_dist(const ScalarField& a, const ScalarField& b) {
    ScalarField d = a;
    for (int i = 0; i < d.n(); ++i) d.values[i] -= b.values[i];
    return l2_norm(d);
}

void account(InequalityReport& rep, TrialRow row) {
    ++rep.trials;
    if (row.pass)
        ++rep.passes;
    else if (rep.passes == rep.trials - 1 && rep.offending_seed == 0)
        rep.offending_seed = row.seed;
    if (rep.rows.empty() || row.margin < rep.worst_margin) rep.worst_margin = row.margin;
    rep.rows.push_back(std::move(row));
}

TrialRow make_row(long trial, std::uint64_t seed, double t, double lhs, double rhs,
                  double slack, const std::string& check) {
    TrialRow row;
    row.trial = trial;
    row.seed = seed;
    row.time = t;
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = (rhs - lhs) / std::max(rhs, 1e-300);
    row.pass = lhs <= rhs * (1.0 + slack) + 1e-300;
    row.check = check;
    return row;
}

} // namespace

RandomCase sample_case(std::uint64_t seed, int grid_n) {
    std::mt19937_64 rng(seed);
    const double beta = urand(rng, 0.1, 2.0);
    const double kappa = urand(rng, 0.5, 2.0);
    const double theta = urand(rng, 0.5, 2.0);
    const double m = 1.0;
    const RateSpec alpha = RateSpec::linear(urand(rng, 0.0, 1.0));

    VaccinationSpec f = VaccinationSpec::smoothstep(5);
    switch (static_cast<int>(urand(rng, 0.0, 4.0))) {
        case 0: f = VaccinationSpec::identity(); break;
        case 1: f = VaccinationSpec::power(urand(rng, 1.0, 3.0)); break;
        case 2: f = VaccinationSpec::smoothstep(3); break;
        default: break;
    }

    // Ramp widths are kept wide enough that n = 201 resolves the
    // compression the flux can build up over a unit horizon.
    const FluxSpec g = FluxSpec::regularized_vax(urand(rng, 0.2, 0.8), 0.1, 0.666, 0.45,
                                                 0.85, urand(rng, 0.1, 0.2), m, m);
    Scenario sc(beta, kappa, theta, m, m, alpha, f, g);

    // Strictly positive trigonometric polynomial, scaled to a random mass.
    const double c0 = urand(rng, 0.6, 1.0);
    double a1 = urand(rng, -0.12, 0.12), b1 = urand(rng, -0.12, 0.12);
    double a2 = urand(rng, -0.12, 0.12), b2 = urand(rng, -0.12, 0.12);
    std::vector<double> v(static_cast<std::size_t>(grid_n));
    for (int i = 0; i < grid_n; ++i) {
        const double xi = static_cast<double>(i) / (grid_n - 1);
        v[i] = c0 + a1 * std::cos(M_PI * xi) + b1 * std::sin(M_PI * xi) +
               a2 * std::cos(2.0 * M_PI * xi) + b2 * std::sin(2.0 * M_PI * xi);
    }
    ScalarField s_o(std::move(v));
    const double target_mass = urand(rng, 0.2, 2.0);
    const double scale = target_mass / l1_norm(s_o);
    for (double& x : s_o.values) x *= scale;
    const double i_o = urand(rng, 0.0, 1.0);

    auto rand_sig = [&](double bound) {
        std::vector<double> vals(8);
        for (double& u : vals) u = urand(rng, 0.0, bound);
        return ControlSignal(0.25, vals, bound);
    };
    ControlSignal u1 = rand_sig(m);
    ControlSignal u2 = rand_sig(m);
    return RandomCase{std::move(sc), std::move(s_o), i_o, std::move(u1), std::move(u2)};
}

InequalityReport check_growth(const Trajectory& trajectory, const Scenario& scenario) {
    InequalityReport rep;
    rep.name = "growth";
    const VerifySlack slack;
    const double gamma = flux_gamma(scenario.g, scenario.m1, scenario.m2);
    const double l1_0 = trajectory.l1.front();
    const double l2_0 = trajectory.l2.front();
    const double region = l1_0 + trajectory.i_path.front();
    const double mass_0 = trajectory.mass.front();
    double running_min_mass = mass_0;
    for (int k = 0; k < trajectory.steps(); ++k) {
        const double t = trajectory.times[k];
        account(rep, make_row(k, 0, t, trajectory.l1[k], l1_0, slack.l1, "l1_contraction"));
        account(rep, make_row(k, 0, t, trajectory.l2[k],
                              std::exp(t * gamma / 2.0) * l2_0, slack.l2, "l2_growth"));
        account(rep, make_row(k, 0, t, trajectory.i_path[k], region, slack.l1,
                              "invariant_region"));
        account(rep, make_row(k, 0, t, trajectory.mass[k],
                              running_min_mass + slack.l1 * mass_0, 0.0, "mass_monotone"));
        running_min_mass = std::min(running_min_mass, trajectory.mass[k]);
    }
    return rep;
}

InequalityReport check_system_stability(const Scenario& scenario, const ScalarField& s_o,
                                        double i_o, const ScalarField& sbar_o, double ibar_o,
                                        const ControlSignal& u1, const ControlSignal& u2,
                                        const std::vector<double>& times, int grid_n,
                                        double dt) {
    InequalityReport rep;
    rep.name = "system_stability";
    const VerifySlack slack;
    const double t_max = *std::max_element(times.begin(), times.end());
    const CoupledSolution a = solve(scenario, s_o, i_o, u1, u2, t_max, grid_n, dt);
    const CoupledSolution b = solve(scenario, sbar_o, ibar_o, u1, u2, t_max, grid_n, dt);

    const double i_cap = std::max(l1_norm(s_o) + i_o, l1_norm(sbar_o) + ibar_o);
    const double lip = alpha_lipschitz(scenario.alpha, i_cap);
    const double K1 = scenario.beta + lip * l1_norm(resample(s_o, grid_n));
    const double K2 = lip * l1_norm(resample(sbar_o, grid_n));
    const double dS0 = field_l1_dist(resample(s_o, grid_n), resample(sbar_o, grid_n));
    const double dI0 = std::abs(i_o - ibar_o);

    long trial = 0;
    for (double t : times) {
        const auto k = static_cast<std::size_t>(std::llround(t / dt));
        const double lhs = field_l1_dist(a.trajectory.fields[k], b.trajectory.fields[k]) +
                           std::abs(a.trajectory.i_path[k] - b.trajectory.i_path[k]);
        const double Kt = K2 + lip * std::abs(ibar_o) * std::exp(K1 * t);
        const double growth = t * std::exp(K2 * t) * Kt;
        const double rhs = (dS0 + std::exp(K1 * t) * dI0) * (1.0 + growth * std::exp(growth));
        account(rep, make_row(trial++, 0, t, lhs, rhs, slack.l1, "stability_estimate"));
    }
    return rep;
}

InequalityReport check_pde_stability(const Scenario& scenario, const ScalarField& s_o,
                                     const SampledPath& i_path, const ScalarField& sbar_o,
                                     const SampledPath& ibar_path, const ControlSignal& u1,
                                     const ControlSignal& u2, const std::vector<double>& times,
                                     int substeps) {
    InequalityReport rep;
    rep.name = "pde_stability";
    const VerifySlack slack;
    const std::vector<ScalarField> a =
        solve_pde(scenario, s_o, i_path, u1, u2, times, substeps);
    const std::vector<ScalarField> b =
        solve_pde(scenario, sbar_o, ibar_path, u1, u2, times, substeps);

    double i_cap = 0.0;
    for (double v : i_path.values) i_cap = std::max(i_cap, v);
    for (double v : ibar_path.values) i_cap = std::max(i_cap, v);
    const double lip = alpha_lipschitz(scenario.alpha, i_cap);
    const double gamma = flux_gamma(scenario.g, scenario.m1, scenario.m2);

    long trial = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const double lhs1 = field_l1_dist(a[k], b[k]);
        const double rhs1 = field_l1_dist(s_o, sbar_o) +
                            lip * l1_norm(sbar_o) * path_l1_dist(i_path, ibar_path, t);
        account(rep, make_row(trial, 0, t, lhs1, rhs1, slack.l1, "pde_stability_l1"));
        const double lhs2 = field_l2_dist(a[k], b[k]);
        const double rhs2 = std::exp(t * gamma / 2.0) *
                            (field_l2_dist(s_o, sbar_o) +
                             lip * std::sqrt(t) * l2_norm(sbar_o) *
                                 path_l2_dist(i_path, ibar_path, t));
        account(rep, make_row(trial, 0, t, lhs2, rhs2, slack.l2, "pde_stability_l2"));
        ++trial;
    }
    return rep;
}

InequalityReport check_ode_stability(const Scenario& scenario,
                                     const std::vector<ScalarField>& s_path, double i_o,
                                     const std::vector<ScalarField>& sbar_path, double ibar_o,
                                     double path_dt, const std::vector<double>& times) {
    InequalityReport rep;
    rep.name = "ode_stability";
    const VerifySlack slack;
    const std::size_t m = s_path.size();
    SampledPath mass_a{0.0, path_dt, {}}, mass_b{0.0, path_dt, {}};
    std::vector<double> l1_a(m), l1_b(m), dist(m);
    for (std::size_t j = 0; j < m; ++j) {
        l1_a[j] = l1_norm(s_path[j]);
        l1_b[j] = l1_norm(sbar_path[j]);
        dist[j] = field_l1_dist(s_path[j], sbar_path[j]);
        mass_a.values.push_back(field_integral(s_path[j]));
        mass_b.values.push_back(field_integral(sbar_path[j]));
    }
    double i_cap = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        i_cap = std::max({i_cap, l1_a[j] + i_o, l1_b[j] + ibar_o});
    const double lip = alpha_lipschitz(scenario.alpha, i_cap);

    const OdeResult ia = solve_ode(scenario.beta, scenario.alpha, i_o, mass_a, path_dt);
    const OdeResult ib = solve_ode(scenario.beta, scenario.alpha, ibar_o, mass_b, path_dt);

    long trial = 0;
    for (double t : times) {
        const auto kt = static_cast<std::size_t>(std::llround(t / path_dt));
        double sup_a = 0.0, sup_b = 0.0;
        // K_t and Kbar_t use the running sup of the L1 norms up to t.
        std::vector<double> integrand(kt + 1);
        for (std::size_t j = 0; j <= kt; ++j) {
            sup_a = std::max(sup_a, l1_a[j]);
            sup_b = std::max(sup_b, l1_b[j]);
            const double tau = path_dt * static_cast<double>(j);
            const double K_tau = scenario.beta + lip * sup_a;
            const double Kbar_tau = scenario.beta + lip * sup_b;
            integrand[j] = std::exp((Kbar_tau - K_tau) * tau) * dist[j];
        }
        double integral = 0.0;
        for (std::size_t j = 0; j < kt; ++j)
            integral += 0.5 * path_dt * (integrand[j] + integrand[j + 1]);
        const double K_t = scenario.beta + lip * sup_a;
        const double lhs = std::abs(ia.path.values[kt] - ib.path.values[kt]);
        const double rhs = std::exp(K_t * t) *
                           (std::abs(i_o - ibar_o) + lip * std::abs(ibar_o) * integral);
        account(rep, make_row(trial++, 0, t, lhs, rhs, slack.l1, "ode_stability"));
    }
    return rep;
}

InequalityReport run_growth_suite(std::uint64_t base_seed, int trials, double horizon,
                                  int grid_n, double dt) {
    InequalityReport rep;
    rep.name = "growth_suite";
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
        const RandomCase rc = sample_case(seed, grid_n);
        const CoupledSolution sol =
            solve(rc.scenario, rc.s_o, rc.i_o, rc.u1, rc.u2, horizon, grid_n, dt);
        InequalityReport one = check_growth(sol.trajectory, rc.scenario);
        TrialRow row;
        row.trial = k;
        row.seed = seed;
        row.time = horizon;
        row.lhs = 0.0;
        row.rhs = 0.0;
        row.margin = one.worst_margin;
        row.pass = one.all_pass();
        row.check = "growth";
        for (const auto& r : one.rows)
            if (!r.pass) {
                row.check = r.check;
                row.lhs = r.lhs;
                row.rhs = r.rhs;
                row.time = r.time;
                break;
            }
        account(rep, row);
    }
    return rep;
}

InequalityReport run_system_stability_suite(std::uint64_t base_seed, int trials,
                                            const std::vector<double>& times, int grid_n) {
    InequalityReport rep;
    rep.name = "system_stability_suite";
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
        RandomCase rc = sample_case(seed, grid_n);
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        ScalarField sbar = rc.s_o;
        const double fac = urand(rng, 0.7, 1.3);
        for (double& v : sbar.values) v *= fac;
        const double ibar = std::max(0.0, rc.i_o + urand(rng, -0.3, 0.3));
        InequalityReport one = check_system_stability(rc.scenario, rc.s_o, rc.i_o, sbar, ibar,
                                                      rc.u1, rc.u2, times, grid_n);
        for (auto& r : one.rows) {
            r.trial = k;
            r.seed = seed;
            account(rep, r);
        }
    }
    return rep;
}

InequalityReport run_pde_stability_suite(std::uint64_t base_seed, int trials,
                                         const std::vector<double>& times, int grid_n) {
    InequalityReport rep;
    rep.name = "pde_stability_suite";
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
        RandomCase rc = sample_case(seed, grid_n);
        std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
        ScalarField sbar = rc.s_o;
        const double fac = urand(rng, 0.7, 1.3);
        for (double& v : sbar.values) v *= fac;
        const double t_max = *std::max_element(times.begin(), times.end());
        SampledPath ia{0.0, 0.05, {}}, ib{0.0, 0.05, {}};
        const double ca = urand(rng, 0.0, 1.0), cb = urand(rng, 0.0, 1.0);
        const double wa = urand(rng, 0.5, 3.0), wb = urand(rng, 0.5, 3.0);
        const auto steps = static_cast<long long>(std::llround(t_max / 0.05));
        for (long long j = 0; j <= steps; ++j) {
            const double t = 0.05 * static_cast<double>(j);
            ia.values.push_back(ca * (1.0 + 0.5 * std::sin(wa * t)));
            ib.values.push_back(cb * (1.0 + 0.5 * std::cos(wb * t)));
        }
        InequalityReport one =
            check_pde_stability(rc.scenario, rc.s_o, ia, sbar, ib, rc.u1, rc.u2, times);
        for (auto& r : one.rows) {
            r.trial = k;
            r.seed = seed;
            account(rep, r);
        }
    }
    return rep;
}

InequalityReport run_ode_stability_suite(std::uint64_t base_seed, int trials,
                                         const std::vector<double>& times, int grid_n) {
    InequalityReport rep;
    rep.name = "ode_stability_suite";
    for (int k = 0; k < trials; ++k) {
        const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(k);
        RandomCase rc = sample_case(seed, grid_n);
        std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
        const double t_max = *std::max_element(times.begin(), times.end());
        const double dt = 0.05;
        const auto steps = static_cast<long long>(std::llround(t_max / dt));
        // Two synthetic field paths: the sampled initial field under
        // different artificial exponential envelopes.
        std::vector<ScalarField> pa, pb;
        const double ra = urand(rng, 0.0, 1.0), rb = urand(rng, 0.0, 1.0);
        ScalarField sbar = rc.s_o;
        const double fac = urand(rng, 0.7, 1.3);
        for (double& v : sbar.values) v *= fac;
        for (long long j = 0; j <= steps; ++j) {
            const double t = dt * static_cast<double>(j);
            ScalarField fa = rc.s_o, fb = sbar;
            for (double& v : fa.values) v *= std::exp(-ra * t);
            for (double& v : fb.values) v *= std::exp(-rb * t);
            pa.push_back(std::move(fa));
            pb.push_back(std::move(fb));
        }
        const double ibar = std::max(0.0, rc.i_o + urand(rng, -0.3, 0.3));
        InequalityReport one =
            check_ode_stability(rc.scenario, pa, rc.i_o, pb, ibar, dt, times);
        for (auto& r : one.rows) {
            r.trial = k;
            r.seed = seed;
            account(rep, r);
        }
    }
    return rep;
}

} // namespace vaxgame
