#include "vaxgame/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vaxgame {

namespace {

constexpr int kLipGridPoints = 2001;
constexpr double kLipInflation = 1.05;

// Quintic smoothstep: C^2 ramp from 0 to 1 with q'(0)=q'(1)=q''(0)=q''(1)=0.
double qstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return ((6.0 * t - 15.0) * t + 10.0) * t * t * t;
}

double qstep_d(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return ((30.0 * t - 60.0) * t + 30.0) * t * t;
}

// Mollified indicator of [lo, hi]: 1 on the delta-interior, 0 outside the
// delta-exterior, quintic ramps of width 2*delta between.
double chi(double xi, double lo, double hi, double delta) {
    const double up = qstep((xi - (lo - delta)) / (2.0 * delta));
    const double dn = qstep(((hi + delta) - xi) / (2.0 * delta));
    return up * dn;
}

double chi_d(double xi, double lo, double hi, double delta) {
    const double tu = (xi - (lo - delta)) / (2.0 * delta);
    const double td = ((hi + delta) - xi) / (2.0 * delta);
    const double up = qstep(tu), dn = qstep(td);
    return (qstep_d(tu) * dn - up * qstep_d(td)) / (2.0 * delta);
}

} // namespace

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::derivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * x + coeffs[k] * static_cast<double>(k);
    return acc;
}

RateSpec RateSpec::linear(double abar) {
    if (abar < 0.0) throw DomainError("RateSpec: abar must be nonnegative");
    RateSpec s;
    s.kind = Kind::linear;
    s.abar = abar;
    return s;
}

RateSpec RateSpec::holling(double abar, double p, double q, double b) {
    if (abar <= 0.0 || p <= 0.0 || q <= 0.0 || b <= 0.0)
        throw DomainError("RateSpec: Holling parameters must be positive");
    RateSpec s;
    s.kind = Kind::holling;
    s.abar = abar;
    s.p = p;
    s.q = q;
    s.b = b;
    return s;
}

double eval_alpha(const RateSpec& spec, double infected) {
    if (infected < 0.0) throw DomainError("eval_alpha: I must be nonnegative");
    switch (spec.kind) {
        case RateSpec::Kind::linear:
            return spec.abar * infected;
        case RateSpec::Kind::holling:
            if (infected == 0.0) return 0.0;
            return spec.abar * std::pow(infected, spec.p) /
                   (1.0 + spec.b * std::pow(infected, spec.q));
    }
    return 0.0;
}

double alpha_lipschitz(const RateSpec& spec, double i_max) {
    if (i_max < 0.0) throw DomainError("alpha_lipschitz: i_max must be nonnegative");
    if (spec.kind == RateSpec::Kind::linear) return spec.abar;
    if (spec.p < 1.0) return std::numeric_limits<double>::infinity();
    // alpha'(I) = abar I^(p-1) [p + b (p - q) I^q] / (1 + b I^q)^2
    double sup = 0.0;
    const double hi = std::max(i_max, 1e-12);
    for (int k = 0; k < kLipGridPoints; ++k) {
        const double I = hi * static_cast<double>(k) / (kLipGridPoints - 1);
        const double Iq = std::pow(I, spec.q);
        const double Ipm1 = (spec.p == 1.0) ? 1.0 : std::pow(I, spec.p - 1.0);
        const double den = 1.0 + spec.b * Iq;
        const double d = spec.abar * Ipm1 * (spec.p + spec.b * (spec.p - spec.q) * Iq) /
                         (den * den);
        sup = std::max(sup, std::abs(d));
    }
    return sup * kLipInflation;
}

VaccinationSpec VaccinationSpec::identity() { return VaccinationSpec{}; }

VaccinationSpec VaccinationSpec::power(double r) {
    if (r < 1.0) throw DomainError("VaccinationSpec: power exponent must be >= 1");
    VaccinationSpec s;
    s.kind = Kind::power;
    s.r = r;
    return s;
}

VaccinationSpec VaccinationSpec::smoothstep(int order) {
    VaccinationSpec s;
    if (order == 3)
        s.kind = Kind::smoothstep3;
    else if (order == 5)
        s.kind = Kind::smoothstep5;
    else
        throw DomainError("VaccinationSpec: smoothstep order must be 3 or 5");
    return s;
}

double eval_f(const VaccinationSpec& spec, double xi) {
    if (xi < 0.0 || xi > 1.0) throw DomainError("eval_f: xi outside [0,1]");
    switch (spec.kind) {
        case VaccinationSpec::Kind::identity: return xi;
        case VaccinationSpec::Kind::power: return std::pow(xi, spec.r);
        case VaccinationSpec::Kind::smoothstep3: return (3.0 - 2.0 * xi) * xi * xi;
        case VaccinationSpec::Kind::smoothstep5: return qstep(xi);
    }
    return xi;
}

double f_lipschitz(const VaccinationSpec& spec) {
    switch (spec.kind) {
        case VaccinationSpec::Kind::identity: return 1.0;
        case VaccinationSpec::Kind::power: return spec.r;
        case VaccinationSpec::Kind::smoothstep3: return 1.5;
        case VaccinationSpec::Kind::smoothstep5: return 1.875;
    }
    return 1.0;
}

FluxSpec FluxSpec::zero() { return FluxSpec{}; }

FluxSpec FluxSpec::affine_triple(Polynomial g1, Polynomial g2, Polynomial g3) {
    FluxSpec s;
    s.kind = Kind::affine_triple;
    s.g1 = std::move(g1);
    s.g2 = std::move(g2);
    s.g3 = std::move(g3);
    return s;
}

FluxSpec FluxSpec::regularized_vax(double lambda, double a1_lo, double a1_hi,
                                   double a2_lo, double a2_hi, double delta,
                                   double m1, double m2) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw DomainError("FluxSpec: lambda must lie in (0,1)");
    if (delta <= 0.0) throw DomainError("FluxSpec: delta must be positive");
    if (!(0.0 <= a1_lo && a1_lo <= a1_hi && a1_hi <= 1.0))
        throw DomainError("FluxSpec: a1 must be an interval inside [0,1]");
    if (!(0.0 <= a2_lo && a2_lo <= a2_hi && a2_hi <= 1.0))
        throw DomainError("FluxSpec: a2 must be an interval inside [0,1]");
    if (m1 <= 0.0 || m2 <= 0.0)
        throw DomainError("FluxSpec: control bounds must be positive");
    FluxSpec s;
    s.kind = Kind::regularized_vax;
    s.lambda = lambda;
    s.a1_lo = a1_lo;
    s.a1_hi = a1_hi;
    s.a2_lo = a2_lo;
    s.a2_hi = a2_hi;
    s.delta = delta;
    s.m1 = m1;
    s.m2 = m2;
    return s;
}

FluxSpec FluxSpec::test_generic(Polynomial g) {
    FluxSpec s;
    s.kind = Kind::test_generic;
    s.g1 = std::move(g);
    return s;
}

namespace {

void check_g_args(const FluxSpec& spec, double xi, double u1, double u2) {
    if (xi < -1e-12 || xi > 1.0 + 1e-12) throw DomainError("eval_g: xi outside [0,1]");
    if (u1 < 0.0 || u2 < 0.0) throw DomainError("eval_g: controls must be nonnegative");
    if (spec.kind == FluxSpec::Kind::regularized_vax &&
        (u1 > spec.m1 * (1.0 + 1e-12) || u2 > spec.m2 * (1.0 + 1e-12)))
        throw DomainError("eval_g: control outside its box");
}

} // namespace

double eval_g(const FluxSpec& spec, double xi, double u1, double u2) {
    check_g_args(spec, xi, u1, u2);
    switch (spec.kind) {
        case FluxSpec::Kind::zero:
            return 0.0;
        case FluxSpec::Kind::test_generic:
            return spec.g1(xi);
        case FluxSpec::Kind::affine_triple:
            return spec.g1(xi) + spec.g2(xi) * u1 + spec.g3(xi) * u2;
        case FluxSpec::Kind::regularized_vax: {
            const double w = (xi - 0.5) -
                             spec.lambda * (u2 / spec.m2) *
                                 chi(xi, spec.a2_lo, spec.a2_hi, spec.delta) +
                             (1.0 - spec.lambda) * (u1 / spec.m1) *
                                 chi(xi, spec.a1_lo, spec.a1_hi, spec.delta);
            return xi * (1.0 - xi) * w;
        }
    }
    return 0.0;
}

double eval_dg(const FluxSpec& spec, double xi, double u1, double u2) {
    check_g_args(spec, xi, u1, u2);
    switch (spec.kind) {
        case FluxSpec::Kind::zero:
            return 0.0;
        case FluxSpec::Kind::test_generic:
            return spec.g1.derivative(xi);
        case FluxSpec::Kind::affine_triple:
            return spec.g1.derivative(xi) + spec.g2.derivative(xi) * u1 +
                   spec.g3.derivative(xi) * u2;
        case FluxSpec::Kind::regularized_vax: {
            const double c2 = spec.lambda * (u2 / spec.m2);
            const double c1 = (1.0 - spec.lambda) * (u1 / spec.m1);
            const double w = (xi - 0.5) - c2 * chi(xi, spec.a2_lo, spec.a2_hi, spec.delta) +
                             c1 * chi(xi, spec.a1_lo, spec.a1_hi, spec.delta);
            const double wd = 1.0 - c2 * chi_d(xi, spec.a2_lo, spec.a2_hi, spec.delta) +
                              c1 * chi_d(xi, spec.a1_lo, spec.a1_hi, spec.delta);
            return (1.0 - 2.0 * xi) * w + xi * (1.0 - xi) * wd;
        }
    }
    return 0.0;
}

double flux_gamma(const FluxSpec& spec, double m1, double m2) {
    const double corners[4][2] = {{0.0, 0.0}, {m1, 0.0}, {0.0, m2}, {m1, m2}};
    double sup = 0.0;
    for (int k = 0; k < kLipGridPoints; ++k) {
        const double xi = static_cast<double>(k) / (kLipGridPoints - 1);
        for (const auto& c : corners)
            sup = std::max(sup, std::abs(eval_dg(spec, xi, c[0], c[1])));
    }
    return sup * kLipInflation;
}

Scenario::Scenario(double beta_, double kappa_, double theta_, double m1_, double m2_,
                   RateSpec alpha_, VaccinationSpec f_, FluxSpec g_)
    : beta(beta_), kappa(kappa_), theta(theta_), m1(m1_), m2(m2_),
      alpha(alpha_), f(f_), g(std::move(g_)) {
    if (beta <= 0.0) throw DomainError("Scenario: beta must be positive");
    if (kappa <= 0.0) throw DomainError("Scenario: kappa must be positive");
    if (theta <= 0.0) throw DomainError("Scenario: theta must be positive");
    if (m1 <= 0.0 || m2 <= 0.0) throw DomainError("Scenario: control bounds must be positive");
    if (eval_alpha(alpha, 0.0) != 0.0) throw DomainError("Scenario: alpha(0) must be exactly 0");
    if (g.kind == FluxSpec::Kind::regularized_vax && (g.m1 != m1 || g.m2 != m2))
        throw DomainError("Scenario: flux control box does not match m1/m2");
}

void Scenario::assert_admissible() const {
    if (g.test_only())
        throw DomainError("Scenario: test-only flux is not admissible for system solves");
    if (alpha.kind == RateSpec::Kind::holling && alpha.p < 1.0)
        throw DomainError("Scenario: Holling rate with p < 1 has no Lipschitz constant");
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.pass ? "pass" : "FAIL") << "  " << c.name;
        if (!c.pass) out << "  at " << c.where << "  (" << c.detail << ")";
        out << "\n";
    }
    out << "gamma = " << gamma << "\n";
    out << "lip_alpha = " << lip_alpha << "\n";
    return out.str();
}

ValidationReport validate_scenario(const Scenario& s, int grid_n, double i_max) {
    if (grid_n < 16) throw DomainError("validate_scenario: grid_n must be >= 16");
    ValidationReport rep;

    {
        HypothesisCheck c{"alpha.zero", eval_alpha(s.alpha, 0.0) == 0.0, 0.0, ""};
        if (!c.pass) c.detail = "alpha(0) != 0";
        rep.checks.push_back(c);
    }
    {
        HypothesisCheck c{"alpha.lipschitz", true, 0.0, ""};
        rep.lip_alpha = alpha_lipschitz(s.alpha, i_max);
        if (!std::isfinite(rep.lip_alpha)) {
            c.pass = false;
            c.detail = "unbounded derivative at 0";
        }
        rep.checks.push_back(c);
    }
    {
        HypothesisCheck c{"f.endpoints", true, 0.0, ""};
        if (std::abs(eval_f(s.f, 0.0)) > 1e-12) {
            c.pass = false;
            c.where = 0.0;
            c.detail = "f(0) != 0";
        } else if (std::abs(eval_f(s.f, 1.0) - 1.0) > 1e-12) {
            c.pass = false;
            c.where = 1.0;
            c.detail = "f(1) != 1";
        }
        rep.checks.push_back(c);
    }
    {
        HypothesisCheck c{"f.monotone", true, 0.0, ""};
        double prev = eval_f(s.f, 0.0);
        for (int k = 1; k < grid_n; ++k) {
            const double xi = static_cast<double>(k) / (grid_n - 1);
            const double v = eval_f(s.f, xi);
            if (v < prev - 1e-12 || v < -1e-12 || v > 1.0 + 1e-12) {
                c.pass = false;
                c.where = xi;
                c.detail = "f not nondecreasing into [0,1]";
                break;
            }
            prev = v;
        }
        rep.checks.push_back(c);
    }
    {
        HypothesisCheck c{"g.boundary_zero", true, 0.0, ""};
        const double corners[4][2] = {{0.0, 0.0}, {s.m1, 0.0}, {0.0, s.m2}, {s.m1, s.m2}};
        for (double xi : {0.0, 1.0}) {
            for (const auto& uv : corners) {
                if (c.pass && std::abs(eval_g(s.g, xi, uv[0], uv[1])) > 1e-12) {
                    c.pass = false;
                    c.where = xi;
                    c.detail = "g does not vanish at the boundary";
                }
            }
        }
        if (s.g.test_only() && c.pass) {
            // Even a boundary-vanishing test flux stays quarantined.
            c.pass = false;
            c.detail = "test-only flux";
        }
        rep.checks.push_back(c);
    }
    {
        HypothesisCheck c{"g.gamma_finite", true, 0.0, ""};
        rep.gamma = flux_gamma(s.g, s.m1, s.m2);
        if (!std::isfinite(rep.gamma)) {
            c.pass = false;
            c.detail = "derivative bound is not finite";
        }
        rep.checks.push_back(c);
    }
    return rep;
}

} // namespace vaxgame
