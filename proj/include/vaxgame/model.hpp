#ifndef VAXGAME_MODEL_HPP
#define VAXGAME_MODEL_HPP

#include <limits>
#include <string>
#include <vector>

#include "vaxgame/errors.hpp"

namespace vaxgame {

/// Polynomial in one variable, coefficients in increasing degree.
struct Polynomial {
    std::vector<double> coeffs; // p(x) = c0 + c1 x + c2 x^2 + ...

    double operator()(double x) const;
    double derivative(double x) const;
};

/// Infection-rate family alpha(I). Both variants vanish at I = 0.
///
/// linear:   alpha(I) = abar * I
/// holling:  alpha(I) = abar * I^p / (1 + b * I^q)
struct RateSpec {
    enum class Kind { linear, holling };
    Kind kind = Kind::linear;
    double abar = 1.0;
    double p = 1.0;
    double q = 1.0;
    double b = 1.0;

    static RateSpec linear(double abar);
    static RateSpec holling(double abar, double p, double q, double b);
};

double eval_alpha(const RateSpec& spec, double infected);

/// Least upper bound for |alpha'| on [0, i_max]. Exact for the linear
/// family; for Holling it is the grid maximum of the closed-form
/// derivative on 2001 points, inflated by 5% so it can serve as a
/// rigorous constant in inequality checks.
double alpha_lipschitz(const RateSpec& spec, double i_max);

/// Vaccination-rate family f: [0,1] -> [0,1], nondecreasing, f(0)=0, f(1)=1.
struct VaccinationSpec {
    enum class Kind { identity, power, smoothstep3, smoothstep5 };
    Kind kind = Kind::identity;
    double r = 1.0; // exponent for the power family, >= 1

    static VaccinationSpec identity();
    static VaccinationSpec power(double r);
    static VaccinationSpec smoothstep(int order);
};

double eval_f(const VaccinationSpec& spec, double xi);
double f_lipschitz(const VaccinationSpec& spec);

/// Leaning flux g(xi, u1, u2), affine in both controls.
///
/// affine_triple:    g = g1(xi) + g2(xi) u1 + g3(xi) u2 from polynomials
/// regularized_vax:  xi (1-xi) (xi - 1/2 - lambda (u2/m2) chi2(xi)
///                                   + (1-lambda) (u1/m1) chi1(xi))
///                   with chi_i a quintic-smoothstep mollification of the
///                   indicator of [ai_lo, ai_hi], ramp half-width delta
/// zero:             g == 0
/// test_generic:     g(xi) control-independent polynomial, test-only;
///                   no boundary behavior is guaranteed or enforced
struct FluxSpec {
    enum class Kind { affine_triple, regularized_vax, zero, test_generic };
    Kind kind = Kind::zero;

    Polynomial g1, g2, g3;   // affine_triple / test_generic (g1 only)
    double lambda = 0.5;     // regularized_vax parameters
    double a1_lo = 0.0, a1_hi = 0.0;
    double a2_lo = 0.0, a2_hi = 0.0;
    double delta = 0.02;
    double m1 = 1.0, m2 = 1.0; // control box used for normalization

    static FluxSpec zero();
    static FluxSpec affine_triple(Polynomial g1, Polynomial g2, Polynomial g3);
    static FluxSpec regularized_vax(double lambda, double a1_lo, double a1_hi,
                                    double a2_lo, double a2_hi, double delta,
                                    double m1, double m2);
    static FluxSpec test_generic(Polynomial g);

    bool control_affine() const { return true; } // every variant satisfies (G-1)
    bool test_only() const { return kind == Kind::test_generic; }
};

double eval_g(const FluxSpec& spec, double xi, double u1, double u2);
double eval_dg(const FluxSpec& spec, double xi, double u1, double u2);

/// Grid bound for sup |d_xi g| over [0,1] x [0,m1] x [0,m2]; by affinity
/// in the controls only the four box corners are scanned. Inflated by 5%.
double flux_gamma(const FluxSpec& spec, double m1, double m2);

/// All model coefficients of one problem instance.
struct Scenario {
    double beta;   // removal rate of infected, > 0
    double kappa;  // infection/effort cost weight, > 0
    double theta;  // discount rate, > 0
    double m1;     // control bound, player 1
    double m2;     // control bound, player 2
    RateSpec alpha;
    VaccinationSpec f;
    FluxSpec g;

    Scenario(double beta, double kappa, double theta, double m1, double m2,
             RateSpec alpha, VaccinationSpec f, FluxSpec g);

    /// Rejects configurations the solvers must not run on: test-only
    /// fluxes and rate families without a finite Lipschitz constant.
    void assert_admissible() const;
};

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    double where = 0.0;   // offending point when failed
    std::string detail;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    double gamma = 0.0;      // computed sup |d_xi g| bound
    double lip_alpha = 0.0;  // computed Lipschitz estimate of alpha
    bool ok() const;
    std::string summary() const;
};

/// Checks the structural hypotheses numerically on a grid of grid_n
/// points: alpha(0) = 0 and a finite Lipschitz constant on [0, i_max];
/// monotonicity and endpoint values of f; zero flux at xi in {0,1} over
/// the control-box corners; and the derivative bound gamma. A failing
/// hypothesis is reported, not thrown.
ValidationReport validate_scenario(const Scenario& s, int grid_n, double i_max = 1.0);

} // namespace vaxgame

#endif
