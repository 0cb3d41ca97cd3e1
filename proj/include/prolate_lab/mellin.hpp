#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/padic.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate {

struct EvenRealFunction {
    std::function<double(double)> evaluator;
    std::optional<GaussianPolynomial> gaussian;   // set for the Gaussian-polynomial class
    std::optional<int> fourier_eigenvalue;        // +1 or -1 when known
    std::string label;

    double operator()(double x) const { return evaluator(std::abs(x)); }
    // beyond this |x| the function is below double precision
    double cutoff() const;

    static EvenRealFunction hermite(int n);                     // h_{2n}
    static EvenRealFunction psi(int ell, Parity parity);        // f(0) = hat f(0) = 0 combinations
    static EvenRealFunction from_gaussian(GaussianPolynomial g, std::optional<int> eigenvalue = {},
                                          std::string label = "gaussian");
};

// Parses "h0", "h2", ... (h_{2n} for the number given), "psi1+", "psi2-".
EvenRealFunction parse_function(const std::string& name);

struct SampledTransform {
    std::vector<double> grid;
    std::vector<cplx> values;
    double quadrature_error = 0.0;

    std::string to_csv() const;
    std::string to_json() const;
};

std::vector<double> default_grid();  // 401 points on [-20, 20]
std::vector<double> uniform_grid(double lo, double hi, int points);

// t = log u integration for int_0^inf g(u) u^{-is} d*u.
struct MellinOptions {
    double t_min = -80.0;
    double t_max = 12.0;
    double step = 1.0 / 64;
    double halving_tol = 1e-10;
};

// F_mu(g)(s) for g given on u > 0; the error is the step-halving difference.
SampledTransform multiplicative_fourier(const std::function<double(double)>& g, const std::vector<double>& grid,
                                        const MellinOptions& opt = {});

// F_mu(w_inf f)(s) = int_0^inf f(v) v^{1/2 - is} d*v
SampledTransform mellin_transform(const EvenRealFunction& f, const std::vector<double>& grid,
                                  const MellinOptions& opt = {});
// U(f) = pi^{-1/2} F_mu(w_inf f)
SampledTransform unitary_transform(const EvenRealFunction& f, const std::vector<double>& grid,
                                   const MellinOptions& opt = {});

// Positive S-smooth integers up to bound, ascending (1 included).
std::vector<double> smooth_numbers(const PlaceSet& S, double bound);

// u^{1/2} sum over S-smooth gamma of f(gamma u)
double e_map(const EvenRealFunction& f, const PlaceSet& S, double u);
// u^{1/2} sum_{n >= 1} f(n u); Poisson dual form for u < 1
double e_map_all(const EvenRealFunction& f, double u);

// w_S(sigma_S (x) f)(u): shell mixed sum with one Sonin generator per prime of S
double theta_w(const EvenRealFunction& f, const PlaceSet& S, double u);

struct Verification {
    double residual = 0.0;       // max over the grid
    double worst_s = 0.0;
    double scale = 1.0;          // max |right side| over the grid
    double quadrature_error = 0.0;
};

Verification verify_ms0(const EvenRealFunction& f, const PlaceSet& S, const std::vector<double>& grid,
                        const MellinOptions& opt = {});
Verification verify_theta_factor(const EvenRealFunction& f, const PlaceSet& S, const std::vector<double>& grid,
                                 const MellinOptions& opt = {});

struct PairingResult {
    double mellin_side = 0.0;      // (1/pi) int F(w_S theta f) conj F(w_S eta g) ds
    double mellin_side_imag = 0.0;
    double xspace_side = 0.0;      // int f g dx
    double residual = 0.0;
    double cancellation = 0.0;     // max |Euler factor product - 1| seen in the integrand
};

// <theta_S f | eta_S g> = <f | g>, eta_S g := E_S g
PairingResult pairing_check(const EvenRealFunction& f, const EvenRealFunction& g, const PlaceSet& S,
                            double s_max = 60.0, const MellinOptions& opt = {});

// F_mu(E psi)(s) against R(s) Xi(s); residual relative to max |R Xi| on the grid.
struct PropeResult {
    Verification check;
    std::vector<cplx> lhs;
    std::vector<cplx> rhs;
};
PropeResult verify_prope(int ell, Parity parity, const std::vector<double>& grid);

struct WeightRatio {
    double min_ratio = 0.0, max_ratio = 0.0;
    double lower = 0.0, upper = 0.0;   // prod (1 + p^{-1/2})^{-2}, prod (1 - p^{-1/2})^{-2}
    bool contained = false;
};
WeightRatio weight_ratio_bounds(const PlaceSet& S, const std::vector<double>& grid);

}  // namespace prolate
