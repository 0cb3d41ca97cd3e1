#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "prolate_lab/rational.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate {

// Even moments c_0, c_2, ..., c_{2M} of a symmetric measure; odd ones vanish.
struct RationalMomentSequence {
    std::vector<Rational> even_moments;

    std::size_t order() const { return even_moments.empty() ? 0 : even_moments.size() - 1; }
    Rational moment(std::size_t n) const;  // c_n, zero for odd n
};

enum class Phase { Real, Imaginary };

// Off-diagonal magnitudes a_n; with Imaginary phase the matrix entries are i*a_n.
struct RecurrenceCoefficients {
    std::vector<double> a;
    Phase phase = Phase::Real;
    std::vector<Rational> a_squared;  // exact values when known, else empty

    std::size_t size() const { return a.size(); }
    cplx entry(std::size_t n) const { return phase == Phase::Imaginary ? cplx(0.0, a.at(n)) : cplx(a.at(n), 0.0); }
};

// Archimedean coefficients a_n = sqrt((2n+1)(2n+2))/2, with exact squares.
RecurrenceCoefficients archimedean_coefficients(std::size_t count, Phase phase = Phase::Imaginary);

struct PolynomialCoeffs {
    std::vector<cplx> c;  // ascending degree

    cplx operator()(cplx s) const;
    std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
};

// f(x) = sum_k c_k (pi x^2)^k exp(-pi x^2)
struct GaussianPolynomial {
    std::vector<double> c;

    double operator()(double x) const;
    double at_zero() const { return c.empty() ? 0.0 : c[0]; }
    std::size_t degree() const { return c.empty() ? 0 : 2 * (c.size() - 1); }
    double l2_inner(const GaussianPolynomial& other) const;  // exact Gaussian moments
};

GaussianPolynomial operator+(const GaussianPolynomial& f, const GaussianPolynomial& g);
GaussianPolynomial operator*(double s, const GaussianPolynomial& f);

RationalMomentSequence moments_from_generating(int M);

// a_n^2 = D_{n-1} D_{n+1} / D_n^2 from Hankel determinants, D_{-1} = 1.
RecurrenceCoefficients recurrence_from_moments_exact(const RationalMomentSequence& m);

struct NumericRecurrenceOptions {
    double half_width = 0.0;    // 0 selects max(60, 3 n_max + 60)
    double panel_width = 0.25;
    int points_per_panel = 20;
    bool refine_check = true;   // repeat with halved panels and compare
    double refine_tol = 1e-8;
    double parity_tol = 1e-10;
    int max_n = 200;
};

struct NumericRecurrence {
    RecurrenceCoefficients coeffs;
    double max_diagonal = 0.0;     // largest Stieltjes diagonal term seen
    double refinement_gap = 0.0;   // max |a_n - a_n(refined)|
    double total_mass = 0.0;
    double half_width = 0.0;
};

// Discretized Stieltjes procedure; returns a_0 .. a_{n_max-1}.
NumericRecurrence recurrence_from_measure_numeric(const MeasureSpec& spec, int n_max,
                                                  const NumericRecurrenceOptions& opt = {});

cplx eval_P_closed(int m, cplx s);
cplx eval_by_recurrence(const RecurrenceCoefficients& coeffs, int m, cplx s);
// All values P_0(s), ..., P_m(s).
std::vector<cplx> eval_all_by_recurrence(const RecurrenceCoefficients& coeffs, int m, cplx s);

double hermite_even(int n, double x);
GaussianPolynomial hermite_even_coefficients(int n);

enum class Parity { Even, Odd };
const char* to_string(Parity p);

GaussianPolynomial psi_family(int ell, Parity parity);

struct PRPolynomials {
    PolynomialCoeffs P;
    PolynomialCoeffs R;
};

PRPolynomials P_R_polynomials(int ell, Parity parity);

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule golub_welsch(const RecurrenceCoefficients& coeffs, int N, double total_mass);

}  // namespace prolate
