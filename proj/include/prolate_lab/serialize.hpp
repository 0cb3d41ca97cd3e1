#pragma once

#include <string>
#include <vector>

#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/tridiag.hpp"

namespace prolate {

// Doubles are written with 15 significant digits.
double round15(double v);
std::string format15(double v);

std::string moments_json(const RationalMomentSequence& m);          // {"c":["1","1/2",...]}
std::string coefficients_json(const RecurrenceCoefficients& c);     // {"a":[...],"phase":"imaginary"}
std::string polynomial_json(const PolynomialCoeffs& p);             // {"c":[[re,im],...]}

// {"lambda":..,"parity":"even","N":..,"eigenvalues":[..],"converged":k}
std::string spectrum_json(const Spectrum& s, double lambda, Parity parity);
// index,eigenvalue,converged
std::string spectrum_csv(const Spectrum& s);

}  // namespace prolate
