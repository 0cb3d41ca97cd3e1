#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/rational.hpp"
#include "prolate_lab/surd.hpp"

namespace prolate {

// Finite section of a banded operator on l^2(N) with exact entries.
// Band k holds the entries (j, j + k); rows >= trust_radius may differ from the
// same rows of the infinite operator because of truncation.
class BandedOperator {
public:
    explicit BandedOperator(std::size_t n);

    static BandedOperator identity(std::size_t n);
    static BandedOperator diagonal(const std::vector<Surd>& d);

    std::size_t size() const { return n_; }
    std::size_t trust_radius() const { return trust_; }
    void set_trust_radius(std::size_t t) { trust_ = t < n_ ? t : n_; }
    // Largest |k| with a nonzero band.
    std::size_t bandwidth() const;

    Surd at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, const Surd& value);
    const std::map<int, std::vector<Surd>>& bands() const { return bands_; }

    BandedOperator& operator+=(const BandedOperator& o);
    BandedOperator& operator-=(const BandedOperator& o);
    BandedOperator& operator*=(const ComplexRational& z);

    std::vector<std::vector<cplx>> dense() const;

private:
    // Band k is stored by min(row, col).
    std::vector<Surd>& band(int k);
    void prune();

    std::size_t n_;
    std::size_t trust_;
    std::map<int, std::vector<Surd>> bands_;
};

BandedOperator operator+(BandedOperator a, const BandedOperator& b);
BandedOperator operator-(BandedOperator a, const BandedOperator& b);
BandedOperator operator*(const ComplexRational& z, BandedOperator a);
// Product; rows stay trusted while every term they touch is trusted.
BandedOperator operator*(const BandedOperator& x, const BandedOperator& y);

// XY - YX; trust shrinks by bw(X) + bw(Y). Bandwidth-overflow error past N/4.
BandedOperator commutator(const BandedOperator& x, const BandedOperator& y);

// Jacobi matrix with bands +-1 equal to a_n = sqrt(a_n^2) > 0.
BandedOperator build_A(const std::vector<Rational>& a_squared, std::size_t n);
BandedOperator build_A(const RecurrenceCoefficients& coeffs, std::size_t n);
BandedOperator build_number(std::size_t n);
// Upper shift with entries a_n.
BandedOperator build_upper_shift(const std::vector<Rational>& a_squared, std::size_t n);

// a_n^2 = (n + 1)(n + 2c), the solution of 2(a_{n-1}^2 - a_n^2) = -4(n + c), a_{-1} = 0.
struct CoeffLaw {
    Rational c;

    Rational a_squared(std::size_t n) const;
    // First `count` values, by the telescoping recurrence.
    std::vector<Rational> table(std::size_t count) const;
};

CoeffLaw solve_unique_coeffs(const Rational& c);

// Decimal ("0.25"), fraction ("1/4") or integer text.
Rational parse_exact_number(const std::string& text);

// Reconciled sl2 convention: sigma(h) = -iA, sigma(k) = scale (N + shift),
// sigma(e+-) = (i scale / 2)(+-F+- +- shift). The bracket [e+, e-] = h needs
// scale = 2; a lowest weight of 1/2 needs shift = 1/4.
struct Sl2Convention {
    Rational scale{2};
    Rational shift{1, 4};
};

inline const Sl2Convention kReconciledSl2{};

struct IdentityReport {
    std::string identity;
    std::size_t rows_checked = 0;
    bool exact = true;
    bool passed = false;
    std::string max_residual = "0";    // exact when every residual is Gaussian rational
    double max_residual_value = 0.0;
    std::optional<std::size_t> failure_row;
    std::string failure_detail;
    std::vector<Surd> diagonal;  // measured diagonal, for diagonal identities

    std::string to_json() const;
};

struct SuiteReport {
    std::vector<IdentityReport> items;

    bool all_passed() const;
    std::string to_json() const;
};

// [[A,N],N] = A, [F+,F-] = -iA, [A,[A,N]] = f(N), [A,F+] = 2iF+ + Y with the
// diagonal d_n = i(-2n + a_n^2 - a_{n-1}^2), and F+ - (i/2)A = N - iS.
SuiteReport commutator_suite(const std::vector<Rational>& a_squared, std::size_t n);

// Defect of [sigma(h), sigma(e+)] = 2 sigma(e+) under a convention; diagonal.
struct DiscrepancyRow {
    Rational c;
    Rational d0_over_i;           // raw Y_00 / i
    Rational max_abs_discrepancy;  // over n <= rows
    std::size_t rows = 0;
    bool vanishes = false;
};

std::vector<DiscrepancyRow> discrepancy_vanishing_scan(const std::vector<Rational>& c_grid,
                                                       std::size_t n_max = 50,
                                                       const Sl2Convention& conv = kReconciledSl2);
std::string to_json(const std::vector<DiscrepancyRow>& table);

// sl2 brackets and the Casimir on the c = 1/4 law, plus the prolate element
// sigma(h)^2 + 4 pi lambda^2 sigma(k) - 1/4 against the explicit matrices.
SuiteReport sl2_casimir_check(std::size_t n, const Sl2Convention& conv = kReconciledSl2,
                              double lambda = 1.0, int prolate_rows = 11);

// (T^k)_{00} for the tridiagonal T similar to A (upper band a_j^2, lower band 1).
Rational power_moment(const std::vector<Rational>& a_squared, int k);
// c_{2m} = (A^{2m})_{00}, m <= 20.
Rational moments_via_power(const std::vector<Rational>& a_squared, int m);

// k_n^2 = D_{n-1} / D_n from the matrix-power moments of the c = 1/4 law,
// compared with 4^n / (2n)! for n <= n_max.
IdentityReport leading_coefficient_check(int n_max = 10);

}  // namespace prolate
