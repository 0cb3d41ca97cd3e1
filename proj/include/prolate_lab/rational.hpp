#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace prolate {

using Rational = mpq_class;
using Integer = mpz_class;

// "num/den", or just "num" for integers.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

Integer factorial(unsigned n);
Rational pow2(int e);

// Pivots of Gaussian elimination without pivoting on a symmetric matrix:
// pivot k equals D_k / D_{k-1} for the leading principal minors D_k.
std::vector<Rational> elimination_pivots(std::vector<std::vector<Rational>> m);

struct RationalNullspace {
    std::size_t rank = 0;
    std::vector<std::vector<Rational>> basis;  // one vector per free column
};

// Row reduction with pivot search; m is rows x cols.
RationalNullspace rational_nullspace(std::vector<std::vector<Rational>> m);

// Gaussian rational re + i im.
struct ComplexRational {
    Rational re = 0, im = 0;

    ComplexRational() = default;
    ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(long r) : re(r), im(0) {}

    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);
    ComplexRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    double real_double() const { return re.get_d(); }
    double imag_double() const { return im.get_d(); }
};

ComplexRational operator+(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(ComplexRational a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a);
ComplexRational operator*(ComplexRational a, const ComplexRational& b);
bool operator==(const ComplexRational& a, const ComplexRational& b);
std::string to_string(const ComplexRational& z);

}  // namespace prolate
