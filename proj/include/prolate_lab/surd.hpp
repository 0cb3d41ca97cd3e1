#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "prolate_lab/rational.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate {

// Exact element of Q(i)(sqrt 2, sqrt 3, ...): sum of (Gaussian rational) * sqrt(m),
// m squarefree. Matrix entries built from a_n = sqrt(a_n^2) stay exact under
// sums and products.
class Surd {
public:
    Surd() = default;
    Surd(ComplexRational z);
    Surd(long n) : Surd(ComplexRational(n)) {}

    // sqrt(q) for q >= 0, reduced to (r) sqrt(m) with m squarefree.
    static Surd sqrt_of(const Rational& q);

    const std::map<std::int64_t, ComplexRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // True when no irrational radicand occurs.
    bool is_gaussian_rational() const;
    ComplexRational gaussian_rational_part() const;

    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Surd& o);
    Surd& operator*=(const ComplexRational& z);

    cplx to_complex() const;
    // Upper bound on |x| from the triangle inequality, in double.
    double magnitude_bound() const;
    std::string to_string() const;

    friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }

private:
    void add_term(std::int64_t radicand, const ComplexRational& coeff);

    std::map<std::int64_t, ComplexRational> terms_;
};

Surd operator+(Surd a, const Surd& b);
Surd operator-(Surd a, const Surd& b);
Surd operator-(const Surd& a);
Surd operator*(Surd a, const Surd& b);

// m = s^2 * f with f squarefree; returns {s, f}.
std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t m);

}  // namespace prolate
