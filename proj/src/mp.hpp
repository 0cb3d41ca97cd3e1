#pragma once

// Extended-precision helpers for sums with heavy cancellation.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>

namespace prolate::detail {

using mpfloat = boost::multiprecision::cpp_bin_float_50;

struct mpcomplex {
    mpfloat re = 0, im = 0;

    mpcomplex() = default;
    mpcomplex(mpfloat r, mpfloat i = 0) : re(std::move(r)), im(std::move(i)) {}
    explicit mpcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    mpcomplex& operator+=(const mpcomplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend mpcomplex operator+(mpcomplex a, const mpcomplex& b) { return a += b; }
    friend mpcomplex operator*(const mpcomplex& a, const mpcomplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend mpcomplex operator*(const mpfloat& s, const mpcomplex& a) { return {s * a.re, s * a.im}; }
    std::complex<double> to_double() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

inline mpfloat mp_factorial(int n) {
    mpfloat r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline mpfloat mp_pow2(const mpfloat& e) { return boost::multiprecision::pow(mpfloat(2), e); }

}  // namespace prolate::detail
