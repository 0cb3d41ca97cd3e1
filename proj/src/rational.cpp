#include "prolate_lab/rational.hpp"

#include "prolate_lab/error.hpp"

namespace prolate {

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw Error(ErrorKind::InvalidArgument, "not a rational: '" + text + "'");
    q.canonicalize();
    return q;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational pow2(int e) {
    Integer one = 1;
    Integer big;
    mpz_mul_2exp(big.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    return e < 0 ? Rational(Integer(1), big) : Rational(big);
}

std::vector<Rational> elimination_pivots(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    std::vector<Rational> pivots;
    pivots.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Rational p = m[k][k];
        pivots.push_back(p);
        if (p == 0) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            const Rational f = m[i][k] / p;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return pivots;
}

}  // namespace prolate

namespace prolate {

RationalNullspace rational_nullspace(std::vector<std::vector<Rational>> m) {
    RationalNullspace out;
    if (m.empty()) return out;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        const Rational inv = 1 / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    out.rank = r;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -m[k][free];
        out.basis.push_back(std::move(v));
    }
    return out;
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    const Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
}

ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }

std::string to_string(const ComplexRational& z) {
    if (sgn(z.im) == 0) return to_string(z.re);
    return to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + to_string(Rational(abs(z.im))) + "i";
}

}  // namespace prolate
