#include "prolate_lab/orthopoly.hpp"

#include <algorithm>
#include <cmath>

#include "mp.hpp"
#include "prolate_lab/error.hpp"
#include "prolate_lab/quadrature.hpp"
#include "prolate_lab/tridiag.hpp"

namespace prolate {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;

}  // namespace

Rational RationalMomentSequence::moment(std::size_t n) const {
    if (n % 2 == 1) return Rational(0);
    return even_moments.at(n / 2);
}

RecurrenceCoefficients archimedean_coefficients(std::size_t count, Phase phase) {
    RecurrenceCoefficients r;
    r.phase = phase;
    for (std::size_t n = 0; n < count; ++n) {
        Rational sq(Integer((2 * n + 1) * (2 * n + 2)), Integer(4));
        sq.canonicalize();
        r.a_squared.push_back(sq);
        r.a.push_back(0.5 * std::sqrt(double(2 * n + 1) * double(2 * n + 2)));
    }
    return r;
}

cplx PolynomialCoeffs::operator()(cplx s) const {
    cplx acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
    return acc;
}

double GaussianPolynomial::operator()(double x) const {
    const long double t = (long double)kPi * x * x;
    long double acc = 0.0L;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
    return double(acc * std::exp(-t));
}

double GaussianPolynomial::l2_inner(const GaussianPolynomial& other) const {
    // int (pi x^2)^n exp(-2 pi x^2) dx = Gamma(n + 1/2) / (2^{n+1/2} sqrt(pi))
    double total = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t k = 0; k < other.c.size(); ++k) {
            const double n = double(j + k);
            total += c[j] * other.c[k] * std::exp(std::lgamma(n + 0.5) - (n + 0.5) * kLn2 - 0.5 * std::log(kPi));
        }
    return total;
}

GaussianPolynomial operator+(const GaussianPolynomial& f, const GaussianPolynomial& g) {
    GaussianPolynomial out;
    out.c.assign(std::max(f.c.size(), g.c.size()), 0.0);
    for (std::size_t i = 0; i < f.c.size(); ++i) out.c[i] += f.c[i];
    for (std::size_t i = 0; i < g.c.size(); ++i) out.c[i] += g.c[i];
    return out;
}

GaussianPolynomial operator*(double s, const GaussianPolynomial& f) {
    GaussianPolynomial out = f;
    for (double& v : out.c) v *= s;
    return out;
}

RationalMomentSequence moments_from_generating(int M) {
    if (M < 0 || M > 200) throw Error(ErrorKind::OutOfRange, "moment order must be in [0, 200]");
    const int n_terms = M + 1;
    // cosh x = sum t^n / (2n)! with t = x^2
    std::vector<Rational> cosh_series(n_terms);
    for (int n = 0; n < n_terms; ++n) cosh_series[n] = Rational(Integer(1), factorial(2 * n));
    std::vector<Rational> sech(n_terms);
    sech[0] = 1;
    for (int n = 1; n < n_terms; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc -= cosh_series[k] * sech[n - k];
        sech[n] = acc;
    }
    std::vector<Rational> root(n_terms);
    root[0] = 1;
    for (int n = 1; n < n_terms; ++n) {
        Rational acc = sech[n];
        for (int k = 1; k < n; ++k) acc -= root[k] * root[n - k];
        root[n] = acc / 2;
    }
    RationalMomentSequence out;
    out.even_moments.reserve(n_terms);
    for (int n = 0; n < n_terms; ++n) {
        Rational c = root[n] * Rational(factorial(2 * n));
        if (n % 2 == 1) c = -c;
        c.canonicalize();
        out.even_moments.push_back(c);
    }
    return out;
}

RecurrenceCoefficients recurrence_from_moments_exact(const RationalMomentSequence& m) {
    if (m.even_moments.empty()) throw Error(ErrorKind::Length, "empty moment sequence");
    const std::size_t M = m.order();
    std::vector<std::vector<Rational>> hankel(M + 1, std::vector<Rational>(M + 1));
    for (std::size_t i = 0; i <= M; ++i)
        for (std::size_t j = 0; j <= M; ++j) hankel[i][j] = m.moment(i + j);
    const std::vector<Rational> pivots = elimination_pivots(std::move(hankel));
    for (std::size_t k = 0; k < pivots.size(); ++k)
        if (pivots[k] <= 0)
            throw Error(ErrorKind::NonPositiveDeterminant, "Hankel determinant D_" + std::to_string(k) + " <= 0");
    RecurrenceCoefficients out;
    for (std::size_t n = 0; n < M; ++n) {
        Rational sq = pivots[n + 1] / pivots[n];
        sq.canonicalize();
        out.a.push_back(std::sqrt(sq.get_d()));
        out.a_squared.push_back(sq);
    }
    return out;
}

namespace {

struct StieltjesRun {
    std::vector<double> a;
    double max_diagonal = 0.0;
    double mass = 0.0;
};

StieltjesRun stieltjes(const MeasureSpec& spec, int n_max, double L, int panels, int q) {
    const QuadratureRule rule = composite_gauss_legendre(-L, L, panels, q);
    const std::size_t n_pts = rule.nodes.size();
    std::vector<double> v(n_pts), v_prev(n_pts, 0.0), u(n_pts);
    StieltjesRun run;
    for (std::size_t i = 0; i < n_pts; ++i) {
        // square roots of the discrete weights, formed in log space
        v[i] = std::exp(0.5 * (std::log(rule.weights[i]) + log_measure_density(spec, rule.nodes[i])));
        run.mass += v[i] * v[i];
    }
    const double norm0 = std::sqrt(run.mass);
    for (double& x : v) x /= norm0;
    double a_prev = 0.0;
    for (int n = 0; n < n_max; ++n) {
        double b = 0.0;
        for (std::size_t i = 0; i < n_pts; ++i) b += rule.nodes[i] * v[i] * v[i];
        run.max_diagonal = std::max(run.max_diagonal, std::abs(b));
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n_pts; ++i) {
            u[i] = (rule.nodes[i] - b) * v[i] - a_prev * v_prev[i];
            norm2 += u[i] * u[i];
        }
        const double a = std::sqrt(norm2);
        if (!(a > 0)) throw Error(ErrorKind::Instability, "Stieltjes recurrence broke down");
        run.a.push_back(a);
        for (std::size_t i = 0; i < n_pts; ++i) {
            v_prev[i] = v[i];
            v[i] = u[i] / a;
        }
        a_prev = a;
    }
    return run;
}

}  // namespace

NumericRecurrence recurrence_from_measure_numeric(const MeasureSpec& spec, int n_max,
                                                  const NumericRecurrenceOptions& opt) {
    if (n_max < 1 || n_max > opt.max_n)
        throw Error(ErrorKind::OutOfRange, "n_max must be in [1, " + std::to_string(opt.max_n) + "]");
    NumericRecurrence out;
    out.half_width = opt.half_width > 0 ? opt.half_width : std::max(60.0, 3.0 * n_max + 60.0);
    const int panels = int(std::ceil(2.0 * out.half_width / opt.panel_width));
    StieltjesRun run = stieltjes(spec, n_max, out.half_width, panels, opt.points_per_panel);
    out.max_diagonal = run.max_diagonal;
    if (opt.refine_check) {
        StieltjesRun fine = stieltjes(spec, n_max, out.half_width, 2 * panels, opt.points_per_panel);
        for (int n = 0; n < n_max; ++n)
            out.refinement_gap = std::max(out.refinement_gap, std::abs(fine.a[n] - run.a[n]));
        if (out.refinement_gap > opt.refine_tol)
            throw Error(ErrorKind::Instability,
                        "quadrature refinement changed a_n by " + std::to_string(out.refinement_gap));
        out.max_diagonal = std::max(out.max_diagonal, fine.max_diagonal);
        run = std::move(fine);
    }
    if (out.max_diagonal > opt.parity_tol)
        throw Error(ErrorKind::Instability, "Stieltjes diagonal term " + std::to_string(out.max_diagonal) +
                                                " violates evenness");
    out.coeffs.a = std::move(run.a);
    out.coeffs.phase = Phase::Real;
    out.total_mass = run.mass;
    return out;
}

cplx eval_P_closed(int m, cplx s) {
    if (m < 0) throw Error(ErrorKind::Index, "negative degree");
    if (m > 40) throw Error(ErrorKind::Overflow, "closed form limited to m <= 40");
    // the alternating sum cancels by up to ~1e10, so both the coefficients
    // and the accumulation are carried in extended precision
    using detail::mpcomplex;
    using detail::mpfloat;
    const mpcomplex shift(mpfloat(0.25), mpfloat(-0.5) * mpfloat(s.real()));
    const mpcomplex shift_im(mpfloat(0.5) * mpfloat(s.imag()), mpfloat(0));
    const mpcomplex step = shift + shift_im;
    static const std::vector<std::vector<mpfloat>> table = [] {
        std::vector<std::vector<mpfloat>> t(41);
        for (int mm = 0; mm <= 40; ++mm) {
            const mpfloat root = boost::multiprecision::sqrt(detail::mp_factorial(2 * mm));
            for (int k = 0; k <= mm; ++k) {
                mpfloat coef = root * detail::mp_pow2(mpfloat(3 * k - mm)) /
                               (detail::mp_factorial(2 * k) * detail::mp_factorial(mm - k));
                t[mm].push_back(k % 2 == 1 ? mpfloat(-coef) : coef);
            }
        }
        return t;
    }();
    mpcomplex prod(mpfloat(1));
    mpcomplex sum;
    for (int k = 0; k <= m; ++k) {
        sum += table[m][k] * prod;
        prod = prod * (step + mpcomplex(mpfloat(k)));
    }
    return sum.to_double();
}

std::vector<cplx> eval_all_by_recurrence(const RecurrenceCoefficients& coeffs, int m, cplx s) {
    if (m < 0 || std::size_t(m) >= coeffs.size() + 1)
        throw Error(ErrorKind::Index, "degree exceeds available recurrence coefficients");
    std::vector<cplx> p(m + 1);
    p[0] = 1.0;
    for (int n = 0; n < m; ++n) {
        const cplx alpha = coeffs.entry(n);
        const cplx below = n > 0 ? coeffs.entry(n - 1) * p[n - 1] : cplx(0.0);
        p[n + 1] = (s * p[n] - below) / std::conj(alpha);
    }
    return p;
}

cplx eval_by_recurrence(const RecurrenceCoefficients& coeffs, int m, cplx s) {
    if (m < 0 || std::size_t(m) >= std::max<std::size_t>(coeffs.size(), 1))
        throw Error(ErrorKind::Index, "m must be below the number of coefficients");
    return eval_all_by_recurrence(coeffs, m, s).back();
}

double hermite_even(int n, double x) {
    if (n < 0 || n > 60) throw Error(ErrorKind::OutOfRange, "hermite index must be in [0, 60]");
    // three-term recurrence for the normalized Hermite functions in t = sqrt(2 pi) x
    const double t = std::sqrt(2.0 * kPi) * x;
    double prev = 0.0;
    double cur = std::pow(2.0, 0.25) * std::exp(-kPi * x * x);
    for (int k = 0; k < 2 * n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(double(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

GaussianPolynomial hermite_even_coefficients(int n) {
    if (n < 0 || n > 60) throw Error(ErrorKind::OutOfRange, "hermite index must be in [0, 60]");
    using detail::mpfloat;
    const mpfloat root = boost::multiprecision::sqrt(detail::mp_factorial(2 * n));
    GaussianPolynomial out;
    for (int k = 0; k <= n; ++k) {
        mpfloat mag = root * detail::mp_pow2(mpfloat(3 * k - n) + mpfloat(0.25)) /
                      (detail::mp_factorial(2 * k) * detail::mp_factorial(n - k));
        if ((n - k) % 2 == 1) mag = -mag;
        out.c.push_back(mag.convert_to<double>());
    }
    return out;
}

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

GaussianPolynomial psi_family(int ell, Parity parity) {
    if (ell < 1 || ell > 12) throw Error(ErrorKind::OutOfRange, "ell must be in [1, 12]");
    if (parity == Parity::Even) {
        const GaussianPolynomial top = hermite_even_coefficients(2 * ell);
        const GaussianPolynomial base = hermite_even_coefficients(0);
        GaussianPolynomial out = top + (-top.at_zero() / base.at_zero()) * base;
        out.c[0] = 0.0;
        return out;
    }
    const GaussianPolynomial top = hermite_even_coefficients(2 * ell + 1);
    const GaussianPolynomial base = hermite_even_coefficients(1);
    GaussianPolynomial out = (-1.0) * top + (top.at_zero() / base.at_zero()) * base;
    out.c[0] = 0.0;
    return out;
}

PRPolynomials P_R_polynomials(int ell, Parity parity) {
    if (ell < 1 || ell > 12) throw Error(ErrorKind::OutOfRange, "ell must be in [1, 12]");
    using detail::mpcomplex;
    using detail::mpfloat;
    const int top = parity == Parity::Even ? 2 * ell : 2 * ell + 1;
    const mpfloat root = boost::multiprecision::sqrt(detail::mp_factorial(2 * top));
    std::vector<mpcomplex> P(top + 1);
    std::vector<mpcomplex> prod{mpcomplex(mpfloat(1))};  // prod_{j<k} (j + 1/4 - i s / 2)
    for (int k = 0; k <= top; ++k) {
        mpfloat coef = 0;
        if (parity == Parity::Even && k >= 1) {
            coef = root * detail::mp_pow2(mpfloat(3 * k - 2 * ell) - mpfloat(0.75)) /
                   (detail::mp_factorial(top - k) * detail::mp_factorial(2 * k));
            if (k % 2 == 1) coef = -coef;
        } else if (parity == Parity::Odd && k == 1) {
            coef = -ell * root * detail::mp_pow2(mpfloat(-2 * ell) + mpfloat(1.25)) / detail::mp_factorial(top);
        } else if (parity == Parity::Odd && k >= 2) {
            coef = root * detail::mp_pow2(mpfloat(3 * k - 2 * ell) - mpfloat(1.75)) /
                   (detail::mp_factorial(top - k) * detail::mp_factorial(2 * k));
            if (k % 2 == 1) coef = -coef;
        }
        for (std::size_t i = 0; i < prod.size(); ++i) P[i] += coef * prod[i];
        // multiply prod by (k + 1/4) - (i/2) s
        std::vector<mpcomplex> next(prod.size() + 1);
        const mpfloat shift = mpfloat(k) + mpfloat(0.25);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            next[i] += shift * prod[i];
            next[i + 1] += mpcomplex(mpfloat(0), mpfloat(-0.5)) * prod[i];
        }
        prod = std::move(next);
    }

    // P = -(1/2)(1/4 + s^2) R
    std::vector<mpcomplex> rem = P;
    std::vector<mpcomplex> R(top - 1);
    for (int i = top; i >= 2; --i) {
        const mpcomplex q = mpfloat(-2) * rem[i];
        R[i - 2] = q;
        rem[i] = mpcomplex();
        rem[i - 2] += mpfloat(0.125) * q;
    }
    PRPolynomials out;
    double scale = 0.0;
    for (const mpcomplex& c : P) {
        out.P.c.push_back(c.to_double());
        scale = std::max(scale, std::abs(out.P.c.back()));
    }
    for (const mpcomplex& c : R) out.R.c.push_back(c.to_double());
    if (std::abs(rem[0].to_double()) > 1e-10 * scale || std::abs(rem[1].to_double()) > 1e-10 * scale)
        throw Error(ErrorKind::NonzeroRemainder, "P is not divisible by 1/4 + s^2");
    return out;
}

GaussRule golub_welsch(const RecurrenceCoefficients& coeffs, int N, double total_mass) {
    if (N < 1 || std::size_t(N) > coeffs.size() + 1)
        throw Error(ErrorKind::Index, "N must satisfy 1 <= N <= len(a) + 1");
    SymmetricTridiagonal t;
    t.diag.assign(N, 0.0);
    t.offdiag.assign(coeffs.a.begin(), coeffs.a.begin() + (N - 1));
    const EigenFirstComponents eig = ql_implicit(t);
    GaussRule out;
    out.nodes = eig.values;
    for (double z : eig.first) out.weights.push_back(total_mass * z * z);
    return out;
}

}  // namespace prolate
