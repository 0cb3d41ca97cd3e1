#include <algorithm>
#include <cmath>

#include "mp.hpp"
#include "prolate_lab/error.hpp"
#include "prolate_lab/jacobi.hpp"
#include "prolate_lab/parallel.hpp"
#include "prolate_lab/quadrature.hpp"

namespace prolate {

namespace {

using detail::mpfloat;
using Poly = std::vector<mpfloat>;  // coefficients in y = sqrt(pi) x

// h_{2n}(x) = R_n(y) exp(-y^2)
Poly hermite_poly(int n) {
    const mpfloat root = boost::multiprecision::sqrt(detail::mp_factorial(2 * n));
    Poly p(std::size_t(2 * n + 1), mpfloat(0));
    for (int k = 0; k <= n; ++k) {
        mpfloat c = root * detail::mp_pow2(mpfloat(3 * k - n) + mpfloat(0.25)) /
                    (detail::mp_factorial(2 * k) * detail::mp_factorial(n - k));
        p[std::size_t(2 * k)] = (n - k) % 2 ? mpfloat(-c) : c;
    }
    return p;
}

// (P e^{-y^2})' = D(P) e^{-y^2}
Poly D(const Poly& p) {
    Poly out(p.size() + 1, mpfloat(0));
    for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] += mpfloat(int(k)) * p[k];
    for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] -= 2 * p[k];
    return out;
}

Poly shift2(const Poly& p, const mpfloat& scale) {
    Poly out(p.size() + 2, mpfloat(0));
    for (std::size_t k = 0; k < p.size(); ++k) out[k + 2] = scale * p[k];
    return out;
}

Poly add(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpfloat(0));
    for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
    return a;
}

Poly negate(Poly a) {
    for (auto& c : a) c = -c;
    return a;
}

double horner(const Poly& p, const mpfloat& y) {
    mpfloat r = 0;
    for (std::size_t k = p.size(); k-- > 0;) r = r * y + p[k];
    return r.convert_to<double>();
}

struct Pieces {
    std::vector<std::vector<double>> kinetic, rest;
};

// W = pi lambda^2 (-d_y^2 + 4 y^2) + d_y (y^2 d_y); dx = dy / sqrt(pi)
Pieces integrate(const std::vector<Poly>& R, const std::vector<Poly>& A, const std::vector<Poly>& B, int panels) {
    const std::size_t n = R.size();
    const QuadratureRule rule = composite_gauss_legendre(0.0, 16.0, panels, 20);
    Pieces out{std::vector(n, std::vector<double>(n, 0.0)), std::vector(n, std::vector<double>(n, 0.0))};
    const std::size_t nodes = rule.nodes.size();
    std::vector<double> r(nodes * n), a(nodes * n), b(nodes * n);
    parallel_for(nodes, [&](std::size_t q) {
        const mpfloat y = rule.nodes[q];
        for (std::size_t i = 0; i < n; ++i) {
            r[q * n + i] = horner(R[i], y);
            a[q * n + i] = horner(A[i], y);
            b[q * n + i] = horner(B[i], y);
        }
    });
    for (std::size_t q = 0; q < nodes; ++q) {
        const double w = 2.0 * rule.weights[q] * std::exp(-2.0 * rule.nodes[q] * rule.nodes[q]) / std::sqrt(kPi);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                out.kinetic[i][j] += w * a[q * n + i] * r[q * n + j];
                out.rest[i][j] += w * b[q * n + i] * r[q * n + j];
            }
    }
    return out;
}

}  // namespace

XspaceOperator::XspaceOperator(int size) : size_(size) {
    if (size < 1 || size > 61) throw Error(ErrorKind::OutOfRange, "x-space oracle supports indices up to 60");
    std::vector<Poly> R, A, B;
    for (int n = 0; n < size; ++n) {
        Poly r = hermite_poly(n);
        const Poly dr = D(r);
        A.push_back(add(negate(D(dr)), shift2(r, mpfloat(4))));
        B.push_back(D(shift2(dr, mpfloat(1))));
        R.push_back(std::move(r));
    }
    const Pieces coarse = integrate(R, A, B, 64);
    const Pieces fine = integrate(R, A, B, 128);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            const double gk = std::abs(coarse.kinetic[i][j] - fine.kinetic[i][j]);
            const double gr = std::abs(coarse.rest[i][j] - fine.rest[i][j]);
            gap_ = std::max({gap_, gk / std::max(1.0, std::abs(fine.kinetic[i][j])),
                             gr / std::max(1.0, std::abs(fine.rest[i][j]))});
        }
    if (gap_ > 1e-8)
        throw Error(ErrorKind::QuadratureFailure, "x-space refinement disagreement " + std::to_string(gap_));
    kinetic_ = fine.kinetic;
    rest_ = fine.rest;
}

double XspaceOperator::element(int m, int n, double lambda) const {
    if (m < 0 || n < 0 || m >= size_ || n >= size_) throw Error(ErrorKind::Index, "x-space index out of range");
    return kPi * lambda * lambda * kinetic_[std::size_t(m)][std::size_t(n)] + rest_[std::size_t(m)][std::size_t(n)];
}

std::vector<std::vector<double>> XspaceOperator::matrix(double lambda) const {
    const auto n = std::size_t(size_);
    std::vector<std::vector<double>> out(n, std::vector<double>(n));
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j) out[std::size_t(i)][std::size_t(j)] = element(i, j, lambda);
    return out;
}

SymmetricTridiagonal XspaceOperator::parity_block(double lambda, Parity parity) const {
    const auto M = matrix(lambda);
    double scale = 1.0;
    for (const auto& row : M)
        for (double v : row) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j) {
            const int gap = std::abs(i - j);
            if (gap != 0 && gap != 2 && std::abs(M[std::size_t(i)][std::size_t(j)]) > 1e-8 * scale)
                throw Error(ErrorKind::InvalidArgument, "x-space matrix couples m to m +- " + std::to_string(gap));
        }
    SymmetricTridiagonal t;
    for (int i = parity == Parity::Even ? 0 : 1; i < size_; i += 2) {
        t.diag.push_back(M[std::size_t(i)][std::size_t(i)]);
        if (i + 2 < size_)
            t.offdiag.push_back(0.5 * (M[std::size_t(i)][std::size_t(i + 2)] + M[std::size_t(i + 2)][std::size_t(i)]));
    }
    normalize_offdiag_signs(t);
    return t;
}

double xspace_matrix_element(int m, int n, double lambda) {
    if (m < 0 || n < 0 || m > 60 || n > 60) throw Error(ErrorKind::OutOfRange, "x-space indices must be <= 60");
    return XspaceOperator(std::max(m, n) + 1).element(m, n, lambda);
}

}  // namespace prolate
