#include "prolate_lab/tridiag.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "prolate_lab/error.hpp"

namespace prolate {

double SymmetricTridiagonal::inf_norm() const {
    double best = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(offdiag[i - 1]);
        if (i + 1 < n) row += std::abs(offdiag[i]);
        best = std::max(best, row);
    }
    return best;
}

void SymmetricTridiagonal::validate() const {
    if (diag.empty()) throw Error(ErrorKind::Length, "empty tridiagonal matrix");
    if (offdiag.size() + 1 != diag.size()) throw Error(ErrorKind::Length, "off-diagonal length must be N-1");
    for (double v : diag)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite diagonal entry");
    for (double v : offdiag)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite off-diagonal entry");
}

void normalize_offdiag_signs(SymmetricTridiagonal& t) {
    const std::size_t n = t.size();
    t.conjugation.assign(n, 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        // entry (i, i+1) becomes sign_i * sign_{i+1} * e_i
        double e = t.offdiag[i] * t.conjugation[i];
        t.conjugation[i + 1] = e < 0 ? -1 : 1;
        t.offdiag[i] = std::abs(t.offdiag[i]);
    }
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
    const std::size_t n = t.size();
    double emax = 0.0;
    for (double e : t.offdiag) emax = std::max(emax, e * e);
    const double pivmin = DBL_MIN * std::max(1.0, emax);
    std::size_t count = 0;
    double q = t.diag[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0) ++count;
        if (i + 1 == n) break;
        q = t.diag[i + 1] - x - t.offdiag[i] * t.offdiag[i] / q;
    }
    return count;
}

namespace {

std::pair<double, double> gershgorin(const SymmetricTridiagonal& t) {
    const std::size_t n = t.size();
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(t.offdiag[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    return {lo - pad, hi + pad};
}

double bisect_in(const SymmetricTridiagonal& t, std::size_t index, double a, double b, double floor_width) {
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (a + b);
        if (b - a <= std::max(floor_width, 4 * DBL_EPSILON * std::abs(mid)) || mid == a || mid == b) return mid;
        if (sturm_count(t, mid) > index)
            b = mid;
        else
            a = mid;
    }
    throw Error(ErrorKind::NonConvergence, "bisection iteration cap reached");
}

}  // namespace

double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index) {
    t.validate();
    if (index >= t.size()) throw Error(ErrorKind::Index, "eigenvalue index out of range");
    const auto [lo, hi] = gershgorin(t);
    return bisect_in(t, index, lo, hi, 1e-18 * std::max(1.0, t.inf_norm()));
}

IndexedEigenvalues eigenvalues_by_index(const SymmetricTridiagonal& t, std::size_t first, std::size_t count) {
    t.validate();
    if (first + count > t.size()) throw Error(ErrorKind::Index, "eigenvalue index range exceeds N");
    const auto [lo, hi] = gershgorin(t);
    const double floor_width = 1e-18 * std::max(1.0, t.inf_norm());
    IndexedEigenvalues out;
    out.first_index = first;
    out.values.reserve(count);
    double a = lo;
    for (std::size_t k = first; k < first + count; ++k) {
        const double v = bisect_in(t, k, a, hi, floor_width);
        out.values.push_back(v);
        a = std::max(a, v - 8 * floor_width - 8 * DBL_EPSILON * std::abs(v));
    }
    return out;
}

IndexedEigenvalues eigenvalues_in_range(const SymmetricTridiagonal& t, double lo, double hi) {
    t.validate();
    const std::size_t c_lo = sturm_count(t, lo);
    const std::size_t c_hi = sturm_count(t, hi);
    return eigenvalues_by_index(t, c_lo, c_hi > c_lo ? c_hi - c_lo : 0);
}

EigenFirstComponents ql_implicit(const SymmetricTridiagonal& t) {
    t.validate();
    const std::size_t n = t.size();
    std::vector<double> d = t.diag;
    std::vector<double> e(n, 0.0);
    std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= DBL_EPSILON * dd) break;
            }
            if (m == l) break;
            if (++iter > 60) throw Error(ErrorKind::NonConvergence, "QL iteration cap reached");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    EigenFirstComponents out;
    out.values.reserve(n);
    out.first.reserve(n);
    for (std::size_t i : order) {
        out.values.push_back(d[i]);
        out.first.push_back(z[i]);
    }
    return out;
}

Spectrum eig_tridiag(const SymmetricTridiagonal& t, std::size_t k) {
    t.validate();
    const std::size_t n = t.size();
    if (k < 1 || k > n) throw Error(ErrorKind::Index, "k must satisfy 1 <= k <= N");
    Spectrum out;
    out.truncation_N = int(n);
    out.tolerance = 1e-12 * std::max(1.0, t.inf_norm());
    if (k == n)
        out.eigenvalues = ql_implicit(t).values;
    else
        out.eigenvalues = eigenvalues_by_index(t, 0, k).values;
    return out;
}

}  // namespace prolate
