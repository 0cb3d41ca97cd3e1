#include "prolate_lab/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "prolate_lab/error.hpp"

namespace prolate {

RecurrenceCoefficients build_scaling(int N) {
    if (N < 2) throw Error(ErrorKind::InvalidArgument, "scaling matrix needs N >= 2");
    return archimedean_coefficients(std::size_t(N - 1), Phase::Imaginary);
}

CyclicPairSpec archimedean_pair(int count) {
    return {archimedean_coefficients(std::size_t(count), Phase::Imaginary), "archimedean"};
}

namespace {

void require_length(const CyclicPairSpec& pair, std::size_t needed) {
    if (pair.coeffs.size() < needed)
        throw Error(ErrorKind::Length, "cyclic pair '" + pair.label + "' has " + std::to_string(pair.coeffs.size()) +
                                           " coefficients, need " + std::to_string(needed));
}

// a_i a_j as a real number; rejects phases that do not give a real product
double real_product(const RecurrenceCoefficients& c, std::size_t i, std::size_t j) {
    const cplx p = c.entry(i) * c.entry(j);
    if (std::abs(p.imag()) > 1e-14 * std::abs(p))
        throw Error(ErrorKind::InvalidArgument, "phase cannot be rotated to a real symmetric matrix");
    return p.real();
}

double sq(const RecurrenceCoefficients& c, long i) { return i < 0 ? 0.0 : c.a.at(std::size_t(i)) * c.a.at(std::size_t(i)); }

}  // namespace

SymmetricTridiagonal build_parity_square(const CyclicPairSpec& pair, Parity parity, int N) {
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
    require_length(pair, std::size_t(2 * N + 1));
    const long shift = parity == Parity::Even ? 0 : 1;
    SymmetricTridiagonal t;
    for (long n = 0; n < N; ++n) {
        const long j = 2 * n + shift;
        t.diag.push_back(sq(pair.coeffs, j - 1) + sq(pair.coeffs, j));
        if (n + 1 < N) t.offdiag.push_back(real_product(pair.coeffs, std::size_t(j), std::size_t(j + 1)));
    }
    normalize_offdiag_signs(t);
    return t;
}

SymmetricTridiagonal build_prolate_explicit(double lambda, Parity parity, int N) {
    if (N < 2) throw Error(ErrorKind::InvalidArgument, "prolate matrix needs N >= 2");
    const double l2 = lambda * lambda;
    SymmetricTridiagonal t;
    for (int i = 0; i < N; ++i) {
        const double n = i;
        if (parity == Parity::Even) {
            t.diag.push_back(-8 * n * n - 2 * n - 0.75 + 2 * kPi * l2 * (8 * n + 1));
            if (i + 1 < N)
                t.offdiag.push_back(0.25 * std::sqrt((4 * n + 1) * (4 * n + 2) * (4 * n + 3) * (4 * n + 4)));
        } else {
            t.diag.push_back(-8 * n * n - 10 * n - 3.75 + 2 * kPi * l2 * (8 * n + 5));
            if (i + 1 < N)
                t.offdiag.push_back(0.25 * std::sqrt((4 * n + 3) * (4 * n + 4) * (4 * n + 5) * (4 * n + 6)));
        }
    }
    t.conjugation.assign(std::size_t(N), 1);
    return t;
}

SymmetricTridiagonal build_prolate_generic(const CyclicPairSpec& pair, double lambda2, Parity parity, int N) {
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
    require_length(pair, std::size_t(2 * N + 1));
    const long shift = parity == Parity::Even ? 0 : 1;
    SymmetricTridiagonal t;
    for (long n = 0; n < N; ++n) {
        const long j = 2 * n + shift;  // grading of the basis vector
        // a_{-1} := 0 in the first even row
        t.diag.push_back(-sq(pair.coeffs, j) - sq(pair.coeffs, j - 1) + double(j) * lambda2);
        if (n + 1 < N) t.offdiag.push_back(-real_product(pair.coeffs, std::size_t(j), std::size_t(j + 1)));
    }
    normalize_offdiag_signs(t);
    return t;
}

SymmetricTridiagonal prolate_from_pair(const CyclicPairSpec& pair, double lambda, Parity parity, int N) {
    const double l2 = lambda * lambda;
    SymmetricTridiagonal t = build_prolate_generic(pair, 8 * kPi * l2, parity, N);
    for (double& d : t.diag) d += 2 * kPi * l2 - 0.25;
    return t;
}

CyclicPairSpec semilocal_pair(const PlaceSet& S, int depth, const NumericRecurrenceOptions& opt) {
    const MeasureSpec spec{S, MeasureSide::HT, 1.0};
    NumericRecurrence r = recurrence_from_measure_numeric(spec, depth, opt);
    r.coeffs.phase = Phase::Imaginary;
    return {std::move(r.coeffs), "semilocal " + S.label()};
}

SymmetricTridiagonal build_prolate_semilocal(const PlaceSet& S, double lambda, Parity parity, int N,
                                             const NumericRecurrenceOptions& opt) {
    return prolate_from_pair(semilocal_pair(S, 2 * N + 1, opt), lambda, parity, N);
}

std::size_t SemilocalStability::stable_count() const {
    return std::size_t(std::count_if(rows.begin(), rows.end(), [](const SemilocalEigenvalue& e) { return e.stable; }));
}

SemilocalStability semilocal_stability(const PlaceSet& S, double lambda, Parity parity, int N, double tol,
                                       std::size_t count) {
    const int depth = 4 * N + 1;
    NumericRecurrenceOptions fine;
    fine.panel_width /= 2;
    const CyclicPairSpec pair = semilocal_pair(S, depth);
    const CyclicPairSpec pair_fine = semilocal_pair(S, depth, fine);
    const auto small = prolate_from_pair(pair, lambda, parity, N);
    const auto large = prolate_from_pair(pair, lambda, parity, 2 * N);
    const auto small_fine = prolate_from_pair(pair_fine, lambda, parity, N);

    SemilocalStability out;
    out.N = N;
    for (const auto& t : compare_truncations(small, large, 0.0, small.inf_norm() + 1.0, tol)) {
        if (out.rows.size() == count) break;
        SemilocalEigenvalue e;
        e.index = t.index;
        e.value = t.value;
        e.doubled = t.partner;
        e.refined = bisect_eigenvalue(small_fine, t.index);
        e.stable = t.converged && std::abs(e.refined - e.value) < tol;
        out.rows.push_back(e);
    }
    return out;
}

std::vector<TrackedEigenvalue> compare_truncations(const SymmetricTridiagonal& small, const SymmetricTridiagonal& large,
                                                   double lo, double hi, double tol, double boundary_fraction) {
    const IndexedEigenvalues a = eigenvalues_in_range(small, lo, hi);
    const double pad = tol + 1.0;
    const IndexedEigenvalues b = eigenvalues_in_range(large, lo - pad, hi + pad);
    const double boundary = (1.0 - boundary_fraction) * double(small.size());
    std::vector<TrackedEigenvalue> out;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        TrackedEigenvalue e;
        e.index = a.first_index + i;
        e.value = a.values[i];
        e.partner = NAN;
        if (!b.values.empty()) {
            auto it = std::lower_bound(b.values.begin(), b.values.end(), e.value);
            double best = INFINITY;
            if (it != b.values.end()) best = *it;
            if (it != b.values.begin() && std::abs(*std::prev(it) - e.value) < std::abs(best - e.value))
                best = *std::prev(it);
            e.partner = best;
        }
        e.converged = std::isfinite(e.partner) && std::abs(e.partner - e.value) < tol && double(e.index) < boundary;
        out.push_back(e);
    }
    return out;
}

Spectrum converge_spectrum(const ProlateBuilder& builder, double lambda, Parity parity, std::size_t k, double tol,
                           const ConvergeOptions& opt) {
    if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be positive");
    int N = opt.start_N;
    SymmetricTridiagonal small = builder(lambda, parity, N);
    while (2 * N <= opt.max_N) {
        SymmetricTridiagonal large = builder(lambda, parity, 2 * N);
        // window: the first few eigenvalues above the floor in the smaller truncation
        const std::size_t first = sturm_count(small, opt.floor);
        const std::size_t limit = std::size_t((1.0 - opt.boundary_fraction) * N);
        if (first < limit) {
            const std::size_t count = std::min(4 * k + 8, limit - first);
            const IndexedEigenvalues window = eigenvalues_by_index(small, first, count);
            const double hi = std::nextafter(window.values.back(), INFINITY);
            const auto tracked = compare_truncations(small, large, opt.floor, hi, tol, opt.boundary_fraction);
            Spectrum out;
            for (const TrackedEigenvalue& e : tracked)
                if (e.converged && out.eigenvalues.size() < k) out.eigenvalues.push_back(e.partner);
            if (out.eigenvalues.size() == k) {
                out.truncation_N = 2 * N;
                out.converged_count = int(k);
                out.tolerance = tol;
                return out;
            }
        }
        small = std::move(large);
        N *= 2;
    }
    throw Error(ErrorKind::BudgetExceeded, "spectrum not converged below N = " + std::to_string(opt.max_N));
}

double spectral_distance(const RecurrenceCoefficients& coeffs, std::size_t n, std::size_t m) {
    if (n >= coeffs.size() || m >= coeffs.size()) throw Error(ErrorKind::Index, "index beyond coefficients");
    // phi(n) = sum_{j <= n} 1/a_j, so the difference sums over the open-closed range
    const std::size_t lo = std::min(n, m), hi = std::max(n, m);
    double d = 0.0;
    for (std::size_t j = lo + 1; j <= hi; ++j) d += 1.0 / coeffs.a[j];
    return d;
}

std::vector<double> commutator_with_diagonal(const RecurrenceCoefficients& coeffs, const std::vector<double>& f) {
    if (f.empty() || coeffs.size() + 1 < f.size()) throw Error(ErrorKind::Length, "f longer than the matrix");
    std::vector<double> out;
    for (std::size_t j = 0; j + 1 < f.size(); ++j) out.push_back((f[j] - f[j + 1]) * coeffs.a[j]);
    return out;
}

NormBounds commutator_norm_bounds(const std::vector<double>& entries) {
    double m = 0.0;
    for (double e : entries) m = std::max(m, std::abs(e));
    return {m, 2 * m};
}

NormBounds archimedean_metric_bounds(int n_max) {
    NormBounds b{INFINITY, -INFINITY};
    for (int n = 1; n <= n_max; ++n) {
        const double a = std::sqrt((n + 0.5) * (n + 1.0));
        const double v = a * std::log1p(1.0 / n);
        b.lower = std::min(b.lower, v);
        b.upper = std::max(b.upper, v);
    }
    return b;
}

}  // namespace prolate
