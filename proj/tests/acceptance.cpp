// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned below.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "prolate_lab/error.hpp"
#include "prolate_lab/jacobi.hpp"
#include "prolate_lab/mellin.hpp"
#include "prolate_lab/metaplectic.hpp"
#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/padic.hpp"
#include "prolate_lab/quadrature.hpp"
#include "prolate_lab/specfun.hpp"
#include "prolate_lab/tridiag.hpp"

using namespace prolate;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const MeasureSpec kDm{PlaceSet{}, MeasureSide::HT, kArchimedeanProbabilityNorm};

Outcome moments_exact() {
    const auto m = moments_from_generating(12);
    const char* expected[] = {"1/2", "7/4", "139/8", "5473/16", "357721/32", "34988647/64"};
    bool ok = true;
    for (int n = 1; n <= 6; ++n) ok = ok && to_string(m.even_moments[n]) == expected[n - 1];
    return {ok, "c_2..c_12 = 1/2 .. 34988647/64"};
}

Outcome moments_dual() {
    const auto gen = moments_from_generating(10);
    const auto a_sq = solve_unique_coeffs(Rational(1, 4)).table(11);
    int agree = 0;
    for (int m = 0; m <= 10; ++m) agree += moments_via_power(a_sq, m) == gen.even_moments[m];
    return {agree == 11, std::to_string(agree) + "/11 exact matches"};
}

Outcome recurrence_closed_form() {
    const auto exact = recurrence_from_moments_exact(moments_from_generating(14));
    bool exact_ok = exact.a_squared.size() >= 13;
    for (int n = 0; n <= 12 && exact_ok; ++n) {
        Rational expected((2 * n + 1) * (2 * n + 2), 4);
        expected.canonicalize();
        exact_ok = exact.a_squared[n] == expected;
    }
    const auto num = recurrence_from_measure_numeric(kDm, 13);
    double dev = 0.0;
    for (int n = 0; n <= 12; ++n) dev = std::max(dev, std::abs(num.coeffs.a[n] - std::sqrt((2.0 * n + 1) * (2.0 * n + 2)) / 2));
    return {exact_ok && dev <= 1e-9, std::string("exact ") + (exact_ok ? "yes" : "no") + ", numeric dev " + fmt(dev) +
                                         " (tol 1e-9)"};
}

Outcome orthonormality() {
    const QuadratureRule q = composite_gauss_legendre(-60, 60, 480, 20);
    std::vector<std::vector<cplx>> vals(13, std::vector<cplx>(q.nodes.size()));
    std::vector<double> w(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        w[i] = q.weights[i] * measure_density(kDm, q.nodes[i]);
        for (int m = 0; m <= 12; ++m) vals[m][i] = eval_P_closed(m, q.nodes[i]);
    }
    double worst = 0.0;
    for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * vals[m][i] * std::conj(vals[n][i]);
            worst = std::max(worst, std::abs(acc - (m == n ? 1.0 : 0.0)));
        }
    return {worst <= 1e-8, "max |G - I| " + fmt(worst) + " (tol 1e-8)"};
}

Outcome prolate_cross() {
    const XspaceOperator x(61);
    const auto block = x.parity_block(1.0, Parity::Even);
    const auto J = build_prolate_explicit(1.0, Parity::Even, 31);
    const auto ex = eig_tridiag(J, 10), xs = eig_tridiag(block, 10);
    double eig_dev = 0.0;
    for (int i = 0; i < 10; ++i)
        eig_dev = std::max(eig_dev, std::abs(ex.eigenvalues[i] - xs.eigenvalues[i]) / std::max(1.0, std::abs(ex.eigenvalues[i])));
    double entry_dev = 0.0;
    for (const Parity p : {Parity::Even, Parity::Odd}) {
        const auto e = build_prolate_explicit(1.0, p, 64);
        const auto g = prolate_from_pair(archimedean_pair(2 * 64 + 2), 1.0, p, 64);
        for (std::size_t i = 0; i < e.size(); ++i)
            entry_dev = std::max(entry_dev, std::abs(e.diag[i] - g.diag[i]) / std::max(1.0, std::abs(e.diag[i])));
        for (std::size_t i = 0; i + 1 < e.size(); ++i)
            entry_dev = std::max(entry_dev, std::abs(e.offdiag[i] - g.offdiag[i]) / std::max(1.0, std::abs(e.offdiag[i])));
    }
    return {eig_dev <= 1e-6 && entry_dev <= 1e-12, "x-space eig dev " + fmt(eig_dev) + " (tol 1e-6), generic entry dev " +
                                                       fmt(entry_dev) + " (tol 1e-12)"};
}

Outcome semilocal() {
    std::ostringstream table;
    bool ok = true;
    for (const double lambda : {1.0, 2.0}) {
        std::size_t stable_lambda = 0;
        for (const Parity p : {Parity::Even, Parity::Odd}) {
            const auto st = semilocal_stability(PlaceSet{2}, lambda, p, 48, 1e-6, 6);
            stable_lambda += st.stable_count();
            std::printf("    lambda %g %s (N = 48 vs 96, refined panels):\n", lambda, to_string(p));
            for (const auto& e : st.rows)
                std::printf("      #%zu %.10f  doubling %.2e  refinement %.2e  %s\n", e.index, e.value,
                            std::abs(e.doubled - e.value), std::abs(e.refined - e.value), e.stable ? "stable" : "-");
        }
        table << "lambda " << lambda << ": " << stable_lambda << " stable; ";
        ok = ok && stable_lambda > 0;
    }
    return {ok, table.str() + "tol 1e-6"};
}

Outcome euler_factor() {
    const auto grid = uniform_grid(-10, 10, 201);
    double worst = 0.0;
    for (const char* f : {"h0", "h2"})
        for (const PlaceSet& S : {PlaceSet{2}, PlaceSet{2, 3}})
            worst = std::max(worst, verify_ms0(parse_function(f), S, grid).residual);
    return {worst < 1e-8, "max residual " + fmt(worst) + " (tol 1e-8)"};
}

Outcome sonin_theta() {
    const auto grid = uniform_grid(-10, 10, 201);
    double theta = 0.0;
    for (const char* f : {"h0", "h2"}) theta = std::max(theta, verify_theta_factor(parse_function(f), PlaceSet{2}, grid).residual);
    double pair = 0.0;
    const std::pair<const char*, const char*> pairs[] = {{"h0", "h0"}, {"h0", "h2"}, {"h2", "h2"}};
    for (const PlaceSet& S : {PlaceSet{2}, PlaceSet{2, 3}})
        for (const auto& [f, g] : pairs) pair = std::max(pair, pairing_check(parse_function(f), parse_function(g), S).residual);
    return {theta < 1e-9 && pair < 1e-8, "theta " + fmt(theta) + " (tol 1e-9), pairing " + fmt(pair) + " (tol 1e-8)"};
}

Outcome padic_sonin() {
    bool ok = true;
    std::string detail;
    for (const long p : {2L, 3L, 5L}) {
        const auto sigma = sonin_generator(p);
        const auto sys = sonin_system(p, 6);
        ok = ok && padic_fourier(sigma) == sigma && sys.nullity == 1;
        detail += "p=" + std::to_string(p) + " nullity " + std::to_string(sys.nullity) + "; ";
    }
    return {ok, detail + "fixed point exact"};
}

Outcome xi_factorization() {
    const auto grid = uniform_grid(0, 30, 301);
    double worst = 0.0;
    for (const int ell : {1, 2})
        for (const Parity p : {Parity::Even, Parity::Odd}) {
            const auto r = verify_prope(ell, p, grid);
            worst = std::max(worst, r.check.residual / r.check.scale);
        }
    const auto z = xi_zeros(30.0);
    const double ref[] = {14.1347, 21.0220, 25.0109};
    bool zeros_ok = z.zeros.size() >= 3;
    for (int i = 0; i < 3 && zeros_ok; ++i) zeros_ok = std::abs(z.zeros[i] - ref[i]) <= 1e-3;
    const double xi0 = xi_function(0.0);
    const bool xi0_ok = std::abs(xi0 - 0.497121) <= 1e-5;
    return {worst < 1e-6 && zeros_ok && xi0_ok,
            "relative residual " + fmt(worst) + " (tol 1e-6), zeros " + (zeros_ok ? "ok" : "off") + ", Xi(0) = " +
                std::to_string(xi0)};
}

Outcome metaplectic_suite() {
    const auto suite = commutator_suite(solve_unique_coeffs(Rational(1, 4)).table(64), 64);
    bool exact = suite.all_passed();
    for (const auto& item : suite.items) exact = exact && item.exact && item.max_residual == "0";
    const auto sl2 = sl2_casimir_check(64);
    const bool casimir = sl2.items[3].identity == "casimir=-3/4" && sl2.items[3].passed && sl2.items[3].max_residual == "0";
    std::vector<Rational> grid;
    for (const char* c : {"0.1", "0.2", "0.25", "0.3", "0.5", "1"}) grid.push_back(parse_exact_number(c));
    bool unique = true;
    for (const auto& row : discrepancy_vanishing_scan(grid)) unique = unique && row.vanishes == (row.c == Rational(1, 4));
    return {exact && casimir && unique && sl2.all_passed(),
            std::string("identities ") + (exact ? "exact" : "FAILED") + ", Casimir " + (casimir ? "-3/4" : "wrong") +
                ", defect zero only at c = 1/4: " + (unique ? "yes" : "no")};
}

Outcome bounds() {
    const auto grid = uniform_grid(-40, 40, 2001);
    bool ratio = true;
    for (const PlaceSet& S : {PlaceSet{2}, PlaceSet{2, 3}, PlaceSet{2, 3, 5}}) ratio = ratio && weight_ratio_bounds(S, grid).contained;
    const auto metric = archimedean_metric_bounds(10000);
    const bool metric_ok = metric.lower >= 1.0 && metric.upper <= std::sqrt(3.0) * std::log(2.0) * (1 + 1e-15);

    const int size = 40;
    const auto coeffs = archimedean_coefficients(std::size_t(size));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> support(2, size);
    int sandwiched = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(std::size_t(size), 0.0);
        const int len = support(rng);
        for (int j = 0; j < len; ++j) f[std::size_t(j)] = u(rng);
        const auto b = commutator_norm_bounds(commutator_with_diagonal(coeffs, f));
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(size, size);
        for (int j = 0; j + 1 < size; ++j) {
            const std::complex<double> dj(0.0, coeffs.a[std::size_t(j)]);
            c(j, j + 1) = dj * (f[std::size_t(j + 1)] - f[std::size_t(j)]);
            c(j + 1, j) = std::conj(c(j, j + 1));
        }
        const double norm = Eigen::JacobiSVD<Eigen::MatrixXcd>(c).singularValues()(0);
        sandwiched += b.lower <= norm * (1 + 1e-12) && norm <= b.upper * (1 + 1e-12);
    }
    return {ratio && metric_ok && sandwiched == 50,
            std::string("weight ratio ") + (ratio ? "contained" : "outside") + ", a_n log(1+1/n) in [" +
                fmt(metric.lower) + ", " + fmt(metric.upper) + "], sandwich " + std::to_string(sandwiched) + "/50"};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "exact moments", 1, moments_exact},
        {2, "dual-pipeline moments", 1, moments_dual},
        {3, "recurrence closed form", 10, recurrence_closed_form},
        {4, "orthonormality", 10, orthonormality},
        {5, "prolate cross-validation", 30, prolate_cross},
        {6, "semilocal prolate stability", 300, semilocal},
        {7, "Euler-factor identity", 60, euler_factor},
        {8, "Sonin theta factor and pairing", 60, sonin_theta},
        {9, "p-adic Sonin", 1, padic_sonin},
        {10, "Xi factorization and zeros", 300, xi_factorization},
        {11, "metaplectic suite", 10, metaplectic_suite},
        {12, "bounds", 10, bounds},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && secs <= c.budget_s;
        failed += !pass;
        std::printf("%s criterion %d (%s): %s [%.2f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d of 12 criteria passed\n", 12 - failed);
    return failed == 0 ? 0 : 1;
}
