#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "oracles.hpp"
#include "prolate_lab/error.hpp"
#include "prolate_lab/mellin.hpp"

using namespace prolate;

namespace {

// 2^{-3/4} pi^{-z/2} Gamma(z/2) at z = 1/2 - is, in long double
std::complex<double> oracle_h0_transform(double s) {
    using L = long double;
    const oracle::lcplx z(0.5L, -L(s));
    const oracle::lcplx v = std::exp(oracle::log_gamma(z / 2.0L) - z / 2.0L * std::log(3.14159265358979323846L)) *
                            std::pow(2.0L, -0.75L);
    return {double(v.real()), double(v.imag())};
}

const EvenRealFunction kH0 = EvenRealFunction::hermite(0);
const EvenRealFunction kH2 = EvenRealFunction::hermite(1);

}  // namespace

TEST_CASE("transform of h0 is the archimedean factor") {
    const auto grid = uniform_grid(-20, 20, 81);
    const auto u = unitary_transform(kH0, grid);
    const auto m = mellin_transform(kH0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto ref = oracle_h0_transform(grid[i]);
        CHECK(std::abs(m.values[i] - ref) < 1e-10);
        CHECK(std::abs(u.values[i] - ref / std::sqrt(kPi)) < 1e-10);
    }
    CHECK(m.quadrature_error < 1e-12);
    const auto zero = mellin_transform(kH0, {0.0});
    CHECK(zero.values[0].real() == doctest::Approx(1.61927686153175).epsilon(1e-13));
}

TEST_CASE("transform of a real function is conjugate symmetric") {
    const auto grid = uniform_grid(-15, 15, 61);
    const auto m = mellin_transform(EvenRealFunction::psi(2, Parity::Odd), grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(m.values[i] - std::conj(m.values[grid.size() - 1 - i])) < 1e-12);
}

TEST_CASE("step halving failure is reported") {
    MellinOptions coarse;
    coarse.step = 0.5;
    CHECK_THROWS_AS(mellin_transform(kH2, {15.0}, coarse), Error);
    CHECK_THROWS_AS(mellin_transform(kH0, {1.0, 0.0}), Error);
}

TEST_CASE("smooth numbers") {
    const std::vector<double> expect{1, 2, 3, 4, 6, 8, 9, 12, 16, 18};
    CHECK(smooth_numbers(PlaceSet{2, 3}, 20) == expect);
    CHECK(smooth_numbers(PlaceSet{}, 1e9) == std::vector<double>{1.0});
}

TEST_CASE("E_S maps") {
    for (double u : {0.3, 1.0, 2.5}) CHECK(e_map(kH2, PlaceSet{}, u) == doctest::Approx(std::sqrt(u) * kH2(u)).epsilon(1e-15));
    double direct = 0.0;
    for (int k = 0; k < 30; ++k) direct += std::pow(2.0, 0.25) * std::exp(-kPi * std::pow(4.0, k));
    CHECK(e_map(kH0, PlaceSet{2}, 1.0) == doctest::Approx(direct).epsilon(1e-15));
    // 3-smooth sum at u = 0.05 against brute force over all integers
    double brute = 0.0;
    for (long n = 1; n <= 100000; ++n) {
        long m = n;
        while (m % 2 == 0) m /= 2;
        while (m % 3 == 0) m /= 3;
        if (m == 1) brute += kH0(0.05 * double(n));
    }
    CHECK(e_map(kH0, PlaceSet{2, 3}, 0.05) == doctest::Approx(std::sqrt(0.05) * brute).epsilon(1e-13));
}

TEST_CASE("Poisson form of the full E map") {
    const EvenRealFunction psi = EvenRealFunction::psi(1, Parity::Even);
    for (double u : {1.5, 2.0, 3.0}) {
        // direct summation oracle at 1/u
        double direct = 0.0;
        for (long n = 1; n <= 200; ++n) direct += psi(double(n) / u);
        direct /= std::sqrt(u);
        CHECK(std::abs(e_map_all(psi, 1.0 / u) - direct) < 1e-12);
        CHECK(std::abs(e_map_all(psi, 1.0 / u) - e_map_all(psi, u)) < 1e-10);
    }
    const EvenRealFunction odd = EvenRealFunction::psi(1, Parity::Odd);
    CHECK(std::abs(e_map_all(odd, 0.5) + e_map_all(odd, 2.0)) < 1e-10);
    EvenRealFunction unknown = EvenRealFunction::from_gaussian(psi_family(1, Parity::Even));
    CHECK_NOTHROW(e_map_all(unknown, 2.0));
    try {
        (void)e_map_all(unknown, 0.5);
        FAIL("expected missing-eigenvalue error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingFourierEigenvalue);
    }
}

TEST_CASE("Euler factor identity") {
    const auto grid = uniform_grid(-10, 10, 81);
    CHECK(verify_ms0(kH0, PlaceSet{}, grid).residual < 1e-12);
    CHECK(verify_ms0(kH0, PlaceSet{2}, grid).residual < 1e-8);
    CHECK(verify_ms0(kH2, PlaceSet{2, 3}, grid).residual < 1e-7);
}

TEST_CASE("E_S intertwining ratio is independent of f") {
    const auto grid = uniform_grid(-8, 8, 33);
    const PlaceSet S{2, 3};
    std::vector<std::vector<cplx>> ratios;
    std::vector<std::vector<bool>> usable;
    for (const EvenRealFunction& f : {kH0, kH2, EvenRealFunction::psi(1, Parity::Even)}) {
        const auto lhs = multiplicative_fourier([&](double u) { return e_map(f, S, u); }, grid);
        const auto base = mellin_transform(f, grid);
        std::vector<cplx> r;
        std::vector<bool> ok;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ok.push_back(std::abs(base.values[i]) > 1e-6);
            r.push_back(ok.back() ? lhs.values[i] / base.values[i] : 0.0);
        }
        ratios.push_back(r);
        usable.push_back(ok);
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t k = 1; k < 3; ++k)
            if (usable[0][i] && usable[k][i]) CHECK(std::abs(ratios[k][i] - ratios[0][i]) < 1e-7);
}

TEST_CASE("theta factor identity") {
    const auto grid = uniform_grid(-10, 10, 81);
    CHECK(verify_theta_factor(kH0, PlaceSet{2}, grid).residual < 1e-9);
    CHECK(verify_theta_factor(kH2, PlaceSet{2, 3}, grid).residual < 1e-9);
    // at s = 0 the factor is prod (1 - p^{-1/2})
    const auto theta = multiplicative_fourier([](double u) { return theta_w(kH0, PlaceSet{2, 3}, u); }, {0.0});
    const auto base = mellin_transform(kH0, {0.0});
    const double expect = (1 - std::sqrt(0.5)) * (1 - 1 / std::sqrt(3.0));
    CHECK(std::abs(theta.values[0].imag()) < 1e-14);
    CHECK(theta.values[0].real() / base.values[0].real() == doctest::Approx(expect).epsilon(1e-12));
    // theta transform times prod L_p(1/2 + is) recovers the archimedean transform
    const auto g = uniform_grid(-6, 6, 13);
    const auto th = multiplicative_fourier([](double u) { return theta_w(kH0, PlaceSet{2}, u); }, g);
    const auto b = mellin_transform(kH0, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(th.values[i] * local_factor(Place::prime(2), cplx(0.5, g[i])) - b.values[i]) < 1e-12);
}

TEST_CASE("pairing identity") {
    const auto a = pairing_check(kH0, kH0, PlaceSet{2});
    CHECK(a.residual < 1e-8);
    CHECK(a.xspace_side == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(a.mellin_side_imag) < 1e-10);
    CHECK(a.cancellation < 1e-10);
    const auto b = pairing_check(kH0, kH2, PlaceSet{2});
    CHECK(std::abs(b.mellin_side) < 1e-8);
    CHECK(std::abs(b.xspace_side) < 1e-8);
    CHECK(pairing_check(kH2, kH2, PlaceSet{2, 3}).residual < 1e-7);
}

TEST_CASE("Xi factorization") {
    const auto grid = uniform_grid(0, 30, 121);
    for (int ell : {1, 2})
        for (Parity parity : {Parity::Even, Parity::Odd}) {
            const auto r = verify_prope(ell, parity, grid);
            CHECK(r.check.residual < 1e-6 * r.check.scale);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (parity == Parity::Even) CHECK(std::abs(r.lhs[i].imag()) < 1e-12);
                else CHECK(std::abs(r.lhs[i].real()) < 1e-12);
            }
        }
    // the transform changes sign across the first zero of zeta
    const auto near = verify_prope(1, Parity::Even, {14.10, 14.13, 14.14, 14.17});
    CHECK((near.lhs[1].real() < 0) != (near.lhs[2].real() < 0));
    CHECK((near.lhs[0].real() < 0) == (near.lhs[1].real() < 0));
}

TEST_CASE("weight ratio bounds") {
    const auto grid = default_grid();
    const auto inf = weight_ratio_bounds(PlaceSet{}, grid);
    CHECK(inf.min_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inf.max_ratio == doctest::Approx(1.0).epsilon(1e-14));
    const auto two = weight_ratio_bounds(PlaceSet{2}, grid);
    CHECK(two.contained);
    CHECK(two.lower == doctest::Approx(std::pow(1 + std::sqrt(0.5), -2)).epsilon(1e-15));
    CHECK(two.upper == doctest::Approx(std::pow(1 - std::sqrt(0.5), -2)).epsilon(1e-15));
    // the reciprocal ratio sits in [(1 - 2^{-1/2})^2, (1 + 2^{-1/2})^2]
    CHECK(1 / two.max_ratio >= std::pow(1 - std::sqrt(0.5), 2) * (1 - 1e-12));
    CHECK(1 / two.min_ratio <= std::pow(1 + std::sqrt(0.5), 2) * (1 + 1e-12));
    // the extremes are attained where 2^{-is} = +-1
    const auto at = weight_ratio_bounds(PlaceSet{2}, {0.0, kPi / std::log(2.0)});
    CHECK(at.max_ratio == doctest::Approx(two.upper).epsilon(1e-12));
    CHECK(at.min_ratio == doctest::Approx(two.lower).epsilon(1e-12));
    const auto r1 = weight_ratio_bounds(PlaceSet{2, 3}, {-3.7});
    const auto r2 = weight_ratio_bounds(PlaceSet{2, 3}, {3.7});
    CHECK(r1.min_ratio == doctest::Approx(r2.min_ratio).epsilon(1e-14));
    CHECK(weight_ratio_bounds(PlaceSet{2, 3, 5}, grid).contained);
}

TEST_CASE("serialization") {
    const auto m = mellin_transform(kH0, {-1.0, 0.0, 1.0});
    const std::string csv = m.to_csv();
    CHECK(csv.rfind("s,re,im,err\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const auto j = nlohmann::json::parse(m.to_json());
    CHECK(j["s"].size() == 3);
    CHECK(j["re"][1].get<double>() == doctest::Approx(1.61927686153175).epsilon(1e-14));
    CHECK(parse_function("h2").label == "h2");
    CHECK(parse_function("psi2-").label == "psi2-");
    CHECK_THROWS_AS(parse_function("h3"), Error);
    CHECK_THROWS_AS(parse_function("q"), Error);
}
