#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "prolate_lab/error.hpp"
#include "prolate_lab/padic.hpp"

using namespace prolate;

namespace {

constexpr long kPrimes[] = {2, 3, 5};

// Direct oracle: transform value on shell m of eps_n, summing the character integral
// shell by shell. int_{|y| = p^k} psi(xy) dy is vol(shell) when |x| p^k <= 1,
// -p^{k-1} when |x| p^k = p, and 0 beyond.
Rational oracle_shell_fourier(long p, int n, int m) {
    const int level = m + n;  // log_p of |x| |y|
    if (level <= 0) return power(p, n) * Rational(p - 1, p);
    if (level == 1) return -power(p, n - 1);
    return 0;
}

}  // namespace

TEST_CASE("shell transforms match the character-sum oracle") {
    for (long p : kPrimes)
        for (int n = -2; n <= 3; ++n) {
            const auto f = padic_fourier(PadicShellFunction::shell(p, n));
            for (int m = -8; m <= 8; ++m) CHECK(f.value_on_shell(m) == ComplexRational(oracle_shell_fourier(p, n, m)));
        }
}

TEST_CASE("transform of eps_0") {
    for (long p : kPrimes) {
        const auto f = padic_fourier(PadicShellFunction::shell(p, 0));
        CHECK(f.tail_start == 0);
        CHECK(f.tail_value == ComplexRational(Rational(p - 1, p)));
        REQUIRE(f.exceptional.size() == 1);
        CHECK(f.exceptional.at(1) == ComplexRational(Rational(-1, p)));
    }
}

TEST_CASE("Sonin generator is Fourier fixed") {
    for (long p : kPrimes) {
        const auto s = sonin_generator(p);
        CHECK(padic_fourier(s) == s);
        CHECK(shell_integral(s).is_zero());
        for (int m = -10; m < 0; ++m) CHECK(padic_fourier(s).value_on_shell(m).is_zero());
        for (int m = -10; m < 0; ++m) CHECK(s.value_on_shell(m).is_zero());
    }
}

TEST_CASE("unit ball is its own transform") {
    for (long p : kPrimes) {
        const auto one = PadicShellFunction::unit_ball(p);
        CHECK_THROWS_AS(padic_fourier(one), Error);
        CHECK(fourier_with_tail(one) == one);
        CHECK(shell_integral(one) == ComplexRational(1));
    }
}

TEST_CASE("involution and Plancherel on shells") {
    for (long p : kPrimes)
        for (int n = 0; n <= 2; ++n) {
            const auto e = PadicShellFunction::shell(p, n);
            const auto f = padic_fourier(e);
            CHECK(fourier_with_tail(f) == e);
            CHECK(shell_norm2(f) == shell_norm2(e));
        }
    // a complex combination with a tail
    PadicShellFunction g = PadicShellFunction::unit_ball(3);
    g.tail_value = ComplexRational(Rational(2, 3), Rational(-1, 5));
    g.tail_start = -2;
    g.exceptional[0] = ComplexRational(Rational(1), Rational(7, 2));
    g.exceptional[4] = ComplexRational(Rational(-5, 9));
    CHECK(fourier_with_tail(fourier_with_tail(g)) == g);
    CHECK(shell_norm2(fourier_with_tail(g)) == shell_norm2(g));
}

TEST_CASE("K = 6 Sonin system has a one-dimensional solution space") {
    for (long p : kPrimes) {
        const SoninSystem sys = sonin_system(p, 6);
        CHECK(sys.unknowns == 7);
        CHECK(sys.rank == 6);
        CHECK(sys.nullity == 1);
        REQUIRE(sys.kernel.size() == 7);
        CHECK(sys.kernel[0] == 1);
        CHECK(sys.kernel[1] == Rational(-1, p));
        for (std::size_t n = 2; n < 7; ++n) CHECK(sys.kernel[n] == 0);
    }
}

TEST_CASE("json layout") {
    const auto j = nlohmann::json::parse(sonin_generator(2).to_json());
    CHECK(j["p"] == 2);
    CHECK(j["exceptional"]["0"][0] == 1.0);
    CHECK(j["exceptional"]["1"][0] == -0.5);
    CHECK(j["tail_value"][0] == 0.0);
    CHECK(j["tail_start"] == -1);
    CHECK_THROWS_AS(sonin_generator(4), Error);
}
