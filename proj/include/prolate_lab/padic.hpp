#pragma once

#include <map>
#include <string>
#include <vector>

#include "prolate_lab/rational.hpp"

namespace prolate {

// Z_p^*-invariant function sum_n a_n eps_n on Q_p, eps_n the indicator of |x| = p^n.
// Shells n <= tail_start all carry tail_value; exceptional keys are > tail_start.
struct PadicShellFunction {
    long p = 2;
    std::map<int, ComplexRational> exceptional;
    ComplexRational tail_value;
    int tail_start = -1;

    static PadicShellFunction shell(long p, int n);
    static PadicShellFunction unit_ball(long p);  // 1_{Z_p}

    ComplexRational value_on_shell(int n) const;
    bool has_tail() const { return !tail_value.is_zero(); }
    // Canonical form: no zero or tail-equal exceptional entries next to the tail.
    void normalize();
    std::string to_json() const;
};

bool operator==(PadicShellFunction a, PadicShellFunction b);

Rational power(long p, int n);

// Fourier transform of a finitely supported shell function (nonzero-tail error otherwise).
PadicShellFunction padic_fourier(const PadicShellFunction& phi);
// Same transform, with the tail handled as tail_value * 1_{|x| <= p^tail_start}.
PadicShellFunction fourier_with_tail(const PadicShellFunction& phi);

// Haar measure with vol(Z_p) = 1: vol(eps_n) = p^n (1 - 1/p).
ComplexRational shell_integral(const PadicShellFunction& phi);
Rational shell_norm2(const PadicShellFunction& phi);

// sigma_p = eps_0 - eps_1 / p
PadicShellFunction sonin_generator(long p);

struct SoninSystem {
    int K = 0;
    std::size_t unknowns = 0;
    std::size_t equations = 0;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    std::vector<Rational> kernel;  // scaled so that a_0 = 1 when nullity = 1
};

// Shell functions on shells [0, K] whose transform vanishes on all shells < 0.
SoninSystem sonin_system(long p, int K = 6);

}  // namespace prolate
