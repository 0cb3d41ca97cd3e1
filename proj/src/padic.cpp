#include "prolate_lab/padic.hpp"

#include <algorithm>
#include <json.hpp>

#include "prolate_lab/error.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate {

Rational power(long p, int n) {
    Integer base = p, big;
    mpz_pow_ui(big.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
    Rational r = n < 0 ? Rational(1, 1) / Rational(big) : Rational(big);
    r.canonicalize();
    return r;
}

namespace {

void require_prime(long p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

Rational shell_volume(long p, int n) { return power(p, n) * Rational(p - 1, p); }

// Transform value on shell m of the finitely supported part.
ComplexRational exceptional_fourier(const PadicShellFunction& phi, int m) {
    ComplexRational out;
    for (const auto& [n, a] : phi.exceptional) {
        if (n <= -m) out += a * ComplexRational(shell_volume(phi.p, n));
        if (n == 1 - m) out -= a * ComplexRational(power(phi.p, n - 1));
    }
    return out;
}

}  // namespace

PadicShellFunction PadicShellFunction::shell(long p, int n) {
    require_prime(p);
    PadicShellFunction f;
    f.p = p;
    f.exceptional[n] = ComplexRational(1);
    f.tail_start = n - 1;
    return f;
}

PadicShellFunction PadicShellFunction::unit_ball(long p) {
    require_prime(p);
    PadicShellFunction f;
    f.p = p;
    f.tail_value = ComplexRational(1);
    f.tail_start = 0;
    return f;
}

ComplexRational PadicShellFunction::value_on_shell(int n) const {
    if (n <= tail_start) return tail_value;
    const auto it = exceptional.find(n);
    return it == exceptional.end() ? ComplexRational() : it->second;
}

void PadicShellFunction::normalize() {
    for (auto it = exceptional.begin(); it != exceptional.end();)
        it = it->second.is_zero() ? exceptional.erase(it) : std::next(it);
    if (!has_tail()) {
        tail_value = ComplexRational();
        tail_start = exceptional.empty() ? -1 : exceptional.begin()->first - 1;
        return;
    }
    for (auto it = exceptional.find(tail_start + 1); it != exceptional.end() && it->second == tail_value;
         it = exceptional.find(tail_start + 1)) {
        exceptional.erase(it);
        ++tail_start;
    }
}

bool operator==(PadicShellFunction a, PadicShellFunction b) {
    a.normalize();
    b.normalize();
    return a.p == b.p && a.tail_value == b.tail_value && a.tail_start == b.tail_start && a.exceptional == b.exceptional;
}

std::string PadicShellFunction::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto& [n, a] : exceptional) ex[std::to_string(n)] = {a.real_double(), a.imag_double()};
    j["exceptional"] = ex;
    j["tail_value"] = {tail_value.real_double(), tail_value.imag_double()};
    j["tail_start"] = tail_start;
    return j.dump();
}

PadicShellFunction padic_fourier(const PadicShellFunction& phi) {
    if (phi.has_tail())
        throw Error(ErrorKind::NonzeroTail, "padic_fourier needs a finitely supported input; use fourier_with_tail");
    return fourier_with_tail(phi);
}

PadicShellFunction fourier_with_tail(const PadicShellFunction& phi) {
    require_prime(phi.p);
    PadicShellFunction out;
    out.p = phi.p;
    const bool tail = phi.has_tail();
    if (!tail && phi.exceptional.empty()) return out;
    // the tail c 1_{|x| <= p^T} transforms to c p^T 1_{|x| <= p^{-T}}
    const ComplexRational tail_image = tail ? phi.tail_value * ComplexRational(power(phi.p, phi.tail_start)) : ComplexRational();
    auto value = [&](int m) {
        ComplexRational v = exceptional_fourier(phi, m);
        if (tail && m <= -phi.tail_start) v += tail_image;
        return v;
    };
    const int hi = phi.exceptional.empty() ? phi.tail_start : phi.exceptional.rbegin()->first;
    int top = tail ? -phi.tail_start : 0;
    if (!phi.exceptional.empty()) top = std::max(top, 1 - phi.exceptional.begin()->first);
    out.tail_start = -hi;
    out.tail_value = value(-hi);
    for (int m = -hi + 1; m <= top; ++m) out.exceptional[m] = value(m);
    out.normalize();
    return out;
}

ComplexRational shell_integral(const PadicShellFunction& phi) {
    ComplexRational total = phi.tail_value * ComplexRational(power(phi.p, phi.tail_start));
    for (const auto& [n, a] : phi.exceptional) total += a * ComplexRational(shell_volume(phi.p, n));
    return total;
}

Rational shell_norm2(const PadicShellFunction& phi) {
    Rational total = phi.tail_value.norm() * power(phi.p, phi.tail_start);
    for (const auto& [n, a] : phi.exceptional) total += a.norm() * shell_volume(phi.p, n);
    return total;
}

PadicShellFunction sonin_generator(long p) {
    require_prime(p);
    PadicShellFunction s;
    s.p = p;
    s.exceptional[0] = ComplexRational(1);
    s.exceptional[1] = ComplexRational(Rational(-1, p));
    s.tail_start = -1;
    return s;
}

SoninSystem sonin_system(long p, int K) {
    require_prime(p);
    if (K < 1) throw Error(ErrorKind::InvalidArgument, "K must be positive");
    SoninSystem out;
    out.K = K;
    out.unknowns = std::size_t(K + 1);
    // Row for shell m < 0 of the transform of sum_{n=0}^K a_n eps_n. Shells m <= -K all
    // see the same row, so m = -1 .. -K covers every constraint.
    std::vector<std::vector<Rational>> rows;
    for (int m = -1; m >= -K; --m) {
        std::vector<Rational> row(out.unknowns, Rational(0));
        for (int n = 0; n <= K; ++n) {
            if (n <= -m) row[std::size_t(n)] += shell_volume(p, n);
            if (n == 1 - m) row[std::size_t(n)] -= power(p, n - 1);
        }
        rows.push_back(std::move(row));
    }
    out.equations = rows.size();
    const RationalNullspace ns = rational_nullspace(rows);
    out.rank = ns.rank;
    out.nullity = ns.basis.size();
    if (out.nullity == 1) {
        out.kernel = ns.basis[0];
        if (sgn(out.kernel[0]) != 0) {
            const Rational scale = out.kernel[0];
            for (auto& v : out.kernel) v /= scale;
        }
    }
    return out;
}

}  // namespace prolate
