#include "prolate_lab/surd.hpp"

#include <cmath>
#include <numeric>

#include "prolate_lab/error.hpp"

namespace prolate {

namespace {

std::int64_t checked_product(std::int64_t a, std::int64_t b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw Error(ErrorKind::Overflow, "surd radicand exceeds 64 bits");
    return static_cast<std::int64_t>(p);
}

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw Error(ErrorKind::Overflow, "surd radicand exceeds 64 bits");
    return z.get_si();
}

}  // namespace

std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t m) {
    if (m <= 0) throw Error(ErrorKind::InvalidArgument, "squarefree_split needs m > 0");
    std::int64_t square = 1, free = 1;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        while (m % (d * d) == 0) {
            m /= d * d;
            square *= d;
        }
        if (m % d == 0) {
            m /= d;
            free *= d;
        }
    }
    return {square, free * m};
}

Surd::Surd(ComplexRational z) {
    if (!z.is_zero()) terms_.emplace(1, std::move(z));
}

Surd Surd::sqrt_of(const Rational& q) {
    if (sgn(q) < 0) throw Error(ErrorKind::InvalidArgument, "sqrt of a negative rational");
    if (sgn(q) == 0) return {};
    // sqrt(p/d) = sqrt(p d) / d
    const Integer pd = q.get_num() * q.get_den();
    const auto [square, free] = squarefree_split(to_int64(pd));
    Rational coeff(Integer(square), q.get_den());
    coeff.canonicalize();
    Surd out;
    out.terms_.emplace(free, ComplexRational(coeff));
    return out;
}

bool Surd::is_gaussian_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

ComplexRational Surd::gaussian_rational_part() const {
    const auto it = terms_.find(1);
    return it == terms_.end() ? ComplexRational() : it->second;
}

void Surd::add_term(std::int64_t radicand, const ComplexRational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(radicand, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Surd& Surd::operator+=(const Surd& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Surd& Surd::operator-=(const Surd& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Surd& Surd::operator*=(const Surd& o) {
    Surd out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            // sqrt(m1) sqrt(m2) = g sqrt(m1 m2 / g^2), squarefree since m1, m2 are
            const std::int64_t g = std::gcd(m1, m2);
            out.add_term(checked_product(m1 / g, m2 / g), c1 * c2 * ComplexRational(Rational(Integer(g))));
        }
    terms_ = std::move(out.terms_);
    return *this;
}

Surd& Surd::operator*=(const ComplexRational& z) {
    if (z.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= z;
    return *this;
}

cplx Surd::to_complex() const {
    cplx sum = 0.0;
    for (const auto& [m, c] : terms_) sum += std::sqrt(double(m)) * cplx(c.real_double(), c.imag_double());
    return sum;
}

double Surd::magnitude_bound() const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) sum += std::sqrt(double(m)) * std::sqrt(c.norm().get_d());
    return sum;
}

std::string Surd::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + prolate::to_string(c) + ")";
        if (m != 1) out += "*sqrt(" + std::to_string(m) + ")";
    }
    return out;
}

Surd operator+(Surd a, const Surd& b) { return a += b; }
Surd operator-(Surd a, const Surd& b) { return a -= b; }
Surd operator-(const Surd& a) { return Surd() - a; }
Surd operator*(Surd a, const Surd& b) { return a *= b; }

}  // namespace prolate
