#include "prolate_lab/metaplectic.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "prolate_lab/error.hpp"
#include "prolate_lab/jacobi.hpp"
#include "prolate_lab/parallel.hpp"
#include "prolate_lab/serialize.hpp"

namespace prolate {

namespace {

const ComplexRational kI{Rational(0), Rational(1)};

std::size_t band_length(std::size_t n, int k) {
    const std::size_t off = static_cast<std::size_t>(k < 0 ? -k : k);
    return off >= n ? 0 : n - off;
}

}  // namespace

BandedOperator::BandedOperator(std::size_t n) : n_(n), trust_(n) {}

BandedOperator BandedOperator::identity(std::size_t n) {
    BandedOperator out(n);
    for (std::size_t j = 0; j < n; ++j) out.set(j, j, Surd(1));
    return out;
}

BandedOperator BandedOperator::diagonal(const std::vector<Surd>& d) {
    BandedOperator out(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) out.set(j, j, d[j]);
    return out;
}

std::size_t BandedOperator::bandwidth() const {
    std::size_t bw = 0;
    for (const auto& [k, entries] : bands_) bw = std::max<std::size_t>(bw, static_cast<std::size_t>(std::abs(k)));
    return bw;
}

std::vector<Surd>& BandedOperator::band(int k) {
    auto it = bands_.find(k);
    if (it == bands_.end()) it = bands_.emplace(k, std::vector<Surd>(band_length(n_, k))).first;
    return it->second;
}

Surd BandedOperator::at(std::size_t row, std::size_t col) const {
    if (row >= n_ || col >= n_) throw Error(ErrorKind::Index, "banded operator index out of range");
    const int k = static_cast<int>(col) - static_cast<int>(row);
    const auto it = bands_.find(k);
    return it == bands_.end() ? Surd() : it->second[std::min(row, col)];
}

void BandedOperator::set(std::size_t row, std::size_t col, const Surd& value) {
    if (row >= n_ || col >= n_) throw Error(ErrorKind::Index, "banded operator index out of range");
    const int k = static_cast<int>(col) - static_cast<int>(row);
    if (value.is_zero() && !bands_.contains(k)) return;
    band(k)[std::min(row, col)] = value;
}

void BandedOperator::prune() {
    std::erase_if(bands_, [](const auto& kv) {
        return std::all_of(kv.second.begin(), kv.second.end(), [](const Surd& s) { return s.is_zero(); });
    });
}

BandedOperator& BandedOperator::operator+=(const BandedOperator& o) {
    if (o.n_ != n_) throw Error(ErrorKind::Length, "banded operator sizes differ");
    for (const auto& [k, entries] : o.bands_) {
        auto& mine = band(k);
        for (std::size_t j = 0; j < entries.size(); ++j) mine[j] += entries[j];
    }
    trust_ = std::min(trust_, o.trust_);
    prune();
    return *this;
}

BandedOperator& BandedOperator::operator-=(const BandedOperator& o) {
    BandedOperator neg = o;
    neg *= ComplexRational(-1);
    return *this += neg;
}

BandedOperator& BandedOperator::operator*=(const ComplexRational& z) {
    for (auto& [k, entries] : bands_)
        for (auto& e : entries) e *= z;
    prune();
    return *this;
}

std::vector<std::vector<cplx>> BandedOperator::dense() const {
    std::vector<std::vector<cplx>> out(n_, std::vector<cplx>(n_));
    for (const auto& [k, entries] : bands_)
        for (std::size_t j = 0; j < entries.size(); ++j) {
            const std::size_t row = k >= 0 ? j : j - k;
            out[row][row + k] = entries[j].to_complex();
        }
    return out;
}

BandedOperator operator+(BandedOperator a, const BandedOperator& b) { return a += b; }
BandedOperator operator-(BandedOperator a, const BandedOperator& b) { return a -= b; }
BandedOperator operator*(const ComplexRational& z, BandedOperator a) { return a *= z; }

BandedOperator operator*(const BandedOperator& x, const BandedOperator& y) {
    if (x.size() != y.size()) throw Error(ErrorKind::Length, "banded operator sizes differ");
    const long n = static_cast<long>(x.size());
    BandedOperator out(x.size());
    for (const auto& [kx, bx] : x.bands())
        for (const auto& [ky, by] : y.bands()) {
            if (std::abs(kx + ky) >= n) continue;
            for (long r = 0; r < n; ++r) {
                const long mid = r + kx, col = mid + ky;
                if (mid < 0 || mid >= n || col < 0 || col >= n) continue;
                const Surd& u = bx[std::min(r, mid)];
                const Surd& v = by[std::min(mid, col)];
                if (u.is_zero() || v.is_zero()) continue;
                out.set(r, col, out.at(r, col) + u * v);
            }
        }
    const std::size_t bw = x.bandwidth();
    const std::size_t via_y = y.trust_radius() > bw ? y.trust_radius() - bw : 0;
    out.set_trust_radius(std::min(x.trust_radius(), via_y));
    return out;
}

BandedOperator commutator(const BandedOperator& x, const BandedOperator& y) {
    const std::size_t bw = x.bandwidth() + y.bandwidth();
    if (4 * bw > x.size())
        throw Error(ErrorKind::BandwidthOverflow,
                    "combined bandwidth " + std::to_string(bw) + " exceeds N/4 for N = " + std::to_string(x.size()));
    BandedOperator out = x * y - y * x;
    const std::size_t t = std::min(x.trust_radius(), y.trust_radius());
    out.set_trust_radius(t > bw ? t - bw : 0);
    return out;
}

BandedOperator build_upper_shift(const std::vector<Rational>& a_squared, std::size_t n) {
    if (a_squared.size() + 1 < n) throw Error(ErrorKind::Length, "need a_0^2 .. a_{N-2}^2");
    BandedOperator s(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (sgn(a_squared[j]) <= 0) throw Error(ErrorKind::InvalidArgument, "a_n^2 must be positive");
        s.set(j, j + 1, Surd::sqrt_of(a_squared[j]));
    }
    return s;
}

BandedOperator build_A(const std::vector<Rational>& a_squared, std::size_t n) {
    if (n < 4) throw Error(ErrorKind::InvalidArgument, "build_A needs N >= 4");
    BandedOperator a = build_upper_shift(a_squared, n);
    for (std::size_t j = 0; j + 1 < n; ++j) a.set(j + 1, j, a.at(j, j + 1));
    return a;
}

BandedOperator build_A(const RecurrenceCoefficients& coeffs, std::size_t n) {
    if (coeffs.a_squared.empty()) throw Error(ErrorKind::InvalidArgument, "exact a_n^2 required");
    return build_A(coeffs.a_squared, n);
}

BandedOperator build_number(std::size_t n) {
    if (n < 4) throw Error(ErrorKind::InvalidArgument, "build_number needs N >= 4");
    BandedOperator out(n);
    for (std::size_t j = 1; j < n; ++j) out.set(j, j, Surd(static_cast<long>(j)));
    return out;
}

Rational CoeffLaw::a_squared(std::size_t n) const {
    const Rational m(static_cast<long>(n));
    return (m + 1) * (m + 2 * c);
}

std::vector<Rational> CoeffLaw::table(std::size_t count) const {
    std::vector<Rational> out;
    Rational prev = 0;  // a_{-1}^2
    for (std::size_t n = 0; n < count; ++n) {
        prev += 2 * (Rational(static_cast<long>(n)) + c);
        out.push_back(prev);
    }
    return out;
}

CoeffLaw solve_unique_coeffs(const Rational& c) {
    if (sgn(c) <= 0) throw Error(ErrorKind::InvalidArgument, "coefficient law needs c > 0");
    return CoeffLaw{c};
}

Rational parse_exact_number(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return parse_rational(text);
    const bool negative = !text.empty() && text[0] == '-';
    const std::string whole = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
    const std::string frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.find_first_not_of("0123456789") != std::string::npos ||
        whole.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::InvalidArgument, "not a decimal: '" + text + "'");
    Integer num(whole.empty() ? "0" : whole), den = 1;
    for (const char ch : frac) {
        num = num * 10 + (ch - '0');
        den *= 10;
    }
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
}

// ---- reports ----

namespace {

// Compares every trusted row of op against zero.
IdentityReport check_zero(std::string name, const BandedOperator& op) {
    IdentityReport rep;
    rep.identity = std::move(name);
    rep.rows_checked = op.trust_radius();
    Rational worst_norm = 0;
    double worst = 0.0;
    std::string worst_text = "0";
    for (const auto& [k, entries] : op.bands())
        for (std::size_t j = 0; j < entries.size(); ++j) {
            const std::size_t row = k >= 0 ? j : j - k;
            if (row >= rep.rows_checked || entries[j].is_zero()) continue;
            const Surd& e = entries[j];
            double mag = e.magnitude_bound();
            if (e.is_gaussian_rational()) {
                const Rational nrm = e.gaussian_rational_part().norm();
                mag = std::sqrt(nrm.get_d());
                if (nrm > worst_norm) worst_norm = nrm;
            }
            if (!rep.failure_row || row < *rep.failure_row) {
                rep.failure_row = row;
                rep.failure_detail = "entry (" + std::to_string(row) + "," + std::to_string(row + k) +
                                     ") = " + e.to_string();
            }
            if (mag > worst) {
                worst = mag;
                worst_text = e.is_gaussian_rational() ? to_string(e.gaussian_rational_part()) : e.to_string();
            }
        }
    rep.passed = !rep.failure_row.has_value();
    rep.max_residual_value = worst;
    rep.max_residual = rep.passed ? "0" : worst_text;
    return rep;
}

std::vector<Surd> leading_diagonal(const BandedOperator& op, std::size_t rows) {
    std::vector<Surd> out;
    for (std::size_t j = 0; j < rows && j < op.size(); ++j) out.push_back(op.at(j, j));
    return out;
}

BandedOperator with_trust(BandedOperator op, std::size_t t) {
    op.set_trust_radius(t);
    return op;
}

}  // namespace

std::string IdentityReport::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["rows_checked"] = rows_checked;
    j["max_residual"] = max_residual;
    j["exact"] = exact;
    j["passed"] = passed;
    if (failure_row) {
        j["failure_row"] = *failure_row;
        j["failure_detail"] = failure_detail;
    }
    if (!diagonal.empty()) {
        nlohmann::ordered_json d = nlohmann::ordered_json::array();
        for (const auto& s : diagonal) d.push_back(s.to_string());
        j["diagonal"] = d;
    }
    return j.dump();
}

bool SuiteReport::all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const IdentityReport& r) { return r.passed; });
}

std::string SuiteReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : items) arr.push_back(nlohmann::ordered_json::parse(r.to_json()));
    return arr.dump();
}

SuiteReport commutator_suite(const std::vector<Rational>& a_squared, std::size_t n) {
    if (n < 16) throw Error(ErrorKind::InvalidArgument, "commutator suite needs N >= 16");
    const BandedOperator A = build_A(a_squared, n);
    const BandedOperator Nop = build_number(n);
    const BandedOperator AN = commutator(A, Nop);
    const ComplexRational half_i{Rational(0), Rational(1, 2)};
    // F+- = N -+ (i/2)[A,N], since 1/(2i) = -i/2
    const BandedOperator Fp = Nop - half_i * AN;
    const BandedOperator Fm = Nop + half_i * AN;

    auto a2 = [&](long j) { return j < 0 ? Rational(0) : a_squared.at(static_cast<std::size_t>(j)); };

    SuiteReport report;
    report.items.resize(5);
    parallel_for(5, [&](std::size_t item) {
        switch (item) {
            case 0:
                report.items[0] = check_zero("[[A,N],N]=A", commutator(AN, Nop) - A);
                break;
            case 1: {
                const BandedOperator lhs = commutator(Fp, Fm);
                report.items[1] = check_zero("[F+,F-]=-iA", lhs + kI * A);
                break;
            }
            case 2: {
                const BandedOperator x = commutator(A, AN);
                std::vector<Surd> f;
                for (long j = 0; j < static_cast<long>(n); ++j) f.emplace_back(ComplexRational(2 * (a2(j - 1) - a2(j))));
                auto rep = check_zero("[A,[A,N]]=f(N)", x - BandedOperator::diagonal(f));
                rep.diagonal = leading_diagonal(x, rep.rows_checked);
                report.items[2] = std::move(rep);
                break;
            }
            case 3: {
                const BandedOperator y = commutator(A, Fp) - ComplexRational(0, 2) * Fp;
                std::vector<Surd> d;
                for (long j = 0; j < static_cast<long>(n); ++j)
                    d.emplace_back(ComplexRational(0, -2 * Rational(j) + a2(j) - a2(j - 1)));
                auto rep = check_zero("[A,F+]=2iF++Y", y - BandedOperator::diagonal(d));
                rep.diagonal = leading_diagonal(y, rep.rows_checked);
                report.items[3] = std::move(rep);
                break;
            }
            case 4: {
                const BandedOperator g = Fp - half_i * A;
                const BandedOperator target = Nop - kI * build_upper_shift(a_squared, n);
                report.items[4] = check_zero("F+-(i/2)A=N-iS", g - with_trust(target, g.trust_radius()));
                break;
            }
        }
    });
    return report;
}

namespace {

struct Sl2Images {
    BandedOperator h, k, ep, em;
};

Sl2Images sl2_images(const std::vector<Rational>& a_squared, std::size_t n, const Sl2Convention& conv) {
    const BandedOperator A = build_A(a_squared, n);
    const BandedOperator Nop = build_number(n);
    const BandedOperator AN = commutator(A, Nop);
    const ComplexRational half_i{Rational(0), Rational(1, 2)};
    const BandedOperator Fp = Nop - half_i * AN;
    const BandedOperator Fm = Nop + half_i * AN;
    const BandedOperator shift = ComplexRational(conv.shift) * BandedOperator::identity(n);
    const ComplexRational coeff{Rational(0), conv.scale / 2};
    return {ComplexRational(0, -1) * A, ComplexRational(conv.scale) * (Nop + shift), coeff * (Fp + shift),
            coeff * (ComplexRational(-1) * Fm - shift)};
}

}  // namespace

std::vector<DiscrepancyRow> discrepancy_vanishing_scan(const std::vector<Rational>& c_grid, std::size_t n_max,
                                                       const Sl2Convention& conv) {
    const std::size_t n = std::max<std::size_t>(16, n_max + 8);
    std::vector<DiscrepancyRow> out;
    for (const auto& c : c_grid) {
        const auto law = solve_unique_coeffs(c);
        const auto a_sq = law.table(n);
        const Sl2Images s = sl2_images(a_sq, n, conv);
        const BandedOperator defect = commutator(s.h, s.ep) - ComplexRational(2) * s.ep;

        DiscrepancyRow row;
        row.c = c;
        row.d0_over_i = a_sq[0];  // Y_00 / i = -0 + a_0^2 - a_{-1}^2
        row.rows = std::min(n_max + 1, defect.trust_radius());
        Rational worst = 0;
        bool off_diagonal = false;
        for (const auto& [k, entries] : defect.bands())
            for (std::size_t j = 0; j < entries.size(); ++j) {
                const std::size_t r = k >= 0 ? j : j - k;
                if (r >= row.rows || entries[j].is_zero()) continue;
                if (k != 0 || !entries[j].is_gaussian_rational()) off_diagonal = true;
                const Rational nrm = entries[j].gaussian_rational_part().norm();
                if (nrm > worst) worst = nrm;
            }
        if (off_diagonal) throw Error(ErrorKind::InvalidArgument, "discrepancy is not a rational diagonal");
        // |d| = sqrt(norm); the defect is i times a rational, so the root is exact
        mpz_class num, den;
        mpz_sqrt(num.get_mpz_t(), worst.get_num_mpz_t());
        mpz_sqrt(den.get_mpz_t(), worst.get_den_mpz_t());
        row.max_abs_discrepancy = Rational(num, den);
        row.max_abs_discrepancy.canonicalize();
        if (row.max_abs_discrepancy * row.max_abs_discrepancy != worst)
            throw Error(ErrorKind::InvalidArgument, "discrepancy magnitude is irrational");
        row.vanishes = sgn(worst) == 0;
        out.push_back(std::move(row));
    }
    return out;
}

std::string to_json(const std::vector<DiscrepancyRow>& table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : table) {
        nlohmann::ordered_json j;
        j["c"] = to_string(r.c);
        j["d0_over_i"] = to_string(r.d0_over_i);
        j["max_abs_discrepancy"] = to_string(r.max_abs_discrepancy);
        j["rows"] = r.rows;
        j["vanishes"] = r.vanishes;
        arr.push_back(j);
    }
    return arr.dump();
}

SuiteReport sl2_casimir_check(std::size_t n, const Sl2Convention& conv, double lambda, int prolate_rows) {
    if (n < 32) throw Error(ErrorKind::InvalidArgument, "sl2 check needs N >= 32");
    const auto a_sq = solve_unique_coeffs(Rational(1, 4)).table(n);
    const Sl2Images s = sl2_images(a_sq, n, conv);

    SuiteReport report;
    report.items.push_back(check_zero("[h,e+]=2e+", commutator(s.h, s.ep) - ComplexRational(2) * s.ep));
    report.items.push_back(check_zero("[h,e-]=-2e-", commutator(s.h, s.em) + ComplexRational(2) * s.em));
    report.items.push_back(check_zero("[e+,e-]=h", commutator(s.ep, s.em) - s.h));
    const BandedOperator hh = s.h * s.h;
    const BandedOperator casimir = hh + ComplexRational(2) * (s.ep * s.em + s.em * s.ep);
    report.items.push_back(check_zero(
        "casimir=-3/4", casimir + ComplexRational(Rational(3, 4)) * with_trust(BandedOperator::identity(n), n)));

    // sigma(h)^2 + 4 pi lambda^2 sigma(k) - 1/4 on rows of one parity against
    // the explicit prolate block; off-diagonals agree up to sign.
    const double w = 4.0 * std::numbers::pi * lambda * lambda;
    const auto hd = hh.dense();
    const auto kd = s.k.dense();
    const std::size_t trusted = std::min(hh.trust_radius(), s.k.trust_radius());
    for (const Parity parity : {Parity::Even, Parity::Odd}) {
        IdentityReport rep;
        rep.identity = std::string("prolate_") + to_string(parity) + "_rows";
        rep.exact = false;
        const auto J = build_prolate_explicit(lambda, parity, prolate_rows + 1);
        const std::size_t shift = parity == Parity::Even ? 0 : 1;
        auto entry = [&](std::size_t r, std::size_t c) {
            return hd[r][c] + w * kd[r][c] - (r == c ? 0.25 : 0.0);
        };
        double worst = 0.0;
        for (int m = 0; m < prolate_rows; ++m) {
            const std::size_t r = 2 * m + shift;
            if (r + 2 >= trusted) throw Error(ErrorKind::InvalidArgument, "prolate rows exceed the trusted strip");
            const double ref_d = J.diag[m], ref_o = -J.offdiag[m];
            const double dd = std::abs(entry(r, r) - ref_d) / std::max(1.0, std::abs(ref_d));
            const double od = std::abs(entry(r, r + 2) - ref_o) / std::max(1.0, std::abs(ref_o));
            const double odd_band = std::abs(entry(r, r + 1));
            const double e = std::max({dd, od, odd_band});
            if (e > 1e-12 && !rep.failure_row) {
                rep.failure_row = r;
                rep.failure_detail = "relative deviation " + format15(e);
            }
            worst = std::max(worst, e);
            ++rep.rows_checked;
        }
        rep.max_residual_value = worst;
        rep.max_residual = format15(worst);
        rep.passed = worst <= 1e-12;
        report.items.push_back(std::move(rep));
    }
    return report;
}

Rational power_moment(const std::vector<Rational>& a_squared, int k) {
    if (k < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
    const std::size_t need = static_cast<std::size_t>(k / 2 + 1);
    if (a_squared.size() < need) throw Error(ErrorKind::Length, "not enough coefficients for this power");
    // v = T^j e_0 has support in [0, j]; (T v)_i = v_{i-1} + a_i^2 v_{i+1}
    std::vector<Rational> v(static_cast<std::size_t>(k) + 2, Rational(0));
    v[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<Rational> next(v.size(), Rational(0));
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (i > 0) next[i] += v[i - 1];
            if (i < a_squared.size()) next[i] += a_squared[i] * v[i + 1];
        }
        v = std::move(next);
    }
    return v[0];
}

Rational moments_via_power(const std::vector<Rational>& a_squared, int m) {
    if (m < 0 || m > 20) throw Error(ErrorKind::InvalidArgument, "moments_via_power needs 0 <= m <= 20");
    return power_moment(a_squared, 2 * m);
}

IdentityReport leading_coefficient_check(int n_max) {
    IdentityReport rep;
    rep.identity = "k_n^2=4^n/(2n)!";
    const auto a_sq = solve_unique_coeffs(Rational(1, 4)).table(static_cast<std::size_t>(2 * n_max + 2));
    // Hankel matrix [c_{i+j}], i, j <= n_max
    std::vector<std::vector<Rational>> hankel(n_max + 1, std::vector<Rational>(n_max + 1));
    for (int i = 0; i <= n_max; ++i)
        for (int j = 0; j <= n_max; ++j) hankel[i][j] = power_moment(a_sq, i + j);
    const auto pivots = elimination_pivots(hankel);  // pivot n = D_n / D_{n-1}
    rep.passed = true;
    for (int n = 0; n <= n_max; ++n) {
        const Rational k2 = 1 / pivots[n];
        Rational expected(Integer(1) << (2 * n), factorial(static_cast<unsigned>(2 * n)));
        expected.canonicalize();
        ++rep.rows_checked;
        if (k2 != expected) {
            rep.passed = false;
            if (!rep.failure_row) {
                rep.failure_row = static_cast<std::size_t>(n);
                rep.failure_detail = "k_n^2 = " + to_string(k2) + ", expected " + to_string(expected);
                rep.max_residual = to_string(Rational(k2 - expected));
            }
        }
    }
    return rep;
}

}  // namespace prolate
