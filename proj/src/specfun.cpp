#include "prolate_lab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "prolate_lab/error.hpp"

namespace prolate {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Place Place::prime(long p) {
    if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    return Place(p);
}

std::string Place::label() const { return is_archimedean() ? "inf" : std::to_string(p_); }

PlaceSet::PlaceSet(std::initializer_list<long> primes) : PlaceSet(std::vector<long>(primes)) {}

PlaceSet::PlaceSet(std::vector<long> primes) : primes_(std::move(primes)) {
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!is_prime(primes_[i]))
            throw Error(ErrorKind::InvalidArgument, std::to_string(primes_[i]) + " is not prime");
        if (i > 0 && primes_[i] <= primes_[i - 1])
            throw Error(ErrorKind::InvalidArgument, "primes must be strictly increasing");
    }
}

PlaceSet PlaceSet::parse(const std::string& text) {
    std::vector<long> ps;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty() || item == "inf") continue;
        try {
            std::size_t used = 0;
            const long p = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            ps.push_back(p);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "bad place '" + item + "'");
        }
    }
    std::sort(ps.begin(), ps.end());
    return PlaceSet(std::move(ps));
}

std::vector<Place> PlaceSet::places() const {
    std::vector<Place> out;
    for (long p : primes_) out.push_back(Place::prime(p));
    out.push_back(Place::archimedean());
    return out;
}

std::string PlaceSet::label() const {
    std::string out = "{";
    for (long p : primes_) out += std::to_string(p) + ",";
    return out + "inf}";
}

namespace {

// Lanczos approximation with g = 607/128 and 14 correction terms.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5,
};

cplx lanczos_log_gamma(cplx z) {
    const cplx shifted = z + 5.24218750000000000;
    const cplx head = (z + 0.5) * std::log(shifted) - shifted;
    cplx ser = 0.999999999999997092;
    for (std::size_t j = 0; j < kLanczos.size(); ++j) ser += kLanczos[j] / (z + double(j + 1));
    return head + std::log(2.5066282746310005 * ser) - std::log(z);
}

// B_2, B_4, ..., B_18
constexpr std::array<double, 9> kBernoulli = {
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
};

}  // namespace

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
        throw Error(ErrorKind::Pole, "gamma has a pole at " + std::to_string(z.real()));
    if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
    return lanczos_log_gamma(z);
}

cplx log_local_factor(const Place& v, cplx z) {
    if (v.is_archimedean()) {
        const cplx half = 0.5 * z;
        if (half.imag() == 0.0 && half.real() <= 0.0 && half.real() == std::round(half.real()))
            throw Error(ErrorKind::Pole, "archimedean factor has a pole at " + std::to_string(z.real()));
        return -half * std::log(kPi) + log_gamma(half);
    }
    const cplx q = std::exp(-z * std::log(double(v.p())));
    const cplx denom = 1.0 - q;
    if (std::abs(denom) < 1e-15)
        throw Error(ErrorKind::Pole, "local factor at p=" + std::to_string(v.p()) + " has a pole");
    return -std::log(denom);
}

cplx local_factor(const Place& v, cplx z) {
    if (v.is_archimedean()) return std::exp(log_local_factor(v, z));
    const cplx q = std::exp(-z * std::log(double(v.p())));
    const cplx denom = 1.0 - q;
    if (std::abs(denom) < 1e-15)
        throw Error(ErrorKind::Pole, "local factor at p=" + std::to_string(v.p()) + " has a pole");
    return 1.0 / denom;
}

double log_measure_density(const MeasureSpec& spec, double s) {
    // HT weight uses L_v(1/2 - is); dual weight is 1/|prod L_v(1/2 + is)|^2.
    const cplx z = spec.side == MeasureSide::HT ? cplx(0.5, -s) : cplx(0.5, s);
    double log_mod = 0.0;
    for (const Place& v : spec.places.places()) log_mod += log_local_factor(v, z).real();
    const double sign = spec.side == MeasureSide::HT ? 2.0 : -2.0;
    return std::log(spec.normalization) + sign * log_mod;
}

double measure_density(const MeasureSpec& spec, double s) { return std::exp(log_measure_density(spec, s)); }

cplx zeta_critical(double s, const ZetaConfig& cfg) {
    if (std::abs(s) > cfg.bound)
        throw Error(ErrorKind::OutOfRange, "|s| = " + std::to_string(std::abs(s)) + " exceeds zeta bound");
    const int K = cfg.bernoulli_terms;
    if (K < 1 || K + 1 > int(kBernoulli.size()))
        throw Error(ErrorKind::InvalidArgument, "unsupported number of Bernoulli terms");
    const cplx z(0.5, s);
    int N = std::max(20, int(std::ceil(2.0 * std::abs(s))));
    for (int attempt = 0; attempt < 8; ++attempt, N *= 2) {
        cplx sum = 0.0;
        for (int n = 1; n < N; ++n) sum += std::exp(-z * std::log(double(n)));
        const double logN = std::log(double(N));
        const cplx nz = std::exp(-z * logN);
        sum += double(N) * nz / (z - 1.0) + 0.5 * nz;

        cplx rising = z;               // z (z+1) ... (z+2k-2)
        cplx npow = nz / double(N);    // N^{-z-2k+1}
        double fact = 2.0;             // (2k)!
        cplx term;
        for (int k = 1; k <= K + 1; ++k) {
            term = kBernoulli[k - 1] / fact * rising * npow;
            if (k <= K) sum += term;
            rising *= (z + double(2 * k - 1)) * (z + double(2 * k));
            npow /= double(N) * double(N);
            fact *= double(2 * k + 1) * double(2 * k + 2);
        }
        const double bound = std::abs(term) * std::abs(z + double(2 * K + 1)) / (z.real() + 2 * K + 1);
        if (bound <= cfg.tail_tolerance) return sum;
    }
    throw Error(ErrorKind::NonConvergence, "Euler-Maclaurin tail bound not met");
}

double xi_function(double s, const ZetaConfig& cfg) {
    const cplx z(0.5, s);
    const cplx zeta = zeta_critical(s, cfg);
    const cplx log_pre = std::log(0.5 * z * (z - 1.0)) + log_gamma(0.5 * z) - 0.5 * z * std::log(kPi);
    const cplx pre = std::exp(log_pre);
    const cplx xi = pre * zeta;
    // Zeros of the real function make a relative check meaningless; scale by
    // the size of the factors instead.
    if (std::abs(xi.imag()) > 1e-10 * std::abs(pre) * std::max(1.0, std::abs(zeta)))
        throw Error(ErrorKind::Instability, "imaginary part of Xi too large at s=" + std::to_string(s));
    return xi.real();
}

XiZeros xi_zeros(double s_max, double step, const ZetaConfig& cfg) {
    if (s_max > cfg.bound) throw Error(ErrorKind::OutOfRange, "s_max exceeds zeta bound");
    if (!(step > 0)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
    XiZeros out;
    out.possibly_incomplete = step > 0.25;
    const int cells = int(std::ceil(s_max / step - 1e-12));
    double left = 0.0;
    double f_left = xi_function(left, cfg);
    for (int i = 1; i <= cells; ++i) {
        const double right = std::min(s_max, i * step);
        const double f_right = xi_function(right, cfg);
        if (f_right == 0.0) {
            out.zeros.push_back(right);
        } else if ((f_left < 0) != (f_right < 0) && f_left != 0.0) {
            double a = left, b = right, fa = f_left;
            while (b - a > 1e-9) {
                const double m = 0.5 * (a + b);
                const double fm = xi_function(m, cfg);
                if ((fm < 0) == (fa < 0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.zeros.push_back(0.5 * (a + b));
        }
        left = right;
        f_left = f_right;
    }
    return out;
}

}  // namespace prolate
