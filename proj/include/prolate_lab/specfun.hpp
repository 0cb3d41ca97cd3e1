#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace prolate {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// A place of Q: the real place, or a finite prime.
class Place {
public:
    static Place archimedean() { return Place(0); }
    static Place prime(long p);

    bool is_archimedean() const noexcept { return p_ == 0; }
    long p() const noexcept { return p_; }
    std::string label() const;
    bool operator==(const Place&) const = default;

private:
    explicit Place(long p) : p_(p) {}
    long p_;
};

bool is_prime(long n);

// Finite primes of S; the real place is always implicitly present.
class PlaceSet {
public:
    PlaceSet() = default;
    PlaceSet(std::initializer_list<long> primes);
    explicit PlaceSet(std::vector<long> primes);

    // Parses "2,3" (empty string means only the real place).
    static PlaceSet parse(const std::string& text);

    const std::vector<long>& primes() const noexcept { return primes_; }
    bool only_archimedean() const noexcept { return primes_.empty(); }
    std::vector<Place> places() const;
    std::string label() const;

private:
    std::vector<long> primes_;
};

enum class MeasureSide { HT, Dual };

struct MeasureSpec {
    PlaceSet places;
    MeasureSide side = MeasureSide::HT;
    double normalization = 1.0;
};

// Makes the archimedean HT density a probability density when it is written
// as |L_inf(1/2 - is)|^2; equals (2 pi)^{-3/2} * sqrt(pi).
inline constexpr double kArchimedeanProbabilityNorm = 0.11253953951963826;

cplx log_gamma(cplx z);

cplx local_factor(const Place& v, cplx z);
// log of the local factor, continuous in z for the archimedean place.
cplx log_local_factor(const Place& v, cplx z);

double measure_density(const MeasureSpec& spec, double s);
double log_measure_density(const MeasureSpec& spec, double s);

struct ZetaConfig {
    double bound = 100.0;
    int bernoulli_terms = 8;
    double tail_tolerance = 1e-12;
};

cplx zeta_critical(double s, const ZetaConfig& cfg = {});

double xi_function(double s, const ZetaConfig& cfg = {});

struct XiZeros {
    std::vector<double> zeros;
    bool possibly_incomplete = false;  // grid step too coarse to exclude missed pairs
};

XiZeros xi_zeros(double s_max, double step = 0.05, const ZetaConfig& cfg = {});

}  // namespace prolate
