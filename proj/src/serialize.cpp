#include "prolate_lab/serialize.hpp"

#include <cstdio>
#include <json.hpp>

namespace prolate {

double round15(double v) { return std::stod(format15(v)); }

std::string format15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string moments_json(const RationalMomentSequence& m) {
    nlohmann::ordered_json j;
    j["c"] = nlohmann::ordered_json::array();
    for (const Rational& q : m.even_moments) j["c"].push_back(to_string(q));
    return j.dump();
}

std::string coefficients_json(const RecurrenceCoefficients& c) {
    nlohmann::ordered_json j;
    j["a"] = nlohmann::ordered_json::array();
    for (double a : c.a) j["a"].push_back(round15(a));
    j["phase"] = c.phase == Phase::Imaginary ? "imaginary" : "real";
    return j.dump();
}

std::string polynomial_json(const PolynomialCoeffs& p) {
    nlohmann::ordered_json j;
    j["c"] = nlohmann::ordered_json::array();
    for (cplx z : p.c) j["c"].push_back({round15(z.real()), round15(z.imag())});
    return j.dump();
}

std::string spectrum_json(const Spectrum& s, double lambda, Parity parity) {
    nlohmann::ordered_json j;
    j["lambda"] = round15(lambda);
    j["parity"] = to_string(parity);
    j["N"] = s.truncation_N;
    j["eigenvalues"] = nlohmann::ordered_json::array();
    for (double v : s.eigenvalues) j["eigenvalues"].push_back(round15(v));
    j["converged"] = s.converged_count;
    return j.dump();
}

std::string spectrum_csv(const Spectrum& s) {
    std::string out = "index,eigenvalue,converged\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        out += std::to_string(i) + "," + format15(s.eigenvalues[i]) + "," +
               (int(i) < s.converged_count ? "1" : "0") + "\n";
    return out;
}

}  // namespace prolate
