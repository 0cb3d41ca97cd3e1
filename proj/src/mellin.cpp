#include "prolate_lab/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "prolate_lab/error.hpp"
#include "prolate_lab/parallel.hpp"
#include "prolate_lab/quadrature.hpp"
#include "prolate_lab/serialize.hpp"

namespace prolate {

double EvenRealFunction::cutoff() const {
    if (gaussian) return 10.0 + std::sqrt(double(gaussian->degree()));
    return 12.0;
}

EvenRealFunction EvenRealFunction::hermite(int n) {
    EvenRealFunction f;
    f.evaluator = [n](double x) { return hermite_even(n, x); };
    f.gaussian = hermite_even_coefficients(n);
    f.fourier_eigenvalue = n % 2 ? -1 : 1;
    f.label = "h" + std::to_string(2 * n);
    return f;
}

EvenRealFunction EvenRealFunction::psi(int ell, Parity parity) {
    EvenRealFunction f;
    f.gaussian = psi_family(ell, parity);
    // evaluated through the stable Hermite recurrence rather than the monomial form
    if (parity == Parity::Even) {
        const double c = hermite_even(2 * ell, 0.0) / hermite_even(0, 0.0);
        f.evaluator = [ell, c](double x) { return hermite_even(2 * ell, x) - c * hermite_even(0, x); };
        f.fourier_eigenvalue = 1;
        f.label = "psi" + std::to_string(ell) + "+";
    } else {
        const double c = hermite_even(2 * ell + 1, 0.0) / hermite_even(1, 0.0);
        f.evaluator = [ell, c](double x) { return -hermite_even(2 * ell + 1, x) + c * hermite_even(1, x); };
        f.fourier_eigenvalue = -1;
        f.label = "psi" + std::to_string(ell) + "-";
    }
    return f;
}

EvenRealFunction EvenRealFunction::from_gaussian(GaussianPolynomial g, std::optional<int> eigenvalue, std::string label) {
    EvenRealFunction f;
    f.evaluator = [g](double x) { return g(x); };
    f.gaussian = std::move(g);
    f.fourier_eigenvalue = eigenvalue;
    f.label = std::move(label);
    return f;
}

EvenRealFunction parse_function(const std::string& name) {
    try {
        if (name.size() >= 2 && name[0] == 'h') {
            std::size_t used = 0;
            const int index = std::stoi(name.substr(1), &used);
            if (used + 1 == name.size() && index >= 0 && index % 2 == 0 && index <= 120)
                return EvenRealFunction::hermite(index / 2);
        }
        if (name.rfind("psi", 0) == 0 && name.size() >= 5) {
            const char sign = name.back();
            std::size_t used = 0;
            const int ell = std::stoi(name.substr(3, name.size() - 4), &used);
            if (used + 4 == name.size() && (sign == '+' || sign == '-'))
                return EvenRealFunction::psi(ell, sign == '+' ? Parity::Even : Parity::Odd);
        }
    } catch (const std::logic_error&) {
    }
    throw Error(ErrorKind::InvalidArgument, "unknown function '" + name + "' (expected h0, h2, ..., psi1+, psi1-)");
}

std::string SampledTransform::to_csv() const {
    std::string out = "s,re,im,err\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        out += format15(grid[i]) + "," + format15(values[i].real()) + "," + format15(values[i].imag()) + "," +
               format15(quadrature_error) + "\n";
    return out;
}

std::string SampledTransform::to_json() const {
    nlohmann::ordered_json j;
    j["s"] = nlohmann::ordered_json::array();
    j["re"] = nlohmann::ordered_json::array();
    j["im"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        j["s"].push_back(round15(grid[i]));
        j["re"].push_back(round15(values[i].real()));
        j["im"].push_back(round15(values[i].imag()));
    }
    j["err"] = round15(quadrature_error);
    return j.dump();
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) throw Error(ErrorKind::InvalidArgument, "grid needs hi > lo and at least 2 points");
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
    return g;
}

std::vector<double> default_grid() { return uniform_grid(-20.0, 20.0, 401); }

namespace {

struct TGrid {
    std::vector<double> t;
    std::vector<double> g;  // g(e^t)
    double h;
};

TGrid sample(const std::function<double(double)>& g, const MellinOptions& opt) {
    if (!(opt.step > 0) || !(opt.t_max > opt.t_min)) throw Error(ErrorKind::InvalidArgument, "bad t-grid");
    TGrid out;
    out.h = opt.step;
    // an even number of steps so that the doubled step uses every other node
    long steps = long(std::ceil((opt.t_max - opt.t_min) / opt.step));
    if (steps % 2) ++steps;
    out.t.resize(std::size_t(steps + 1));
    out.g.resize(std::size_t(steps + 1));
    for (long k = 0; k <= steps; ++k) out.t[std::size_t(k)] = opt.t_min + double(k) * opt.step;
    parallel_for(out.t.size(), [&](std::size_t k) { out.g[k] = g(std::exp(out.t[k])); });
    return out;
}

cplx trapezoid(const TGrid& tg, double s, std::size_t stride) {
    cplx total = 0.0;
    const std::size_t last = tg.t.size() - 1;
    for (std::size_t k = 0; k <= last; k += stride) {
        const double w = (k == 0 || k == last) ? 0.5 : 1.0;
        total += w * tg.g[k] * std::polar(1.0, -s * tg.t[k]);
    }
    return total * (tg.h * double(stride));
}

SampledTransform transform_samples(const TGrid& tg, const std::vector<double>& grid, double tol) {
    SampledTransform out;
    out.grid = grid;
    out.values.resize(grid.size());
    std::vector<double> err(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        out.values[i] = trapezoid(tg, grid[i], 1);
        err[i] = std::abs(out.values[i] - trapezoid(tg, grid[i], 2));
    });
    for (double e : err) out.quadrature_error = std::max(out.quadrature_error, e);
    if (out.quadrature_error > tol)
        throw Error(ErrorKind::QuadratureFailure, "step halving changed the transform by " + std::to_string(out.quadrature_error));
    return out;
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw Error(ErrorKind::InvalidArgument, "grid must be strictly ascending");
}

double smooth_sum(const EvenRealFunction& f, const std::vector<double>& gammas, double u) {
    const double limit = f.cutoff();
    double total = 0.0;
    for (double g : gammas) {
        if (g * u > limit) break;
        total += f(g * u);
    }
    return std::sqrt(u) * total;
}

cplx euler_product(const PlaceSet& S, cplx z) {
    cplx p = 1.0;
    for (long q : S.primes()) p *= local_factor(Place::prime(q), z);
    return p;
}

}  // namespace

SampledTransform multiplicative_fourier(const std::function<double(double)>& g, const std::vector<double>& grid,
                                        const MellinOptions& opt) {
    check_grid(grid);
    return transform_samples(sample(g, opt), grid, opt.halving_tol);
}

SampledTransform mellin_transform(const EvenRealFunction& f, const std::vector<double>& grid, const MellinOptions& opt) {
    return multiplicative_fourier([&f](double u) { return std::sqrt(u) * f(u); }, grid, opt);
}

SampledTransform unitary_transform(const EvenRealFunction& f, const std::vector<double>& grid, const MellinOptions& opt) {
    SampledTransform out = mellin_transform(f, grid, opt);
    const double c = 1.0 / std::sqrt(kPi);
    for (cplx& v : out.values) v *= c;
    out.quadrature_error *= c;
    return out;
}

std::vector<double> smooth_numbers(const PlaceSet& S, double bound) {
    std::vector<double> out{1.0};
    if (bound < 1.0) return {};
    for (long p : S.primes()) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i)
            for (double g = out[i] * double(p); g <= bound; g *= double(p)) out.push_back(g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double e_map(const EvenRealFunction& f, const PlaceSet& S, double u) {
    if (!(u > 0)) throw Error(ErrorKind::InvalidArgument, "u must be positive");
    return smooth_sum(f, smooth_numbers(S, f.cutoff() / u), u);
}

double e_map_all(const EvenRealFunction& f, double u) {
    if (!(u > 0)) throw Error(ErrorKind::InvalidArgument, "u must be positive");
    const double limit = f.cutoff();
    auto direct = [&](double v) {
        double total = 0.0;
        for (long n = 1; double(n) * v <= limit; ++n) total += f(double(n) * v);
        return total;
    };
    if (u >= 1.0) return std::sqrt(u) * direct(u);
    if (!f.fourier_eigenvalue)
        throw Error(ErrorKind::MissingFourierEigenvalue, "Poisson form for u < 1 needs the Fourier eigenvalue of " + f.label);
    // sum_{n in Z} f(nu) = (eps / u) sum_{n in Z} f(n / u)
    const double eps = *f.fourier_eigenvalue, f0 = f(0.0);
    const double sum = -0.5 * f0 + eps / u * (0.5 * f0 + direct(1.0 / u));
    return std::sqrt(u) * sum;
}

double theta_w(const EvenRealFunction& f, const PlaceSet& S, double u) {
    // expand the tensor product of the sigma_p: sum over shell choices of prod a_m f(u prod p^{-m})
    std::vector<std::pair<double, double>> terms{{1.0, 1.0}};  // (coefficient, scale)
    for (long p : S.primes()) {
        const PadicShellFunction sigma = sonin_generator(p);
        std::vector<std::pair<double, double>> next;
        for (const auto& [c, scale] : terms)
            for (const auto& [m, a] : sigma.exceptional)
                next.emplace_back(c * a.real_double(), scale * std::pow(double(p), -m));
        terms = std::move(next);
    }
    double total = 0.0;
    for (const auto& [c, scale] : terms) total += c * f(u * scale);
    return std::sqrt(u) * total;
}

Verification verify_ms0(const EvenRealFunction& f, const PlaceSet& S, const std::vector<double>& grid,
                        const MellinOptions& opt) {
    check_grid(grid);
    const std::vector<double> gammas = smooth_numbers(S, f.cutoff() * std::exp(-opt.t_min));
    const SampledTransform lhs =
        multiplicative_fourier([&](double u) { return smooth_sum(f, gammas, u); }, grid, opt);
    const SampledTransform base = mellin_transform(f, grid, opt);
    Verification v;
    v.quadrature_error = std::max(lhs.quadrature_error, base.quadrature_error);
    v.scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx rhs = euler_product(S, cplx(0.5, -grid[i])) * base.values[i];
        v.scale = std::max(v.scale, std::abs(rhs));
        const double r = std::abs(lhs.values[i] - rhs);
        if (r > v.residual) {
            v.residual = r;
            v.worst_s = grid[i];
        }
    }
    return v;
}

Verification verify_theta_factor(const EvenRealFunction& f, const PlaceSet& S, const std::vector<double>& grid,
                                 const MellinOptions& opt) {
    check_grid(grid);
    const SampledTransform lhs = multiplicative_fourier([&](double u) { return theta_w(f, S, u); }, grid, opt);
    const SampledTransform base = mellin_transform(f, grid, opt);
    Verification v;
    v.quadrature_error = std::max(lhs.quadrature_error, base.quadrature_error);
    v.scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx factor = 1.0;
        for (long p : S.primes()) factor *= 1.0 - std::pow(double(p), cplx(-0.5, -grid[i]));
        const cplx rhs = factor * base.values[i];
        v.scale = std::max(v.scale, std::abs(rhs));
        const double r = std::abs(lhs.values[i] - rhs);
        if (r > v.residual) {
            v.residual = r;
            v.worst_s = grid[i];
        }
    }
    return v;
}

PairingResult pairing_check(const EvenRealFunction& f, const EvenRealFunction& g, const PlaceSet& S, double s_max,
                            const MellinOptions& opt) {
    if (!(s_max > 0)) throw Error(ErrorKind::InvalidArgument, "s_max must be positive");
    const QuadratureRule rule = composite_gauss_legendre(-s_max, s_max, int(std::ceil(2 * s_max)), 20);
    const std::vector<double> gammas = smooth_numbers(S, g.cutoff() * std::exp(-opt.t_min));
    const SampledTransform theta = multiplicative_fourier([&](double u) { return theta_w(f, S, u); }, rule.nodes, opt);
    const SampledTransform eta = multiplicative_fourier([&](double u) { return smooth_sum(g, gammas, u); }, rule.nodes, opt);
    const SampledTransform bf = mellin_transform(f, rule.nodes, opt);
    const SampledTransform bg = mellin_transform(g, rule.nodes, opt);
    PairingResult r;
    cplx total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const cplx prod = theta.values[i] * std::conj(eta.values[i]);
        total += rule.weights[i] * prod;
        r.cancellation = std::max(r.cancellation, std::abs(prod - bf.values[i] * std::conj(bg.values[i])));
    }
    total /= kPi;
    r.mellin_side = total.real();
    r.mellin_side_imag = total.imag();
    // x-space side by its own quadrature on [0, cutoff], doubled by evenness
    const double c = std::max(f.cutoff(), g.cutoff());
    const QuadratureRule xr = composite_gauss_legendre(0.0, c, int(std::ceil(8 * c)), 20);
    double xs = 0.0;
    for (std::size_t i = 0; i < xr.nodes.size(); ++i) xs += xr.weights[i] * f(xr.nodes[i]) * g(xr.nodes[i]);
    r.xspace_side = 2 * xs;
    r.residual = std::abs(total - r.xspace_side);
    return r;
}

PropeResult verify_prope(int ell, Parity parity, const std::vector<double>& grid) {
    check_grid(grid);
    const EvenRealFunction psi = EvenRealFunction::psi(ell, parity);
    const PRPolynomials pr = P_R_polynomials(ell, parity);
    const double eps = *psi.fourier_eigenvalue;
    // u >= 1 only; the u < 1 half folds in through E psi(1/u) = eps E psi(u)
    const double t_end = std::log(psi.cutoff()) + 0.5;
    auto integrate = [&](int panels) {
        const QuadratureRule rule = composite_gauss_legendre(0.0, t_end, panels, 20);
        std::vector<double> e(rule.nodes.size());
        parallel_for(e.size(), [&](std::size_t k) { e[k] = e_map_all(psi, std::exp(rule.nodes[k])); });
        std::vector<cplx> out(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            cplx total = 0.0;
            for (std::size_t k = 0; k < e.size(); ++k)
                total += rule.weights[k] * e[k] *
                         (std::polar(1.0, -grid[i] * rule.nodes[k]) + eps * std::polar(1.0, grid[i] * rule.nodes[k]));
            out[i] = total;
        });
        return out;
    };
    const int panels = int(std::ceil(16 * t_end));
    PropeResult r;
    r.lhs = integrate(panels);
    const std::vector<cplx> fine = integrate(2 * panels);
    r.check.scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        r.rhs.push_back(pr.R(cplx(grid[i], 0.0)) * xi_function(grid[i]));
        r.check.scale = std::max(r.check.scale, std::abs(r.rhs.back()));
        r.check.quadrature_error = std::max(r.check.quadrature_error, std::abs(fine[i] - r.lhs[i]));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = std::abs(r.lhs[i] - r.rhs[i]);
        if (d > r.check.residual) {
            r.check.residual = d;
            r.check.worst_s = grid[i];
        }
    }
    return r;
}

WeightRatio weight_ratio_bounds(const PlaceSet& S, const std::vector<double>& grid) {
    check_grid(grid);
    WeightRatio w{INFINITY, -INFINITY, 1.0, 1.0, false};
    for (long p : S.primes()) {
        const double r = std::pow(double(p), -0.5);
        w.lower *= 1.0 / ((1 + r) * (1 + r));
        w.upper *= 1.0 / ((1 - r) * (1 - r));
    }
    const MeasureSpec semilocal{S, MeasureSide::HT, 1.0};
    const MeasureSpec archimedean{PlaceSet{}, MeasureSide::HT, 1.0};
    for (double s : grid) {
        const double ratio = std::exp(log_measure_density(semilocal, s) - log_measure_density(archimedean, s));
        w.min_ratio = std::min(w.min_ratio, ratio);
        w.max_ratio = std::max(w.max_ratio, ratio);
    }
    const double slack = 1e-12;
    w.contained = w.min_ratio >= w.lower * (1 - slack) && w.max_ratio <= w.upper * (1 + slack);
    return w;
}

}  // namespace prolate
