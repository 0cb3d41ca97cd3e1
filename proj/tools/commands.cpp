#include "commands.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "prolate_lab/error.hpp"
#include "prolate_lab/jacobi.hpp"
#include "prolate_lab/mellin.hpp"
#include "prolate_lab/metaplectic.hpp"
#include "prolate_lab/orthopoly.hpp"
#include "prolate_lab/padic.hpp"
#include "prolate_lab/quadrature.hpp"
#include "prolate_lab/serialize.hpp"
#include "prolate_lab/specfun.hpp"

namespace prolate::cli {

namespace {

using json = nlohmann::ordered_json;

json num(double v) { return std::isfinite(v) ? json(round15(v)) : json(nullptr); }

double tol_or(const RunConfig& c, double fallback) {
    const double t = c.tol.value_or(fallback);
    if (!(t > 0)) throw ConfigError("--tol must be positive");
    return t;
}

int positive_or(int value, int fallback, const char* flag) {
    const int v = value == 0 ? fallback : value;
    if (v <= 0) throw ConfigError(std::string(flag) + " must be positive");
    return v;
}

PlaceSet places_of(const RunConfig& c) {
    try {
        return PlaceSet::parse(c.places);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

std::vector<Parity> parities_of(const std::string& text, const std::string& fallback) {
    const std::string p = text.empty() ? fallback : text;
    if (p == "even" || p == "plus" || p == "+") return {Parity::Even};
    if (p == "odd" || p == "minus" || p == "-") return {Parity::Odd};
    if (p == "both") return {Parity::Even, Parity::Odd};
    throw ConfigError("unknown parity '" + p + "'");
}

std::vector<double> grid_of(const RunConfig& c, double lo, double hi, int points) {
    const double a = c.s_min == 0.0 && c.s_max == 0.0 ? lo : c.s_min;
    const double b = c.s_min == 0.0 && c.s_max == 0.0 ? hi : c.s_max;
    const int n = c.points == 0 ? points : c.points;
    if (n < 2) throw ConfigError("--points must be at least 2");
    if (!(b > a)) throw ConfigError("--s-max must exceed --s-min");
    return uniform_grid(a, b, n);
}

json grid_json(const std::vector<double>& g) {
    return json{{"s_min", num(g.front())}, {"s_max", num(g.back())}, {"points", g.size()}};
}

json verification_json(const Verification& v) {
    return json{{"residual", num(v.residual)},
                {"worst_s", num(v.worst_s)},
                {"scale", num(v.scale)},
                {"quadrature_error", num(v.quadrature_error)}};
}

CommandResult moments(const RunConfig& c) {
    const int M = positive_or(c.order, 12, "--order");
    if (M > 200) throw ConfigError("--order must be at most 200");
    const auto m = moments_from_generating(M);
    CommandResult r;
    json cs = json::array(), numerators = json::array();
    bool integral = true;
    r.csv = "n,c_2n,numerator\n";
    for (int n = 0; n <= M; ++n) {
        const Rational scaled = m.even_moments[n] * pow2(n);
        integral = integral && scaled.get_den() == 1;
        cs.push_back(to_string(m.even_moments[n]));
        numerators.push_back(to_string(scaled));
        r.csv += std::to_string(2 * n) + "," + to_string(m.even_moments[n]) + "," + to_string(scaled) + "\n";
    }
    // known prefix of the numerator sequence 2^n c_{2n}
    const long known[] = {1, 1, 7, 139, 5473, 357721, 34988647};
    bool prefix = true;
    for (int n = 0; n <= std::min(M, 6); ++n) prefix = prefix && m.even_moments[n] * pow2(n) == Rational(known[n]);
    const int via = std::min(M, 20);
    const auto a_sq = solve_unique_coeffs(Rational(1, 4)).table(std::size_t(via) + 1);
    bool agree = true;
    for (int n = 0; n <= via; ++n) agree = agree && moments_via_power(a_sq, n) == m.even_moments[n];
    r.ok = integral && prefix && agree;
    r.report = json{{"order", M},
                    {"c", cs},
                    {"numerators", numerators},
                    {"numerators_integral", integral},
                    {"numerators_match_known_prefix", prefix},
                    {"matrix_power_agreement", agree},
                    {"matrix_power_checked_to", via}};
    return r;
}

CommandResult recurrence(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    const int n = positive_or(c.order, 40, "--n");
    const double tol = tol_or(c, 1e-8);
    const auto rec = recurrence_from_measure_numeric(MeasureSpec{S, MeasureSide::HT, 1.0}, n);
    CommandResult r;
    json a = json::array();
    r.csv = "n,a_n\n";
    for (std::size_t j = 0; j < rec.coeffs.size(); ++j) {
        a.push_back(num(rec.coeffs.a[j]));
        r.csv += std::to_string(j) + "," + format15(rec.coeffs.a[j]) + "\n";
    }
    r.report = json{{"places", S.label()},
                    {"n", n},
                    {"a", a},
                    {"refinement_gap", num(rec.refinement_gap)},
                    {"total_mass", num(rec.total_mass)},
                    {"half_width", num(rec.half_width)}};
    r.ok = rec.refinement_gap <= tol;
    if (S.only_archimedean()) {
        const auto exact = archimedean_coefficients(std::size_t(n));
        double dev = 0.0;
        for (std::size_t j = 0; j < rec.coeffs.size(); ++j) dev = std::max(dev, std::abs(rec.coeffs.a[j] - exact.a[j]));
        r.report["closed_form_deviation"] = num(dev);
        r.ok = r.ok && dev <= tol;
    }
    return r;
}

CommandResult prolate_spectrum(const RunConfig& c) {
    if (!(c.lambda > 0)) throw ConfigError("--lambda must be positive");
    const auto parity = parities_of(c.parity, "even");
    if (parity.size() != 1) throw ConfigError("prolate-spectrum takes --parity even or odd");
    const int k = positive_or(c.k, 10, "--k");
    const double tol = tol_or(c, 1e-8);
    ConvergeOptions opt;
    opt.max_N = c.max_n;
    if (opt.max_N < opt.start_N) throw ConfigError("--max-n must be at least 64");
    CommandResult r;
    r.report = json{{"lambda", num(c.lambda)}, {"parity", to_string(parity[0])}, {"k", k}, {"max_N", opt.max_N}};
    try {
        const Spectrum s = converge_spectrum(
            [](double lambda, Parity p, int N) { return build_prolate_explicit(lambda, p, N); }, c.lambda,
            parity[0], std::size_t(k), tol, opt);
        r.report["N"] = s.truncation_N;
        json ev = json::array();
        for (double v : s.eigenvalues) ev.push_back(num(v));
        r.report["eigenvalues"] = ev;
        r.report["converged"] = true;
        r.report["converged_count"] = s.converged_count;
        r.csv = spectrum_csv(s);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::BudgetExceeded) throw;
        r.ok = false;
        r.report["converged"] = false;
        r.report["reason"] = e.what();
        r.csv = "index,eigenvalue,converged\n";
    }
    return r;
}

CommandResult prolate_semilocal(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    if (!(c.lambda > 0)) throw ConfigError("--lambda must be positive");
    const int N = positive_or(c.size, 48, "--N");
    if (4 * N + 1 > 200) throw ConfigError("--N must be at most 49 (extraction depth 4N + 1 <= 200)");
    const int need = positive_or(c.k, 1, "--k");
    const double tol = tol_or(c, 1e-6);
    CommandResult r;
    r.csv = "parity,index,eigenvalue,doubled,refined,stable\n";
    json blocks = json::array();
    for (const Parity p : parities_of(c.parity, "both")) {
        const auto st = semilocal_stability(S, c.lambda, p, N, tol);
        json rows = json::array();
        for (const auto& e : st.rows) {
            rows.push_back(json{{"index", e.index},
                                {"eigenvalue", num(e.value)},
                                {"doubled", num(e.doubled)},
                                {"refined", num(e.refined)},
                                {"stable", e.stable}});
            r.csv += std::string(to_string(p)) + "," + std::to_string(e.index) + "," + format15(e.value) + "," +
                     format15(e.doubled) + "," + format15(e.refined) + "," + (e.stable ? "1" : "0") + "\n";
        }
        blocks.push_back(json{{"parity", to_string(p)}, {"stable_count", st.stable_count()}, {"rows", rows}});
        r.ok = r.ok && st.stable_count() >= std::size_t(need);
    }
    r.report = json{{"places", S.label()}, {"lambda", num(c.lambda)}, {"N", N}, {"required_stable", need},
                    {"blocks", blocks}};
    return r;
}

EvenRealFunction function_of(const std::string& name) {
    try {
        return parse_function(name);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

CommandResult verify_ms0_cmd(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    const auto f = function_of(c.function);
    const double tol = tol_or(c, 1e-8);
    const auto grid = grid_of(c, -10, 10, 201);
    const auto v = verify_ms0(f, S, grid);
    CommandResult r;
    r.ok = v.residual <= tol;
    r.report = json{{"places", S.label()}, {"f", f.label}, {"grid", grid_json(grid)}};
    r.report.update(verification_json(v));
    r.csv = "residual,worst_s,scale,quadrature_error\n" + format15(v.residual) + "," + format15(v.worst_s) + "," +
            format15(v.scale) + "," + format15(v.quadrature_error) + "\n";
    return r;
}

CommandResult verify_theta_cmd(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    const auto f = function_of(c.function);
    const double tol = tol_or(c, 1e-9);
    const auto grid = grid_of(c, -10, 10, 201);
    const auto v = verify_theta_factor(f, S, grid);
    CommandResult r;
    r.ok = v.residual <= tol;
    r.report = json{{"places", S.label()}, {"f", f.label}, {"grid", grid_json(grid)}};
    r.report.update(verification_json(v));
    r.csv = "residual,worst_s,scale,quadrature_error\n" + format15(v.residual) + "," + format15(v.worst_s) + "," +
            format15(v.scale) + "," + format15(v.quadrature_error) + "\n";
    return r;
}

CommandResult pairing(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    const double tol = tol_or(c, 1e-8);
    CommandResult r;
    r.csv = "f,g,mellin_side,xspace_side,residual,cancellation\n";
    json pairs = json::array();
    const std::pair<const char*, const char*> names[] = {{"h0", "h0"}, {"h0", "h2"}, {"h2", "h2"}};
    for (const auto& [fn, gn] : names) {
        const auto res = pairing_check(parse_function(fn), parse_function(gn), S);
        pairs.push_back(json{{"f", fn},
                             {"g", gn},
                             {"mellin_side", num(res.mellin_side)},
                             {"mellin_side_imag", num(res.mellin_side_imag)},
                             {"xspace_side", num(res.xspace_side)},
                             {"residual", num(res.residual)},
                             {"cancellation", num(res.cancellation)}});
        r.csv += std::string(fn) + "," + gn + "," + format15(res.mellin_side) + "," + format15(res.xspace_side) + "," +
                 format15(res.residual) + "," + format15(res.cancellation) + "\n";
        r.ok = r.ok && res.residual <= tol;
    }
    r.report = json{{"places", S.label()}, {"pairs", pairs}};
    return r;
}

CommandResult verify_prope_cmd(const RunConfig& c) {
    const int ell = positive_or(c.order, 1, "--ell");
    const auto parity = parities_of(c.parity, "plus");
    if (parity.size() != 1) throw ConfigError("verify-prope takes --parity plus or minus");
    const double tol = tol_or(c, 1e-6);
    const auto grid = grid_of(c, 0, 30, 301);
    const auto res = verify_prope(ell, parity[0], grid);
    const double relative = res.check.residual / res.check.scale;
    CommandResult r;
    r.ok = relative <= tol;
    r.report = json{{"ell", ell}, {"parity", parity[0] == Parity::Even ? "plus" : "minus"}, {"grid", grid_json(grid)},
                    {"relative_residual", num(relative)}};
    r.report.update(verification_json(res.check));
    r.csv = "s,lhs_re,lhs_im,rhs_re,rhs_im\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        r.csv += format15(grid[i]) + "," + format15(res.lhs[i].real()) + "," + format15(res.lhs[i].imag()) + "," +
                 format15(res.rhs[i].real()) + "," + format15(res.rhs[i].imag()) + "\n";
    return r;
}

CommandResult sonin(const RunConfig& c) {
    if (!is_prime(c.p)) throw ConfigError("--p must be prime");
    const int K = positive_or(c.order, 6, "--K");
    const auto sigma = sonin_generator(c.p);
    const bool fixed = padic_fourier(sigma) == sigma;
    const auto sys = sonin_system(c.p, K);
    CommandResult r;
    json kernel = json::array();
    r.csv = "n,kernel\n";
    for (std::size_t n = 0; n < sys.kernel.size(); ++n) {
        kernel.push_back(to_string(sys.kernel[n]));
        r.csv += std::to_string(n) + "," + to_string(sys.kernel[n]) + "\n";
    }
    r.ok = fixed && sys.nullity == 1;
    r.report = json{{"p", c.p},
                    {"generator", json::parse(sigma.to_json())},
                    {"fourier_fixed", fixed},
                    {"K", K},
                    {"unknowns", sys.unknowns},
                    {"equations", sys.equations},
                    {"rank", sys.rank},
                    {"nullity", sys.nullity},
                    {"kernel", kernel}};
    return r;
}

json suite_json(const SuiteReport& s) { return json::parse(s.to_json()); }

void suite_csv(std::string& csv, const std::string& group, const SuiteReport& s) {
    for (const auto& item : s.items)
        csv += group + "," + item.identity + "," + std::to_string(item.rows_checked) + "," + item.max_residual + "," +
               (item.passed ? "1" : "0") + "\n";
}

CommandResult metaplectic(const RunConfig& c) {
    Rational law_c;
    try {
        law_c = parse_exact_number(c.c);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (sgn(law_c) <= 0) throw ConfigError("--c must be positive");
    const int N = positive_or(c.size, 64, "--N");
    if (N < 32) throw ConfigError("--N must be at least 32");
    const std::string& suite = c.suite;
    if (suite != "all" && suite != "commutators" && suite != "sl2" && suite != "scan" && suite != "moments")
        throw ConfigError("--suite must be one of all, commutators, sl2, scan, moments");
    const bool all = suite == "all";
    CommandResult r;
    r.csv = "group,identity,rows_checked,max_residual,passed\n";
    r.report = json{{"c", to_string(law_c)}, {"N", N}, {"suite", suite}};
    if (all || suite == "commutators") {
        const auto rep = commutator_suite(solve_unique_coeffs(law_c).table(std::size_t(N)), std::size_t(N));
        r.report["commutators"] = suite_json(rep);
        suite_csv(r.csv, "commutators", rep);
        r.ok = r.ok && rep.all_passed();
    }
    if (all || suite == "sl2") {
        const auto rep = sl2_casimir_check(std::size_t(N));
        r.report["sl2"] = suite_json(rep);
        suite_csv(r.csv, "sl2", rep);
        r.ok = r.ok && rep.all_passed();
    }
    if (all || suite == "scan") {
        std::vector<Rational> grid;
        for (const char* g : {"0.1", "0.2", "0.25", "0.3", "0.5", "1"}) grid.push_back(parse_exact_number(g));
        if (std::find(grid.begin(), grid.end(), law_c) == grid.end()) grid.push_back(law_c);
        const auto table = discrepancy_vanishing_scan(grid);
        bool unique = true;
        for (const auto& row : table) {
            unique = unique && row.vanishes == (row.c == Rational(1, 4));
            r.csv += "scan,c=" + to_string(row.c) + "," + std::to_string(row.rows) + "," +
                     to_string(row.max_abs_discrepancy) + "," + (row.vanishes ? "1" : "0") + "\n";
        }
        r.report["scan"] = json::parse(to_json(table));
        r.report["scan_vanishes_only_at_quarter"] = unique;
        r.ok = r.ok && unique;
    }
    if (all || suite == "moments") {
        const int m_max = 10;
        const auto a_sq = solve_unique_coeffs(Rational(1, 4)).table(std::size_t(m_max) + 1);
        const auto gen = moments_from_generating(m_max);
        json ms = json::array();
        bool agree = true;
        for (int m = 0; m <= m_max; ++m) {
            const Rational v = moments_via_power(a_sq, m);
            ms.push_back(to_string(v));
            agree = agree && v == gen.even_moments[m];
        }
        const auto lead = leading_coefficient_check(m_max);
        r.report["moments"] = json{{"c", ms},
                                   {"generating_agreement", agree},
                                   {"leading_coefficients", json::parse(lead.to_json())}};
        r.csv += "moments,matrix_power=generating," + std::to_string(m_max + 1) + ",0," + (agree ? "1" : "0") + "\n";
        r.csv += "moments," + lead.identity + "," + std::to_string(lead.rows_checked) + "," + lead.max_residual + "," +
                 (lead.passed ? "1" : "0") + "\n";
        r.ok = r.ok && agree && lead.passed;
    }
    return r;
}

CommandResult xi_zeros_cmd(const RunConfig& c) {
    const double s_max = c.s_max == 0.0 ? 30.0 : c.s_max;
    if (!(s_max > 0)) throw ConfigError("--max must be positive");
    const auto z = xi_zeros(s_max);
    CommandResult r;
    json zs = json::array();
    r.csv = "index,zero\n";
    for (std::size_t i = 0; i < z.zeros.size(); ++i) {
        zs.push_back(num(z.zeros[i]));
        r.csv += std::to_string(i) + "," + format15(z.zeros[i]) + "\n";
    }
    r.ok = !z.possibly_incomplete;
    r.report = json{{"max", num(s_max)}, {"xi_at_0", num(xi_function(0.0))}, {"zeros", zs},
                    {"possibly_incomplete", z.possibly_incomplete}};
    return r;
}

CommandResult quadrature(const RunConfig& c) {
    const PlaceSet S = places_of(c);
    const int nodes = positive_or(c.order, 40, "--nodes");
    if (nodes + 1 > 200) throw ConfigError("--nodes must be at most 199");
    const double tol = tol_or(c, 1e-8);
    const MeasureSpec spec{S, MeasureSide::HT, 1.0};
    const auto rec = recurrence_from_measure_numeric(spec, nodes + 1);
    RecurrenceCoefficients real = rec.coeffs;
    real.phase = Phase::Real;
    const auto rule = golub_welsch(real, nodes, rec.total_mass);

    // moments s^{2j} against direct composite quadrature of the density
    const auto direct = composite_gauss_legendre(-rec.half_width, rec.half_width, int(8 * rec.half_width), 20);
    json checks = json::array();
    double worst = 0.0;
    for (int j = 0; j <= 4; ++j) {
        double gw = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) gw += rule.weights[i] * std::pow(rule.nodes[i], 2 * j);
        for (std::size_t i = 0; i < direct.nodes.size(); ++i)
            ref += direct.weights[i] * std::pow(direct.nodes[i], 2 * j) * measure_density(spec, direct.nodes[i]);
        const double rel = std::abs(gw - ref) / std::abs(ref);
        worst = std::max(worst, rel);
        checks.push_back(json{{"power", 2 * j}, {"gauss", num(gw)}, {"direct", num(ref)}, {"relative", num(rel)}});
    }
    CommandResult r;
    json xs = json::array(), ws = json::array();
    r.csv = "node,weight\n";
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        xs.push_back(num(rule.nodes[i]));
        ws.push_back(num(rule.weights[i]));
        r.csv += format15(rule.nodes[i]) + "," + format15(rule.weights[i]) + "\n";
    }
    r.ok = worst <= tol;
    r.report = json{{"places", S.label()}, {"nodes", xs}, {"weights", ws}, {"moment_checks", checks},
                    {"max_relative_deviation", num(worst)}};
    return r;
}

struct Command {
    std::function<CommandResult(const RunConfig&)> run;
    const char* verifies;
};

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"moments", {moments, "exact even moments of the archimedean measure and their matrix-power form"}},
        {"recurrence", {recurrence, "recurrence coefficients of the semilocal measure by the Stieltjes procedure"}},
        {"prolate-spectrum", {prolate_spectrum, "converged eigenvalues of the explicit prolate Jacobi matrix"}},
        {"prolate-semilocal", {prolate_semilocal, "truncation and quadrature stability of the semilocal prolate spectrum"}},
        {"verify-ms0", {verify_ms0_cmd, "Euler-factor identity for the transform of E_S f"}},
        {"verify-theta", {verify_theta_cmd, "Sonin theta factor in the semilocal transform"}},
        {"pairing", {pairing, "semilocal pairing <theta_S f | eta_S g> = <f | g>"}},
        {"verify-prope", {verify_prope_cmd, "transform of E psi equals R times Xi"}},
        {"sonin", {sonin, "p-adic Sonin generator and the invariant Sonin system"}},
        {"metaplectic", {metaplectic, "commutator algebra of A and N, sl2 relations, Casimir and moments"}},
        {"xi-zeros", {xi_zeros_cmd, "zeros of the Riemann Xi function on the critical line"}},
        {"quadrature", {quadrature, "Gauss quadrature of the semilocal measure from its Jacobi matrix"}},
    };
    return table;
}

}  // namespace

CommandResult run(const RunConfig& config) {
    const auto it = commands().find(config.command);
    if (it == commands().end()) throw ConfigError("unknown command '" + config.command + "'");
    if (config.tol && !(*config.tol > 0)) throw ConfigError("--tol must be positive");
    CommandResult body = it->second.run(config);
    CommandResult out;
    out.ok = body.ok;
    out.csv = std::move(body.csv);
    out.report = json{{"command", config.command}, {"verifies", it->second.verifies},
                      {"status", body.ok ? "pass" : "fail"}};
    if (config.tol) out.report["tol"] = num(*config.tol);
    out.report.update(body.report);
    return out;
}

}  // namespace prolate::cli
