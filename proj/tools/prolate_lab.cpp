#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "prolate_lab/error.hpp"

using prolate::cli::Format;
using prolate::cli::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--tol", cfg.tol, "tolerance for the pass/fail status");
    sub->add_option("--format", cfg.format, "json or csv")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}}));
    sub->add_option("--out", cfg.out, "output file (default stdout)");
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--s-min", cfg.s_min, "grid start");
    sub->add_option("--s-max", cfg.s_max, "grid end");
    sub->add_option("--points", cfg.points, "grid points");
}

int emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream file(cfg.out);
    if (!file) {
        std::cerr << "cannot write " << cfg.out << "\n";
        return 2;
    }
    file << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prolate-lab: spectral and arithmetic verification suites"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* moments = app.add_subcommand("moments", "exact even moments c_0 .. c_{2M}");
    moments->add_option("--order", cfg.order, "M");

    auto* recurrence = app.add_subcommand("recurrence", "numeric recurrence coefficients a_n^S");
    recurrence->add_option("--places", cfg.places, "finite primes of S, e.g. 2,3");
    recurrence->add_option("--n", cfg.order, "number of coefficients");

    auto* spectrum = app.add_subcommand("prolate-spectrum", "converged eigenvalues of the explicit prolate matrix");
    spectrum->add_option("--lambda", cfg.lambda);
    spectrum->add_option("--parity", cfg.parity, "even or odd");
    spectrum->add_option("--k", cfg.k, "number of eigenvalues");
    spectrum->add_option("--max-n", cfg.max_n, "largest truncation");

    auto* semilocal = app.add_subcommand("prolate-semilocal", "stability of the semilocal prolate spectrum");
    semilocal->add_option("--places", cfg.places);
    semilocal->add_option("--lambda", cfg.lambda);
    semilocal->add_option("--parity", cfg.parity, "even, odd or both");
    semilocal->add_option("--N", cfg.size, "smaller truncation size");
    semilocal->add_option("--k", cfg.k, "required stable eigenvalues per parity");

    auto* ms0 = app.add_subcommand("verify-ms0", "Euler-factor identity");
    ms0->add_option("--places", cfg.places);
    ms0->add_option("--f", cfg.function, "h0, h2, ..., psi1+, psi1-");
    add_grid(ms0, cfg);

    auto* theta = app.add_subcommand("verify-theta", "Sonin theta factor identity");
    theta->add_option("--places", cfg.places);
    theta->add_option("--f", cfg.function);
    add_grid(theta, cfg);

    auto* pairing = app.add_subcommand("pairing", "semilocal pairing identity on h0, h2");
    pairing->add_option("--places", cfg.places);

    auto* prope = app.add_subcommand("verify-prope", "Xi factorization of the psi family");
    prope->add_option("--ell", cfg.order);
    prope->add_option("--parity", cfg.parity, "plus or minus");
    add_grid(prope, cfg);

    auto* sonin = app.add_subcommand("sonin", "p-adic Sonin generator and system");
    sonin->add_option("--p", cfg.p);
    sonin->add_option("--K", cfg.order, "largest shell");

    auto* meta = app.add_subcommand("metaplectic", "commutator algebra of the Jacobi matrix");
    meta->add_option("--suite", cfg.suite, "all, commutators, sl2, scan, moments");
    meta->add_option("--c", cfg.c, "law constant, decimal or fraction");
    meta->add_option("--N", cfg.size, "matrix size");

    auto* xi = app.add_subcommand("xi-zeros", "zeros of Xi on [0, max]");
    xi->add_option("--max", cfg.s_max);

    auto* quad = app.add_subcommand("quadrature", "Gauss rule of the semilocal measure");
    quad->add_option("--places", cfg.places);
    quad->add_option("--nodes", cfg.order);

    for (auto* sub : app.get_subcommands({})) add_common(sub, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        const auto result = prolate::cli::run(cfg);
        const std::string text = cfg.format == Format::Csv ? result.csv : result.report.dump(2) + "\n";
        if (const int rc = emit(cfg, text); rc != 0) return rc;
        return result.ok ? 0 : 1;
    } catch (const prolate::cli::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const prolate::Error& e) {
        using prolate::ErrorKind;
        const auto k = e.kind();
        const bool config = k == ErrorKind::InvalidArgument || k == ErrorKind::OutOfRange || k == ErrorKind::Index ||
                            k == ErrorKind::Length;
        std::cerr << e.what() << "\n";
        if (config) return 2;
        nlohmann::ordered_json report{{"command", cfg.command}, {"status", "error"}, {"error", e.what()}};
        emit(cfg, report.dump(2) + "\n");
        return 1;
    }
}
