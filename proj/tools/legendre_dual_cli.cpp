#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "legendre_dual/errors.hpp"
#include "legendre_dual/fixtures.hpp"
#include "legendre_dual/registry.hpp"
#include "legendre_dual/scenario.hpp"

namespace {

std::vector<std::string> splitIds(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

bool writeOut(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    f << text;
    return true;
}

void printDiagnostics(const ldual::ValidationError& e) {
    std::cerr << "error: scenario validation failed\n";
    for (const auto& d : e.diagnostics)
        std::cerr << "  " << (d.severity == ldual::Diagnostic::Severity::Error ? "error" : "warning") << ": "
                  << (d.field.empty() ? "" : d.field + ": ") << d.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of Lagrangian/Hamiltonian duality on Lie algebroids"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "evaluate identity residuals for a scenario file");
    std::string path, format = "text", out, ids;
    std::optional<double> tol;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    check->add_option("scenario", path, "scenario file")->required();
    check->add_option("--tol", tol, "default residual threshold");
    check->add_option("--samples", samples, "sample points per side");
    check->add_option("--seed", seed, "sampling seed");
    check->add_option("--ids", ids, "comma separated identity ids (empty: none)")->expected(0, 1);
    check->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    check->add_option("--out", out, "output file (default stdout)");
    check->add_option("--threads", threads, "worker threads (0: LEGENDRE_DUAL_THREADS or all cores)");

    auto* fx = app.add_subcommand("fixtures", "bundled example scenarios");
    fx->require_subcommand(1);
    auto* fxList = fx->add_subcommand("list", "list bundled scenarios");
    auto* fxWrite = fx->add_subcommand("write", "print a bundled scenario");
    std::string fxName, fxOut;
    fxWrite->add_option("name", fxName, "fixture name")->required();
    fxWrite->add_option("--out", fxOut, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*fxList) {
        for (const auto& f : ldual::fixtures()) std::printf("%-16s %s\n", f.name.c_str(), f.summary.c_str());
        return 0;
    }
    if (*fxWrite) {
        const ldual::Fixture* f = ldual::findFixture(fxName);
        if (!f) {
            std::cerr << "error: unknown fixture '" << fxName << "'\n";
            return 2;
        }
        return writeOut(fxOut, f->text) ? 0 : 2;
    }

    try {
        ldual::Scenario sc = ldual::loadScenario(path);
        ldual::RunConfig cfg;
        cfg.tolerance = tol;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.threads = threads;
        if (check->count("--ids")) cfg.ids = splitIds(ids);
        ldual::Report rep = ldual::runChecks(sc, cfg);
        std::string text = format == "json" ? ldual::renderJson(rep) : ldual::renderText(rep);
        if (!writeOut(out, text)) return 2;
        return ldual::exitCode(rep);
    } catch (const ldual::ValidationError& e) {
        printDiagnostics(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
