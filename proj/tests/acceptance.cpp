// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/connection.hpp"
#include "legendre_dual/fixtures.hpp"
#include "legendre_dual/legendre.hpp"
#include "legendre_dual/registry.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ldual;

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

SamplePlan resized(SamplePlan p, std::size_t n) {
    p.count = n;
    return p;
}

// 1. Legendre round trip at 1000 points per side.
Outcome roundTrip() {
    auto t0 = Clock::now();
    Outcome o;
    double worst = 0.0;
    for (const char* name : {"eucl", "quad", "exp", "quart"}) {
        Scenario sc = support::fixture(name);
        PairResidual r = roundTripResidual(sc.pair, resized(sc.sampling.plan(Side::E), 1000),
                                           resized(sc.sampling.plan(Side::Estar), 1000));
        worst = std::max({worst, r.first, r.second});
    }
    double t = seconds(t0);
    o.ok = worst <= 1e-9 && t <= 5.0;
    o.detail = "max residual " + sci(worst) + ", " + sci(t) + " s";
    return o;
}

// Grid sup of p.y - L(y) over [-5, 5]^r with step 1e-3.
template <class L1>
double gridSup1(const L1& L, double p) {
    double best = -INFINITY;
    for (int i = 0; i <= 10000; ++i) {
        double y = -5.0 + i * 1e-3;
        best = std::max(best, p * y - L(y));
    }
    return best;
}

template <class L2>
double gridSup2(const L2& L, double p1, double p2) {
    double best = -INFINITY;
    for (int i = 0; i <= 10000; ++i) {
        double y1 = -5.0 + i * 1e-3;
        double lanes[4] = {-INFINITY, -INFINITY, -INFINITY, -INFINITY};
        int j = 0;
        for (; j + 3 <= 10000; j += 4)
            for (int l = 0; l < 4; ++l) {
                double y2 = -5.0 + (j + l) * 1e-3;
                double v = p2 * y2 - L(y1, y2);
                lanes[l] = v > lanes[l] ? v : lanes[l];
            }
        for (; j <= 10000; ++j) {
            double y2 = -5.0 + j * 1e-3;
            lanes[0] = std::max(lanes[0], p2 * y2 - L(y1, y2));
        }
        double row = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
        best = std::max(best, p1 * y1 + row);
    }
    return best;
}

// 2. Newton-based conjugate against the brute-force grid supremum.
Outcome conjugate() {
    auto t0 = Clock::now();
    double worst = 0.0;
    auto run1 = [&](const char* name, auto L) {
        Scenario sc = support::fixture(name);
        auto pts = samplePoints(resized(sc.sampling.plan(Side::Estar), 100));
        for (const auto& w : pts) {
            double h = hamiltonianFromLagrangian(*sc.pair.L, 1, 1, {w[0]}, {w[1]});
            worst = std::max(worst, std::fabs(h - gridSup1(L, w[1])));
        }
    };
    run1("exp", [](double y) { return std::exp(y); });
    run1("quart", [](double y) { return y * y * y * y / 4 + y * y / 2; });

    auto run2 = [&](const char* name, auto Lx) {
        Scenario sc = support::fixture(name);
        int used = 0;
        for (const auto& w : samplePoints(resized(sc.sampling.plan(Side::Estar), 400))) {
            if (used == 100) break;
            // the supremum must be attained inside the grid
            auto y = sc.pair.phiH({w[0], w[1]}, {w[2], w[3]});
            if (std::fabs(y[0]) > 4.5 || std::fabs(y[1]) > 4.5) continue;
            ++used;
            double h = hamiltonianFromLagrangian(*sc.pair.L, 2, 2, {w[0], w[1]}, {w[2], w[3]});
            worst = std::max(worst, std::fabs(h - gridSup2(Lx(w[0], w[1]), w[2], w[3])));
        }
        if (used < 100) worst = INFINITY;
    };
    // L at a fixed base point, as a function of the fiber
    run2("eucl", [](double, double) { return [](double y1, double y2) { return 0.5 * (y1 * y1 + y2 * y2); }; });
    run2("quad", [](double, double) { return [](double y1, double y2) { return y1 * y1 + y1 * y2 + y2 * y2; }; });
    run2("act-lag", [](double x1, double x2) {
        const double e = std::exp(x1);
        return [e, x2](double y1, double y2) { return e * y1 * y1 / 2 + y2 * y2 / 2 + x2 * y2; };
    });
    Outcome o;
    o.ok = worst <= 1e-4;
    o.detail = "max |H - grid sup| " + sci(worst) + " over 5 fixtures x 100 points, " + sci(seconds(t0)) + " s";
    return o;
}

// 3. Hessian duality at 1000 points.
Outcome hessianDuality() {
    double worst = 0.0;
    for (const char* name : {"quad", "exp"}) {
        Scenario sc = support::fixture(name);
        PairResidual r = hessianDualityResidual(sc.pair, sc.alg, resized(sc.sampling.plan(Side::Estar), 1000));
        worst = std::max({worst, r.first, r.second});
    }
    return {worst <= 1e-8, "max residual " + sci(worst)};
}

// 4. Jet2 derivatives of expressions against central differences.
double jetVsFd(const ScalarField& f, Side side, int m, const std::vector<std::vector<double>>& pts) {
    double worst = 0.0;
    for (const auto& z : pts) {
        const int n = static_cast<int>(z.size());
        std::vector<double> x(z.begin(), z.begin() + m), fb(z.begin() + m, z.end());
        auto xj = seedJets<Jet2>(x, 0, n);
        auto fj = seedJets<Jet2>(fb, m, n);
        Jet2 v = evaluate(f, envFiber(side, xj, fj));
        oracle::Fn g = [&](const std::vector<double>& w) {
            std::vector<double> xx(w.begin(), w.begin() + m), ff(w.begin() + m, w.end());
            return evaluate(f, envFiber(side, xx, ff));
        };
        auto grad = oracle::gradient(g, z);
        auto H = oracle::hessian(g, z);
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, oracle::relErr(v.g[i], grad[i]));
            for (int j = 0; j < n; ++j) worst = std::max(worst, oracle::relErr(v.hess(i, j), H[i][j]));
        }
    }
    return worst;
}

Outcome jetDerivatives() {
    double worst = 0.0;
    std::string where;
    struct Case {
        const char* expr;
        double lo, hi;
    };
    const Case cases[] = {{"exp(x1*y1)", -1, 1},     {"log(x1*y1)", 0.5, 2},   {"sin(x1*y1 + y1)", -2, 2},
                          {"cos(x1 - 2*y1)", -2, 2}, {"sqrt(x1 + y1)", 0.5, 2}, {"pow(x1, y1)", 0.5, 2},
                          {"x1^3*y1^2 - x1/y1", 0.5, 2}};
    for (const auto& c : cases) {
        SamplePlan plan{100, 7, {{c.lo, c.hi}, {c.lo, c.hi}}};
        double w = jetVsFd(parse(c.expr), Side::E, 1, samplePoints(plan));
        if (w > worst) worst = w, where = c.expr;
    }
    for (const auto& f : fixtures()) {
        Scenario sc = parseScenario(f.text);
        if (!sc.pair.L) continue;
        double w = jetVsFd(*sc.pair.L, Side::E, sc.dims.m, samplePoints(resized(sc.sampling.plan(Side::E), 100)));
        if (w > worst) worst = w, where = "L of " + f.name;
    }
    return {worst <= 1e-5, "max relative error " + sci(worst) + (where.empty() ? "" : " (" + where + ")")};
}

// 5. Algebroid axioms and prolongation bracket properties.
Outcome algebroidAxioms() {
    double gla = 0.0;
    for (const char* name : {"so3", "act"}) {
        Scenario sc = support::fixture(name);
        GlaResidual g = checkGla(sc.alg, sc.sampling.plan(Side::E));
        gla = std::max({gla, g.antisymmetry, g.anchor});
    }
    double anti = 0.0, leib = 0.0, jac = 0.0;
    support::PolyGen gen(5);
    for (const char* name : {"so3", "act"}) {
        Scenario sc = support::fixture(name);
        const int m = sc.dims.m, p = sc.dims.p, r = sc.dims.r;
        auto sup = [](const SecV& v) {
            double w = 0.0;
            for (double e : v.Z) w = std::max(w, std::fabs(e));
            for (double e : v.Y) w = std::max(w, std::fabs(e));
            return w;
        };
        for (int t = 0; t < 200; ++t) {
            Side side = t % 2 ? Side::Estar : Side::E;
            auto X1 = support::randomSection(gen, side, m, p, r);
            auto X2 = support::randomSection(gen, side, m, p, r);
            auto X3 = support::randomSection(gen, side, m, p, r);
            auto x = gen.point(m);
            auto f = gen.point(r);
            SecV a = prolongBracket(sc.alg, X1, X2, x, f);
            SecV b = prolongBracket(sc.alg, X2, X1, x, f);
            for (std::size_t k = 0; k < a.Z.size(); ++k) anti = std::max(anti, std::fabs(a.Z[k] + b.Z[k]));
            for (std::size_t k = 0; k < a.Y.size(); ++k) anti = std::max(anti, std::fabs(a.Y[k] + b.Y[k]));

            std::vector<std::string> vars = support::coordNames("x", m);
            for (const auto& v : support::coordNames(side == Side::E ? "y" : "p", r)) vars.push_back(v);
            std::string g = gen.poly(vars);
            ProlongSection gX2 = X2;
            for (auto& e : gX2.Z) e = parse("(" + g + ")*(" + prettyPrint(e) + ")");
            for (auto& e : gX2.Y) e = parse("(" + g + ")*(" + prettyPrint(e) + ")");
            ScalarField gf = parse(g);
            std::vector<double> z = x;
            z.insert(z.end(), f.begin(), f.end());
            auto gAt = [&](const std::vector<double>& w) {
                std::vector<double> xx(w.begin(), w.begin() + m), ff(w.begin() + m, w.end());
                return evaluate(gf, envFiber(side, xx, ff));
            };
            auto grad = oracle::gradient(gAt, z);
            auto an = prolongAnchor(sc.alg, X1, x, f);
            double action = 0.0;
            for (std::size_t k = 0; k < an.size(); ++k) action += an[k] * grad[k];
            SecV lhs = prolongBracket(sc.alg, X1, gX2, x, f);
            SecV s2 = evalSection(X2, x, f);
            double gv = gAt(z);
            for (std::size_t k = 0; k < lhs.Z.size(); ++k)
                leib = std::max(leib, std::fabs(lhs.Z[k] - gv * a.Z[k] - action * s2.Z[k]));
            for (std::size_t k = 0; k < lhs.Y.size(); ++k)
                leib = std::max(leib, std::fabs(lhs.Y[k] - gv * a.Y[k] - action * s2.Y[k]));

            SecV c1 = support::nestedBracket(sc.alg, X1, X2, X3, x, f);
            SecV c2 = support::nestedBracket(sc.alg, X2, X3, X1, x, f);
            SecV c3 = support::nestedBracket(sc.alg, X3, X1, X2, x, f);
            for (std::size_t k = 0; k < c1.Z.size(); ++k) c1.Z[k] += c2.Z[k] + c3.Z[k];
            for (std::size_t k = 0; k < c1.Y.size(); ++k) c1.Y[k] += c2.Y[k] + c3.Y[k];
            jac = std::max(jac, sup(c1));
        }
    }
    Outcome o;
    o.ok = gla <= 1e-12 && anti <= 1e-7 && leib <= 1e-7 && jac <= 1e-7;
    o.detail = "gla " + sci(gla) + ", antisymmetry " + sci(anti) + ", Leibniz " + sci(leib) + ", Jacobi " + sci(jac);
    return o;
}

// 6. Classical-case identities at 500 samples.
Outcome classicalSuite() {
    auto t0 = Clock::now();
    const std::vector<std::string> ids = {"4.9", "4.10", "4.11", "5.2", "5.3", "5.7", "5.8",
                                          "6.3", "6.4", "6.5", "6.6", "7.5"};
    RunConfig cfg;
    cfg.samples = 500;
    cfg.ids = ids;
    double worst = 0.0;
    bool ok = true;
    std::set<std::string> evaluated;
    for (const char* name : {"quad", "conn"}) {
        Report r = runChecks(support::fixture(name), cfg);
        for (const auto& i : r.identities) {
            if (i.status == "SKIP") continue;
            evaluated.insert(i.id);
            if (!i.residual || *i.residual > 1e-6) ok = false;
            if (i.residual) worst = std::max(worst, *i.residual);
        }
    }
    double t = seconds(t0);
    ok = ok && evaluated.size() == ids.size() && t <= 30.0;
    return {ok, std::to_string(evaluated.size()) + "/" + std::to_string(ids.size()) + " ids evaluated, max residual " +
                    sci(worst) + ", " + sci(t) + " s"};
}

// 7. Identities hold wherever their gate holds; every gate holds somewhere.
Outcome gateImplication() {
    const std::map<std::string, std::set<std::string>> groups = {
        {"morph-L", {"4.8", "4.9", "4.10", "4.11"}},
        {"HL", {"5.9", "5.10", "5.12", "5.12'"}},
        {"theta-L", {"8.3", "8.6", "8.7"}},
    };
    std::map<std::string, int> holds;
    double worst = 0.0;
    bool ok = true;
    int checked = 0;
    for (const auto& f : fixtures()) {
        Report r = runChecks(parseScenario(f.text));
        for (const auto& i : r.identities) {
            for (const auto& [gate, ids] : groups) {
                if (!ids.count(i.id)) continue;
                bool gateHolds = false;
                for (const auto& g : r.gates)
                    if (g.name == gate && g.status == "HOLDS" && g.residual && *g.residual <= 1e-8) gateHolds = true;
                if (!gateHolds || i.status == "SKIP") continue;
                ++holds[gate];
                ++checked;
                if (!i.residual || *i.residual > 1e-6) ok = false;
                if (i.residual) worst = std::max(worst, *i.residual);
            }
        }
    }
    for (const auto& [gate, ids] : groups)
        if (holds[gate] == 0) ok = false;
    return {ok, std::to_string(checked) + " gated residuals checked, max " + sci(worst)};
}

// 8. Curvature against finite-difference brackets.
Outcome curvatureOracle() {
    Scenario sc = support::fixture("conn");
    oracle::TensorFn gamma = [](const std::vector<double>& z) {
        return std::vector<double>{0.0, z[0] * z[3], 0.0, 0.0};
    };
    auto pts = samplePoints(resized(sc.sampling.plan(Side::E), 200));
    double worst = 0.0;
    bool exact = true;
    for (const auto& z : pts) {
        std::vector<double> x(z.begin(), z.begin() + 2), f(z.begin() + 2, z.end());
        auto R = curvature(sc.alg, *sc.connection(Side::E), x, f);
        auto Rfd = oracle::fdCurvature(gamma, -1.0, 2, z);
        for (int a = 0; a < 2; ++a)
            for (int al = 0; al < 2; ++al)
                for (int be = 0; be < 2; ++be) {
                    double v = R[(a * 2 + al) * 2 + be];
                    worst = std::max(worst, std::fabs(v - Rfd[(a * 2 + al) * 2 + be]));
                    if (v != -R[(a * 2 + be) * 2 + al]) exact = false;
                }
    }
    return {worst <= 1e-5 && exact,
            "max |R - R_fd| " + sci(worst) + ", antisymmetry " + (exact ? "exact" : "NOT exact")};
}

// 9. A perturbed dual connection is caught.
Outcome negativeControl() {
    Report r = runChecks(support::fixture("conn-perturbed"));
    double r53 = -1.0;
    bool ok = true;
    int independent = 0;
    for (const auto& i : r.identities) {
        if (i.id == "5.3") {
            r53 = i.residual.value_or(-1.0);
            ok = ok && i.status == "FAIL" && r53 >= 1e-3;
        }
        if (i.gate.empty()) {
            ++independent;
            ok = ok && i.status == "PASS";
        }
    }
    return {ok, "5.3 residual " + sci(r53) + ", " + std::to_string(independent) + " gate-independent ids pass"};
}

// 10. Byte-identical json across runs and thread counts.
Outcome determinism() {
    bool ok = true;
    for (const auto& f : fixtures()) {
        Scenario sc = parseScenario(f.text);
        RunConfig one, eight;
        one.threads = 1;
        eight.threads = 8;
        std::string a = renderJson(runChecks(sc, one));
        std::string b = renderJson(runChecks(sc, one));
        std::string c = renderJson(runChecks(sc, eight));
        ok = ok && a == b && a == c;
    }
    return {ok, "all fixtures, threads 1 and 8"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Legendre round trip", roundTrip},
        {"conjugate against grid supremum", conjugate},
        {"Hessian duality", hessianDuality},
        {"jet derivatives against finite differences", jetDerivatives},
        {"algebroid axioms and bracket properties", algebroidAxioms},
        {"classical-case identities", classicalSuite},
        {"gate implication", gateImplication},
        {"curvature oracle", curvatureOracle},
        {"negative control", negativeControl},
        {"report determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failed;
        std::printf("criterion %zu: %s  %s: %s\n", k + 1, o.ok ? "PASS" : "FAIL", criteria[k].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
