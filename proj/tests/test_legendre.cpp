#include <doctest.h>

#include <cmath>

#include "legendre_dual/errors.hpp"
#include "legendre_dual/legendre.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ldual;

namespace {

LegendrePair lOnly(const Scenario& sc) {
    LegendrePair p = sc.pair;
    p.H.reset();
    return p;
}

LegendrePair hOnly(const Scenario& sc) {
    LegendrePair p = sc.pair;
    p.L.reset();
    return p;
}

}  // namespace

TEST_CASE("phi_L and phi_H examples") {
    Scenario eucl = support::fixture("eucl");
    CHECK(eucl.pair.phiL({0.1, 0.2}, {0.5, -1.5}) == std::vector<double>{0.5, -1.5});
    CHECK(eucl.pair.phiH({0.1, 0.2}, {0.5, -1.5}) == std::vector<double>{0.5, -1.5});

    Scenario quad = support::fixture("quad");
    auto p = quad.pair.phiL({0.0, 0.0}, {1.0, 0.0});
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(1.0));

    Scenario ex = support::fixture("exp");
    CHECK(ex.pair.phiL({0.0}, {0.0})[0] == doctest::Approx(1.0));
    CHECK(ex.pair.phiH({0.0}, {5.0})[0] == doctest::Approx(std::log(5.0)));
    CHECK(hOnly(ex).phiH({0.0}, {5.0})[0] == doctest::Approx(std::log(5.0)));
}

TEST_CASE("Legendre transforms by Newton inversion") {
    Scenario eucl = support::fixture("eucl");
    CHECK(lOnly(eucl).hamiltonian({0.3, 0.4}, {1.5, -2.0}) == doctest::Approx(0.5 * (1.5 * 1.5 + 4.0)));
    CHECK(hOnly(eucl).lagrangian({0.3, 0.4}, {1.5, -2.0}) == doctest::Approx(0.5 * (1.5 * 1.5 + 4.0)));

    Scenario ex = support::fixture("exp");
    CHECK(lOnly(ex).hamiltonian({0.0}, {5.0}) == doctest::Approx(5.0 * std::log(5.0) - 5.0).epsilon(1e-12));
    CHECK(hOnly(ex).lagrangian({0.0}, {1.0}) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));

    Scenario quart = support::fixture("quart");
    double y = oracle::bisect([](double t) { return t * t * t + t - 10.0; }, 0.0, 5.0);
    CHECK(y == doctest::Approx(2.0));
    CHECK(quart.pair.hamiltonian({0.0}, {10.0}) == doctest::Approx(14.0).epsilon(1e-12));
    CHECK(hamiltonianFromLagrangian(*quart.pair.L, 1, 1, {0.0}, {10.0}) == doctest::Approx(14.0).epsilon(1e-12));

    Scenario quad = support::fixture("quad");
    // L(y) = y.g.y/2 from H = p.g^-1.p/2
    CHECK(hOnly(quad).lagrangian({0.0, 0.0}, {0.7, -0.2}) ==
          doctest::Approx(0.49 - 0.14 + 0.04).epsilon(1e-12));
}

TEST_CASE("Newton inversion reports failures with the point") {
    Scenario sc = support::fixture("quart");
    LegendrePair pair = sc.pair;
    pair.L = parse("y1");  // L_y = 1 never equals p = 3
    CHECK_THROWS_AS(pair.phiH({0.0}, {3.0}), Error);
}

TEST_CASE("Young identity and fiber preservation on samples") {
    for (const char* name : {"eucl", "quad", "exp", "quart", "act-lag"}) {
        Scenario sc = support::fixture(name);
        auto pts = samplePoints(sc.sampling.plan(Side::E));
        double worst = 0.0;
        for (std::size_t k = 0; k < 50; ++k) {
            std::vector<double> x(pts[k].begin(), pts[k].begin() + sc.dims.m);
            std::vector<double> y(pts[k].begin() + sc.dims.m, pts[k].end());
            auto p = sc.pair.phiL(x, y);
            LegendrePair lo = lOnly(sc);
            double H = lo.hamiltonian(x, p, y);
            double L = evaluate(*sc.pair.L, envFiber(Side::E, x, y));
            double dot = 0.0;
            for (std::size_t a = 0; a < y.size(); ++a) dot += p[a] * y[a];
            worst = std::max(worst, std::fabs(H + L - dot) / std::max(1.0, std::fabs(dot)));
            JetPoint u = seedPoint(Side::E, x, y);
            JetPoint w = sc.pair.imagePoint(u);
            CHECK(w.xValues() == x);
        }
        INFO(std::string(name));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("round trip and Hessian duality on the fixtures") {
    for (const char* name : {"eucl", "quad", "exp", "quart"}) {
        Scenario sc = support::fixture(name);
        PairResidual rt = roundTripResidual(sc.pair, sc.sampling.plan(Side::E), sc.sampling.plan(Side::Estar));
        INFO(std::string(name));
        CHECK(rt.first <= 1e-9);
        CHECK(rt.second <= 1e-9);
    }
    Scenario eucl = support::fixture("eucl");
    PairResidual e = roundTripResidual(eucl.pair, eucl.sampling.plan(Side::E), eucl.sampling.plan(Side::Estar));
    CHECK(e.first <= 1e-12);
    CHECK(e.second <= 1e-12);

    Scenario quad = support::fixture("quad");
    PairResidual hd = hessianDualityResidual(quad.pair, quad.alg, quad.sampling.plan(Side::Estar));
    CHECK(hd.first <= 1e-12);
    CHECK(hd.second == 0.0);

    Scenario ex = support::fixture("exp");
    hd = hessianDualityResidual(ex.pair, ex.alg, ex.sampling.plan(Side::Estar));
    CHECK(hd.first <= 1e-10);
    CHECK(hd.second == 0.0);

    Scenario al = support::fixture("act-lag");
    hd = hessianDualityResidual(al.pair, al.alg, al.sampling.plan(Side::Estar));
    CHECK(hd.first <= 1e-10);
    CHECK(hd.second <= 1e-10);
}

TEST_CASE("fiber tables match finite differences of L") {
    Scenario sc = support::fixture("act-lag");
    ScalarField L = *sc.pair.L;
    auto Lf = [&](const std::vector<double>& z) {
        std::vector<double> x(z.begin(), z.begin() + 2), y(z.begin() + 2, z.end());
        return evaluate(L, envFiber(Side::E, x, y));
    };
    auto pts = samplePoints(sc.sampling.plan(Side::E));
    for (std::size_t k = 0; k < 20; ++k) {
        const auto& z = pts[k];
        std::vector<double> x(z.begin(), z.begin() + 2), y(z.begin() + 2, z.end());
        FiberTable T = sc.pair.table(seedPoint(Side::E, x, y));
        auto g = oracle::gradient(Lf, z);
        auto H = oracle::hessian(Lf, z);
        CHECK(oracle::relErr(T.v.v, Lf(z)) <= 1e-12);
        for (int i = 0; i < 2; ++i) CHECK(oracle::relErr(T.dx[i].v, g[i]) <= 1e-6);
        for (int a = 0; a < 2; ++a) {
            CHECK(oracle::relErr(T.df[a].v, g[2 + a]) <= 1e-6);
            for (int i = 0; i < 2; ++i) CHECK(oracle::relErr(T.xf(i, a).v, H[i][2 + a]) <= 1e-5);
            for (int b = 0; b < 2; ++b) CHECK(oracle::relErr(T.ff(a, b).v, H[2 + a][2 + b]) <= 1e-5);
        }
    }
}

TEST_CASE("derived tables agree with closed forms") {
    // The table at a point of E* built from L alone against the one from H.
    Scenario sc = support::fixture("act-lag");
    LegendrePair lo = lOnly(sc);
    auto pts = samplePoints(sc.sampling.plan(Side::Estar));
    double worst = 0.0;
    for (std::size_t k = 0; k < 40; ++k) {
        std::vector<double> x(pts[k].begin(), pts[k].begin() + 2), p(pts[k].begin() + 2, pts[k].end());
        FiberTable A = sc.pair.table(seedPoint(Side::Estar, x, p));
        FiberTable B = lo.table(seedPoint(Side::Estar, x, p));
        worst = std::max(worst, std::fabs(A.v.v - B.v.v));
        for (int a = 0; a < 2; ++a) {
            worst = std::max(worst, std::fabs(A.df[a].v - B.df[a].v));
            for (int i = 0; i < 2; ++i) worst = std::max(worst, std::fabs(A.xf(i, a).v - B.xf(i, a).v));
            for (int b = 0; b < 2; ++b) {
                worst = std::max(worst, std::fabs(A.ff(a, b).v - B.ff(a, b).v));
                for (int j = 0; j < 4; ++j) worst = std::max(worst, std::fabs(A.ff(a, b).d[j] - B.ff(a, b).d[j]));
            }
        }
    }
    CHECK(worst <= 1e-9);
}
