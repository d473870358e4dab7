#include <doctest.h>

#include <cmath>

#include "legendre_dual/errors.hpp"
#include "legendre_dual/prolongation.hpp"
#include "support.hpp"

using namespace ldual;

namespace {

ProlongSection constantSection(Side side, const SecV& v) {
    ProlongSection s;
    s.side = side;
    for (double z : v.Z) s.Z.push_back(constantField(z));
    for (double y : v.Y) s.Y.push_back(constantField(y));
    return s;
}

ProlongSection basis(Side side, int k, int p, int r) { return constantSection(side, basisSection<double>(k, p, r)); }

}  // namespace

TEST_CASE("pushforward examples") {
    Scenario quad = support::fixture("quad");
    ProlongSection v = constantSection(Side::E, SecV{{0.0, 0.0}, {0.3, -0.7}});
    SecV img = pushforward(quad.pair, quad.alg, MorphismSide::LtoStar, v, {0.2, 0.1}, {1.0, 0.5});
    CHECK(img.Z == std::vector<double>{0.0, 0.0});
    CHECK(img.Y[0] == doctest::Approx(2 * 0.3 - 0.7));
    CHECK(img.Y[1] == doctest::Approx(0.3 - 2 * 0.7));

    Scenario eucl = support::fixture("eucl");
    for (int a = 0; a < 2; ++a) {
        SecV e = pushforward(eucl.pair, eucl.alg, MorphismSide::LtoStar, basis(Side::E, a, 2, 2), {0.4, 0.4},
                             {1.0, -1.0});
        CHECK(maxAbsDiff(e, basisSection<double>(a, 2, 2)) == 0.0);
    }

    CHECK_THROWS_AS(pushforward(eucl.pair, eucl.alg, MorphismSide::HtoE, basis(Side::E, 0, 2, 2), {0, 0}, {0, 0}),
                    Error);
}

TEST_CASE("pushforward round trip and linearity") {
    support::PolyGen gen(77);
    for (const char* name : {"quad", "act-lag"}) {
        Scenario sc = support::fixture(name);
        const int p = sc.dims.p, r = sc.dims.r, m = sc.dims.m;
        double rt = 0.0, lin = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            auto x = gen.point(m);
            auto y = gen.point(r);
            auto pmom = sc.pair.phiL(x, y);
            for (int k = 0; k < p + r; ++k) {
                SecV there = pushforward(sc.pair, sc.alg, MorphismSide::LtoStar, basis(Side::E, k, p, r), x, y);
                SecV back =
                    pushforward(sc.pair, sc.alg, MorphismSide::HtoE, constantSection(Side::Estar, there), x, pmom);
                rt = std::max(rt, maxAbsDiff(back, basisSection<double>(k, p, r)));
            }
            SecV a{gen.point(p), gen.point(r)}, b{gen.point(p), gen.point(r)};
            double ca = gen.coef(), cb = gen.coef();
            SecV comb = a;
            for (int k = 0; k < p; ++k) comb.Z[k] = ca * a.Z[k] + cb * b.Z[k];
            for (int k = 0; k < r; ++k) comb.Y[k] = ca * a.Y[k] + cb * b.Y[k];
            SecV pa = pushforward(sc.pair, sc.alg, MorphismSide::LtoStar, constantSection(Side::E, a), x, y);
            SecV pb = pushforward(sc.pair, sc.alg, MorphismSide::LtoStar, constantSection(Side::E, b), x, y);
            SecV pc = pushforward(sc.pair, sc.alg, MorphismSide::LtoStar, constantSection(Side::E, comb), x, y);
            for (int k = 0; k < p; ++k) pa.Z[k] = ca * pa.Z[k] + cb * pb.Z[k];
            for (int k = 0; k < r; ++k) pa.Y[k] = ca * pa.Y[k] + cb * pb.Y[k];
            lin = std::max(lin, maxAbsDiff(pa, pc));
        }
        INFO(std::string(name));
        CHECK(rt <= 1e-10);
        CHECK(lin <= 1e-10);
    }
}

TEST_CASE("Legendre tangent maps are algebroid morphisms on the fixtures") {
    for (const char* name : {"eucl", "quad", "exp", "quart", "so3", "act", "act-lag", "conn"}) {
        Scenario sc = support::fixture(name);
        INFO(std::string(name));
        CHECK(isAlgebroidMorphism(MorphismSide::LtoStar, sc.alg, sc.pair, sc.sampling.plan(Side::Estar)) <= 1e-10);
        CHECK(isAlgebroidMorphism(MorphismSide::HtoE, sc.alg, sc.pair, sc.sampling.plan(Side::E)) <= 1e-10);
    }
}

TEST_CASE("the morphism residual sees a corrupted mixed derivative") {
    Scenario sc = support::fixture("act-lag");
    JetPoint w = seedPoint(Side::Estar, {0.3, -0.4}, {0.8, 0.5});
    FiberTable cross = sc.pair.table(sc.pair.imagePoint(w));
    auto at = algebroidAt(sc.alg, w.x);
    CHECK(morphismResidualAt(cross, at, 2, 2) <= 1e-12);
    cross.dxf[0 * 2 + 1].d[2 + 0] += 1.0;
    CHECK(morphismResidualAt(cross, at, 2, 2) >= 0.5);
}

TEST_CASE("pullback of forms") {
    Scenario eucl = support::fixture("eucl");
    FormFn zero = [](const std::vector<SecJ>&, const JetPoint&, const AlgebroidAt<Jet1>&) { return 0.0; };
    CHECK(pullbackForm(eucl.pair, eucl.alg, MorphismSide::LtoStar, zero, {basis(Side::E, 0, 2, 2)}, {0.1, 0.2},
                       {0.3, 0.4}) == 0.0);
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            FormFn dz = [al](const std::vector<SecJ>& args, const JetPoint&, const AlgebroidAt<Jet1>&) {
                return args[0].Z[al].v;
            };
            double v = pullbackForm(eucl.pair, eucl.alg, MorphismSide::LtoStar, dz, {basis(Side::E, be, 2, 2)},
                                    {0.1, 0.2}, {0.3, 0.4});
            CHECK(v == (al == be ? 1.0 : 0.0));
        }
}
