#include <doctest.h>

#include <cmath>

#include "legendre_dual/dense_matrix.hpp"
#include "legendre_dual/jet.hpp"
#include "legendre_dual/newton.hpp"
#include "legendre_dual/sampling.hpp"
#include "oracles.hpp"

using namespace ldual;

TEST_CASE("jet2 product and quotient rules") {
    Jet2 x = Jet2::variable(2.0, 0, 2);
    Jet2 y = Jet2::variable(3.0, 1, 2);
    Jet2 f = x * y * y;  // x y^2
    CHECK(f.v == 18.0);
    CHECK(f.g[0] == 9.0);
    CHECK(f.g[1] == 12.0);
    CHECK(f.hess(0, 0) == 0.0);
    CHECK(f.hess(0, 1) == 6.0);
    CHECK(f.hess(1, 0) == 6.0);
    CHECK(f.hess(1, 1) == 4.0);

    Jet2 q = x / y;
    CHECK(q.g[1] == doctest::Approx(-2.0 / 9.0));
    CHECK(q.hess(1, 1) == doctest::Approx(4.0 / 27.0));
    CHECK(q.hess(0, 1) == doctest::Approx(-1.0 / 9.0));
}

TEST_CASE("jet2 elementary functions match finite differences") {
    SplitMix64 rng(11);
    using F2 = std::function<Jet2(const Jet2&, const Jet2&)>;
    using Fd = std::function<double(double, double)>;
    struct Case {
        const char* name;
        F2 jet;
        Fd ref;
        double lo, hi;
    };
    std::vector<Case> cases = {
        {"add", [](auto& a, auto& b) { return a + b; }, [](double a, double b) { return a + b; }, -2, 2},
        {"sub", [](auto& a, auto& b) { return a - b; }, [](double a, double b) { return a - b; }, -2, 2},
        {"mul", [](auto& a, auto& b) { return a * b; }, [](double a, double b) { return a * b; }, -2, 2},
        {"div", [](auto& a, auto& b) { return a / b; }, [](double a, double b) { return a / b; }, 0.5, 2},
        {"pow", [](auto& a, auto&) { return jpow(a, 2.5); }, [](double a, double) { return std::pow(a, 2.5); }, 0.5, 2},
        {"exp", [](auto& a, auto& b) { return jexp(a * b); }, [](double a, double b) { return std::exp(a * b); }, -1, 1},
        {"log", [](auto& a, auto& b) { return jlog(a * b); }, [](double a, double b) { return std::log(a * b); }, 0.5, 2},
        {"sin", [](auto& a, auto& b) { return jsin(a * b); }, [](double a, double b) { return std::sin(a * b); }, -2, 2},
        {"cos", [](auto& a, auto& b) { return jcos(a * b); }, [](double a, double b) { return std::cos(a * b); }, -2, 2},
        {"sqrt", [](auto& a, auto& b) { return jsqrt(a + b); }, [](double a, double b) { return std::sqrt(a + b); }, 0.5, 2},
    };
    for (const auto& c : cases) {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            std::vector<double> pt = {rng.uniform(c.lo, c.hi), rng.uniform(c.lo, c.hi)};
            Jet2 r = c.jet(Jet2::variable(pt[0], 0, 2), Jet2::variable(pt[1], 1, 2));
            oracle::Fn f = [&](const std::vector<double>& z) { return c.ref(z[0], z[1]); };
            auto g = oracle::gradient(f, pt);
            auto H = oracle::hessian(f, pt);
            for (int i = 0; i < 2; ++i) {
                worst = std::max(worst, oracle::relErr(r.g[i], g[i]));
                for (int j = 0; j < 2; ++j) worst = std::max(worst, oracle::relErr(r.hess(i, j), H[i][j]));
            }
        }
        INFO(c.name);
        CHECK(worst <= 1e-5);
    }
}

TEST_CASE("nested jets carry third derivatives") {
    // f = x^3 seeded with an outer jet: d/dx of f'' is 6.
    Jet1 outer = Jet1::variable(2.0, 0, 1);
    Jet2T<Jet1> x = Jet2T<Jet1>::variable(outer, 0, 1);
    auto f = x * x * x;
    CHECK(f.hess(0, 0).v == doctest::Approx(12.0));
    CHECK(f.hess(0, 0).d[0] == doctest::Approx(6.0));
    CHECK(f.g[0].d[0] == doctest::Approx(12.0));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(jlog(Jet2::variable(-1.0, 0, 1)), DomainError);
    CHECK_THROWS_AS(Jet2::variable(1.0, 0, 1) / Jet2(0.0), DomainError);
    CHECK_THROWS_AS(jsqrt(Jet1::variable(-1.0, 0, 1)), DomainError);
    CHECK_THROWS_AS(jpow(-2.0, 0.5), DomainError);
    CHECK(jpow(-2.0, 3.0) == -8.0);
}

TEST_CASE("newton examples") {
    auto scalar = [](std::function<double(double)> r, std::function<double(double)> dr) {
        return ResidualFn([=](const std::vector<double>& z, std::vector<double>& F, DenseMatrix& J) {
            F[0] = r(z[0]);
            J(0, 0) = dr(z[0]);
        });
    };
    auto lin = newtonSolve(scalar([](double y) { return y - 2; }, [](double) { return 1.0; }), {0.0});
    CHECK(lin.z[0] == 2.0);
    CHECK(lin.iterations == 1);

    double cubicRoot = oracle::bisect([](double y) { return y * y * y + y - 10; }, 0, 10);
    auto cub = newtonSolve(scalar([](double y) { return y * y * y + y - 10; }, [](double y) { return 3 * y * y + 1; }),
                           {0.0});
    CHECK(cub.z[0] == doctest::Approx(cubicRoot).epsilon(1e-12));
    CHECK(std::fabs(cub.z[0] - 2.0) < 1e-12);

    auto ex = newtonSolve(scalar([](double y) { return std::exp(y) - 5; }, [](double y) { return std::exp(y); }),
                          {0.0});
    CHECK(ex.z[0] == doctest::Approx(std::log(5.0)).epsilon(1e-13));

    SUBCASE("idempotent") {
        auto fn = scalar([](double y) { return std::exp(y) - 5; }, [](double y) { return std::exp(y); });
        auto again = newtonSolve(fn, ex.z);
        CHECK(again.iterations <= 1);
    }
}

TEST_CASE("newton falls back along the seed ladder and reports failures") {
    // atan-like residual diverges from far seeds without damping; damping copes.
    ResidualFn fn = [](const std::vector<double>& z, std::vector<double>& F, DenseMatrix& J) {
        F[0] = std::atan(z[0] - 1.0);
        J(0, 0) = 1.0 / (1.0 + (z[0] - 1.0) * (z[0] - 1.0));
    };
    auto res = newtonSolve(fn, {30.0});
    CHECK(res.z[0] == doctest::Approx(1.0));

    ResidualFn none = [](const std::vector<double>& z, std::vector<double>& F, DenseMatrix& J) {
        F[0] = z[0] * z[0] + 1.0;
        J(0, 0) = 2 * z[0];
    };
    CHECK_THROWS_AS(newtonSolve(none, {0.5}), Error);

    ResidualFn flat = [](const std::vector<double>&, std::vector<double>& F, DenseMatrix& J) {
        F[0] = 1.0;
        J(0, 0) = 0.0;
    };
    CHECK_THROWS_AS(newtonSolve(flat, {0.0}), SingularJacobian);

    CHECK(seedLadder({0.5, 0.5}).size() == 2 + 3 * 4);
}

TEST_CASE("invert examples") {
    CHECK(maxAbsDiff(invert(DenseMatrix::identity(2)), DenseMatrix::identity(2)) == 0.0);
    DenseMatrix inv = invert(DenseMatrix{{2, 1}, {1, 2}});
    CHECK(maxAbsDiff(inv, DenseMatrix{{2.0 / 3, -1.0 / 3}, {-1.0 / 3, 2.0 / 3}}) < 1e-15);
    CHECK_THROWS_AS(invert(DenseMatrix{{1, 1}, {1, 1}}), SingularMatrix);
    CHECK_THROWS_AS(invert(DenseMatrix{{1, 0}, {0, 1e-14}}), SingularMatrix);
}

TEST_CASE("invert twice returns the original") {
    SplitMix64 rng(5);
    for (int k = 0; k < 200; ++k) {
        int n = 1 + static_cast<int>(rng.next() % 5);
        DenseMatrix m(n, n);
        for (auto& v : m.a) v = rng.uniform(-1, 1);
        for (int i = 0; i < n; ++i) m(i, i) += 3.0;  // keeps the condition moderate
        DenseMatrix inv = invert(m);
        double cond = conditionEstimate(m, inv);
        if (cond >= 1e6) continue;
        CHECK(maxAbsDiff(m * inv, DenseMatrix::identity(n)) <= 1e-10 * cond);
        CHECK(maxAbsDiff(invert(inv), m) <= 1e-9);
    }
}

TEST_CASE("splitmix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
}

TEST_CASE("sample_points") {
    SamplePlan empty{0, 1, {{0, 1}}};
    CHECK(samplePoints(empty).empty());

    SamplePlan three{3, 1, {{0, 1}}};
    auto a = samplePoints(three);
    CHECK(a == samplePoints(three));
    REQUIRE(a.size() == 3);
    CHECK(a[0][0] == 0.5665615751722809);
    CHECK(a[1][0] == 0.7457817572627011);
    CHECK(a[2][0] == 0.9710027535867962);

    SamplePlan many{10000, 42, {{-1, 1}, {-1, 1}}};
    auto pts = samplePoints(many);
    for (int k = 0; k < 2; ++k) {
        double mean = 0.0;
        for (const auto& p : pts) {
            CHECK((p[k] >= -1 && p[k] <= 1));
            mean += p[k];
        }
        CHECK(std::fabs(mean / pts.size()) < 0.05);
    }
    CHECK_THROWS_AS(samplePoints(SamplePlan{1, 0, {{1, 0}}}), Error);
}
