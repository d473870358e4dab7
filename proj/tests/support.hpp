#pragma once

// Shared test helpers: fixture loading and random polynomial generators.

#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "legendre_dual/fixtures.hpp"
#include "legendre_dual/scenario.hpp"

namespace support {

inline ldual::Scenario fixture(const std::string& name) {
    const ldual::Fixture* f = ldual::findFixture(name);
    if (!f) throw std::runtime_error("no fixture " + name);
    return ldual::parseScenario(f->text);
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Degree <= 2 polynomial in the given variables with coefficients in [-1, 1].
class PolyGen {
public:
    explicit PolyGen(std::uint64_t seed) : rng_(seed) {}

    double coef() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_); }

    std::string poly(const std::vector<std::string>& vars) {
        std::string s = "(" + fmt(coef()) + ")";
        for (std::size_t i = 0; i < vars.size(); ++i) {
            s += " + (" + fmt(coef()) + ")*" + vars[i];
            for (std::size_t j = i; j < vars.size(); ++j)
                if (flip()) s += " + (" + fmt(coef()) + ")*" + vars[i] + "*" + vars[j];
        }
        return s;
    }

    std::vector<double> point(std::size_t n, double lo = -1.0, double hi = 1.0) {
        std::uniform_real_distribution<double> u(lo, hi);
        std::vector<double> v(n);
        for (auto& e : v) e = u(rng_);
        return v;
    }

private:
    bool flip() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 1; }
    std::mt19937_64 rng_;
};

inline std::vector<std::string> coordNames(const char* prefix, int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

inline ldual::ProlongSection randomSection(PolyGen& gen, ldual::Side side, int m, int p, int r) {
    std::vector<std::string> vars = coordNames("x", m);
    for (const auto& v : coordNames(side == ldual::Side::E ? "y" : "p", r)) vars.push_back(v);
    ldual::ProlongSection s;
    s.side = side;
    for (int a = 0; a < p; ++a) s.Z.push_back(ldual::parse(gen.poly(vars)));
    for (int a = 0; a < r; ++a) s.Y.push_back(ldual::parse(gen.poly(vars)));
    return s;
}

// [X1, [X2, X3]] with the inner bracket carried as first-order jets.
inline ldual::SecV nestedBracket(const ldual::AlgebroidData& alg, const ldual::ProlongSection& X1,
                                 const ldual::ProlongSection& X2, const ldual::ProlongSection& X3,
                                 const std::vector<double>& x, const std::vector<double>& f) {
    using namespace ldual;
    const int n = alg.m + static_cast<int>(f.size());
    auto x2 = seedJets<Jet2>(x, 0, n);
    auto f2 = seedJets<Jet2>(f, alg.m, n);
    auto at2 = algebroidAt(alg, x2);
    SecJ inner = bracketT(evalSection(X2, x2, f2), evalSection(X3, x2, f2), at2.rho, at2.ls, alg.m);
    auto x1 = seedJets<Jet1>(x, 0, n);
    auto f1 = seedJets<Jet1>(f, alg.m, n);
    auto at1 = algebroidAt(alg, x1);
    return bracketT(evalSection(X1, x1, f1), inner, at1.rho, at1.ls, alg.m);
}

}  // namespace support
