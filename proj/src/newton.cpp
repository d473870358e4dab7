#include "legendre_dual/newton.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace ldual {

namespace {

double normInfVec(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (!std::isfinite(x)) return INFINITY;
        m = std::max(m, std::fabs(x));
    }
    return m;
}

struct Eval {
    std::vector<double> F;
    DenseMatrix J;
    double norm = INFINITY;
};

std::optional<Eval> tryEval(const ResidualFn& fn, const std::vector<double>& z) {
    Eval e;
    e.F.assign(z.size(), 0.0);
    e.J = DenseMatrix(static_cast<int>(z.size()), static_cast<int>(z.size()));
    try {
        fn(z, e.F, e.J);
    } catch (const DomainError&) {
        return std::nullopt;
    }
    e.norm = normInfVec(e.F);
    if (!std::isfinite(e.norm)) return std::nullopt;
    return e;
}

std::vector<double> newtonStep(const Eval& e) {
    DenseMatrix inv;
    try {
        inv = invert(e.J);
    } catch (const SingularMatrix& ex) {
        throw SingularJacobian(std::string("Jacobian: ") + ex.what());
    }
    const int n = e.J.rows;
    std::vector<double> step(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) step[i] -= inv(i, j) * e.F[j];
    return step;
}

enum class Outcome { Converged, Singular, Stalled };

Outcome runFrom(const ResidualFn& fn, std::vector<double> z, const NewtonConfig& cfg, NewtonResult& out) {
    auto cur = tryEval(fn, z);
    if (!cur) return Outcome::Stalled;
    int it = 0;
    while (cur->norm > cfg.tol) {
        if (it >= cfg.maxIter) return Outcome::Stalled;
        std::vector<double> step;
        try {
            step = newtonStep(*cur);
        } catch (const SingularJacobian&) {
            return Outcome::Singular;
        }
        bool accepted = false;
        double t = 1.0;
        for (int k = 0; k <= cfg.maxHalvings; ++k, t *= 0.5) {
            std::vector<double> trial(z);
            for (std::size_t i = 0; i < z.size(); ++i) trial[i] += t * step[i];
            auto e = tryEval(fn, trial);
            if (e && e->norm < cur->norm) {
                z = std::move(trial);
                cur = std::move(e);
                accepted = true;
                break;
            }
        }
        ++it;
        if (!accepted) return Outcome::Stalled;
    }
    // A root with an ill-conditioned Jacobian is a non-regular point.
    try {
        (void)newtonStep(*cur);
    } catch (const SingularJacobian&) {
        return Outcome::Singular;
    }
    for (int k = 0; k < cfg.polishSteps && cur->norm > 0.0; ++k) {
        std::vector<double> step = newtonStep(*cur);
        std::vector<double> trial(z);
        for (std::size_t i = 0; i < z.size(); ++i) trial[i] += step[i];
        auto e = tryEval(fn, trial);
        if (!e || !(e->norm < cur->norm)) break;
        z = std::move(trial);
        cur = std::move(e);
    }
    out.z = std::move(z);
    out.iterations = it;
    out.residualNorm = cur->norm;
    return Outcome::Converged;
}

}  // namespace

std::vector<std::vector<double>> seedLadder(const std::vector<double>& seed) {
    const std::size_t n = seed.size();
    std::vector<std::vector<double>> ladder;
    ladder.push_back(seed);
    std::vector<double> zero(n, 0.0);
    if (zero != seed) ladder.push_back(zero);
    if (n == 0 || n > 16) return ladder;
    for (double scale : {1.0, 2.0, 4.0})
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<double> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i & 1u) ? scale : -scale;
            ladder.push_back(std::move(c));
        }
    return ladder;
}

NewtonResult newtonSolve(const ResidualFn& fn, const std::vector<double>& seed, const NewtonConfig& cfg) {
    auto ladder = seedLadder(seed);
    bool allSingular = true;
    for (std::size_t s = 0; s < ladder.size(); ++s) {
        NewtonResult res;
        Outcome o = runFrom(fn, ladder[s], cfg, res);
        if (o == Outcome::Converged) {
            res.startIndex = static_cast<int>(s);
            return res;
        }
        if (o != Outcome::Singular) allSingular = false;
    }
    if (allSingular) throw SingularJacobian("Newton: Jacobian condition estimate above 1e12 at every start");
    throw NoConvergence("Newton: no convergence from any of " + std::to_string(ladder.size()) + " starts");
}

}  // namespace ldual
