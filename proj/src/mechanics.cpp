#include "legendre_dual/mechanics.hpp"

#include "legendre_dual/dense_matrix.hpp"

namespace ldual {

std::vector<double> sprayCoefficients(const MechanicalSystem& sys, const std::vector<double>& x,
                                      const std::vector<double>& f) {
    if (sys.G.empty()) throw Error("spray coefficients not supplied");
    Env<double> env = envFiber(sys.side, x, f);
    std::vector<double> K = evalFields(sys.G, env);
    if (!sys.F.empty()) {
        std::vector<double> F = evalFields(sys.F, env);
        for (int a = 0; a < sys.r; ++a) K[a] -= 0.25 * F[a];
    }
    return K;
}

SecV almostTangent(const MechanicalSystem& sys, const AlgebroidData& alg, const SecV& X, const std::vector<double>& x) {
    const int r = sys.r;
    std::vector<double> g = morphismAt(sys, alg, x);
    DenseMatrix G(r, r);
    G.a = g;
    DenseMatrix inv = invert(G);
    SecV out;
    out.Z.assign(X.Z.size(), 0.0);
    out.Y.assign(r, 0.0);
    for (int b = 0; b < r; ++b)
        for (int a = 0; a < r; ++a) out.Y[b] += inv(b, a) * X.Z[a];
    return out;
}

SecV liouville(const std::vector<double>& f) {
    SecV s;
    s.Z.assign(f.size(), 0.0);
    s.Y = f;
    return s;
}

SecV semispray(const MechanicalSystem& sys, const AlgebroidData& alg, const std::vector<double>& x,
               const std::vector<double>& f) {
    const int r = sys.r;
    std::vector<double> g = morphismAt(sys, alg, x);
    std::vector<double> K = sprayCoefficients(sys, x, f);
    SecV s;
    s.Z.assign(r, 0.0);
    s.Y.assign(r, 0.0);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) s.Z[a] += f[b] * g[a * r + b];
        s.Y[a] = -2.0 * K[a];
    }
    return s;
}

std::vector<double> pcOneForm(const MechanicalSystem& sys, const LegendrePair& pair, const AlgebroidData& alg,
                              const std::vector<double>& x, const std::vector<double>& f) {
    FiberTable T = pair.table(seedPoint(sys.side, x, f));
    std::vector<double> df;
    for (const auto& j : T.df) df.push_back(j.v);
    return thetaComponents(sys.side, morphismAt(sys, alg, x), df, sys.r);
}

double twoFormOnJets(const std::vector<Jet1>& theta, const SecJ& U, const SecJ& V, const AlgebroidAt<Jet1>& at,
                     int m) {
    Jet1 thU(0.0), thV(0.0);
    for (std::size_t a = 0; a < theta.size(); ++a) {
        thU = thU + theta[a] * U.Z[a];
        thV = thV + theta[a] * V.Z[a];
    }
    SecV br = bracketT(U, V, at.rho, at.ls, m);
    double thBr = 0.0;
    for (std::size_t a = 0; a < theta.size(); ++a) thBr += theta[a].v * br.Z[a];
    return anchorDerivative(U, at.rho, thV, m) - anchorDerivative(V, at.rho, thU, m) - thBr;
}

double pcTwoForm(const MechanicalSystem& sys, const LegendrePair& pair, const AlgebroidData& alg,
                 const ProlongSection& U, const ProlongSection& V, const std::vector<double>& x,
                 const std::vector<double>& f) {
    JetPoint pt = seedPoint(sys.side, x, f);
    FiberTable T = pair.table(pt);
    auto at = algebroidAt(alg, pt.x);
    std::vector<Jet1> theta = thetaComponents(sys.side, morphismAt(sys, alg, pt.x), T.df, sys.r);
    return twoFormOnJets(theta, evalSection(U, pt.x, pt.f), evalSection(V, pt.x, pt.f), at, alg.m);
}

}  // namespace ldual
