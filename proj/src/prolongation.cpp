#include "legendre_dual/prolongation.hpp"

#include <algorithm>
#include <cmath>

namespace ldual {

SecV pushforward(const LegendrePair& pair, const AlgebroidData& alg, MorphismSide side, const ProlongSection& X,
                 const std::vector<double>& x, const std::vector<double>& f) {
    const Side src = sourceSide(side);
    if (X.side != src) throw Error("section lives on the wrong side for this tangent application");
    JetPoint u = seedPoint(src, x, f);
    FiberTable T = pair.table(u);
    SecV v = evalSection(X, x, f);
    auto at = algebroidAt(alg, x);
    return pushNatural(v, T, at.rho, alg.m);
}

double morphismResidualAt(const FiberTable& cross, const AlgebroidAt<Jet1>& at, int m, int p) {
    const int r = cross.r;
    std::vector<double> rhoV, lsV;
    for (const auto& j : at.rho) rhoV.push_back(j.v);
    for (const auto& j : at.ls) lsV.push_back(j.v);
    double worst = 0.0;
    for (int i = 0; i < p + r; ++i)
        for (int j = i + 1; j < p + r; ++j) {
            // bracket of constant natural sections on the source side, then pushed
            SecJ U = basisSection<Jet1>(i, p, r), V = basisSection<Jet1>(j, p, r);
            std::vector<Jet1> rhoC(rhoV.begin(), rhoV.end()), lsC(lsV.begin(), lsV.end());
            SecV src = bracketT(U, V, rhoC, lsC, m);
            SecV lhs = pushNatural(src, cross, rhoV, m);
            SecJ PU = pushNatural(U, cross, at.rho, m);
            SecJ PV = pushNatural(V, cross, at.rho, m);
            SecV rhs = bracketT(PU, PV, at.rho, at.ls, m);
            worst = std::max(worst, maxAbsDiff(lhs, rhs));
        }
    return worst;
}

double isAlgebroidMorphism(MorphismSide side, const AlgebroidData& alg, const LegendrePair& pair,
                           const SamplePlan& planTarget) {
    const Side tgt = targetSide(side);
    const int m = alg.m;
    double worst = 0.0;
    std::vector<double> seed;
    for (const auto& s : samplePoints(planTarget)) {
        std::vector<double> x(s.begin(), s.begin() + m), f(s.begin() + m, s.end());
        JetPoint w = seedPoint(tgt, x, f, seed);
        JetPoint img = pair.imagePoint(w);
        seed = img.fValues();
        FiberTable cross = pair.table(img);
        auto at = algebroidAt(alg, w.x);
        worst = std::max(worst, morphismResidualAt(cross, at, m, alg.p));
    }
    return worst;
}

double pullbackForm(const LegendrePair& pair, const AlgebroidData& alg, MorphismSide side, const FormFn& omega,
                    const std::vector<ProlongSection>& args, const std::vector<double>& x,
                    const std::vector<double>& f) {
    const Side src = sourceSide(side);
    const Side tgt = targetSide(side);
    std::vector<double> g = src == Side::E ? pair.phiL(x, f) : pair.phiH(x, f);
    JetPoint w = seedPoint(tgt, x, g, f);
    JetPoint img = pair.imagePoint(w);
    FiberTable cross = pair.table(img);
    auto at = algebroidAt(alg, w.x);
    std::vector<SecJ> pushed;
    for (const auto& X : args) {
        if (X.side != src) throw Error("section lives on the wrong side for this tangent application");
        SecJ v = evalSection(X, img.x, img.f);
        pushed.push_back(pushNatural(v, cross, at.rho, alg.m));
    }
    return omega(pushed, w, at);
}

}  // namespace ldual
