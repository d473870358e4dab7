#include "legendre_dual/algebroid.hpp"

#include <algorithm>
#include <cmath>

namespace ldual {

AlgebroidData AlgebroidData::classical(int m) {
    AlgebroidData a;
    a.m = m;
    a.p = m;
    for (int i = 0; i < m; ++i) {
        a.h.push_back(parse(symbolName(Space::X, i)));
        a.eta.push_back(parse(symbolName(Space::Chi, i)));
    }
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) a.rho.push_back(constantField(i == k ? 1.0 : 0.0));
    a.Lstruct.assign(static_cast<std::size_t>(m) * m * m, constantField(0.0));
    return a;
}

double maxAbsDiff(const SecV& a, const SecV& b) {
    double r = 0.0;
    for (std::size_t k = 0; k < a.Z.size(); ++k) r = std::max(r, std::fabs(a.Z[k] - b.Z[k]));
    for (std::size_t k = 0; k < a.Y.size(); ++k) r = std::max(r, std::fabs(a.Y[k] - b.Y[k]));
    return r;
}

SecV prolongBracket(const AlgebroidData& alg, const ProlongSection& X, const ProlongSection& Y,
                    const std::vector<double>& x, const std::vector<double>& fiber) {
    if (X.side != Y.side) throw Error("bracket of sections on different sides");
    const int n = alg.m + static_cast<int>(fiber.size());
    auto xj = seedJets<Jet1>(x, 0, n);
    auto fj = seedJets<Jet1>(fiber, alg.m, n);
    SecJ a = evalSection(X, xj, fj);
    SecJ b = evalSection(Y, xj, fj);
    auto at = algebroidAt(alg, xj);
    return bracketT(a, b, at.rho, at.ls, alg.m);
}

std::vector<double> prolongAnchor(const AlgebroidData& alg, const ProlongSection& X, const std::vector<double>& x,
                                  const std::vector<double>& fiber) {
    SecV s = evalSection(X, x, fiber);
    auto at = algebroidAt(alg, x);
    return anchorVector(s, at.rho, alg.m);
}

double anchorAction(const AlgebroidData& alg, const std::vector<ScalarField>& z, const ScalarField& f,
                    const std::vector<double>& chi) {
    const int m = alg.m, p = alg.p;
    std::vector<double> base = evalFields(alg.eta, envChi(chi));
    std::vector<Jet1> baseJ = seedJets<Jet1>(base, 0, m);
    std::vector<Jet1> hJ = evalFields(alg.h, envX(baseJ));
    std::vector<double> chiImage;
    for (const auto& v : hJ) chiImage.push_back(v.v);
    std::vector<double> rho = evalFields(alg.rho, envChi(chiImage));
    std::vector<double> zc = evalFields(z, envChi(chiImage));
    std::vector<Jet1> chiJ = seedJets<Jet1>(chiImage, 0, m);
    Jet1 fj = evaluate(f, envChi(chiJ));
    double acc = 0.0;
    for (int a = 0; a < p; ++a)
        for (int i = 0; i < m; ++i)
            for (int t = 0; t < m; ++t) acc += zc[a] * rho[i * p + a] * hJ[t].d[i] * fj.d[t];
    return acc;
}

double antisymmetryAt(const AlgebroidData& alg, const std::vector<double>& x) {
    auto at = algebroidAt(alg, x);
    const int p = alg.p;
    double r = 0.0;
    for (int g = 0; g < p; ++g)
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                r = std::max(r, std::fabs(at.ls[(g * p + a) * p + b] + at.ls[(g * p + b) * p + a]));
    return r;
}

double anchorCompatibilityAt(const AlgebroidData& alg, const std::vector<double>& x) {
    const int m = alg.m, p = alg.p;
    auto xj = seedJets<Jet1>(x, 0, m);
    auto at = algebroidAt(alg, xj);
    const auto& R = at.rho;
    double worst = 0.0;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int k = 0; k < m; ++k) {
                double lhs = 0.0;
                for (int g = 0; g < p; ++g) lhs += at.ls[(g * p + a) * p + b].v * R[k * p + g].v;
                double rhs = 0.0;
                for (int i = 0; i < m; ++i)
                    rhs += R[i * p + a].v * R[k * p + b].d[i] - R[i * p + b].v * R[k * p + a].d[i];
                worst = std::max(worst, std::fabs(lhs - rhs));
            }
    return worst;
}

double thetaCompositionAt(const AlgebroidData& alg, const std::vector<double>& x) {
    const int m = alg.m, p = alg.p;
    auto xj = seedJets<Jet1>(x, 0, m);
    std::vector<Jet1> hJ = evalFields(alg.h, envX(xj));
    std::vector<double> chi;
    for (const auto& v : hJ) chi.push_back(v.v);
    std::vector<double> rho = evalFields(alg.rho, envChi(chi));
    // theta(chi) = dh(eta(chi)) rho(chi), read at chi = h(x)
    std::vector<double> back = evalFields(alg.eta, envChi(chi));
    std::vector<Jet1> hBack = evalFields(alg.h, envX(seedJets<Jet1>(back, 0, m)));
    double worst = 0.0;
    for (int t = 0; t < m; ++t)
        for (int a = 0; a < p; ++a) {
            double lhs = 0.0, rhs = 0.0;
            for (int i = 0; i < m; ++i) {
                lhs += rho[i * p + a] * hJ[t].d[i];
                rhs += hBack[t].d[i] * rho[i * p + a];
            }
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    return worst;
}

GlaResidual checkGla(const AlgebroidData& alg, const SamplePlan& plan) {
    GlaResidual r;
    for (const auto& x : samplePoints(plan)) {
        r.antisymmetry = std::max(r.antisymmetry, antisymmetryAt(alg, x));
        r.anchor = std::max(r.anchor, anchorCompatibilityAt(alg, x));
    }
    return r;
}

}  // namespace ldual
