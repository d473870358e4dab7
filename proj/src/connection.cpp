#include "legendre_dual/connection.hpp"
#include "legendre_dual/prolongation.hpp"

#include <algorithm>
#include <cmath>

namespace ldual {

std::vector<ProlongSection> adaptedFrame(const Connection& c) {
    std::vector<ProlongSection> frame;
    for (int al = 0; al < c.p; ++al) {
        ProlongSection s;
        s.side = c.side;
        for (int b = 0; b < c.p; ++b) s.Z.push_back(constantField(b == al ? 1.0 : 0.0));
        for (int a = 0; a < c.r; ++a) {
            const ScalarField& g = c.at(a, al);
            s.Y.push_back(c.side == Side::E ? fromAst(makeUnary(g.ast)) : g);
        }
        frame.push_back(std::move(s));
    }
    return frame;
}

std::vector<SecV> adaptedFrameAt(const Connection& c, const std::vector<double>& x, const std::vector<double>& f) {
    std::vector<SecV> out;
    for (const auto& s : adaptedFrame(c)) out.push_back(evalSection(s, x, f));
    return out;
}

std::vector<std::vector<double>> adaptedCoframeAt(const Connection& c, const std::vector<double>& x,
                                                  const std::vector<double>& f) {
    const int p = c.p, r = c.r;
    std::vector<double> g = evalFields(c.gamma, envFiber(c.side, x, f));
    const double s = frameSign(c.side);
    std::vector<std::vector<double>> rows(p + r, std::vector<double>(p + r, 0.0));
    for (int al = 0; al < p; ++al) rows[al][al] = 1.0;
    for (int a = 0; a < r; ++a) {
        rows[p + a][p + a] = 1.0;
        for (int al = 0; al < p; ++al) rows[p + a][al] = -s * g[a * p + al];
    }
    return rows;
}

std::vector<double> curvatureFromJets(Side side, const std::vector<Jet1>& gamma, const AlgebroidAt<Jet1>& at, int m,
                                      int p, int r) {
    const double s = frameSign(side);
    std::vector<SecJ> frame;
    for (int al = 0; al < p; ++al) {
        SecJ d = basisSection<Jet1>(al, p, r);
        for (int a = 0; a < r; ++a) d.Y[a] = s * gamma[a * p + al];
        frame.push_back(std::move(d));
    }
    std::vector<double> R(static_cast<std::size_t>(r) * p * p, 0.0);
    for (int al = 0; al < p; ++al)
        for (int be = al + 1; be < p; ++be) {
            SecV br = bracketT(frame[al], frame[be], at.rho, at.ls, m);
            for (int a = 0; a < r; ++a) {
                double v = br.Y[a];
                for (int g = 0; g < p; ++g) v -= s * gamma[a * p + g].v * br.Z[g];
                R[(a * p + al) * p + be] = v;
                R[(a * p + be) * p + al] = -v;
            }
        }
    return R;
}

std::vector<double> curvature(const AlgebroidData& alg, const Connection& c, const std::vector<double>& x,
                              const std::vector<double>& f) {
    const int n = alg.m + c.r;
    auto xj = seedJets<Jet1>(x, 0, n);
    auto fj = seedJets<Jet1>(f, alg.m, n);
    std::vector<Jet1> g = evalFields(c.gamma, envFiber(c.side, xj, fj));
    return curvatureFromJets(c.side, g, algebroidAt(alg, xj), alg.m, c.p, c.r);
}

std::vector<double> dualConnection(const Connection& onE, const LegendrePair& pair, const AlgebroidData& alg,
                                   const std::vector<double>& x, const std::vector<double>& p) {
    const int m = alg.m, pp = alg.p, r = pair.r;
    std::vector<double> y = pair.phiH(x, p);
    FiberTable T = pair.table(seedPoint(Side::E, x, y));
    std::vector<double> g = evalFields(onE.gamma, envFiber(Side::E, x, y));
    auto at = algebroidAt(alg, x);
    std::vector<double> out(static_cast<std::size_t>(r) * pp, 0.0);
    for (int b = 0; b < r; ++b)
        for (int al = 0; al < pp; ++al) {
            double v = 0.0;
            for (int i = 0; i < m; ++i) v += at.rho[i * pp + al] * T.xf(i, b).v;
            for (int a = 0; a < r; ++a) v -= g[a * pp + al] * T.ff(a, b).v;
            out[b * pp + al] = v;
        }
    return out;
}

double inverseRelationResidual(const Connection& onE, const Connection& onEstar, const LegendrePair& pair,
                               const AlgebroidData& alg, const std::vector<double>& x, const std::vector<double>& y) {
    const int m = alg.m, pp = alg.p, r = pair.r;
    std::vector<double> p = pair.phiL(x, y);
    FiberTable T = pair.table(seedPoint(Side::Estar, x, p, y));
    std::vector<double> g = evalFields(onE.gamma, envFiber(Side::E, x, y));
    std::vector<double> gs = evalFields(onEstar.gamma, envFiber(Side::Estar, x, p));
    auto at = algebroidAt(alg, x);
    double worst = 0.0;
    for (int a = 0; a < r; ++a)
        for (int al = 0; al < pp; ++al) {
            double v = g[a * pp + al];
            for (int i = 0; i < m; ++i) v += at.rho[i * pp + al] * T.xf(i, a).v;
            for (int b = 0; b < r; ++b) v += gs[b * pp + al] * T.ff(b, a).v;
            worst = std::max(worst, std::fabs(v));
        }
    return worst;
}

DComponents evalDistinguished(const DistinguishedConnection& d, const std::vector<double>& x,
                              const std::vector<double>& f) {
    Env<double> env = envFiber(d.side, x, f);
    DComponents c;
    c.p = d.fields.p;
    c.r = d.fields.r;
    c.hc = evalFields(d.fields.hc, env);
    c.hv = evalFields(d.fields.hv, env);
    c.vc = evalFields(d.fields.vc, env);
    c.vv = evalFields(d.fields.vv, env);
    return c;
}

SecV covariantDerivativeAdapted(Side side, const DComponents& d, const std::vector<double>& gammaV,
                                const std::vector<double>& rho, int m, const SecV& X, const SecJ& T) {
    const int p = d.p, r = d.r;
    SecV out;
    out.Z.assign(p, 0.0);
    out.Y.assign(r, 0.0);
    for (int g = 0; g < p; ++g) {
        if (X.Z[g] == 0.0) continue;
        for (int al = 0; al < p; ++al) {
            double v = horizontalDerivative(side, T.Z[al], g, rho, gammaV, m, p, r);
            for (int be = 0; be < p; ++be) v += T.Z[be].v * d.Hc(al, be, g);
            out.Z[al] += X.Z[g] * v;
        }
        for (int a = 0; a < r; ++a) {
            double v = horizontalDerivative(side, T.Y[a], g, rho, gammaV, m, p, r);
            for (int b = 0; b < r; ++b) v += T.Y[b].v * d.Hv(a, b, g);
            out.Y[a] += X.Z[g] * v;
        }
    }
    for (int c = 0; c < r; ++c) {
        if (X.Y[c] == 0.0) continue;
        for (int al = 0; al < p; ++al) {
            double v = T.Z[al].d[m + c];
            for (int be = 0; be < p; ++be) v += T.Z[be].v * d.Vc(al, be, c);
            out.Z[al] += X.Y[c] * v;
        }
        for (int a = 0; a < r; ++a) {
            double v = T.Y[a].d[m + c];
            for (int b = 0; b < r; ++b) v += T.Y[b].v * d.Vv(a, b, c);
            out.Y[a] += X.Y[c] * v;
        }
    }
    return out;
}

SecV covariantDerivative(const AlgebroidData& alg, const Connection& c, const DistinguishedConnection& d,
                         const ProlongSection& X, const ProlongSection& T, const std::vector<double>& x,
                         const std::vector<double>& f) {
    if (X.side != c.side || T.side != c.side || d.side != c.side) throw Error("sections and connections on different sides");
    const int n = alg.m + c.r;
    auto xj = seedJets<Jet1>(x, 0, n);
    auto fj = seedJets<Jet1>(f, alg.m, n);
    std::vector<Jet1> gJ = evalFields(c.gamma, envFiber(c.side, xj, fj));
    std::vector<double> gV;
    for (const auto& g : gJ) gV.push_back(g.v);
    SecV Xa = naturalToAdapted(c.side, evalSection(X, x, f), gV);
    SecJ Ta = naturalToAdapted(c.side, evalSection(T, xj, fj), gJ);
    auto at = algebroidAt(alg, x);
    SecV outA = covariantDerivativeAdapted(c.side, evalDistinguished(d, x, f), gV, at.rho, alg.m, Xa, Ta);
    return adaptedToNatural(c.side, outA, gV);
}

}  // namespace ldual
