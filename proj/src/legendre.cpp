#include "legendre_dual/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legendre_dual/dense_matrix.hpp"

namespace ldual {

std::vector<double> JetPoint::xValues() const {
    std::vector<double> v;
    for (const auto& j : x) v.push_back(j.v);
    return v;
}

std::vector<double> JetPoint::fValues() const {
    std::vector<double> v;
    for (const auto& j : f) v.push_back(j.v);
    return v;
}

JetPoint seedPoint(Side side, const std::vector<double>& x, const std::vector<double>& f, std::vector<double> hint) {
    const int n = static_cast<int>(x.size() + f.size());
    if (n > kMaxVars) throw Error("too many coordinates for jet capacity");
    JetPoint pt;
    pt.side = side;
    pt.x = seedJets<Jet1>(x, 0, n);
    pt.f = seedJets<Jet1>(f, static_cast<int>(x.size()), n);
    pt.hint = std::move(hint);
    return pt;
}

namespace {

const ScalarField& fieldFor(const LegendrePair& pair, Side s) { return s == Side::E ? *pair.L : *pair.H; }

Jet2 evalFiberJet2(Side side, const ScalarField& F, const std::vector<double>& x, const std::vector<double>& f) {
    const int r = static_cast<int>(f.size());
    std::vector<Jet2> xs;
    for (double v : x) xs.emplace_back(v);
    std::vector<Jet2> fs = seedJets<Jet2>(f, 0, r);
    return evaluate(F, envFiber(side, xs, fs));
}

// Table of the dual function from the table T of the closed one, where g are the
// image fiber jets and f the point's own fiber jets.
FiberTable dualTable(const FiberTable& T, const std::vector<Jet1>& f, const std::vector<Jet1>& g) {
    const int m = T.m, r = T.r;
    FiberTable D;
    D.m = m;
    D.r = r;
    D.v = Jet1(0.0);
    for (int a = 0; a < r; ++a) D.v = D.v + f[a] * g[a];
    D.v = D.v - T.v;
    for (int i = 0; i < m; ++i) D.dx.push_back(-T.dx[i]);
    D.df = g;
    std::vector<std::vector<Jet1>> hess(r, std::vector<Jet1>(r));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) hess[a][b] = T.ff(a, b);
    auto inv = invertGeneric(hess);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) D.dff.push_back(inv[a][b]);
    for (int i = 0; i < m; ++i)
        for (int b = 0; b < r; ++b) {
            Jet1 s(0.0);
            for (int c = 0; c < r; ++c) s = s + inv[b][c] * T.xf(i, c);
            D.dxf.push_back(-s);
        }
    return D;
}

std::string describePoint(const char* label, const std::vector<double>& x, const std::vector<double>& f) {
    std::ostringstream os;
    os.precision(17);
    os << label << " (";
    for (std::size_t k = 0; k < x.size(); ++k) os << (k ? ", " : "") << x[k];
    os << "; ";
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? ", " : "") << f[k];
    os << ")";
    return os.str();
}

}  // namespace

FiberTable LegendrePair::closedTable(Side side, const ScalarField& F, const JetPoint& pt) const {
    const int nIn = m + r;
    if (nIn > kMaxVars) throw Error("m + r exceeds jet capacity");
    using J = Jet2T<Jet1>;
    std::vector<J> xs, fs;
    for (int i = 0; i < m; ++i) xs.push_back(J::variable(pt.x[i], i, nIn));
    for (int a = 0; a < r; ++a) fs.push_back(J::variable(pt.f[a], m + a, nIn));
    J res = evaluate(F, envFiber(side, xs, fs));
    FiberTable T;
    T.m = m;
    T.r = r;
    T.v = res.v;
    for (int i = 0; i < m; ++i) T.dx.push_back(res.g[i]);
    for (int a = 0; a < r; ++a) T.df.push_back(res.g[m + a]);
    for (int i = 0; i < m; ++i)
        for (int b = 0; b < r; ++b) T.dxf.push_back(res.hess(i, m + b));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) T.dff.push_back(res.hess(m + a, m + b));
    return T;
}

std::vector<double> LegendrePair::solveInverse(Side target, const std::vector<double>& x,
                                               const std::vector<double>& rhs,
                                               const std::vector<double>& seed) const {
    if (!closed(target)) throw Error("no closed function to invert");
    const ScalarField& F = fieldFor(*this, target);
    ResidualFn fn = [&](const std::vector<double>& z, std::vector<double>& out, DenseMatrix& J) {
        Jet2 v = evalFiberJet2(target, F, x, z);
        for (int a = 0; a < r; ++a) {
            out[a] = v.g[a] - rhs[a];
            for (int b = 0; b < r; ++b) J(a, b) = v.hess(a, b);
        }
    };
    std::vector<double> s = seed.size() == static_cast<std::size_t>(r) ? seed : std::vector<double>(r, 0.0);
    return newtonSolve(fn, s, newton).z;
}

std::vector<double> LegendrePair::solveVelocity(const std::vector<double>& x, const std::vector<double>& p,
                                                const std::vector<double>& seed) const {
    return solveInverse(Side::E, x, p, seed);
}

std::vector<double> LegendrePair::solveMomentum(const std::vector<double>& x, const std::vector<double>& y,
                                                const std::vector<double>& seed) const {
    return solveInverse(Side::Estar, x, y, seed);
}

std::vector<Jet1> LegendrePair::implicitImage(const JetPoint& pt) const {
    const Side other = otherSide(pt.side);
    std::vector<double> xv = pt.xValues();
    std::vector<double> g = solveInverse(other, xv, pt.fValues(), pt.hint);
    JetPoint flat;
    flat.side = other;
    for (double v : xv) flat.x.emplace_back(v);
    for (double v : g) flat.f.emplace_back(v);
    FiberTable T = closedTable(other, fieldFor(*this, other), flat);
    DenseMatrix hess(r, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) hess(a, b) = T.ff(a, b).v;
    DenseMatrix inv = invert(hess);
    int n = 0;
    for (const auto& j : pt.x) n = std::max(n, j.n);
    for (const auto& j : pt.f) n = std::max(n, j.n);
    std::vector<Jet1> out;
    for (int a = 0; a < r; ++a) {
        Jet1 ga(g[a]);
        ga.n = n;
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int b = 0; b < r; ++b) {
                double rhs = pt.f[b].d[k];
                for (int i = 0; i < m; ++i) rhs -= T.xf(i, b).v * pt.x[i].d[k];
                s += inv(a, b) * rhs;
            }
            ga.d[k] = s;
        }
        out.push_back(ga);
    }
    return out;
}

FiberTable LegendrePair::derivedTable(const JetPoint& pt) const {
    const Side other = otherSide(pt.side);
    std::vector<Jet1> g = implicitImage(pt);
    JetPoint img{other, pt.x, g, {}};
    FiberTable T = closedTable(other, fieldFor(*this, other), img);
    return dualTable(T, pt.f, g);
}

FiberTable LegendrePair::table(const JetPoint& pt) const {
    if (closed(pt.side)) return closedTable(pt.side, fieldFor(*this, pt.side), pt);
    return derivedTable(pt);
}

std::vector<Jet1> LegendrePair::image(const JetPoint& pt) const {
    if (closed(pt.side)) return closedTable(pt.side, fieldFor(*this, pt.side), pt).df;
    return implicitImage(pt);
}

JetPoint LegendrePair::imagePoint(const JetPoint& pt) const {
    JetPoint img;
    img.side = otherSide(pt.side);
    img.x = pt.x;
    img.f = image(pt);
    img.hint = pt.fValues();
    return img;
}

std::vector<double> LegendrePair::phiL(const std::vector<double>& x, const std::vector<double>& y,
                                       const std::vector<double>& seed) const {
    if (L) {
        Jet2 v = evalFiberJet2(Side::E, *L, x, y);
        return std::vector<double>(v.g.begin(), v.g.begin() + r);
    }
    return solveMomentum(x, y, seed);
}

std::vector<double> LegendrePair::phiH(const std::vector<double>& x, const std::vector<double>& p,
                                       const std::vector<double>& seed) const {
    if (H) {
        Jet2 v = evalFiberJet2(Side::Estar, *H, x, p);
        return std::vector<double>(v.g.begin(), v.g.begin() + r);
    }
    return solveVelocity(x, p, seed);
}

double LegendrePair::hamiltonian(const std::vector<double>& x, const std::vector<double>& p,
                                 const std::vector<double>& seed) const {
    if (H) return evaluate(*H, envFiber(Side::Estar, x, p));
    std::vector<double> y = solveVelocity(x, p, seed);
    double s = 0.0;
    for (int a = 0; a < r; ++a) s += p[a] * y[a];
    return s - evaluate(*L, envFiber(Side::E, x, y));
}

double LegendrePair::lagrangian(const std::vector<double>& x, const std::vector<double>& y,
                                const std::vector<double>& seed) const {
    if (L) return evaluate(*L, envFiber(Side::E, x, y));
    std::vector<double> p = solveMomentum(x, y, seed);
    double s = 0.0;
    for (int a = 0; a < r; ++a) s += y[a] * p[a];
    return s - evaluate(*H, envFiber(Side::Estar, x, p));
}

double hamiltonianFromLagrangian(const ScalarField& L, int m, int r, const std::vector<double>& x,
                                 const std::vector<double>& p, const std::vector<double>& seed,
                                 const NewtonConfig& cfg) {
    LegendrePair pair;
    pair.m = m;
    pair.r = r;
    pair.L = L;
    pair.newton = cfg;
    return pair.hamiltonian(x, p, seed);
}

double lagrangianFromHamiltonian(const ScalarField& H, int m, int r, const std::vector<double>& x,
                                 const std::vector<double>& y, const std::vector<double>& seed,
                                 const NewtonConfig& cfg) {
    LegendrePair pair;
    pair.m = m;
    pair.r = r;
    pair.H = H;
    pair.newton = cfg;
    return pair.lagrangian(x, y, seed);
}

PairResidual roundTripResidual(const LegendrePair& pair, const SamplePlan& planE, const SamplePlan& planEstar) {
    PairResidual res;
    const int m = pair.m;
    auto split = [m](const std::vector<double>& pt) {
        return std::make_pair(std::vector<double>(pt.begin(), pt.begin() + m),
                              std::vector<double>(pt.begin() + m, pt.end()));
    };
    std::vector<double> seedA, seedB;
    for (const auto& pt : samplePoints(planE)) {
        auto [x, y] = split(pt);
        try {
            std::vector<double> p = pair.phiL(x, y, seedA);
            std::vector<double> back = pair.phiH(x, p, seedB);
            seedA = p;
            seedB = back;
            for (std::size_t a = 0; a < y.size(); ++a) res.first = std::max(res.first, std::fabs(back[a] - y[a]));
        } catch (const Error& e) {
            throw Error(std::string(e.what()) + " at " + describePoint("E point", x, y));
        }
    }
    seedA.clear();
    seedB.clear();
    for (const auto& pt : samplePoints(planEstar)) {
        auto [x, p] = split(pt);
        try {
            std::vector<double> y = pair.phiH(x, p, seedA);
            std::vector<double> back = pair.phiL(x, y, seedB);
            seedA = y;
            seedB = back;
            for (std::size_t a = 0; a < p.size(); ++a) res.second = std::max(res.second, std::fabs(back[a] - p[a]));
        } catch (const Error& e) {
            throw Error(std::string(e.what()) + " at " + describePoint("E* point", x, p));
        }
    }
    return res;
}

PairResidual hessianDualityResidual(const LegendrePair& pair, const AlgebroidData& alg,
                                    const SamplePlan& planEstar) {
    PairResidual res;
    const int m = pair.m, r = pair.r, p = alg.p;
    std::vector<double> seed;
    for (const auto& pt : samplePoints(planEstar)) {
        std::vector<double> x(pt.begin(), pt.begin() + m), mom(pt.begin() + m, pt.end());
        JetPoint w = seedPoint(Side::Estar, x, mom, seed);
        FiberTable HT = pair.table(w);
        JetPoint u = pair.imagePoint(w);
        seed = u.fValues();
        FiberTable LT = pair.table(u);
        DenseMatrix hab(r, r);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) hab(a, b) = HT.ff(a, b).v;
        DenseMatrix inv = invert(hab);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) res.first = std::max(res.first, std::fabs(inv(a, b) - LT.ff(a, b).v));
        auto at = algebroidAt(alg, x);
        for (int al = 0; al < p; ++al)
            for (int a = 0; a < r; ++a) {
                double s = 0.0;
                for (int i = 0; i < m; ++i) {
                    s += at.rho[i * p + al] * LT.xf(i, a).v;
                    for (int b = 0; b < r; ++b) s += at.rho[i * p + al] * HT.xf(i, b).v * inv(b, a);
                }
                res.second = std::max(res.second, std::fabs(s));
            }
    }
    return res;
}

}  // namespace ldual
