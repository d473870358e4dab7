#include "point_context.hpp"

#include "legendre_dual/dense_matrix.hpp"

namespace ldual::detail {

namespace {

std::vector<std::vector<double>> inverseOf(const FiberTable& T, int r) {
    DenseMatrix M(r, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) M(a, b) = T.ff(a, b).v;
    DenseMatrix inv = invert(M);
    std::vector<std::vector<double>> out(r, std::vector<double>(r));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) out[a][b] = inv(a, b);
    return out;
}

}  // namespace

SecV unitV(int k, int p, int r) { return basisSection<double>(k, p, r); }
SecJ unitJ(int k, int p, int r) { return basisSection<Jet1>(k, p, r); }

SideCtx::SideCtx(const Scenario& scen, Side sd, const std::vector<double>& xv, const std::vector<double>& fv,
                 const std::vector<double>& hint)
    : sc(scen),
      side(sd),
      m(scen.dims.m),
      p(scen.dims.p),
      r(scen.dims.r),
      n(scen.dims.m + scen.dims.r),
      s(frameSign(sd)),
      x(xv),
      f(fv) {
    pt = seedPoint(side, x, f, hint);
    own = sc.pair.table(pt);
    img = sc.pair.imagePoint(pt);
    cross = sc.pair.table(img);
    at = algebroidAt(sc.alg, pt.x);
    for (const auto& j : at.rho) rhoV.push_back(j.v);
}

const Jets& SideCtx::across() {
    return across_.get([&] {
        Jets A(static_cast<std::size_t>(p) * r, Jet1(0.0));
        for (int al = 0; al < p; ++al)
            for (int b = 0; b < r; ++b)
                for (int i = 0; i < m; ++i) A[al * r + b] = A[al * r + b] + at.rho[i * p + al] * cross.xf(i, b);
        return A;
    });
}

const Jets& SideCtx::aown() {
    return aown_.get([&] {
        Jets A(static_cast<std::size_t>(p) * r, Jet1(0.0));
        for (int al = 0; al < p; ++al)
            for (int b = 0; b < r; ++b)
                for (int i = 0; i < m; ++i) A[al * r + b] = A[al * r + b] + at.rho[i * p + al] * own.xf(i, b);
        return A;
    });
}

const Jets& SideCtx::gammaOwn() {
    return gammaOwn_.get([&] {
        if (const auto& c = sc.connection(side)) return evalFields(c->gamma, envFiber(side, pt.x, pt.f));
        const auto& o = sc.connection(otherSide(side));
        if (!o) throw Error("no connection on either side");
        // E*: Gamma_{a alpha} = A(alpha, a) - Gamma^e_alpha(u) L_ea(u)
        // E:  Gamma^a_alpha = -A(alpha, a) - Gamma_{e alpha}(w) H^{ea}(w)
        Jets go = evalFields(o->gamma, envFiber(otherSide(side), img.x, img.f));
        const Jets& A = across();
        Jets g(static_cast<std::size_t>(r) * p, Jet1(0.0));
        for (int a = 0; a < r; ++a)
            for (int al = 0; al < p; ++al) {
                Jet1 v = s * A[al * r + a];
                for (int e = 0; e < r; ++e) v = v - go[e * p + al] * cross.ff(e, a);
                g[a * p + al] = v;
            }
        return g;
    });
}

const std::vector<double>& SideCtx::gammaOwnV() {
    return gammaOwnV_.get([&] {
        std::vector<double> v;
        for (const auto& j : gammaOwn()) v.push_back(j.v);
        return v;
    });
}

const Jets& SideCtx::gammaOther() {
    return gammaOther_.get([&] {
        const Side o = otherSide(side);
        if (const auto& c = sc.connection(o)) return evalFields(c->gamma, envFiber(o, img.x, img.f));
        // inverse of the construction in gammaOwn, with our own table
        const Jets& go = gammaOwn();
        const Jets& A = aown();
        Jets g(static_cast<std::size_t>(r) * p, Jet1(0.0));
        for (int a = 0; a < r; ++a)
            for (int al = 0; al < p; ++al) {
                Jet1 v = -s * A[al * r + a];
                for (int e = 0; e < r; ++e) v = v - go[e * p + al] * own.ff(e, a);
                g[a * p + al] = v;
            }
        return g;
    });
}

const std::vector<double>& SideCtx::curvature() {
    return curvature_.get([&] { return curvatureFromJets(side, gammaOwn(), at, m, p, r); });
}

const DComponents& SideCtx::dOwn() {
    return dOwn_.get([&] {
        if (const auto& d = sc.distinguished(side)) return evalDistinguished(*d, x, f);
        const auto& od = sc.distinguished(otherSide(side));
        if (!od) throw Error("no distinguished connection on either side");
        DComponents O = evalDistinguished(*od, img.xValues(), img.fValues());
        const auto Xi = inverseOf(cross, r);
        const auto& gv = gammaOwnV();
        DComponents W;
        W.resize(p, r, 0.0);
        W.hc = O.hc;
        for (int g = 0; g < p; ++g)
            for (int c = 0; c < r; ++c) {
                std::vector<double> M(r);
                for (int b = 0; b < r; ++b) {
                    double v = -horizontalDerivative(side, cross.ff(b, c), g, rhoV, gv, m, p, r);
                    for (int a = 0; a < r; ++a) v += O.Hv(a, b, g) * X(a, c);
                    M[b] = v;
                }
                for (int e = 0; e < r; ++e) {
                    double v = 0.0;
                    for (int b = 0; b < r; ++b) v += Xi[e][b] * M[b];
                    W.Hv(c, e, g) = v;
                }
            }
        for (int al = 0; al < p; ++al)
            for (int be = 0; be < p; ++be)
                for (int c = 0; c < r; ++c) {
                    double v = 0.0;
                    for (int d = 0; d < r; ++d) v += O.Vc(al, be, d) * Xi[d][c];
                    W.Vc(al, be, c) = v;
                }
        // M(b, c, d) = O.vv(a, b, c) X(a, d) - X(c, e) d_e X(b, d)
        std::vector<double> M(static_cast<std::size_t>(r) * r * r, 0.0);
        for (int b = 0; b < r; ++b)
            for (int c = 0; c < r; ++c)
                for (int d = 0; d < r; ++d) {
                    double v = 0.0;
                    for (int a = 0; a < r; ++a) v += O.Vv(a, b, c) * X(a, d);
                    for (int e = 0; e < r; ++e) v -= X(c, e) * cross.ff(b, d).d[m + e];
                    M[(b * r + c) * r + d] = v;
                }
        for (int d = 0; d < r; ++d)
            for (int fi = 0; fi < r; ++fi)
                for (int e = 0; e < r; ++e) {
                    double v = 0.0;
                    for (int b = 0; b < r; ++b)
                        for (int c = 0; c < r; ++c) v += Xi[fi][b] * Xi[e][c] * M[(b * r + c) * r + d];
                    W.Vv(d, fi, e) = v;
                }
        return W;
    });
}

const std::vector<double>& SideCtx::gOwn() {
    return gOwn_.get([&] {
        const auto& ms = sc.mechanics(side);
        if (!ms) throw Error("no mechanical data on this side");
        return morphismAt(*ms, sc.alg, x);
    });
}

const std::vector<double>& SideCtx::gOther() {
    return gOther_.get([&] {
        const auto& ms = sc.mechanics(otherSide(side));
        if (!ms) throw Error("no mechanical data on the other side");
        return morphismAt(*ms, sc.alg, x);
    });
}

const std::vector<double>& SideCtx::kOwn() {
    return kOwn_.get([&] {
        const auto& ms = sc.mechanics(side);
        if (ms && !ms->G.empty()) return sprayCoefficients(*ms, x, f);
        const auto& om = sc.mechanics(otherSide(side));
        if (!om || om->G.empty()) throw Error("no spray coefficients on either side");
        // K_b = K_other(img)_a X(a, b) - 1/2 img_c gOther(a, c) A(a, b)
        std::vector<double> Ko = sprayCoefficients(*om, img.xValues(), img.fValues());
        std::vector<double> gi = imgF();
        const auto& go = gOther();
        const Jets& A = across();
        std::vector<double> K(r, 0.0);
        for (int b = 0; b < r; ++b) {
            double v = 0.0;
            for (int a = 0; a < r; ++a) {
                v += Ko[a] * X(a, b);
                double z = 0.0;
                for (int c = 0; c < r; ++c) z += gi[c] * go[a * r + c];
                v -= 0.5 * z * A[a * r + b].v;
            }
            K[b] = v;
        }
        return K;
    });
}

const Jets& SideCtx::theta() {
    return theta_.get([&] {
        const auto& ms = sc.mechanics(side);
        if (!ms) throw Error("no mechanical data on this side");
        return thetaComponents(side, morphismAt(*ms, sc.alg, pt.x), own.df, r);
    });
}

SecV SideCtx::semispray() {
    const auto& g = gOwn();
    const auto& K = kOwn();
    SecV S;
    S.Z.assign(r, 0.0);
    S.Y.assign(r, 0.0);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) S.Z[a] += f[b] * g[a * r + b];
        S.Y[a] = -2.0 * K[a];
    }
    return S;
}

PointCtx::PointCtx(const Scenario& sc, Side side, const std::vector<double>& x, const std::vector<double>& f,
                   const std::vector<double>& hint)
    : sc_(sc), side_(side), x_(x), f_(f), hint_(hint) {}

SideCtx& PointCtx::own() {
    return *own_.get([&] { return std::make_shared<SideCtx>(sc_, side_, x_, f_, hint_); });
}

SideCtx& PointCtx::image() {
    return *image_.get([&] {
        SideCtx& o = own();
        return std::make_shared<SideCtx>(sc_, otherSide(side_), x_, o.imgF(), f_);
    });
}

}  // namespace ldual::detail
