#include "legendre_dual/registry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "legendre_dual/dense_matrix.hpp"
#include "point_context.hpp"

namespace ldual {

namespace {

using detail::Jets;
using detail::PointCtx;
using detail::SideCtx;
using detail::unitJ;
using detail::unitV;

constexpr std::size_t kChunk = 32;

enum class Where { Base, E, Estar };

struct SampleData {
    Side side = Side::E;
    std::vector<double> x, f, hint;
    std::optional<double> roundTrip;
    std::string roundTripError;
};

using EvalFn = std::function<double(PointCtx&, const SampleData&)>;

struct Acc {
    double v = 0.0;
    void add(double d) {
        double a = std::fabs(d);
        if (std::isnan(a)) v = a;
        else if (!std::isnan(v)) v = std::max(v, a);
    }
};

// ---- Legendre maps and the algebroid ----

double theRoundTrip(PointCtx&, const SampleData& sd) {
    if (!sd.roundTripError.empty()) throw Error(sd.roundTripError);
    return *sd.roundTrip;
}

// Structure functions seen from the image: they live on the base, so both sides agree.
double morphTrivial(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    auto atImg = algebroidAt(c.sc.alg, c.img.xValues());
    Acc acc;
    for (std::size_t k = 0; k < atImg.ls.size(); ++k) acc.add(atImg.ls[k] - c.at.ls[k].v);
    return acc.v;
}

// L^g_ab A(g, b) = rho_a(A(b, .)) + A(a, .) d_f A(b, .) - (a <-> b), A = rho^i cross_i
double morphBracket(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const Jets& A = c.across();
    const int m = c.m, p = c.p, r = c.r;
    Acc acc;
    auto half = [&](int al, int be, int b) {
        double v = 0.0;
        for (int i = 0; i < m; ++i) v += c.rhoV[i * p + al] * A[be * r + b].d[i];
        for (int a = 0; a < r; ++a) v += A[al * r + a].v * A[be * r + b].d[m + a];
        return v;
    };
    for (int al = 0; al < p; ++al)
        for (int be = al + 1; be < p; ++be)
            for (int b = 0; b < r; ++b) {
                double lhs = 0.0;
                for (int g = 0; g < p; ++g) lhs += c.at.ls[(g * p + al) * p + be].v * A[g * r + b].v;
                acc.add(lhs - (half(al, be, b) - half(be, al, b)));
            }
    return acc.v;
}

double morphMixed(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const Jets& A = c.across();
    const int m = c.m, p = c.p, r = c.r;
    Acc acc;
    for (int al = 0; al < p; ++al)
        for (int b = 0; b < r; ++b)
            for (int cc = 0; cc < r; ++cc) {
                double v = 0.0;
                for (int i = 0; i < m; ++i) v += c.rhoV[i * p + al] * c.cross.ff(b, cc).d[i];
                for (int a = 0; a < r; ++a) {
                    v += A[al * r + a].v * c.cross.ff(b, cc).d[m + a];
                    v -= c.X(b, a) * A[al * r + cc].d[m + a];
                }
                acc.add(v);
            }
    return acc.v;
}

double morphVertical(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int m = c.m, r = c.r;
    Acc acc;
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            for (int d = 0; d < r; ++d) {
                double v = 0.0;
                for (int e = 0; e < r; ++e)
                    v += c.X(a, e) * c.cross.ff(b, d).d[m + e] - c.X(b, e) * c.cross.ff(a, d).d[m + e];
                acc.add(v);
            }
    return acc.v;
}

double morphGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    return morphismResidualAt(c.cross, c.at, c.m, c.p);
}

// ---- Hessian duality ----

double hessianInverse(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int r = c.r;
    DenseMatrix M(r, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) M(a, b) = c.own.ff(a, b).v;
    DenseMatrix inv = invert(M);
    Acc acc;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) acc.add(inv(a, b) - c.X(a, b));
    return acc.v;
}

double hessianMixed(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int p = c.p, r = c.r;
    DenseMatrix M(r, r);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) M(a, b) = c.own.ff(a, b).v;
    DenseMatrix inv = invert(M);
    const Jets& A = c.across();
    const Jets& Ao = c.aown();
    Acc acc;
    for (int al = 0; al < p; ++al)
        for (int a = 0; a < r; ++a) {
            double v = A[al * r + a].v;
            for (int b = 0; b < r; ++b) v += Ao[al * r + b].v * inv(b, a);
            acc.add(v);
        }
    return acc.v;
}

// ---- nonlinear connections ----

double hlGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int p = c.p, r = c.r;
    const auto& gv = c.gammaOwnV();
    const Jets& go = c.gammaOther();
    Acc acc;
    for (int al = 0; al < p; ++al) {
        SecV d = unitV(al, p, r);
        for (int a = 0; a < r; ++a) d.Y[a] = c.s * gv[a * p + al];
        SecV pushed = pushNatural(d, c.own, c.rhoV, c.m);
        SecV target = unitV(al, p, r);
        for (int a = 0; a < r; ++a) target.Y[a] = -c.s * go[a * p + al].v;
        acc.add(maxAbsDiff(pushed, target));
    }
    return acc.v;
}

double connectionDual(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int p = c.p, r = c.r;
    const auto& gv = c.gammaOwnV();
    const Jets& go = c.gammaOther();
    const Jets& A = c.across();
    Acc acc;
    for (int a = 0; a < r; ++a)
        for (int al = 0; al < p; ++al) {
            double rhs = c.s * A[al * r + a].v;
            for (int e = 0; e < r; ++e) rhs -= go[e * p + al].v * c.X(e, a);
            acc.add(gv[a * p + al] - rhs);
        }
    return acc.v;
}

double curvatureDual(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int p = c.p, r = c.r;
    const auto& R = c.curvature();
    const auto& Ri = pc.image().curvature();
    Acc acc;
    for (int b = 0; b < r; ++b)
        for (int al = 0; al < p; ++al)
            for (int be = al + 1; be < p; ++be) {
                double v = R[(b * p + al) * p + be];
                for (int a = 0; a < r; ++a) v -= Ri[(a * p + al) * p + be] * c.X(a, b);
                acc.add(v);
            }
    return acc.v;
}

double connectionDerivative(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    SideCtx& ic = pc.image();
    const int m = c.m, p = c.p, r = c.r;
    const Jets& go = c.gammaOwn();
    const Jets& gi = ic.gammaOwn();
    Acc acc;
    for (int b = 0; b < r; ++b)
        for (int cc = 0; cc < r; ++cc)
            for (int al = 0; al < p; ++al) {
                double lhs = 0.0;
                for (int a = 0; a < r; ++a) lhs += gi[a * p + al].d[m + b] * c.X(a, cc);
                double rhs = c.s * horizontalDerivative(c.side, c.cross.ff(b, cc), al, c.rhoV, c.gammaOwnV(), m, p, r);
                for (int a = 0; a < r; ++a) rhs -= c.X(b, a) * go[cc * p + al].d[m + a];
                acc.add(lhs - rhs);
            }
    return acc.v;
}

double coframePullback(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int p = c.p, r = c.r;
    const auto& gv = c.gammaOwnV();
    const Jets& go = c.gammaOther();
    const Jets& Ao = c.aown();
    Acc acc;
    for (int k = 0; k < p + r; ++k) {
        SecV X = unitV(k, p, r);
        for (int a = 0; a < r; ++a) {
            double lhs = 0.0, rhs = 0.0;
            for (int g = 0; g < p; ++g) lhs += (c.s * go[a * p + g].v + Ao[g * r + a].v) * X.Z[g];
            for (int cc = 0; cc < r; ++cc) lhs += X.Y[cc] * c.own.ff(cc, a).v;
            for (int b = 0; b < r; ++b) {
                double t = X.Y[b];
                for (int g = 0; g < p; ++g) t -= c.s * gv[b * p + g] * X.Z[g];
                rhs += c.own.ff(a, b).v * t;
            }
            acc.add(lhs - rhs);
        }
    }
    return acc.v;
}

// ---- distinguished connections ----

double dHorizontal(PointCtx& pc, const SampleData&) {
    const auto& W = pc.own().dOwn();
    const auto& O = pc.image().dOwn();
    Acc acc;
    for (std::size_t k = 0; k < W.hc.size(); ++k) acc.add(O.hc[k] - W.hc[k]);
    return acc.v;
}

double dHorizontalVertical(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const auto& W = c.dOwn();
    const auto& O = pc.image().dOwn();
    const int m = c.m, p = c.p, r = c.r;
    Acc acc;
    for (int b = 0; b < r; ++b)
        for (int cc = 0; cc < r; ++cc)
            for (int g = 0; g < p; ++g) {
                double lhs = 0.0;
                for (int a = 0; a < r; ++a) lhs += O.Hv(a, b, g) * c.X(a, cc);
                double rhs = horizontalDerivative(c.side, c.cross.ff(b, cc), g, c.rhoV, c.gammaOwnV(), m, p, r);
                for (int e = 0; e < r; ++e) rhs += c.X(b, e) * W.Hv(cc, e, g);
                acc.add(lhs - rhs);
            }
    return acc.v;
}

double dVerticalHorizontal(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const auto& W = c.dOwn();
    const auto& O = pc.image().dOwn();
    const int p = c.p, r = c.r;
    Acc acc;
    for (int al = 0; al < p; ++al)
        for (int be = 0; be < p; ++be)
            for (int d = 0; d < r; ++d) {
                double rhs = 0.0;
                for (int cc = 0; cc < r; ++cc) rhs += W.Vc(al, be, cc) * c.X(cc, d);
                acc.add(O.Vc(al, be, d) - rhs);
            }
    return acc.v;
}

double dVertical(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const auto& W = c.dOwn();
    const auto& O = pc.image().dOwn();
    const int m = c.m, r = c.r;
    Acc acc;
    for (int b = 0; b < r; ++b)
        for (int cc = 0; cc < r; ++cc)
            for (int d = 0; d < r; ++d) {
                double lhs = 0.0, rhs = 0.0;
                for (int a = 0; a < r; ++a) lhs += O.Vv(a, b, cc) * c.X(a, d);
                for (int e = 0; e < r; ++e) {
                    rhs += c.X(cc, e) * c.cross.ff(b, d).d[m + e];
                    for (int fi = 0; fi < r; ++fi) rhs += c.X(cc, e) * c.X(b, fi) * W.Vv(d, fi, e);
                }
                acc.add(lhs - rhs);
            }
    return acc.v;
}

// Phi(D_X Y) against D_{Phi X} Phi Y over adapted basis pairs at the image.
double dGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    SideCtx& ic = pc.image();
    const int m = c.m, p = c.p, r = c.r;
    const auto& icg = ic.gammaOwnV();
    const Jets& gOther = c.gammaOther();
    Acc acc;
    for (int k = 0; k < p + r; ++k) {
        SecV Xn = adaptedToNatural(ic.side, unitV(k, p, r), icg);
        SecV Xa = naturalToAdapted(c.side, pushNatural(Xn, c.cross, c.rhoV, m), c.gammaOwnV());
        for (int l = 0; l < p + r; ++l) {
            SecV Di = covariantDerivativeAdapted(ic.side, ic.dOwn(), icg, ic.rhoV, m, unitV(k, p, r), unitJ(l, p, r));
            SecV lhs = pushNatural(adaptedToNatural(ic.side, Di, icg), ic.own, ic.rhoV, m);

            SecJ Yn = unitJ(l, p, r);
            if (l < p)
                for (int a = 0; a < r; ++a) Yn.Y[a] = ic.s * gOther[a * p + l];
            SecJ Ya = naturalToAdapted(c.side, pushNatural(Yn, c.cross, c.at.rho, m), c.gammaOwn());
            SecV Do = covariantDerivativeAdapted(c.side, c.dOwn(), c.gammaOwnV(), c.rhoV, m, Xa, Ya);
            SecV rhs = adaptedToNatural(c.side, Do, c.gammaOwnV());
            acc.add(maxAbsDiff(lhs, rhs));
        }
    }
    return acc.v;
}

// ---- semisprays ----

double sprayGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    SideCtx& ic = pc.image();
    SecV lhs = pushNatural(ic.semispray(), ic.own, ic.rhoV, c.m);
    return maxAbsDiff(lhs, c.semispray());
}

double sprayHorizontal(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int r = c.r;
    const auto& go = c.gOther();
    const auto& gw = c.gOwn();
    auto im = c.imgF();
    Acc acc;
    for (int a = 0; a < r; ++a) {
        double v = 0.0;
        for (int b = 0; b < r; ++b) v += im[b] * go[a * r + b] - c.f[b] * gw[a * r + b];
        acc.add(v);
    }
    return acc.v;
}

double sprayVertical(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const int r = c.r;
    const auto& K = c.kOwn();
    const auto& Ki = pc.image().kOwn();
    const auto& go = c.gOther();
    const Jets& A = c.across();
    auto im = c.imgF();
    Acc acc;
    for (int b = 0; b < r; ++b) {
        double rhs = 0.0;
        for (int a = 0; a < r; ++a) {
            rhs += 2.0 * Ki[a] * c.X(a, b);
            double z = 0.0;
            for (int cc = 0; cc < r; ++cc) z += im[cc] * go[a * r + cc];
            rhs -= z * A[a * r + b].v;
        }
        acc.add(2.0 * K[b] - rhs);
    }
    return acc.v;
}

// ---- Poincare-Cartan forms ----

double thetaGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const Jets& th = c.theta();
    const Jets& thi = pc.image().theta();
    const int p = c.p, r = c.r;
    Acc acc;
    for (int k = 0; k < p + r; ++k) {
        SecV e = unitV(k, p, r);
        SecV pushed = pushNatural(e, c.own, c.rhoV, c.m);
        double own = 0.0, pulled = 0.0;
        for (int a = 0; a < r; ++a) {
            own += th[a].v * e.Z[a];
            pulled += thi[a].v * pushed.Z[a];
        }
        acc.add(own - pulled);
    }
    return acc.v;
}

double thetaDual(PointCtx& pc, const SampleData&) {
    const Jets& th = pc.own().theta();
    const Jets& thi = pc.image().theta();
    Acc acc;
    for (std::size_t a = 0; a < th.size(); ++a) acc.add(th[a].v - thi[a].v);
    return acc.v;
}

double omegaOwn(SideCtx& c, int k, int l) {
    return twoFormOnJets(c.theta(), unitJ(k, c.p, c.r), unitJ(l, c.p, c.r), c.at, c.m);
}

// omega of this side on the images of the other side's basis sections k, l.
double omegaOfPushed(SideCtx& c, int k, int l) {
    SecJ U = pushNatural(unitJ(k, c.p, c.r), c.cross, c.at.rho, c.m);
    SecJ V = pushNatural(unitJ(l, c.p, c.r), c.cross, c.at.rho, c.m);
    return twoFormOnJets(c.theta(), U, V, c.at, c.m);
}

double omegaCompare(PointCtx& pc, int kmax) {
    SideCtx& c = pc.own();
    SideCtx& ic = pc.image();
    Acc acc;
    for (int k = 0; k < kmax; ++k)
        for (int l = k + 1; l < kmax; ++l) acc.add(omegaOfPushed(ic, k, l) - omegaOwn(c, k, l));
    return acc.v;
}

double omegaGate(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    return omegaCompare(pc, c.p + c.r);
}

double omegaHorizontal(PointCtx& pc, const SampleData&) { return omegaCompare(pc, pc.own().p); }

double omegaMixed(PointCtx& pc, const SampleData&) {
    SideCtx& c = pc.own();
    const Jets& th = c.theta();
    const Jets& thi = pc.image().theta();
    const int m = c.m, r = c.r;
    Acc acc;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            double lhs = 0.0;
            for (int cc = 0; cc < r; ++cc) lhs += c.own.ff(b, cc).v * thi[a].d[m + cc];
            acc.add(lhs - th[a].d[m + b]);
        }
    return acc.v;
}

// ---- registry ----

enum class Need { None, Connection, Distinguished, Mechanics, Spray };

struct IdentityDef {
    const char* id;
    const char* equation;
    Where where;
    const char* gate;
    Need need;
    EvalFn fn;
};

struct GateDef {
    const char* name;
    const char* description;
    Need need;
    std::vector<std::pair<Where, EvalFn>> parts;
};

const std::vector<IdentityDef>& identityDefs() {
    static const std::vector<IdentityDef> defs = {
        {"2.4", "Th o rho = theta (anchor through h)", Where::Base, "", Need::None, nullptr},
        {"2.5", "L^g_ab rho_g = [rho_a, rho_b]", Where::Base, "", Need::None, nullptr},
        {"3.6", "phi_H o phi_L = id on E", Where::E, "", Need::None, theRoundTrip},
        {"3.7", "phi_L o phi_H = id on E*", Where::Estar, "", Need::None, theRoundTrip},
        {"4.8", "L^g_ab o phi_H = L^g_ab", Where::Estar, "morph-L", Need::None, morphTrivial},
        {"4.9", "L^g_ab (rho L_ib) o phi_H = bracket terms", Where::Estar, "morph-L", Need::None, morphBracket},
        {"4.10", "mixed derivatives of L_ab o phi_H", Where::Estar, "morph-L", Need::None, morphMixed},
        {"4.11", "vertical derivatives of L_ab o phi_H", Where::Estar, "morph-L", Need::None, morphVertical},
        {"4.12", "L^g_ab o phi_L = L^g_ab", Where::E, "morph-H", Need::None, morphTrivial},
        {"4.13", "L^g_ab (rho H_i^b) o phi_L = bracket terms", Where::E, "morph-H", Need::None, morphBracket},
        {"4.14", "mixed derivatives of H^ab o phi_L", Where::E, "morph-H", Need::None, morphMixed},
        {"4.15", "vertical derivatives of H^ab o phi_L", Where::E, "morph-H", Need::None, morphVertical},
        {"5.2", "Gamma_ba = (rho L_ib - Gamma^a L_ab) o phi_H", Where::Estar, "HL", Need::Connection, connectionDual},
        {"5.3", "-Gamma^a = (rho H_i^a + Gamma_b H^ba) o phi_L", Where::E, "HL", Need::Connection, connectionDual},
        {"5.4", "inv(H^ab) = L_ab o phi_H", Where::Estar, "", Need::None, hessianInverse},
        {"5.5", "(rho L_ia) o phi_H + rho H_i^b inv(H)_ba = 0", Where::Estar, "", Need::None, hessianMixed},
        {"5.7", "R_b = (R^a L_ab) o phi_H", Where::Estar, "HL", Need::Connection, curvatureDual},
        {"5.8", "R^a = (R_b H^ba) o phi_L", Where::E, "HL", Need::Connection, curvatureDual},
        {"5.9", "d_y Gamma o phi_H against d_p Gamma_b", Where::Estar, "HL", Need::Connection, connectionDerivative},
        {"5.10", "d_p Gamma_b o phi_L against d_y Gamma", Where::E, "HL", Need::Connection, connectionDerivative},
        {"5.12", "pullback of delta p = L_ab delta y", Where::E, "HL", Need::Connection, coframePullback},
        {"5.12'", "pullback of delta y = H^ab delta p", Where::Estar, "HL", Need::Connection, coframePullback},
        {"6.3", "H^a_bg o phi_H = H*^a_bg", Where::Estar, "D-L", Need::Distinguished, dHorizontal},
        {"6.4", "(H^a_bg L_ac) o phi_H = delta*_g L_bc + L_be H*^e_cg", Where::Estar, "D-L", Need::Distinguished,
         dHorizontalVertical},
        {"6.5", "V^a_bd o phi_H = V*^ac_b L_cd", Where::Estar, "D-L", Need::Distinguished, dVerticalHorizontal},
        {"6.6", "(V^a_bc L_ad) o phi_H = L_ce d_p L_bd + L L V*", Where::Estar, "D-L", Need::Distinguished, dVertical},
        {"6.7", "H*^a_bg o phi_L = H^a_bg", Where::E, "D-H", Need::Distinguished, dHorizontal},
        {"6.8", "(H*^a_bg H^ac) o phi_L = delta_g H^bc + H^be H^e_cg", Where::E, "D-H", Need::Distinguished,
         dHorizontalVertical},
        {"6.9", "V*^ad_b o phi_L = V^a_bc H^cd", Where::E, "D-H", Need::Distinguished, dVerticalHorizontal},
        {"6.10", "(V*^bc_a H^ad) o phi_L = H^ce d_y H^bd + H H V", Where::E, "D-H", Need::Distinguished, dVertical},
        {"7.4", "(y^b g^a_b) o phi_H = p_b g^ab", Where::Estar, "S-L", Need::Mechanics, sprayHorizontal},
        {"7.5", "2 K_b = (2 K^a L_ab - y^c g^a_c rho L_ib) o phi_H", Where::Estar, "S-L", Need::Spray, sprayVertical},
        {"7.6", "(p_b g^ab) o phi_L = y^b g^a_b", Where::E, "S-H", Need::Mechanics, sprayHorizontal},
        {"7.7", "2 K^a = (2 K_b H^ba - p_c g^bc rho H_i^a) o phi_L", Where::E, "S-H", Need::Spray, sprayVertical},
        {"8.3", "theta_H components o phi_L = theta_L components", Where::E, "theta-L", Need::Mechanics, thetaDual},
        {"8.3'", "theta_L components o phi_H = theta_H components", Where::Estar, "theta-H", Need::Mechanics,
         thetaDual},
        {"8.6", "omega_H(Phi d_a, Phi d_b) o phi_L = omega_L(d_a, d_b)", Where::E, "omega-L", Need::Mechanics,
         omegaHorizontal},
        {"8.7", "(L_bc d_pc theta_H,a) o phi_L = d_yb theta_L,a", Where::E, "omega-L", Need::Mechanics, omegaMixed},
        {"8.8", "omega_L(Phi d_a, Phi d_b) o phi_H = omega_H(d_a, d_b)", Where::Estar, "omega-H", Need::Mechanics,
         omegaHorizontal},
        {"8.9", "(H^bc d_yc theta_L,a) o phi_H = d_pb theta_H,a", Where::Estar, "omega-H", Need::Mechanics,
         omegaMixed},
    };
    return defs;
}

const std::vector<GateDef>& gateDefs() {
    static const std::vector<GateDef> defs = {
        {"morph-L", "tangent map of phi_L is an algebroid morphism", Need::None, {{Where::Estar, morphGate}}},
        {"morph-H", "tangent map of phi_H is an algebroid morphism", Need::None, {{Where::E, morphGate}}},
        {"HL", "adapted frames correspond under phi_L, phi_H", Need::Connection,
         {{Where::E, hlGate}, {Where::Estar, hlGate}}},
        {"D-L", "phi_L relates the distinguished connections", Need::Distinguished, {{Where::Estar, dGate}}},
        {"D-H", "phi_H relates the distinguished connections", Need::Distinguished, {{Where::E, dGate}}},
        {"S-L", "phi_L maps the semispray to the dual one", Need::Spray, {{Where::Estar, sprayGate}}},
        {"S-H", "phi_H maps the dual semispray to the semispray", Need::Spray, {{Where::E, sprayGate}}},
        {"theta-L", "theta_H pulls back to theta_L", Need::Mechanics, {{Where::E, thetaGate}}},
        {"theta-H", "theta_L pulls back to theta_H", Need::Mechanics, {{Where::Estar, thetaGate}}},
        {"omega-L", "omega_H pulls back to omega_L", Need::Mechanics, {{Where::E, omegaGate}}},
        {"omega-H", "omega_L pulls back to omega_H", Need::Mechanics, {{Where::Estar, omegaGate}}},
    };
    return defs;
}

std::string missingIngredient(const Scenario& sc, Need need) {
    const bool conn = sc.connection(Side::E) || sc.connection(Side::Estar);
    const bool mech = sc.mechanics(Side::E) && sc.mechanics(Side::Estar);
    switch (need) {
        case Need::None: return "";
        case Need::Connection: return conn ? "" : "a connection on E or E*";
        case Need::Distinguished:
            if (!conn) return "a connection on E or E*";
            return (sc.distinguished(Side::E) || sc.distinguished(Side::Estar)) ? ""
                                                                                 : "a distinguished connection on E or E*";
        case Need::Mechanics: return mech ? "" : "mechanical data on both E and E*";
        case Need::Spray:
            if (!mech) return "mechanical data on both E and E*";
            return (!sc.mechanics(Side::E)->G.empty() || !sc.mechanics(Side::Estar)->G.empty())
                       ? ""
                       : "spray coefficients on E or E*";
    }
    return "";
}

const std::map<std::string, std::string>& footnoteTable() {
    static const std::map<std::string, std::string> notes = {
        {"4.13", "4.13: the composition with phi_L is applied once."},
        {"5.9", "5.9: derivatives of the connection on E are taken in fiber coordinates at phi_H(w)."},
        {"5.10", "5.10: derivatives of the dual connection are taken in momentum coordinates at phi_L(u)."},
        {"6.4", "6.4: the starred horizontal term enters with a plus sign, as forced by the D-L relation."},
        {"6.6", "6.6: the starred vertical term enters with a plus sign, as forced by the D-L relation."},
        {"6.8", "6.8-6.10: evaluated in the form forced by the D-H relation (mirror of 6.4-6.6)."},
        {"7.6", "7.6, 7.7: compositions are taken with phi_L."},
        {"8.6", "8.6, 8.8: horizontal components of the pulled-back two-form against the native one."},
    };
    return notes;
}

std::string sideName(Side s) { return s == Side::E ? "E" : "E*"; }

std::string fmtPointText(const SampleData& sd) {
    std::string s = " at " + sideName(sd.side) + " x=(";
    char buf[40];
    for (std::size_t i = 0; i < sd.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", sd.x[i]);
        s += buf;
    }
    s += ") fiber=(";
    for (std::size_t i = 0; i < sd.f.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", sd.f[i]);
        s += buf;
    }
    return s + ")";
}

struct Cell {
    double v = 0.0;
    std::string err;
};

struct Task {
    std::string key;
    Where where;
    EvalFn fn;
    std::vector<Cell> cells;
};

struct Reduced {
    std::optional<double> residual;
    std::optional<WorstPoint> worst;
    std::string error;
    double worstValue = -1.0;
};

Reduced reduce(const Task& t, const std::vector<SampleData>& samples) {
    Reduced out;
    double best = -1.0;
    std::size_t bestIdx = 0;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        const Cell& c = t.cells[i];
        if (!c.err.empty()) {
            out.error = c.err + fmtPointText(samples[i]);
            return out;
        }
        if (c.v > best) {
            best = c.v;
            bestIdx = i;
        }
    }
    if (t.cells.empty()) {
        out.residual = 0.0;
        out.worstValue = 0.0;
        return out;
    }
    out.residual = best;
    out.worstValue = best;
    const SampleData& sd = samples[bestIdx];
    out.worst = WorstPoint{sideName(sd.side), sd.x, sd.f};
    return out;
}

int threadCount(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEGENDRE_DUAL_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Sequential warm start inside one chunk: image fiber values for derived
// Legendre maps, and the round-trip chains.
void presolveChunk(const Scenario& sc, Side side, std::vector<SampleData>& samples, std::size_t begin,
                   std::size_t end, bool roundTrip) {
    const LegendrePair& pair = sc.pair;
    std::vector<double> prev, prevFwd, prevBack;
    for (std::size_t i = begin; i < end; ++i) {
        SampleData& sd = samples[i];
        if (!pair.closed(side)) {
            try {
                sd.hint = side == Side::E ? pair.phiL(sd.x, sd.f, prev) : pair.phiH(sd.x, sd.f, prev);
                prev = sd.hint;
            } catch (const std::exception&) {
                sd.hint.clear();
            }
        }
        if (!roundTrip) continue;
        try {
            std::vector<double> g = side == Side::E ? pair.phiL(sd.x, sd.f, prevFwd) : pair.phiH(sd.x, sd.f, prevFwd);
            prevFwd = g;
            std::vector<double> back = side == Side::E ? pair.phiH(sd.x, g, prevBack) : pair.phiL(sd.x, g, prevBack);
            prevBack = back;
            double worst = 0.0;
            for (std::size_t a = 0; a < back.size(); ++a) worst = std::max(worst, std::fabs(back[a] - sd.f[a]));
            if (std::isnan(worst)) throw Error("non-finite round trip");
            sd.roundTrip = worst;
        } catch (const std::exception& e) {
            sd.roundTripError = e.what();
        }
    }
}

}  // namespace

const std::vector<IdentityInfo>& registryEntries() {
    static const std::vector<IdentityInfo> out = [] {
        std::vector<IdentityInfo> v;
        for (const auto& d : identityDefs()) v.push_back({d.id, d.equation, d.gate});
        return v;
    }();
    return out;
}

Report runChecks(const Scenario& scIn, const RunConfig& cfg) {
    Scenario sc = scIn;
    if (cfg.samples) sc.sampling.count = *cfg.samples;
    if (cfg.seed) sc.sampling.seed = *cfg.seed;
    if (cfg.tolerance) sc.defaultTolerance = *cfg.tolerance;

    // selection in registry order
    std::set<std::string> wanted;
    bool all = true;
    const std::vector<std::string>* sel = cfg.ids ? &*cfg.ids : (sc.checks ? &*sc.checks : nullptr);
    if (sel) {
        all = false;
        for (const auto& raw : *sel) {
            std::string id = canonicalId(raw);
            bool known = false;
            for (const auto& d : identityDefs()) known = known || id == d.id;
            if (!known) throw Error("unknown identity id '" + raw + "'");
            wanted.insert(id);
        }
    }

    Report rep;
    rep.engine = kEngineName;
    rep.version = kEngineVersion;
    rep.scenario = sc.name;
    rep.digest = sc.digest;
    rep.samples = sc.sampling.count;
    rep.seed = sc.sampling.seed;
    for (const auto& w : sc.warnings) rep.warnings.push_back((w.field.empty() ? "" : w.field + ": ") + w.message);

    std::vector<const IdentityDef*> active;
    std::set<std::string> gatesNeeded;
    std::set<Need> needsUsed;
    for (const auto& d : identityDefs()) {
        if (!all && !wanted.count(d.id)) continue;
        IdentityResult ir;
        ir.id = d.id;
        ir.equation = d.equation;
        ir.threshold = sc.threshold(d.id);
        ir.gate = d.gate;
        std::string miss = missingIngredient(sc, d.need);
        if (!miss.empty()) {
            ir.status = "SKIP";
            ir.message = "skipped (missing ingredient: " + miss + ")";
        } else {
            active.push_back(&d);
            if (*d.gate) gatesNeeded.insert(d.gate);
            needsUsed.insert(d.need);
        }
        rep.identities.push_back(std::move(ir));
    }

    // samples
    std::vector<SampleData> samples[2];
    for (Side side : {Side::E, Side::Estar}) {
        auto pts = samplePoints(sc.sampling.plan(side));
        for (auto& pnt : pts) {
            SampleData sd;
            sd.side = side;
            sd.x.assign(pnt.begin(), pnt.begin() + sc.dims.m);
            sd.f.assign(pnt.begin() + sc.dims.m, pnt.end());
            samples[sideIndex(side)].push_back(std::move(sd));
        }
    }

    // evaluators
    std::vector<Task> tasks;
    auto addTask = [&](const std::string& key, Where where, EvalFn fn) {
        Task t{key, where, std::move(fn), {}};
        const auto& s = samples[where == Where::Estar ? 1 : 0];
        t.cells.resize(s.size());
        tasks.push_back(std::move(t));
    };
    const AlgebroidData& alg = sc.alg;
    addTask("gla", Where::Base, [&alg](PointCtx&, const SampleData& sd) {
        return std::max(antisymmetryAt(alg, sd.x), anchorCompatibilityAt(alg, sd.x));
    });
    bool rtE = false, rtS = false;
    for (const IdentityDef* d : active) {
        if (std::string(d->id) == "2.4")
            addTask(d->id, Where::Base, [&alg](PointCtx&, const SampleData& sd) { return thetaCompositionAt(alg, sd.x); });
        else if (std::string(d->id) == "2.5")
            addTask(d->id, Where::Base,
                    [&alg](PointCtx&, const SampleData& sd) { return anchorCompatibilityAt(alg, sd.x); });
        else
            addTask(d->id, d->where, d->fn);
        if (std::string(d->id) == "3.6") rtE = true;
        if (std::string(d->id) == "3.7") rtS = true;
    }
    for (const auto& g : gateDefs()) {
        if (!gatesNeeded.count(g.name)) continue;
        for (std::size_t k = 0; k < g.parts.size(); ++k)
            addTask(std::string(g.name) + "#" + std::to_string(k), g.parts[k].first, g.parts[k].second);
    }

    // chunked parallel evaluation
    struct Chunk {
        Side side;
        std::size_t begin, end;
    };
    std::vector<Chunk> chunks;
    for (Side side : {Side::E, Side::Estar}) {
        std::size_t n = samples[sideIndex(side)].size();
        for (std::size_t b = 0; b < n; b += kChunk) chunks.push_back({side, b, std::min(n, b + kChunk)});
    }
    auto runChunk = [&](const Chunk& ch) {
        auto& ss = samples[sideIndex(ch.side)];
        presolveChunk(sc, ch.side, ss, ch.begin, ch.end, ch.side == Side::E ? rtE : rtS);
        for (std::size_t i = ch.begin; i < ch.end; ++i) {
            const SampleData& sd = ss[i];
            PointCtx pc(sc, ch.side, sd.x, sd.f, sd.hint);
            for (auto& t : tasks) {
                bool mine = t.where == Where::Base ? ch.side == Side::E
                                                   : (t.where == Where::E) == (ch.side == Side::E);
                if (!mine) continue;
                Cell& cell = t.cells[i];
                try {
                    double v = t.fn(pc, sd);
                    if (!std::isfinite(v)) cell.err = "non-finite residual";
                    else cell.v = v;
                } catch (const std::exception& e) {
                    cell.err = e.what();
                    if (cell.err.empty()) cell.err = "evaluation failed";
                }
            }
        }
    };
    const int nThreads = std::max(1, std::min<int>(threadCount(cfg.threads), static_cast<int>(chunks.size())));
    if (nThreads <= 1) {
        for (const auto& ch : chunks) runChunk(ch);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < nThreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < chunks.size(); k = next++) runChunk(chunks[k]);
            });
        for (auto& th : pool) th.join();
    }

    auto samplesFor = [&](Where w) -> const std::vector<SampleData>& { return samples[w == Where::Estar ? 1 : 0]; };

    // gates
    for (const auto& t : tasks) {
        if (t.key != "gla") continue;
        Reduced rd = reduce(t, samplesFor(t.where));
        GateResult g{"gla", "structure functions antisymmetric, anchor compatible", rd.residual, kGateThreshold, "", rd.worst,
                     rd.error};
        if (!rd.error.empty()) {
            g.status = "ERROR";
            g.residual.reset();
            rep.banner = "algebroid axioms could not be evaluated";
        } else {
            g.status = *rd.residual <= kGateThreshold ? "HOLDS" : "FAILS";
            if (g.status == "FAILS") rep.banner = "not a Lie algebroid: axiom residuals exceed the gate threshold";
        }
        rep.gates.push_back(std::move(g));
    }
    for (const auto& gd : gateDefs()) {
        if (!gatesNeeded.count(gd.name)) continue;
        GateResult g;
        g.name = gd.name;
        g.description = gd.description;
        g.threshold = kGateThreshold;
        double best = -1.0;
        for (std::size_t k = 0; k < gd.parts.size(); ++k) {
            const std::string key = std::string(gd.name) + "#" + std::to_string(k);
            for (const auto& t : tasks) {
                if (t.key != key) continue;
                Reduced rd = reduce(t, samplesFor(t.where));
                if (!rd.error.empty() && g.message.empty()) g.message = rd.error;
                if (rd.error.empty() && rd.worstValue > best) {
                    best = rd.worstValue;
                    g.residual = rd.residual;
                    g.worst = rd.worst;
                }
            }
        }
        if (!g.message.empty()) {
            g.status = "ERROR";
            g.residual.reset();
            g.worst.reset();
        } else {
            g.status = *g.residual <= kGateThreshold ? "HOLDS" : "FAILS";
        }
        rep.gates.push_back(std::move(g));
    }

    // identities
    for (auto& ir : rep.identities) {
        if (ir.status == "SKIP") continue;
        for (const auto& t : tasks) {
            if (t.key != ir.id) continue;
            Reduced rd = reduce(t, samplesFor(t.where));
            if (!rd.error.empty()) {
                ir.status = "ERROR";
                ir.message = rd.error;
            } else {
                ir.residual = rd.residual;
                ir.worst = rd.worst;
                ir.status = *rd.residual <= ir.threshold ? "PASS" : "FAIL";
            }
        }
    }

    // derived quantities and notes
    auto used = [&](Need n) { return needsUsed.count(n) > 0; };
    if (!active.empty()) {
        if (!sc.pair.H) rep.derived.push_back("Hamiltonian: Newton inversion of the Lagrangian's fiber gradient");
        if (!sc.pair.L) rep.derived.push_back("Lagrangian: Newton inversion of the Hamiltonian's fiber gradient");
    }
    const bool connUsed = used(Need::Connection) || used(Need::Distinguished);
    if (connUsed && !sc.connection(Side::Estar))
        rep.derived.push_back("connection on E*: constructed from the connection on E through phi_H");
    if (connUsed && !sc.connection(Side::E))
        rep.derived.push_back("connection on E: constructed from the connection on E* through phi_L");
    if (used(Need::Distinguished) && !sc.distinguished(Side::Estar))
        rep.derived.push_back("distinguished connection on E*: solved from the D-L relations");
    if (used(Need::Distinguished) && !sc.distinguished(Side::E))
        rep.derived.push_back("distinguished connection on E: solved from the D-H relations");
    if (used(Need::Spray) && sc.mechanics(Side::Estar)->G.empty())
        rep.derived.push_back("spray coefficients on E*: constructed from those on E through phi_H");
    if (used(Need::Spray) && sc.mechanics(Side::E)->G.empty())
        rep.derived.push_back("spray coefficients on E: constructed from those on E* through phi_L");
    std::set<std::string> seenNotes;
    for (const auto& ir : rep.identities) {
        if (ir.status == "SKIP") continue;
        auto it = footnoteTable().find(ir.id);
        if (it != footnoteTable().end() && seenNotes.insert(it->second).second) rep.footnotes.push_back(it->second);
    }
    return rep;
}

}  // namespace ldual
