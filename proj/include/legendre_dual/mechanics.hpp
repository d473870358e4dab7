#pragma once

// Almost tangent structures, Liouville sections, semisprays and
// Poincare-Cartan forms on E and E*. These identify the algebroid index with
// the fiber index, so p = r throughout.

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/legendre.hpp"

namespace ldual {

struct MechanicalSystem {
    Side side = Side::E;
    int r = 0;
    std::vector<ScalarField> g;  // r*r over chi, read at h(x): g^a_b on E, g^{ab} on E*, [a*r + b]
    std::vector<ScalarField> G;  // r over own coordinates; empty when not supplied
    std::vector<ScalarField> F;  // r over own coordinates; empty means zero
};

// g(h(x)) as a matrix [a*r + b], on any scalar type.
template <class S>
std::vector<S> morphismAt(const MechanicalSystem& sys, const AlgebroidData& alg, const std::vector<S>& x) {
    std::vector<S> hx = evalFields(alg.h, envX(x));
    return evalFields(sys.g, envChi(hx));
}

// G - F/4 at the point; requires G.
std::vector<double> sprayCoefficients(const MechanicalSystem& sys, const std::vector<double>& x,
                                      const std::vector<double>& f);

// E:  J(Z, Y) = (0, ginv^b_a Z^a)
// E*: J(Z, Y) = (0, ginv_{ba} Z^a)
SecV almostTangent(const MechanicalSystem& sys, const AlgebroidData& alg, const SecV& X, const std::vector<double>& x);

SecV liouville(const std::vector<double>& f);

// Z^a = f_b g(a, b), Y = -2 (G - F/4).
SecV semispray(const MechanicalSystem& sys, const AlgebroidData& alg, const std::vector<double>& x,
               const std::vector<double>& f);

// Components on dz~^a from the derivative table of L (E) or H (E*):
// E: theta_a = ginv(e, a) L_e;  E*: theta_a = ginv(a, e) H^e.
template <class S>
std::vector<S> thetaComponents(Side side, const std::vector<S>& gMat, const std::vector<S>& df, int r) {
    std::vector<std::vector<S>> G(r, std::vector<S>(r));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) G[a][b] = gMat[a * r + b];
    auto inv = invertGeneric(G);
    std::vector<S> th(r, S(0.0));
    for (int a = 0; a < r; ++a)
        for (int e = 0; e < r; ++e) th[a] = th[a] + (side == Side::E ? inv[e][a] : inv[a][e]) * df[e];
    return th;
}

std::vector<double> pcOneForm(const MechanicalSystem& sys, const LegendrePair& pair, const AlgebroidData& alg,
                              const std::vector<double>& x, const std::vector<double>& f);

// omega(U, V) = rho~(U)(theta V) - rho~(V)(theta U) - theta([U, V]) with theta
// and the section coefficients as jets over the point's variables.
double twoFormOnJets(const std::vector<Jet1>& theta, const SecJ& U, const SecJ& V, const AlgebroidAt<Jet1>& at, int m);

double pcTwoForm(const MechanicalSystem& sys, const LegendrePair& pair, const AlgebroidData& alg,
                 const ProlongSection& U, const ProlongSection& V, const std::vector<double>& x,
                 const std::vector<double>& f);

}  // namespace ldual
