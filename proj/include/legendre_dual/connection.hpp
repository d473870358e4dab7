#pragma once

// Nonlinear connections on E and E*, adapted frames and coframes, curvature by
// bracket decomposition, and distinguished linear connections.

#include <optional>

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/legendre.hpp"

namespace ldual {

// E:  delta_a = d~_a - Gamma^b_a dot_b      (sign -1)
// E*: delta_a = d~*_a + Gamma_{ba} dot^b    (sign +1)
inline double frameSign(Side s) { return s == Side::E ? -1.0 : 1.0; }

struct Connection {
    Side side = Side::E;
    int p = 0;
    int r = 0;
    std::vector<ScalarField> gamma;  // r*p, [a*p + alpha], over the side's own coordinates

    const ScalarField& at(int a, int alpha) const { return gamma[a * p + alpha]; }
};

// Adapted frame delta_alpha as prolongation sections.
std::vector<ProlongSection> adaptedFrame(const Connection& c);
std::vector<SecV> adaptedFrameAt(const Connection& c, const std::vector<double>& x, const std::vector<double>& f);

// Natural components (Z, Y) from adapted ones (horizontal H, vertical V) and back.
template <class S, class G>
SecT<S> adaptedToNatural(Side side, const SecT<S>& adapted, const std::vector<G>& gamma) {
    const int p = static_cast<int>(adapted.Z.size());
    const int r = static_cast<int>(adapted.Y.size());
    const double s = frameSign(side);
    SecT<S> n = adapted;
    for (int a = 0; a < r; ++a)
        for (int al = 0; al < p; ++al) n.Y[a] = n.Y[a] + s * gamma[a * p + al] * adapted.Z[al];
    return n;
}
template <class S, class G>
SecT<S> naturalToAdapted(Side side, const SecT<S>& natural, const std::vector<G>& gamma) {
    const int p = static_cast<int>(natural.Z.size());
    const int r = static_cast<int>(natural.Y.size());
    const double s = frameSign(side);
    SecT<S> n = natural;
    for (int a = 0; a < r; ++a)
        for (int al = 0; al < p; ++al) n.Y[a] = n.Y[a] - s * gamma[a * p + al] * natural.Z[al];
    return n;
}

// Dual coframe (dz~^alpha, delta y~^a) as rows over the natural basis
// (p + r columns): delta y~^a = dy~^a - sign * Gamma^a_alpha dz~^alpha.
std::vector<std::vector<double>> adaptedCoframeAt(const Connection& c, const std::vector<double>& x,
                                                  const std::vector<double>& f);

// R[(a*p + alpha)*p + beta]: vertical adapted part of [delta_alpha, delta_beta]
// with gamma as jets over (x, f). Antisymmetry is imposed by computing alpha < beta.
std::vector<double> curvatureFromJets(Side side, const std::vector<Jet1>& gamma, const AlgebroidAt<Jet1>& at, int m,
                                      int p, int r);

std::vector<double> curvature(const AlgebroidData& alg, const Connection& c, const std::vector<double>& x,
                              const std::vector<double>& f);

// Gamma_{b alpha}(w) = [rho^i_alpha L_ib - Gamma^a_alpha L_ab] o phi_H at w = (x, p).
std::vector<double> dualConnection(const Connection& onE, const LegendrePair& pair, const AlgebroidData& alg,
                                   const std::vector<double>& x, const std::vector<double>& p);

// max_a,alpha |Gamma^a_alpha(u) + rho^i_alpha H_i^a(w) + Gamma_{b alpha}(w) H^ba(w)| at u = (x, y),
// w = phi_L(u), for a given connection on E* (typically one built by dualConnection).
double inverseRelationResidual(const Connection& onE, const Connection& onEstar, const LegendrePair& pair,
                               const AlgebroidData& alg, const std::vector<double>& x, const std::vector<double>& y);

// Components of a distinguished linear connection in the layout
// [(out * IN + in) * DIR + dir]:
//   hc(alpha, beta, gamma): D_{delta_gamma} delta_beta      = hc delta_alpha
//   hv(a, b, gamma):        D_{delta_gamma} vertical_b      = hv vertical_a
//   vc(alpha, beta, c):     D_{vertical_c} delta_beta       = vc delta_alpha
//   vv(a, b, c):            D_{vertical_c} vertical_b       = vv vertical_a
template <class T>
struct DComponentsT {
    int p = 0;
    int r = 0;
    std::vector<T> hc, hv, vc, vv;

    static int ihc(int o, int i, int d, int p, int) { return (o * p + i) * p + d; }
    static int ihv(int o, int i, int d, int p, int r) { return (o * r + i) * p + d; }
    static int ivc(int o, int i, int d, int p, int r) { return (o * p + i) * r + d; }
    static int ivv(int o, int i, int d, int, int r) { return (o * r + i) * r + d; }

    const T& Hc(int o, int i, int d) const { return hc[ihc(o, i, d, p, r)]; }
    const T& Hv(int o, int i, int d) const { return hv[ihv(o, i, d, p, r)]; }
    const T& Vc(int o, int i, int d) const { return vc[ivc(o, i, d, p, r)]; }
    const T& Vv(int o, int i, int d) const { return vv[ivv(o, i, d, p, r)]; }
    T& Hc(int o, int i, int d) { return hc[ihc(o, i, d, p, r)]; }
    T& Hv(int o, int i, int d) { return hv[ihv(o, i, d, p, r)]; }
    T& Vc(int o, int i, int d) { return vc[ivc(o, i, d, p, r)]; }
    T& Vv(int o, int i, int d) { return vv[ivv(o, i, d, p, r)]; }

    void resize(int pp, int rr, const T& fill) {
        p = pp;
        r = rr;
        hc.assign(static_cast<std::size_t>(p) * p * p, fill);
        hv.assign(static_cast<std::size_t>(r) * r * p, fill);
        vc.assign(static_cast<std::size_t>(p) * p * r, fill);
        vv.assign(static_cast<std::size_t>(r) * r * r, fill);
    }
};

using DComponents = DComponentsT<double>;

struct DistinguishedConnection {
    Side side = Side::E;
    DComponentsT<ScalarField> fields;  // over the side's own coordinates
};

DComponents evalDistinguished(const DistinguishedConnection& d, const std::vector<double>& x,
                              const std::vector<double>& f);

// rho~(delta_gamma) f with f a jet over (x, fiber).
inline double horizontalDerivative(Side side, const Jet1& f, int gamma, const std::vector<double>& rho,
                                   const std::vector<double>& gammaV, int m, int p, int r) {
    double acc = 0.0;
    for (int k = 0; k < m; ++k) acc += rho[k * p + gamma] * f.d[k];
    const double s = frameSign(side);
    for (int e = 0; e < r; ++e) acc += s * gammaV[e * p + gamma] * f.d[m + e];
    return acc;
}

// D_X T in adapted components: X as values, T as jets over (x, fiber).
SecV covariantDerivativeAdapted(Side side, const DComponents& d, const std::vector<double>& gammaV,
                                const std::vector<double>& rho, int m, const SecV& X, const SecJ& T);

// D_X T for natural sections X and T at (x, f).
SecV covariantDerivative(const AlgebroidData& alg, const Connection& c, const DistinguishedConnection& d,
                         const ProlongSection& X, const ProlongSection& T, const std::vector<double>& x,
                         const std::vector<double>& f);

}  // namespace ldual
