#pragma once

// Generalized Lie algebroid data in one chart, the bracket and anchor of its
// prolongations over E and E*, evaluated pointwise on jet coefficients.

#include <vector>

#include "legendre_dual/expr.hpp"
#include "legendre_dual/jet.hpp"
#include "legendre_dual/sampling.hpp"

namespace ldual {

enum class Side { E, Estar };

inline Space fiberSpace(Side s) { return s == Side::E ? Space::Y : Space::P; }
inline Side otherSide(Side s) { return s == Side::E ? Side::Estar : Side::E; }

struct AlgebroidData {
    int m = 0;
    int p = 0;
    std::vector<ScalarField> h;        // m, over x
    std::vector<ScalarField> eta;      // m, over chi
    std::vector<ScalarField> rho;      // m*p, rho[i*p + alpha], over chi
    std::vector<ScalarField> Lstruct;  // p^3, [(gamma*p + alpha)*p + beta], over chi

    const ScalarField& rhoField(int i, int a) const { return rho[i * p + a]; }
    const ScalarField& structField(int g, int a, int b) const { return Lstruct[(g * p + a) * p + b]; }

    // h = eta = id, rho = identity, zero structure functions.
    static AlgebroidData classical(int m);
};

template <class S>
std::vector<S> seedJets(const std::vector<double>& values, int offset, int nvars);

template <>
inline std::vector<double> seedJets<double>(const std::vector<double>& values, int, int) {
    return values;
}
template <>
inline std::vector<Jet1> seedJets<Jet1>(const std::vector<double>& values, int offset, int nvars) {
    std::vector<Jet1> r;
    r.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        r.push_back(Jet1::variable(values[k], offset + static_cast<int>(k), nvars));
    return r;
}
template <>
inline std::vector<Jet2> seedJets<Jet2>(const std::vector<double>& values, int offset, int nvars) {
    std::vector<Jet2> r;
    r.reserve(values.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        r.push_back(Jet2::variable(values[k], offset + static_cast<int>(k), nvars));
    return r;
}

template <class S>
std::vector<S> evalFields(const std::vector<ScalarField>& fields, const Env<S>& env) {
    std::vector<S> out;
    out.reserve(fields.size());
    for (const auto& f : fields) out.push_back(evaluate(f, env));
    return out;
}

template <class S>
Env<S> envX(const std::vector<S>& x) {
    Env<S> e;
    e.x = x.data();
    e.nx = static_cast<int>(x.size());
    return e;
}
template <class S>
Env<S> envChi(const std::vector<S>& chi) {
    Env<S> e;
    e.chi = chi.data();
    e.nchi = static_cast<int>(chi.size());
    return e;
}
template <class S>
Env<S> envFiber(Side side, const std::vector<S>& x, const std::vector<S>& f) {
    Env<S> e = envX(x);
    if (side == Side::E) {
        e.y = f.data();
        e.ny = static_cast<int>(f.size());
    } else {
        e.p = f.data();
        e.np = static_cast<int>(f.size());
    }
    return e;
}

// rho(h(x)) and L(h(x)) on any scalar type.
template <class S>
struct AlgebroidAt {
    std::vector<S> hx;
    std::vector<S> rho;  // m*p
    std::vector<S> ls;   // p^3
};

template <class S>
AlgebroidAt<S> algebroidAt(const AlgebroidData& alg, const std::vector<S>& x) {
    AlgebroidAt<S> r;
    r.hx = evalFields(alg.h, envX(x));
    Env<S> e = envChi(r.hx);
    r.rho = evalFields(alg.rho, e);
    r.ls = evalFields(alg.Lstruct, e);
    return r;
}

// ---- sections ----

template <class S>
struct SecT {
    std::vector<S> Z;  // p
    std::vector<S> Y;  // r
};
using SecJ = SecT<Jet1>;
using SecV = SecT<double>;

template <class S>
SecV values(const SecT<S>& s) {
    SecV v;
    for (const auto& z : s.Z) v.Z.push_back(primal(z));
    for (const auto& y : s.Y) v.Y.push_back(primal(y));
    return v;
}

double maxAbsDiff(const SecV& a, const SecV& b);

struct ProlongSection {
    Side side = Side::E;
    std::vector<ScalarField> Z;
    std::vector<ScalarField> Y;
};

template <class S>
SecT<S> evalSection(const ProlongSection& s, const std::vector<S>& x, const std::vector<S>& f) {
    Env<S> e = envFiber(s.side, x, f);
    return {evalFields(s.Z, e), evalFields(s.Y, e)};
}

// rho~(X) f: the prolongation anchor applied as a derivation. Coefficients of
// type C (Jet1 or Jet2) are differentiated; the result drops one order.
template <class C>
LowerT<C> anchorDerivative(const SecT<C>& X, const std::vector<C>& rhoH, const C& f, int m) {
    const int p = static_cast<int>(X.Z.size());
    LowerT<C> acc(0.0);
    for (int i = 0; i < m; ++i) {
        LowerT<C> coef(0.0);
        for (int a = 0; a < p; ++a) coef = coef + lower(X.Z[a]) * lower(rhoH[i * p + a]);
        acc = acc + coef * partial(f, i);
    }
    for (std::size_t a = 0; a < X.Y.size(); ++a) acc = acc + lower(X.Y[a]) * partial(f, m + static_cast<int>(a));
    return acc;
}

// Bracket of two prolongation sections at a point. Same formula on E and E*;
// the fiber partials are taken in y or p respectively.
template <class C>
SecT<LowerT<C>> bracketT(const SecT<C>& X1, const SecT<C>& X2, const std::vector<C>& rhoH,
                         const std::vector<C>& lsH, int m) {
    using L = LowerT<C>;
    const int p = static_cast<int>(X1.Z.size());
    const int r = static_cast<int>(X1.Y.size());
    SecT<L> out;
    out.Z.reserve(p);
    out.Y.reserve(r);
    for (int g = 0; g < p; ++g) {
        L z = anchorDerivative(X1, rhoH, X2.Z[g], m) - anchorDerivative(X2, rhoH, X1.Z[g], m);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) z = z + lower(lsH[(g * p + a) * p + b]) * lower(X1.Z[a]) * lower(X2.Z[b]);
        out.Z.push_back(z);
    }
    for (int a = 0; a < r; ++a)
        out.Y.push_back(anchorDerivative(X1, rhoH, X2.Y[a], m) - anchorDerivative(X2, rhoH, X1.Y[a], m));
    return out;
}

// Tangent vector rho~(X): m base components then r fiber components.
template <class S>
std::vector<S> anchorVector(const SecT<S>& X, const std::vector<S>& rhoH, int m) {
    const int p = static_cast<int>(X.Z.size());
    std::vector<S> v(m, S(0.0));
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < p; ++a) v[i] = v[i] + X.Z[a] * rhoH[i * p + a];
    v.insert(v.end(), X.Y.begin(), X.Y.end());
    return v;
}

// ---- point operations ----

SecV prolongBracket(const AlgebroidData& alg, const ProlongSection& X, const ProlongSection& Y,
                    const std::vector<double>& x, const std::vector<double>& fiber);
std::vector<double> prolongAnchor(const AlgebroidData& alg, const ProlongSection& X, const std::vector<double>& x,
                                  const std::vector<double>& fiber);

// Action of the section z^alpha t_alpha on f in F(N) through Th∘rho, at chi.
double anchorAction(const AlgebroidData& alg, const std::vector<ScalarField>& z, const ScalarField& f,
                    const std::vector<double>& chi);

// Max |L^g_ab + L^g_ba| at h(x).
double antisymmetryAt(const AlgebroidData& alg, const std::vector<double>& x);
// Anchor compatibility of the structure functions at h(x).
double anchorCompatibilityAt(const AlgebroidData& alg, const std::vector<double>& x);
// rho(h(x)) followed by Th versus the composite theta = Th∘rho read at h(x).
double thetaCompositionAt(const AlgebroidData& alg, const std::vector<double>& x);

struct GlaResidual {
    double antisymmetry = 0.0;
    double anchor = 0.0;
};
// plan.box covers x (m coordinates).
GlaResidual checkGla(const AlgebroidData& alg, const SamplePlan& plan);

}  // namespace ldual
