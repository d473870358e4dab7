#pragma once

// Tangent applications of the Legendre maps: pushforward of prolongation
// sections E -> E* (through phi_L) and E* -> E (through phi_H), pullback of
// forms, and the algebroid-morphism residual.

#include <functional>

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/legendre.hpp"

namespace ldual {

enum class MorphismSide { LtoStar, HtoE };

inline Side sourceSide(MorphismSide s) { return s == MorphismSide::LtoStar ? Side::E : Side::Estar; }
inline Side targetSide(MorphismSide s) { return otherSide(sourceSide(s)); }

// Natural components of the image section. T is the table of the source-side
// function (L or H) at the source point; Z is kept, the fiber part becomes
// sum rho^i_a Z^a T_ib + Y^a T_ab.
template <class S>
SecT<S> pushNatural(const SecT<S>& X, const FiberTable& T, const std::vector<S>& rho, int m) {
    const int p = static_cast<int>(X.Z.size());
    const int r = T.r;
    SecT<S> out;
    out.Z = X.Z;
    out.Y.assign(r, S(0.0));
    for (int b = 0; b < r; ++b) {
        S acc(0.0);
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < m; ++i) acc = acc + rho[i * p + a] * X.Z[a] * tableEntry<S>(T.xf(i, b));
        for (int a = 0; a < r; ++a) acc = acc + X.Y[a] * tableEntry<S>(T.ff(a, b));
        out.Y[b] = acc;
    }
    return out;
}

// Natural basis of the prolongation: p horizontal then r vertical unit sections.
template <class S>
SecT<S> basisSection(int k, int p, int r) {
    SecT<S> s;
    s.Z.assign(p, S(0.0));
    s.Y.assign(r, S(0.0));
    if (k < p)
        s.Z[k] = S(1.0);
    else
        s.Y[k - p] = S(1.0);
    return s;
}

// Image of X at the Legendre image of the source point (x, f).
SecV pushforward(const LegendrePair& pair, const AlgebroidData& alg, MorphismSide side, const ProlongSection& X,
                 const std::vector<double>& x, const std::vector<double>& f);

// max over natural basis pairs of |push[U,V] - [push U, push V]| at a target
// point. `cross` is the source-side table at the image, as jets over the
// target point's variables; `at` is the algebroid over the same variables.
double morphismResidualAt(const FiberTable& cross, const AlgebroidAt<Jet1>& at, int m, int p);

// Max of morphismResidualAt over target-side samples (box over x then fiber).
double isAlgebroidMorphism(MorphismSide side, const AlgebroidData& alg, const LegendrePair& pair,
                           const SamplePlan& planTarget);

// A form on the target side, fed sections whose coefficients are jets over
// the target point's variables.
using FormFn = std::function<double(const std::vector<SecJ>& args, const JetPoint& target, const AlgebroidAt<Jet1>& at)>;

// omega(push X1, ..., push Xq) at the image of the source point (x, f).
double pullbackForm(const LegendrePair& pair, const AlgebroidData& alg, MorphismSide side, const FormFn& omega,
                    const std::vector<ProlongSection>& args, const std::vector<double>& x,
                    const std::vector<double>& f);

}  // namespace ldual
