#pragma once

// Legendre maps between E (x, y) and E* (x, p). Either side may be a closed
// expression or derived from the other through Newton inversion.

#include <optional>
#include <vector>

#include "legendre_dual/algebroid.hpp"
#include "legendre_dual/expr.hpp"
#include "legendre_dual/newton.hpp"

namespace ldual {

// Value and first/second partials of a fiber function F(x, f), each entry a
// jet over the caller's variables. For L: L, L_i, L_a, L_ib, L_ab. For H: H,
// H_i, H^a, H_i^b, H^ab.
struct FiberTable {
    int m = 0;
    int r = 0;
    Jet1 v;
    std::vector<Jet1> dx;   // m
    std::vector<Jet1> df;   // r
    std::vector<Jet1> dxf;  // m*r, [i*r + b]
    std::vector<Jet1> dff;  // r*r

    const Jet1& xf(int i, int b) const { return dxf[i * r + b]; }
    const Jet1& ff(int a, int b) const { return dff[a * r + b]; }
};

// Table entries read as values or as jets.
template <class S>
S tableEntry(const Jet1& j);
template <>
inline double tableEntry<double>(const Jet1& j) {
    return j.v;
}
template <>
inline Jet1 tableEntry<Jet1>(const Jet1& j) {
    return j;
}

// A point with jet coordinates; `hint` optionally carries the known fiber
// coordinates of the Legendre image, used as the Newton seed.
struct JetPoint {
    Side side = Side::E;
    std::vector<Jet1> x;
    std::vector<Jet1> f;
    std::vector<double> hint;

    std::vector<double> xValues() const;
    std::vector<double> fValues() const;
};

// Jets seeded on (x, fiber) in that order.
JetPoint seedPoint(Side side, const std::vector<double>& x, const std::vector<double>& f,
                   std::vector<double> hint = {});

struct LegendrePair {
    int m = 0;
    int r = 0;
    std::optional<ScalarField> L;  // over (x, y)
    std::optional<ScalarField> H;  // over (x, p)
    NewtonConfig newton;

    bool closed(Side s) const { return s == Side::E ? L.has_value() : H.has_value(); }

    // Natural table on the point's own side: L at a point of E, H at a point of E*.
    FiberTable table(const JetPoint& pt) const;
    // Fiber coordinates of the Legendre image, as jets over pt's variables.
    std::vector<Jet1> image(const JetPoint& pt) const;
    JetPoint imagePoint(const JetPoint& pt) const;

    // Solve L_y(x, y) = p for y, or H_p(x, p) = y for p.
    std::vector<double> solveVelocity(const std::vector<double>& x, const std::vector<double>& p,
                                      const std::vector<double>& seed) const;
    std::vector<double> solveMomentum(const std::vector<double>& x, const std::vector<double>& y,
                                      const std::vector<double>& seed) const;

    std::vector<double> phiL(const std::vector<double>& x, const std::vector<double>& y,
                             const std::vector<double>& seed = {}) const;
    std::vector<double> phiH(const std::vector<double>& x, const std::vector<double>& p,
                             const std::vector<double>& seed = {}) const;

    double hamiltonian(const std::vector<double>& x, const std::vector<double>& p,
                       const std::vector<double>& seed = {}) const;
    double lagrangian(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& seed = {}) const;

private:
    FiberTable closedTable(Side side, const ScalarField& F, const JetPoint& pt) const;
    FiberTable derivedTable(const JetPoint& pt) const;
    std::vector<double> solveInverse(Side target, const std::vector<double>& x, const std::vector<double>& rhs,
                                     const std::vector<double>& seed) const;
    std::vector<Jet1> implicitImage(const JetPoint& pt) const;
};

// Legendre transform of a closed Lagrangian at (x, p): p·y - L(x, y) with L_y(x, y) = p.
double hamiltonianFromLagrangian(const ScalarField& L, int m, int r, const std::vector<double>& x,
                                 const std::vector<double>& p, const std::vector<double>& seed = {},
                                 const NewtonConfig& cfg = {});
// y·p - H(x, p) with H_p(x, p) = y.
double lagrangianFromHamiltonian(const ScalarField& H, int m, int r, const std::vector<double>& x,
                                 const std::vector<double>& y, const std::vector<double>& seed = {},
                                 const NewtonConfig& cfg = {});

struct PairResidual {
    double first = 0.0;
    double second = 0.0;
};

// max ||phi_H(phi_L(u)) - u||, max ||phi_L(phi_H(w)) - w|| over the plans
// (box over x then y, and over x then p). Newton seeds follow the sample sequence.
PairResidual roundTripResidual(const LegendrePair& pair, const SamplePlan& planE, const SamplePlan& planEstar);

// max |inv(H^ab) - L_ab∘phi_H| and max of the mixed-derivative relation
// (rho L_ia)∘phi_H + rho H_i^b inv(H)_ba, over E* samples.
PairResidual hessianDualityResidual(const LegendrePair& pair, const AlgebroidData& alg,
                                    const SamplePlan& planEstar);

}  // namespace ldual
