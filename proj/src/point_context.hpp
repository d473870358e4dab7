#pragma once

// Per-sample evaluation state shared by the identity evaluators. A SideCtx
// holds everything at one point of E or E*, with jets over that point's own
// (x, fiber) variables; quantities of the other side appear either composed
// with the Legendre map (as jets over our variables) or through the image
// context, a SideCtx of the other side at the Legendre image.

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "legendre_dual/connection.hpp"
#include "legendre_dual/mechanics.hpp"
#include "legendre_dual/prolongation.hpp"
#include "legendre_dual/scenario.hpp"

namespace ldual::detail {

// Memoized value whose computation may throw; the error is replayed.
template <class T>
class Lazy {
public:
    const T& get(const std::function<T()>& make) {
        if (!done_) {
            done_ = true;
            try {
                value_ = make();
            } catch (const std::exception& e) {
                error_ = e.what();
            }
        }
        if (!value_) throw Error(error_);
        return *value_;
    }

private:
    bool done_ = false;
    std::optional<T> value_;
    std::string error_;
};

using Jets = std::vector<Jet1>;

class SideCtx {
public:
    SideCtx(const Scenario& sc, Side side, const std::vector<double>& x, const std::vector<double>& f,
            const std::vector<double>& hint);

    const Scenario& sc;
    const Side side;
    const int m, p, r, n;
    const double s;  // frame sign
    std::vector<double> x, f;
    JetPoint pt;
    FiberTable own;    // own-side function table at pt
    JetPoint img;      // Legendre image, jets over our variables
    FiberTable cross;  // other-side function table at img, jets over our variables
    AlgebroidAt<Jet1> at;
    std::vector<double> rhoV;

    std::vector<double> imgF() const { return img.fValues(); }
    double X(int a, int b) const { return cross.ff(a, b).v; }

    const Jets& across();     // A(alpha, b) = rho^i_alpha cross_ib, [alpha*r + b]
    const Jets& aown();       // rho^i_alpha own_ib
    const Jets& gammaOwn();   // [a*p + alpha]
    const std::vector<double>& gammaOwnV();
    const Jets& gammaOther();  // other connection composed with the Legendre map
    const std::vector<double>& curvature();
    const DComponents& dOwn();
    const std::vector<double>& kOwn();   // G - F/4
    const std::vector<double>& gOwn();   // mechanics morphism at h(x)
    const std::vector<double>& gOther();
    const Jets& theta();
    SecV semispray();

private:
    Lazy<Jets> across_, aown_, gammaOwn_, gammaOther_, theta_;
    Lazy<std::vector<double>> gammaOwnV_, curvature_, kOwn_, gOwn_, gOther_;
    Lazy<DComponents> dOwn_;
};

class PointCtx {
public:
    PointCtx(const Scenario& sc, Side side, const std::vector<double>& x, const std::vector<double>& f,
             const std::vector<double>& hint);

    SideCtx& own();
    SideCtx& image();

private:
    const Scenario& sc_;
    Side side_;
    std::vector<double> x_, f_, hint_;
    Lazy<std::shared_ptr<SideCtx>> own_, image_;
};

// Unit vector k of the natural or adapted basis: p horizontal then r vertical.
SecV unitV(int k, int p, int r);
SecJ unitJ(int k, int p, int r);

}  // namespace ldual::detail
