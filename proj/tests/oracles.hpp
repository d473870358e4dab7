#pragma once

// Test-side reference computations, independent of the jet and solver code.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

using Fn = std::function<double(const std::vector<double>&)>;

inline std::vector<double> gradient(const Fn& f, std::vector<double> x, double h = 1e-5) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = x[i];
        x[i] = xi + h;
        double fp = f(x);
        x[i] = xi - h;
        double fm = f(x);
        x[i] = xi;
        g[i] = (fp - fm) / (2 * h);
    }
    return g;
}

// Four-point mixed central differences.
inline std::vector<std::vector<double>> hessian(const Fn& f, std::vector<double> x, double h = 1e-4) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> H(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto at = [&](double si, double sj) {
                std::vector<double> z = x;
                z[i] += si;
                z[j] += sj;
                return f(z);
            };
            H[i][j] = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
        }
    return H;
}

inline double relErr(double ad, double fd) { return std::fabs(ad - fd) / std::max(1.0, std::fabs(fd)); }

inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Section of a prolongation as plain functions of z = (x, fiber): Z (p) then Y (r).
using SectionFn = std::function<std::vector<double>(const std::vector<double>&)>;
using TensorFn = std::function<std::vector<double>(const std::vector<double>&)>;

// Bracket of two prolongation sections with every derivative by central
// differences along the anchor fields. rho(x) is m*p row-major, ls(x) is
// p^3 laid out [(g*p + a)*p + b].
inline std::vector<double> fdBracket(const SectionFn& X1, const SectionFn& X2, const TensorFn& rho,
                                     const TensorFn& ls, int m, int p, int r, const std::vector<double>& z,
                                     double h = 1e-5) {
    std::vector<double> x(z.begin(), z.begin() + m);
    auto R = rho(x);
    auto anchor = [&](const std::vector<double>& s) {
        std::vector<double> v(m + r, 0.0);
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < p; ++a) v[i] += R[i * p + a] * s[a];
        for (int a = 0; a < r; ++a) v[m + a] = s[p + a];
        return v;
    };
    auto s1 = X1(z), s2 = X2(z);
    auto v1 = anchor(s1), v2 = anchor(s2);
    auto along = [&](const SectionFn& F, const std::vector<double>& v) {
        std::vector<double> zp = z, zm = z;
        for (std::size_t k = 0; k < z.size(); ++k) {
            zp[k] += h * v[k];
            zm[k] -= h * v[k];
        }
        auto fp = F(zp), fm = F(zm);
        std::vector<double> d(fp.size());
        for (std::size_t k = 0; k < fp.size(); ++k) d[k] = (fp[k] - fm[k]) / (2 * h);
        return d;
    };
    auto d12 = along(X2, v1), d21 = along(X1, v2);
    auto L = ls(x);
    std::vector<double> out(p + r);
    for (int k = 0; k < p + r; ++k) out[k] = d12[k] - d21[k];
    for (int g = 0; g < p; ++g)
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) out[g] += L[(g * p + a) * p + b] * s1[a] * s2[b];
    return out;
}

// Curvature of a connection on the classical algebroid of dimension n by
// finite-difference brackets of the adapted frame d_al + s*Gamma^a_al d_a,
// gamma(z) laid out [a*n + al]. Result is [(a*n + al)*n + be].
inline std::vector<double> fdCurvature(const TensorFn& gamma, double s, int n, const std::vector<double>& z) {
    auto frame = [&](int al) {
        return [&, al](const std::vector<double>& w) {
            auto g = gamma(w);
            std::vector<double> v(2 * n, 0.0);
            v[al] = 1.0;
            for (int a = 0; a < n; ++a) v[n + a] = s * g[a * n + al];
            return v;
        };
    };
    TensorFn rho = [n](const std::vector<double>&) {
        std::vector<double> r(n * n, 0.0);
        for (int i = 0; i < n; ++i) r[i * n + i] = 1.0;
        return r;
    };
    TensorFn ls = [n](const std::vector<double>&) { return std::vector<double>(n * n * n, 0.0); };
    auto g = gamma(z);
    std::vector<double> R(n * n * n, 0.0);
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            if (al == be) continue;
            auto br = fdBracket(frame(al), frame(be), rho, ls, n, n, n, z);
            for (int a = 0; a < n; ++a) {
                double v = br[n + a];
                for (int c = 0; c < n; ++c) v -= s * g[a * n + c] * br[c];
                R[(a * n + al) * n + be] = v;
            }
        }
    return R;
}

}  // namespace oracle
