#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "legendre_dual/errors.hpp"
#include "legendre_dual/jet.hpp"

namespace ldual {

constexpr double kMaxCondition = 1e12;

struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
    DenseMatrix(std::initializer_list<std::initializer_list<double>> init);

    static DenseMatrix identity(int n);

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y);
double normInf(const DenseMatrix& m);
double maxAbsDiff(const DenseMatrix& x, const DenseMatrix& y);

// Infinity-norm condition number, with ‖M‖ floored at 1 so that uniformly tiny
// matrices (including 1x1) register as singular.
double conditionEstimate(const DenseMatrix& m, const DenseMatrix& inverse);

// Throws SingularMatrix on a zero pivot or condition estimate above kMaxCondition.
DenseMatrix invert(const DenseMatrix& m);

// Solves m x = b; throws SingularMatrix like invert.
std::vector<double> solve(const DenseMatrix& m, const std::vector<double>& b);

// Gauss-Jordan on a square matrix of jets or doubles, pivoting on primal values.
template <class S>
std::vector<std::vector<S>> invertGeneric(std::vector<std::vector<S>> m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<S>> inv(n, std::vector<S>(n, S(0.0)));
    for (int i = 0; i < n; ++i) inv[i][i] = S(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(primal(m[r][c])) > std::fabs(primal(m[piv][c]))) piv = r;
        if (primal(m[piv][c]) == 0.0) throw SingularMatrix("singular matrix");
        std::swap(m[piv], m[c]);
        std::swap(inv[piv], inv[c]);
        S d = jrecip(m[c][c]);
        for (int j = 0; j < n; ++j) {
            m[c][j] = m[c][j] * d;
            inv[c][j] = inv[c][j] * d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            S f = m[r][c];
            for (int j = 0; j < n; ++j) {
                m[r][j] = m[r][j] - f * m[c][j];
                inv[r][j] = inv[r][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace ldual
