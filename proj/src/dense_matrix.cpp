#include "legendre_dual/dense_matrix.hpp"

#include <algorithm>

namespace ldual {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> init) {
    rows = static_cast<int>(init.size());
    cols = rows ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& row : init) {
        if (static_cast<int>(row.size()) != cols) throw Error("ragged matrix literal");
        a.insert(a.end(), row.begin(), row.end());
    }
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols != y.rows) throw Error("matrix shape mismatch");
    DenseMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            double xik = x(i, k);
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

double normInf(const DenseMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += std::fabs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double maxAbsDiff(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch");
    double best = 0.0;
    for (std::size_t k = 0; k < x.a.size(); ++k) best = std::max(best, std::fabs(x.a[k] - y.a[k]));
    return best;
}

double conditionEstimate(const DenseMatrix& m, const DenseMatrix& inverse) {
    return std::max(normInf(m), 1.0) * normInf(inverse);
}

namespace {

DenseMatrix gaussJordan(const DenseMatrix& m) {
    if (m.rows != m.cols) throw Error("invert: matrix is not square");
    const int n = m.rows;
    DenseMatrix w = m;
    DenseMatrix inv = DenseMatrix::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(w(r, c)) > std::fabs(w(piv, c))) piv = r;
        if (w(piv, c) == 0.0) throw SingularMatrix("singular matrix (zero pivot)");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(w(piv, j), w(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        double d = 1.0 / w(c, c);
        for (int j = 0; j < n; ++j) {
            w(c, j) *= d;
            inv(c, j) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = w(r, c);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                w(r, j) -= f * w(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

}  // namespace

DenseMatrix invert(const DenseMatrix& m) {
    DenseMatrix inv = gaussJordan(m);
    double cond = conditionEstimate(m, inv);
    if (!(cond <= kMaxCondition))
        throw SingularMatrix("matrix condition estimate " + std::to_string(cond) + " exceeds 1e12");
    return inv;
}

std::vector<double> solve(const DenseMatrix& m, const std::vector<double>& b) {
    DenseMatrix inv = invert(m);
    std::vector<double> x(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) x[i] += inv(i, j) * b[j];
    return x;
}

}  // namespace ldual
