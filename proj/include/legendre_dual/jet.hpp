#pragma once

// Forward-mode jets. Jet1 carries value and gradient; Jet2T<T> carries value,
// gradient and the upper triangle of the Hessian with entries of type T, so
// Jet2T<Jet1> gives second derivatives that are themselves differentiable.

#include <algorithm>
#include <array>
#include <cmath>

#include "legendre_dual/errors.hpp"

namespace ldual {

constexpr int kMaxVars = 8;
constexpr int kHessSize = kMaxVars * (kMaxVars + 1) / 2;

constexpr int hidx(int i, int j) { return i * kMaxVars - i * (i - 1) / 2 + (j - i); }

// Entries past n are always zero, so mixing jets of different n is safe.
struct Jet1 {
    double v = 0.0;
    int n = 0;
    std::array<double, kMaxVars> d{};

    Jet1() = default;
    Jet1(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Jet1 variable(double value, int k, int nvars) {
        Jet1 r(value);
        r.n = nvars;
        r.d[k] = 1.0;
        return r;
    }
    static Jet1 constant(double value, int nvars) {
        Jet1 r(value);
        r.n = nvars;
        return r;
    }
};

template <class T>
struct Jet2T {
    T v{};
    int n = 0;
    std::array<T, kMaxVars> g{};
    std::array<T, kHessSize> h{};

    Jet2T() = default;
    Jet2T(double value) : v(value) {}  // NOLINT

    const T& hess(int i, int j) const { return i <= j ? h[hidx(i, j)] : h[hidx(j, i)]; }
    T& hess(int i, int j) { return i <= j ? h[hidx(i, j)] : h[hidx(j, i)]; }

    static Jet2T variable(const T& value, int k, int nvars) {
        Jet2T r;
        r.v = value;
        r.n = nvars;
        r.g[k] = T(1.0);
        return r;
    }
};

using Jet2 = Jet2T<double>;

inline double primal(double x) { return x; }
inline double primal(const Jet1& a) { return a.v; }
template <class T>
double primal(const Jet2T<T>& a) { return primal(a.v); }

template <class T>
struct IsJet2 : std::false_type {};
template <class T>
struct IsJet2<Jet2T<T>> : std::true_type {};

// ---- Jet1 arithmetic ----

inline Jet1 operator-(const Jet1& a) {
    Jet1 r(-a.v);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.d[i] = -a.d[i];
    return r;
}
inline Jet1 operator+(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v + b.v);
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v - b.v);
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
}
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    Jet1 r(a.v * b.v);
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}
inline Jet1 operator*(double s, const Jet1& a) {
    Jet1 r(s * a.v);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.d[i] = s * a.d[i];
    return r;
}
inline Jet1 operator*(const Jet1& a, double s) { return s * a; }
inline Jet1 operator/(const Jet1& a, const Jet1& b) {
    if (b.v == 0.0) throw DomainError("division by zero");
    Jet1 r(a.v / b.v);
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) / b.v;
    return r;
}
inline Jet1& operator+=(Jet1& a, const Jet1& b) { return a = a + b; }
inline Jet1& operator-=(Jet1& a, const Jet1& b) { return a = a - b; }
inline Jet1& operator*=(Jet1& a, const Jet1& b) { return a = a * b; }

inline Jet1 chain(const Jet1& a, double f0, double f1) {
    Jet1 r(f0);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.d[i] = f1 * a.d[i];
    return r;
}

// ---- elementary functions on doubles, with the domain checks shared by all jets ----

inline double jrecip(double a) {
    if (a == 0.0) throw DomainError("division by zero");
    return 1.0 / a;
}
inline double jexp(double a) { return std::exp(a); }
inline double jlog(double a) {
    if (!(a > 0.0)) throw DomainError("log of non-positive argument");
    return std::log(a);
}
inline double jsin(double a) { return std::sin(a); }
inline double jcos(double a) { return std::cos(a); }
inline double jsqrt(double a) {
    if (a < 0.0) throw DomainError("sqrt of negative argument");
    return std::sqrt(a);
}
inline bool isIntegral(double c) { return std::floor(c) == c && std::fabs(c) < 2147483648.0; }
inline double jpow(double a, double c) {
    if (a < 0.0 && !isIntegral(c)) throw DomainError("non-integer power of negative base");
    if (a == 0.0 && c < 0.0) throw DomainError("division by zero");
    return std::pow(a, c);
}

inline Jet1 jrecip(const Jet1& a) {
    double r = jrecip(a.v);
    return chain(a, r, -r * r);
}
inline Jet1 jexp(const Jet1& a) {
    double e = std::exp(a.v);
    return chain(a, e, e);
}
inline Jet1 jlog(const Jet1& a) { return chain(a, jlog(a.v), 1.0 / a.v); }
inline Jet1 jsin(const Jet1& a) { return chain(a, std::sin(a.v), std::cos(a.v)); }
inline Jet1 jcos(const Jet1& a) { return chain(a, std::cos(a.v), -std::sin(a.v)); }
inline Jet1 jsqrt(const Jet1& a) {
    double s = jsqrt(a.v);
    if (a.n == 0) return Jet1(s);
    if (s == 0.0) throw DomainError("sqrt not differentiable at 0");
    return chain(a, s, 0.5 / s);
}
inline Jet1 jpow(const Jet1& a, double c) {
    double f0 = jpow(a.v, c);
    if (a.n == 0) return Jet1(f0);
    double f1 = c == 0.0 ? 0.0 : c * jpow(a.v, c - 1.0);
    return chain(a, f0, f1);
}

// ---- Jet2T arithmetic ----

template <class T>
Jet2T<T> operator-(const Jet2T<T>& a) {
    Jet2T<T> r;
    r.v = -a.v;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) {
        r.g[i] = -a.g[i];
        for (int j = i; j < a.n; ++j) r.h[hidx(i, j)] = -a.h[hidx(i, j)];
    }
    return r;
}

template <class T>
Jet2T<T> operator+(const Jet2T<T>& a, const Jet2T<T>& b) {
    Jet2T<T> r;
    r.v = a.v + b.v;
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = i; j < r.n; ++j) r.h[hidx(i, j)] = a.h[hidx(i, j)] + b.h[hidx(i, j)];
    }
    return r;
}

template <class T>
Jet2T<T> operator-(const Jet2T<T>& a, const Jet2T<T>& b) {
    Jet2T<T> r;
    r.v = a.v - b.v;
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] - b.g[i];
        for (int j = i; j < r.n; ++j) r.h[hidx(i, j)] = a.h[hidx(i, j)] - b.h[hidx(i, j)];
    }
    return r;
}

template <class T>
Jet2T<T> operator*(const Jet2T<T>& a, const Jet2T<T>& b) {
    Jet2T<T> r;
    r.v = a.v * b.v;
    r.n = std::max(a.n, b.n);
    for (int i = 0; i < r.n; ++i) {
        r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int j = i; j < r.n; ++j) {
            int k = hidx(i, j);
            r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
        }
    }
    return r;
}

template <class T>
Jet2T<T> operator*(double s, const Jet2T<T>& a) {
    Jet2T<T> r;
    r.v = s * a.v;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) {
        r.g[i] = s * a.g[i];
        for (int j = i; j < a.n; ++j) r.h[hidx(i, j)] = s * a.h[hidx(i, j)];
    }
    return r;
}
template <class T>
Jet2T<T> operator*(const Jet2T<T>& a, double s) {
    return s * a;
}

template <class T>
Jet2T<T> chain(const Jet2T<T>& a, const T& f0, const T& f1, const T& f2) {
    Jet2T<T> r;
    r.v = f0;
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) {
        r.g[i] = f1 * a.g[i];
        for (int j = i; j < a.n; ++j) {
            int k = hidx(i, j);
            r.h[k] = f1 * a.h[k] + f2 * a.g[i] * a.g[j];
        }
    }
    return r;
}

template <class T>
Jet2T<T> jrecip(const Jet2T<T>& a) {
    T r = jrecip(a.v);
    T r2 = r * r;
    return chain(a, r, -r2, 2.0 * r2 * r);
}

template <class T>
Jet2T<T> operator/(const Jet2T<T>& a, const Jet2T<T>& b) {
    Jet2T<T> r = a * jrecip(b);
    r.v = a.v / b.v;
    return r;
}

template <class T>
Jet2T<T>& operator+=(Jet2T<T>& a, const Jet2T<T>& b) {
    return a = a + b;
}
template <class T>
Jet2T<T>& operator-=(Jet2T<T>& a, const Jet2T<T>& b) {
    return a = a - b;
}
template <class T>
Jet2T<T>& operator*=(Jet2T<T>& a, const Jet2T<T>& b) {
    return a = a * b;
}

template <class T>
Jet2T<T> jexp(const Jet2T<T>& a) {
    T e = jexp(a.v);
    return chain(a, e, e, e);
}
template <class T>
Jet2T<T> jlog(const Jet2T<T>& a) {
    T l = jlog(a.v);
    T inv = jrecip(a.v);
    return chain(a, l, inv, -(inv * inv));
}
template <class T>
Jet2T<T> jsin(const Jet2T<T>& a) {
    T s = jsin(a.v), c = jcos(a.v);
    return chain(a, s, c, -s);
}
template <class T>
Jet2T<T> jcos(const Jet2T<T>& a) {
    T s = jsin(a.v), c = jcos(a.v);
    return chain(a, c, -s, -c);
}
template <class T>
Jet2T<T> jsqrt(const Jet2T<T>& a) {
    T s = jsqrt(a.v);
    if (a.n == 0) {
        Jet2T<T> r;
        r.v = s;
        return r;
    }
    if (primal(s) == 0.0) throw DomainError("sqrt not differentiable at 0");
    T f1 = 0.5 * jrecip(s);
    T f2 = -0.5 * f1 * jrecip(a.v);
    return chain(a, s, f1, f2);
}
template <class T>
Jet2T<T> jpow(const Jet2T<T>& a, double c) {
    T f0 = jpow(a.v, c);
    if (a.n == 0) {
        Jet2T<T> r;
        r.v = f0;
        return r;
    }
    T f1 = c == 0.0 ? T(0.0) : c * jpow(a.v, c - 1.0);
    T f2 = c * (c - 1.0) == 0.0 ? T(0.0) : c * (c - 1.0) * jpow(a.v, c - 2.0);
    return chain(a, f0, f1, f2);
}

// ---- derivative extraction used by generic bracket code ----

template <class C>
struct Lower;
template <>
struct Lower<Jet1> {
    using type = double;
};
template <>
struct Lower<Jet2> {
    using type = Jet1;
};
template <class C>
using LowerT = typename Lower<C>::type;

inline double lower(const Jet1& a) { return a.v; }
inline double partial(const Jet1& a, int k) { return a.d[k]; }

inline Jet1 lower(const Jet2& a) {
    Jet1 r(a.v);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.d[i] = a.g[i];
    return r;
}
inline Jet1 partial(const Jet2& a, int k) {
    Jet1 r(a.g[k]);
    r.n = a.n;
    for (int i = 0; i < a.n; ++i) r.d[i] = a.hess(k, i);
    return r;
}

}  // namespace ldual
