#ifndef CMKDV_TAYLOR_HPP
#define CMKDV_TAYLOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace cmkdv {

/// Truncated Taylor series in one variable, used to differentiate the
/// closed-form wave profiles analytically (no finite differences). Order 4
/// covers everything the residual and quadrature checks need.
template <class S, int N = 5>
struct Taylor {
    std::array<S, N> c{};

    static Taylor constant(S v) {
        Taylor t;
        t.c[0] = v;
        return t;
    }
    static Taylor variable(S x0) {
        Taylor t;
        t.c[0] = x0;
        t.c[1] = S(1);
        return t;
    }

    S value() const { return c[0]; }
    /// k-th derivative at the expansion point.
    S derivative(int k) const {
        S f = c[k];
        for (int j = 2; j <= k; ++j) f *= S(double(j));
        return f;
    }

    friend Taylor operator+(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i < N; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Taylor operator-(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i < N; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Taylor operator-(const Taylor& a) {
        Taylor r;
        for (int i = 0; i < N; ++i) r.c[i] = -a.c[i];
        return r;
    }
    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j + i < N; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Taylor operator*(S s, const Taylor& a) {
        Taylor r;
        for (int i = 0; i < N; ++i) r.c[i] = s * a.c[i];
        return r;
    }
    friend Taylor operator+(S s, const Taylor& a) { return constant(s) + a; }
    friend Taylor operator-(S s, const Taylor& a) { return constant(s) - a; }

    friend Taylor operator/(const Taylor& a, const Taylor& b) {
        Taylor r;
        for (int i = 0; i < N; ++i) {
            S acc = a.c[i];
            for (int j = 0; j < i; ++j) acc -= r.c[j] * b.c[i - j];
            r.c[i] = acc / b.c[0];
        }
        return r;
    }
};

template <class S, int N>
Taylor<S, N> exp(const Taylor<S, N>& f) {
    using std::exp;
    Taylor<S, N> p = f;
    p.c[0] = S(0);
    Taylor<S, N> r = Taylor<S, N>::constant(S(1));
    Taylor<S, N> pk = Taylor<S, N>::constant(S(1));
    double fact = 1.0;
    for (int j = 1; j < N; ++j) {
        pk = pk * p;
        fact *= j;
        for (int i = 0; i < N; ++i) r.c[i] += pk.c[i] / S(fact);
    }
    S e0 = exp(f.c[0]);
    for (int i = 0; i < N; ++i) r.c[i] *= e0;
    return r;
}

template <class S, int N>
Taylor<S, N> cosh(const Taylor<S, N>& f) {
    Taylor<S, N> e = exp(f), em = exp(-f);
    return S(0.5) * (e + em);
}
template <class S, int N>
Taylor<S, N> sinh(const Taylor<S, N>& f) {
    Taylor<S, N> e = exp(f), em = exp(-f);
    return S(0.5) * (e - em);
}
template <class S, int N>
Taylor<S, N> tanh(const Taylor<S, N>& f) {
    // for large |Re f| the two-exponential form overflows; rescale by exp(-|f0|)
    using std::exp;
    Taylor<S, N> p = f;
    p.c[0] = S(0);
    S f0 = f.c[0];
    Taylor<S, N> ep = exp(p), em = exp(-p);
    S w = exp(S(-2.0) * f0);
    // tanh(f0+p) = (e^p - e^{-2f0}e^{-p}) / (e^p + e^{-2f0}e^{-p}) for Re f0 > 0
    if (std::real(std::complex<double>(f0)) >= 0.0)
        return (ep - w * em) / (ep + w * em);
    S w2 = exp(S(2.0) * f0);
    return (w2 * ep - em) / (w2 * ep + em);
}
template <class S, int N>
Taylor<S, N> sech(const Taylor<S, N>& f) {
    using std::exp;
    Taylor<S, N> p = f;
    p.c[0] = S(0);
    S f0 = f.c[0];
    Taylor<S, N> ep = exp(p), em = exp(-p);
    // sech(f0+p) = 2 e^{-f0} e^{-p} / (1 + e^{-2f0} e^{-2p}) for Re f0 > 0
    if (std::real(std::complex<double>(f0)) >= 0.0) {
        S w = exp(-f0);
        return (S(2.0) * w) * em / (Taylor<S, N>::constant(S(1)) + (w * w) * (em * em));
    }
    S w = exp(f0);
    return (S(2.0) * w) * ep / (Taylor<S, N>::constant(S(1)) + (w * w) * (ep * ep));
}

using TaylorC = Taylor<std::complex<double>, 5>;
using TaylorR = Taylor<double, 5>;

}  // namespace cmkdv

#endif
