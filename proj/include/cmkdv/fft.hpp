#ifndef CMKDV_FFT_HPP
#define CMKDV_FFT_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cmkdv {

/// In-place radix-2 FFT (forward: sign = -1). Sizes are powers of two; the
/// grids in this project are small enough that a plain iterative
/// Cooley-Tukey with precomputed twiddles is all we need.
inline void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * M_PI / double(len);
        std::complex<double> wbase(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wbase;
            }
        }
    }
    if (sign == +1) {
        for (auto& z : a) z /= double(n);
    }
}

inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a) {
    fft_inplace(a, -1);
    return a;
}
inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a) {
    fft_inplace(a, +1);
    return a;
}

/// Fourier wavenumber of mode index m on [-L, L): k_m = pi m / L with the
/// standard wraparound ordering.
inline double fourier_mode(std::size_t index, std::size_t n, double L) {
    long long m = static_cast<long long>(index);
    if (index >= n / 2) m -= static_cast<long long>(n);
    return M_PI * double(m) / L;
}

/// Spectral x-derivative of periodic samples on [-L, L).
inline std::vector<std::complex<double>> spectral_derivative(
    const std::vector<std::complex<double>>& samples, double L, int order = 1) {
    auto hat = fft(samples);
    const std::size_t n = samples.size();
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> ik(0.0, fourier_mode(j, n, L));
        std::complex<double> f = 1.0;
        for (int p = 0; p < order; ++p) f *= ik;
        hat[j] *= f;
    }
    // the Nyquist mode of an odd-order derivative has no consistent sign
    if (order % 2 == 1 && n >= 2) hat[n / 2] = 0.0;
    return ifft(std::move(hat));
}

}  // namespace cmkdv

#endif
