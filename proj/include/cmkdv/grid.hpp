#ifndef CMKDV_GRID_HPP
#define CMKDV_GRID_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace cmkdv {

/// Uniform periodic grid on [-L, L) with N nodes (power of two, N >= 16).
struct Grid {
    double L = 40.0;
    int N = 1024;

    Grid() = default;
    Grid(double half_width, int points) : L(half_width), N(points) {
        if (N < 16 || (N & (N - 1)) != 0)
            throw std::invalid_argument("grid size must be a power of two, at least 16");
        if (!(L > 0)) throw std::invalid_argument("grid half-width must be positive");
    }

    double h() const { return 2.0 * L / N; }
    double node(int j) const { return -L + j * h(); }
    friend bool operator==(const Grid& a, const Grid& b) { return a.L == b.L && a.N == b.N; }
};

/// Complex samples on a grid at a fixed time.
struct GridState {
    Grid grid;
    double t = 0.0;
    std::vector<std::complex<double>> samples;

    GridState() = default;
    GridState(const Grid& g, double time) : grid(g), t(time), samples(g.N) {}
};

}  // namespace cmkdv

#endif
