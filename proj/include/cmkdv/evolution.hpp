#ifndef CMKDV_EVOLUTION_HPP
#define CMKDV_EVOLUTION_HPP

#include "cmkdv/closed_form.hpp"
#include "cmkdv/conservation.hpp"
#include "cmkdv/fft.hpp"
#include "cmkdv/grid.hpp"
#include "cmkdv/model.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmkdv {

struct Instability : std::runtime_error {
    explicit Instability(const std::string& w) : std::runtime_error(w) {}
};
struct NonPeriodicInput : std::runtime_error {
    explicit NonPeriodicInput(const std::string& w) : std::runtime_error(w) {}
};

/// Integrating-factor classical Runge-Kutta on the Fourier side: the
/// u_xxx term is propagated exactly by per-mode phases, so the time step
/// is limited only by the nonlinear terms (dt <= h / (2 max|u|^2 (|a|+|b|)),
/// the factor 1/2 being the enforced safety margin).
struct SolverOptions {
    double dt = 1e-3;
    double t_end = 1.0;
    bool dealias = true;  // 2/3 rule on the nonlinear products
    int record_every = 500;
};

using Trajectory = std::vector<GridState>;

namespace detail {

using CVec = std::vector<std::complex<double>>;

struct NonlinearOp {
    const Grid* grid;
    std::complex<double> alpha, beta;
    bool dealias;

    // N(u) = alpha conj(u) u u_x + beta u^2 conj(u)_x, returned in Fourier
    // space with the optional 2/3-rule mask; the input is spectral.
    CVec operator()(const CVec& hat) const {
        const int n = grid->N;
        CVec u = ifft(hat);
        CVec dx(hat);
        for (int j = 0; j < n; ++j)
            dx[j] *= std::complex<double>(0.0, fourier_mode(j, n, grid->L));
        dx[n / 2] = 0.0;
        CVec ux = ifft(std::move(dx));
        CVec out(n);
        for (int j = 0; j < n; ++j)
            out[j] = -(alpha * std::conj(u[j]) * u[j] * ux[j]
                       + beta * u[j] * u[j] * std::conj(ux[j]));
        fft_inplace(out, -1);
        if (dealias) {
            for (int j = 0; j < n; ++j) {
                long long m = j >= n / 2 ? j - n : j;
                if (std::llabs(m) > n / 3) out[j] = 0.0;
            }
        }
        return out;
    }
};

inline double max_abs(const CVec& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace detail

inline Trajectory evolve(const GridState& initial, const Coefficients& co,
                         const SolverOptions& opts) {
    using detail::CVec;
    const Grid& g = initial.grid;
    const int n = g.N;
    if (static_cast<int>(initial.samples.size()) != n)
        throw std::invalid_argument("sample count does not match the grid");
    if (!(opts.dt > 0) || !(opts.t_end > 0)) throw std::invalid_argument("dt and t_end must be positive");

    double umax0 = detail::max_abs(initial.samples);
    // periodic compatibility: the wrap difference must look like one more
    // grid step, not a front
    if (umax0 > 0) {
        double wrap = std::abs(initial.samples.front() - initial.samples.back());
        double typical = 0.0;
        for (int j = 0; j + 1 < n; ++j)
            typical = std::max(typical, std::abs(initial.samples[j + 1] - initial.samples[j]));
        if (wrap > 3.0 * typical + 1e-10 * umax0)
            throw NonPeriodicInput("boundary jump exceeds the periodic tolerance");
    }
    double coef_scale = std::abs(co.alpha_c()) + std::abs(co.beta_c());
    double cfl = 0.5 * g.h() / std::max(1.0, coef_scale * umax0 * umax0);
    if (opts.dt > cfl)
        throw std::invalid_argument("dt violates the nonlinear CFL bound dt <= h/(2 max|u|^2 (|alpha|+|beta|))");

    long long steps = std::llround(opts.t_end / opts.dt);
    if (steps < 1) steps = 1;
    double dt = opts.t_end / double(steps);  // exact landing on t_end

    detail::NonlinearOp N{&g, co.alpha_c(), co.beta_c(), opts.dealias};
    CVec E(n), E2(n);
    for (int j = 0; j < n; ++j) {
        double k = fourier_mode(j, n, g.L);
        double k3 = k * k * k;
        E[j] = std::exp(std::complex<double>(0.0, k3 * dt));
        E2[j] = std::exp(std::complex<double>(0.0, k3 * dt / 2.0));
    }
    CVec hat = fft(initial.samples);
    Trajectory out;
    out.push_back(initial);
    auto record = [&](double t) {
        GridState st(g, initial.t + t);
        st.samples = ifft(hat);
        out.push_back(std::move(st));
    };

    for (long long s = 1; s <= steps; ++s) {
        CVec a = N(hat);
        CVec va(n), vb(n), vc(n);
        for (int j = 0; j < n; ++j) va[j] = E2[j] * (hat[j] + 0.5 * dt * a[j]);
        CVec b = N(va);
        for (int j = 0; j < n; ++j) vb[j] = E2[j] * hat[j] + 0.5 * dt * b[j];
        CVec c = N(vb);
        for (int j = 0; j < n; ++j) vc[j] = E[j] * hat[j] + E2[j] * (dt * c[j]);
        CVec d = N(vc);
        for (int j = 0; j < n; ++j)
            hat[j] = E[j] * hat[j]
                     + dt / 6.0
                           * (E[j] * a[j] + 2.0 * E2[j] * (b[j] + c[j]) + d[j]);
        if (s % 64 == 0 || s == steps) {
            double m = detail::max_abs(ifft(hat));
            bool finite = true;
            for (const auto& z : hat)
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                    finite = false;
                    break;
                }
            if (!finite || m > 1e3 * std::max(umax0, 1e-30))
                throw Instability("amplitude grew beyond 1000x the initial data at t = "
                                  + std::to_string(s * dt));
        }
        if (s % opts.record_every == 0 || s == steps) record(s * dt);
    }
    return out;
}

/// Pointwise error of a grid state against the exact solution it should
/// follow: (L_inf, L2).
inline std::pair<double, double> wave_error(const SolutionSpec& spec, const Coefficients& co,
                                            const GridState& state) {
    double linf = 0.0, l2 = 0.0;
    for (int j = 0; j < state.grid.N; ++j) {
        double d = std::abs(state.samples[j] - evaluate(spec, co, state.t, state.grid.node(j)));
        linf = std::max(linf, d);
        l2 += d * d;
    }
    return {linf, std::sqrt(l2 * state.grid.h())};
}

/// Residual of the equation at one point, assembled from analytic jets and
/// the analytic time derivative of the travelling form.
inline std::complex<double> pde_pointwise_residual(const SolutionSpec& spec,
                                                   const Coefficients& co, double t, double x,
                                                   Side side = Side::Auto) {
    JetPoint j = evaluate_jet(spec, co, t, x, 3, side);
    std::complex<double> u(j.u(0, 0), j.u(1, 0)), ux(j.u(0, 1), j.u(1, 1)),
        uxxx(j.u(0, 3), j.u(1, 3));
    std::complex<double> ut = time_derivative(spec, co, t, x, side);
    return ut + co.alpha_c() * std::conj(u) * u * ux + co.beta_c() * u * u * std::conj(ux)
           + uxxx;
}

struct DriftEntry {
    QuantityId id;
    double drift;                       // max_t |C(t)-C(0)| / max(1, |C(0)|)
    std::complex<double> initial_value;
};

inline std::vector<DriftEntry> drift_report(const Trajectory& traj, const Coefficients& co,
                                            const std::vector<QuantityId>& ids) {
    if (traj.empty()) throw std::invalid_argument("empty trajectory");
    std::vector<DriftEntry> out;
    for (QuantityId id : ids) {
        std::complex<double> c0 = quantity_quadrature(id, traj.front(), co);
        double drift = 0.0;
        for (const auto& st : traj) {
            std::complex<double> c = quantity_quadrature(id, st, co);
            drift = std::max(drift, std::abs(c - c0));
        }
        out.push_back({id, drift / std::max(1.0, std::abs(c0)), c0});
    }
    return out;
}

}  // namespace cmkdv

#endif
