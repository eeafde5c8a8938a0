#ifndef CMKDV_REDUCTION_HPP
#define CMKDV_REDUCTION_HPP

#include "cmkdv/model.hpp"
#include "cmkdv/taylor.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmkdv {

struct BranchDomain : std::runtime_error {
    explicit BranchDomain(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficients of the reduced travelling-wave ODE 0 = (A+Bf+Cf^2)f' + f'''
/// for U = a + b f(xi), after a phase rotation puts b = |b| >= 0:
///   A = alpha |a|^2 + beta a^2 - c,  B = (alpha(a+conj a) + 2 beta a)|b|,
///   C = (alpha+beta)|b|^2.
struct Abc {
    std::complex<double> A, B, C;
};

inline Abc abc(const Coefficients& co, std::complex<double> a, double bmag, double c) {
    std::complex<double> al = co.alpha_c(), be = co.beta_c();
    Abc r;
    r.A = al * std::norm(a) + be * a * a - c;
    r.B = (al * (a + std::conj(a)) + 2.0 * be * a) * bmag;
    r.C = (al + be) * (bmag * bmag);
    return r;
}

/// Exact version for rational inputs, used by the realness checks.
struct AbcExact {
    CRat A, B, C;
};

inline AbcExact abc_exact(const Coefficients& co, const CRat& a, const Rational& bmag,
                          const Rational& c) {
    AbcExact r;
    r.A = a.norm2() * co.alpha + co.beta * (a * a) - CRat(c, rat(0));
    r.B = bmag * (Rational(2) * a.re * co.alpha + rat(2) * (co.beta * a));
    r.C = Rational(bmag * bmag) * (co.alpha + co.beta);
    return r;
}

/// The two coefficient cases making (A, B, C) real for solitary waves, and
/// the two for kinks.
enum class RealnessCase { OffsetImaginary, OffsetReal, None };

inline RealnessCase realness_case(const Coefficients& co, std::complex<double> a) {
    bool a2_zero = a.imag() == 0.0;
    bool b1z = co.beta.re.is_zero(), a2z = co.alpha.im.is_zero(), b2z = co.beta.im.is_zero();
    if (!a2_zero && b1z && a2z && b2z) return RealnessCase::OffsetImaginary;
    if (a2_zero && Rational(co.alpha.im + co.beta.im).is_zero()) return RealnessCase::OffsetReal;
    return RealnessCase::None;
}

enum class KinkCase { OffsetImaginary, OffsetZero, None };

inline KinkCase kink_case(const Coefficients& co, std::complex<double> a) {
    bool b1z = co.beta.re.is_zero(), a2z = co.alpha.im.is_zero(), b2z = co.beta.im.is_zero();
    if (a.real() == 0.0 && a.imag() != 0.0 && b1z && a2z && b2z) return KinkCase::OffsetImaginary;
    if (a == 0.0 && Rational(co.alpha.im + co.beta.im).is_zero()) return KinkCase::OffsetZero;
    return KinkCase::None;
}

/// Branch selection for the four-branch solitary profile is explicit: the
/// caller states which of A, B, C vanish exactly rather than having the
/// code infer zeroness from floats.
struct SolitaryBranch {
    bool A_zero = false;
    bool B_zero = false;
    bool C_zero = false;
    int sign = +1;  // branches 2 and 4
};

inline TaylorR profile_solitary_jet(double A, double B, double C, const SolitaryBranch& br,
                                    double xi) {
    TaylorR X = TaylorR::variable(xi);
    if (!br.A_zero && !(br.B_zero && br.C_zero)) {
        if (A >= 0) throw BranchDomain("cosh branch requires A < 0");
        double disc = B * B - 6.0 * A * C;
        if (disc < 0) throw BranchDomain("cosh branch requires B^2 - 6AC >= 0");
        TaylorR den = std::sqrt(disc) * cosh(std::sqrt(-A) * X) + TaylorR::constant(B);
        return TaylorR::constant(-6.0 * A) / den;
    }
    if (!br.A_zero) {  // B = C = 0
        if (A >= 0) throw BranchDomain("exponential branch requires A < 0");
        return exp((br.sign * std::sqrt(-A)) * X);
    }
    if (!br.B_zero) {  // A = 0, B != 0
        TaylorR den = (B * B / 6.0) * (X * X) + TaylorR::constant(C);
        return TaylorR::constant(-2.0 * B) / den;
    }
    if (!br.C_zero) {  // A = B = 0
        if (C >= 0) throw BranchDomain("rational branch requires C < 0");
        return TaylorR::constant(br.sign * std::sqrt(-6.0 / C)) / X;
    }
    throw BranchDomain("all of A, B, C flagged zero");
}

inline double profile_solitary(double A, double B, double C, const SolitaryBranch& br, double xi) {
    return profile_solitary_jet(A, B, C, br, xi).value();
}

/// Kink profile f = sqrt(-3A/C) tanh(sqrt(A/2) xi); requires A > 0, C < 0.
inline TaylorR profile_kink_jet(double A, double C, double xi) {
    if (!(A > 0)) throw BranchDomain("kink profile requires A > 0");
    if (!(C < 0)) throw BranchDomain("kink profile requires C < 0");
    TaylorR X = TaylorR::variable(xi);
    return std::sqrt(-3.0 * A / C) * tanh(std::sqrt(A / 2.0) * X);
}

inline double profile_kink(double A, double C, double xi) {
    return profile_kink_jet(A, C, xi).value();
}

/// Residuals of the third-order ODE, its once-integrated form, and the
/// first integral:
///   r3 = (A+Bf+Cf^2) f' + f'''
///   r2 = A f + B f^2/2 + C f^3/3 + f''          (boundary constants absorbed: E = 0)
///   r1 = D + E f + A f^2 + B f^3/3 + C f^4/6 + f'^2
struct OdeResiduals {
    double r3, r2, r1;
};

inline OdeResiduals ode_residuals(double f, double fp, double fpp, double fppp, double A, double B,
                                  double C, double D, double E) {
    OdeResiduals r;
    r.r3 = (A + B * f + C * f * f) * fp + fppp;
    r.r2 = A * f + B * f * f / 2.0 + C * f * f * f / 3.0 + fpp;
    r.r1 = D + E * f + A * f * f + B * f * f * f / 3.0 + C * f * f * f * f / 6.0 + fp * fp;
    return r;
}

inline OdeResiduals ode_residuals(const TaylorR& fjet, double A, double B, double C, double D,
                                  double E) {
    return ode_residuals(fjet.derivative(0), fjet.derivative(1), fjet.derivative(2),
                         fjet.derivative(3), A, B, C, D, E);
}

/// Kink admissibility: B = E = 0, D = (3/2) A^2 / C, with a real asymptotic
/// level f0 = sqrt(-3A/C).
struct KinkConditions {
    bool ok = false;
    std::vector<std::string> violations;
    double f0 = 0.0;
};

inline KinkConditions kink_conditions(double A, double B, double C, double D, double E) {
    KinkConditions out;
    if (B != 0.0) out.violations.push_back("B = 0 violated");
    if (E != 0.0) out.violations.push_back("E = 0 violated");
    if (C == 0.0) {
        out.violations.push_back("C = 0 leaves D = (3/2)A^2/C undefined");
    } else {
        if (D != 1.5 * A * A / C) out.violations.push_back("D = (3/2)A^2/C violated");
        if (!(-3.0 * A / C > 0)) out.violations.push_back("-3A/C > 0 violated");
        // f'^2 = -(C/6)(f^2-f0^2)^2 has real trajectories only for C < 0,
        // equivalently A > 0 (the tanh argument sqrt(A/2) is then real too)
        if (!(A > 0)) out.violations.push_back("A > 0 violated");
    }
    out.ok = out.violations.empty();
    if (out.ok) out.f0 = std::sqrt(-3.0 * A / C);
    return out;
}

/// Residuals of the linear-phase pair of real ODEs:
///   r1 = f''' + ((a1+b1) f^2 - c - 3k^2) f' + (b2-a2) k f^3
///   r2 = 3k f'' + (a2+b2) f^2 f' + (w - k^3) f + (a1-b1) k f^3
struct LinearPhaseResiduals {
    double r1, r2;
};

inline LinearPhaseResiduals linear_phase_residuals(const TaylorR& fjet, const Coefficients& co,
                                                   double c, double k, double w) {
    double a1 = to_double(co.alpha.re), a2 = to_double(co.alpha.im);
    double b1 = to_double(co.beta.re), b2 = to_double(co.beta.im);
    double f = fjet.derivative(0), fp = fjet.derivative(1), fpp = fjet.derivative(2),
           fppp = fjet.derivative(3);
    LinearPhaseResiduals r;
    r.r1 = fppp + ((a1 + b1) * f * f - c - 3 * k * k) * fp + (b2 - a2) * k * f * f * f;
    r.r2 = 3 * k * fpp + (a2 + b2) * f * f * fp + (w - k * k * k) * f + (a1 - b1) * k * f * f * f;
    return r;
}

/// Which reduction the linear-phase overdetermined system admits at these
/// coefficients: branch 1 is the cubic-oscillator ODE (Hirota-type case),
/// branch 2 the exponential profiles f' = s sqrt(c+3k^2) f with algebraic
/// constraints linking the coefficients, k and the sign s.
struct BranchReport {
    int branch = 0;  // 0 = none
    double w = 0.0;
    int sign = 0;               // branch 2: admissible s in f' = s*kappa*f (0 = none)
    double decay_rate = 0.0;    // branch 2: sqrt(c+3k^2)
    std::optional<double> sigma_value;
};

inline BranchReport linear_phase_branch(const Coefficients& co, double c, double k) {
    BranchReport rep;
    rep.w = -(3.0 * c + 8.0 * k * k) * k;
    bool a2z = co.alpha.im.is_zero(), b1z = co.beta.re.is_zero(), b2z = co.beta.im.is_zero();
    if (a2z && b1z && b2z && !co.alpha.re.is_zero()) {
        rep.branch = 1;
        return rep;
    }
    if (co.alpha.norm2() == co.beta.norm2() && !co.alpha.norm2().is_zero()) {
        double kap2 = c + 3.0 * k * k;
        if (kap2 > 0) {
            double kappa = std::sqrt(kap2);
            double a1 = to_double(co.alpha.re), a2 = to_double(co.alpha.im);
            double b1 = to_double(co.beta.re), b2 = to_double(co.beta.im);
            double scale = std::abs(kappa) * (std::abs(a1) + std::abs(a2) + std::abs(b1)
                                              + std::abs(b2))
                           + std::abs(k);
            for (int s : {+1, -1}) {
                double c1 = s * kappa * (a1 + b1) - (a2 - b2) * k;
                double c2 = s * kappa * (a2 + b2) + (a1 - b1) * k;
                if (std::abs(c1) <= 1e-12 * scale && std::abs(c2) <= 1e-12 * scale) {
                    rep.branch = 2;
                    rep.sign = s;
                    rep.decay_rate = kappa;
                    SigmaResult sg = sigma(co);
                    if (sg.usable()) rep.sigma_value = to_double(sg.value);
                    return rep;
                }
            }
        }
    }
    rep.branch = 0;
    rep.w = 0.0;
    return rep;
}

/// The classified travelling-wave profiles: six solitary-type shapes
/// (constant complex offset a plus a real profile f) and two kinks, each
/// with its offset a and the coefficient case it needs.
struct TravellingProfile {
    std::function<TaylorR(double)> jet;  // one-sided at xi = 0 where non-smooth
    std::complex<double> a;
    double bmag = 1.0;
    bool singular_at_origin = false;  // rational/blow-up profiles
};

/// Profiles 1..6 of the solitary classification. Parameters beyond (c, bmag):
/// Theta for 2, 3, 5; theta for 4, 5, 6 (angle of a).
inline TravellingProfile prop1_profile(int which, const Coefficients& co, double c, double Theta,
                                       double theta, double bmag) {
    TravellingProfile out;
    out.bmag = bmag;
    double g = to_double(co.alpha.re + co.beta.re);
    double a1 = to_double(co.alpha.re);
    switch (which) {
        case 1: {
            double a = std::sqrt(c / g);
            out.a = a;
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                return TaylorR::constant(-12.0 * a / bmag)
                       / (2.0 * c * (X * X) + TaylorR::constant(3.0));
            };
            out.singular_at_origin = c < 0;
            break;
        }
        case 2: {
            double a = std::sqrt(c / g) * std::tanh(Theta);
            out.a = a;
            double sc = 1.0 / std::cosh(Theta), sh = std::sinh(Theta);
            // csch(Theta) * a = sqrt(c/g) sech(Theta), finite for all Theta
            double num = 6.0 * std::sqrt(c / g) * sc / bmag;
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                TaylorR den = std::sqrt(6.0 + 4.0 * sh * sh) * cosh((std::sqrt(c) * sc) * X)
                              + TaylorR::constant(2.0 * sh);
                return TaylorR::constant(num) / den;
            };
            break;
        }
        case 3: {
            out.a = std::sinh(Theta);
            out.jet = [=](double xi) {
                int side = xi >= 0 ? 1 : -1;
                TaylorR X = TaylorR::variable(xi);
                return exp((-std::sqrt(c) * side) * X) * TaylorR::constant(1.0 / bmag);
            };
            break;
        }
        case 4: {
            double r = std::sqrt(c / a1), ct = std::cos(theta);
            out.a = std::polar(r, theta);
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                return TaylorR::constant(-12.0 * r * ct / bmag)
                       / (2.0 * c * ct * ct * (X * X) + TaylorR::constant(3.0));
            };
            out.singular_at_origin = c < 0;
            break;
        }
        case 5: {
            double r = std::sqrt(c / a1), ct = std::cos(theta);
            out.a = std::polar(r, theta) * std::tanh(Theta);
            double sc = 1.0 / std::cosh(Theta), sh = std::sinh(Theta);
            // csch(Theta) * sqrt(c/a1) tanh(Theta) = sqrt(c/a1) sech(Theta);
            // the signed tanh factor keeps f positive for Theta < 0 as the
            // phase-plane solution requires
            double num = 6.0 * r * sc / bmag;
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                TaylorR den = std::sqrt(6.0 + 4.0 * ct * ct * sh * sh)
                                  * cosh((std::sqrt(c) * sc) * X)
                              + TaylorR::constant(2.0 * ct * sh);
                return TaylorR::constant(num) / den;
            };
            break;
        }
        case 6: {
            double r = std::sqrt(c / a1);  // c < 0, alpha1 < 0
            out.a = std::complex<double>(0.0, r);
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                return TaylorR::constant(r / bmag) / (std::sqrt(-c / 6.0) * X);
            };
            out.singular_at_origin = true;
            break;
        }
        default: throw std::invalid_argument("prop1_profile index must be 1..6");
    }
    return out;
}

/// The two kink profiles: 1 needs beta = 0, Im alpha = 0, c < 0, alpha < 0;
/// 2 needs Im(alpha+beta) = 0, c < 0, alpha+beta < 0.
inline TravellingProfile prop2_profile(int which, const Coefficients& co, double c, double Theta,
                                       double bmag) {
    TravellingProfile out;
    out.bmag = bmag;
    double g = to_double(co.alpha.re + co.beta.re);
    double a1 = to_double(co.alpha.re);
    switch (which) {
        case 1: {
            double sc = 1.0 / std::cosh(Theta);
            out.a = std::complex<double>(0.0, std::sqrt(c / a1) * std::tanh(Theta));
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                return (std::sqrt(3.0 * c / a1) * sc / bmag)
                       * tanh((sc * std::sqrt(-c / 2.0)) * X);
            };
            break;
        }
        case 2: {
            out.a = 0.0;
            out.jet = [=](double xi) {
                TaylorR X = TaylorR::variable(xi);
                return (std::sqrt(3.0 * c / g) / bmag) * tanh(std::sqrt(-c / 2.0) * X);
            };
            break;
        }
        default: throw std::invalid_argument("prop2_profile index must be 1 or 2");
    }
    return out;
}

}  // namespace cmkdv

#endif
