#ifndef CMKDV_CONSERVATION_HPP
#define CMKDV_CONSERVATION_HPP

#include "cmkdv/closed_form.hpp"
#include "cmkdv/fft.hpp"
#include "cmkdv/grid.hpp"
#include "cmkdv/jet.hpp"
#include "cmkdv/model.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmkdv {

struct NotConserved : std::runtime_error {
    explicit NotConserved(const std::string& w) : std::runtime_error(w) {}
};
struct NotVariational : std::runtime_error {
    explicit NotVariational(const std::string& w) : std::runtime_error(w) {}
};
struct NotTabulated : std::runtime_error {
    explicit NotTabulated(const std::string& w) : std::runtime_error(w) {}
};
struct NonFiniteDensity : std::runtime_error {
    explicit NonFiniteDensity(const std::string& w) : std::runtime_error(w) {}
};
struct ZeroMomentum : std::runtime_error {
    explicit ZeroMomentum(const std::string& w) : std::runtime_error(w) {}
};

// ---------------------------------------------------------------------------
// Determining system
// ---------------------------------------------------------------------------

/// Adjoint-symmetry determining expression
///   D_t Q + (2b-a) u u_x conj(Q) + (conj(a)-2 conj(b)) conj(u) u_x Q
///   + conj(a) conj(u) u D_x Q + b u^2 D_x conj(Q) + D_x^3 Q,
/// with u_t eliminated through the equation. Zero iff Q is an
/// adjoint-symmetry.
inline ComplexJetPoly determining_residual(const ComplexJetPoly& Q, const Coefficients& co) {
    const CRat &a = co.alpha, &b = co.beta;
    ComplexJetPoly U = ComplexJetPoly::u(0), Ub = ComplexJetPoly::u_bar(0);
    ComplexJetPoly Ux = ComplexJetPoly::u(1);
    ComplexJetPoly Qb = Q.conj();
    ComplexJetPoly r = total_t_derivative(Q, co);
    r = r + (CRat(rat(2)) * b - a) * (U * Ux * Qb);
    r = r + (a.conj() - CRat(rat(2)) * b.conj()) * (Ub * Ux * Q);
    r = r + a.conj() * (Ub * U * total_x_derivative(Q));
    r = r + b * (U * U * total_x_derivative(Qb));
    r = r + total_x_derivative(Q, 3);
    return r;
}

/// Helmholtz integrability residuals certifying that Q is a variational
/// expression. order = 2: the five second-order conditions; order = 4: the
/// nine conditions of the fourth-order system.
inline std::vector<JetPoly> helmholtz_residuals(const ComplexJetPoly& Q, int order) {
    auto pu = [&](int k) { return partial_u(Q, k); };
    auto pub = [&](int k) { return partial_u_bar(Q, k); };
    auto Dx = [](const JetPoly& p) { return total_x_derivative(p); };
    auto Dxx = [](const JetPoly& p) { return total_x_derivative(p, 2); };
    std::vector<JetPoly> r;
    if (order == 2) {
        r.push_back(Dx(pub(2).re) - pub(1).re);
        r.push_back(Dx(pub(2).im) - pub(1).im);
        r.push_back(pu(2).im);
        r.push_back(Dx(pu(2).re) - pu(1).re);
        r.push_back(Dx(pu(1).im) - rat(2) * pu(0).im);
        return r;
    }
    if (order == 4) {
        r.push_back(rat(2) * Dx(pub(4).re) - pub(3).re);
        r.push_back(rat(2) * Dx(pub(4).im) - pub(3).im);
        r.push_back(Dxx(pub(3).re) - rat(2) * Dx(pub(2).re) + rat(2) * pub(1).re);
        r.push_back(Dxx(pub(3).im) - rat(2) * Dx(pub(2).im) + rat(2) * pub(1).im);
        r.push_back(pu(4).im);
        r.push_back(rat(2) * Dx(pu(4).re) - pub(3).re);
        r.push_back(rat(3) * Dx(pu(3).im) - rat(2) * pu(2).im);
        r.push_back(Dxx(pu(3).re) - rat(2) * Dx(pu(2).re) + rat(2) * pu(1).re);
        r.push_back(Dxx(pu(2).im) - rat(3) * Dx(pu(1).im) + rat(6) * pu(0).im);
        return r;
    }
    throw std::invalid_argument("helmholtz order must be 2 or 4");
}

inline bool all_zero(const std::vector<JetPoly>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

/// Multiplier components from a real density: Q1 = delta T / delta u1,
/// Q2 = delta T / delta u2, assembled as Q1 + i Q2.
inline ComplexJetPoly variational_link(const JetPoly& T) {
    return {euler_operator(T, 0), euler_operator(T, 1)};
}

/// Canonical representative of a density modulo total x-derivatives,
/// reconstructed from its own Euler components by the scaling homotopy
/// T ~ sum_i u_i * E_i(T)[lambda u] integrated in lambda.
inline JetPoly canonical_density(const JetPoly& T) {
    JetPoly core = JetPoly::u(0) * euler_operator(T, 0) + JetPoly::u(1) * euler_operator(T, 1);
    if (core.is_zero()) return JetPoly();
    return scale_substitute(core, homotopy_weight);
}

/// Density reconstructed from a variational multiplier so that
/// variational_link(homotopy_density(Q)) = Q. Realizes the homotopy
/// integral Re(conj(u) Q)[lambda u] with the 1/degree weights, then strips
/// the total-derivative part.
inline JetPoly homotopy_density(const ComplexJetPoly& Q) {
    int order = Q.re.jet_order() <= 2 && Q.im.jet_order() <= 2 ? 2 : 4;
    if (!all_zero(helmholtz_residuals(Q, order)))
        throw NotVariational("multiplier fails the Helmholtz conditions");
    ComplexJetPoly raw = ComplexJetPoly::u_bar(0) * Q;
    JetPoly T = scale_substitute(raw.re, homotopy_weight);
    return canonical_density(T);
}

/// D_t T + D_x X as an exact polynomial; the zero polynomial certifies the
/// conservation law.
inline JetPoly conservation_residual(const JetPoly& T, const JetPoly& X, const Coefficients& co) {
    return total_t_derivative(T, co) + total_x_derivative(X);
}

/// Reconstructs the flux of a conserved density: X with D_t T + D_x X = 0.
inline JetPoly flux_from_density(const JetPoly& T, const Coefficients& co) {
    JetPoly dtT = total_t_derivative(T, co);
    if (!is_total_x_derivative(dtT))
        throw NotConserved("D_t T is not a total x-derivative at these coefficients");
    return invert_total_x_derivative(-dtT);
}

// ---------------------------------------------------------------------------
// Catalogs
// ---------------------------------------------------------------------------

struct MultiplierEntry {
    std::string id;    // M1..M11
    std::string form;  // display form
    ComplexJetPoly body;
    int helmholtz_order;  // 2 for M1..M8, 4 for M9..M11
    bool admissible;
    std::string condition;
};

namespace detail {
inline ComplexJetPoly cu(int k) { return ComplexJetPoly::u(k); }
inline ComplexJetPoly cub(int k) { return ComplexJetPoly::u_bar(k); }
inline ComplexJetPoly iu() { return ComplexJetPoly::i_unit(); }
inline ComplexJetPoly tpoly() { return ComplexJetPoly(JetPoly::t()); }
inline ComplexJetPoly xpoly() { return ComplexJetPoly(JetPoly::x()); }
}  // namespace detail

inline std::vector<MultiplierEntry> multiplier_catalog(const Coefficients& co) {
    using namespace detail;
    const Rational &a1 = co.alpha.re, &a2 = co.alpha.im;
    const Rational &b1 = co.beta.re, &b2 = co.beta.im;
    CaseFlags f = classify(co);
    bool m6case = a2.is_zero() && b1.is_zero() && b2.is_zero();
    bool m7case = a2.is_zero() && b2.is_zero();
    Rational apb = a1 + b1;

    ComplexJetPoly one(JetPoly(rat(1)));
    ComplexJetPoly U = cu(0), Ub = cub(0);
    ComplexJetPoly u2ub = U * U * Ub;

    std::vector<MultiplierEntry> out;
    out.push_back({"M1", "1", one, 2, f.covmass_ok, "alpha = 2 beta"});
    out.push_back({"M2", "i", iu(), 2, f.covmass_ok, "alpha = 2 beta"});
    out.push_back({"M3", "u", U, 2, f.momentum_ok, "Im alpha = Im beta"});
    out.push_back({"M4", "i conj(u)", iu() * Ub, 2, f.covmom_ok, "alpha = 3 beta"});
    out.push_back({"M5", "conj(u)", Ub, 2, f.covmom_ok, "alpha = 3 beta"});
    out.push_back({"M6", "i u_x", iu() * cu(1), 2, m6case, "Im alpha = 0, beta = 0"});
    out.push_back({"M7", "3 u_xx + (a1+b1) u^2 conj(u)", rat(3) * cu(2) + apb * u2ub, 2, m7case,
                   "Im alpha = Im beta = 0"});
    out.push_back({"M8", "3t u_xx + (a1+b1) t u^2 conj(u) - x u",
                   tpoly() * (rat(3) * cu(2) + apb * u2ub) - xpoly() * U, 2, m7case,
                   "Im alpha = Im beta = 0"});
    out.push_back({"M9", "i(u_xxx + a1 u conj(u) u_x)", iu() * (cu(3) + a1 * (U * Ub * cu(1))), 4,
                   f.hirota, "Im alpha = 0, beta = 0"});
    out.push_back({"M10",
                   "6 u_xxxx + 2 a1 u^2 conj(u)_xx + 8 a1 u conj(u) u_xx + 6 a1 conj(u) u_x^2 "
                   "+ 4 a1 u u_x conj(u)_x + a1^2 u^3 conj(u)^2",
                   rat(6) * cu(4) + rat(2) * a1 * (U * U * cub(2))
                       + rat(8) * a1 * (U * Ub * cu(2)) + rat(6) * a1 * (Ub * cu(1) * cu(1))
                       + rat(4) * a1 * (U * cu(1) * cub(1))
                       + Rational(a1 * a1) * (U * U * U * Ub * Ub),
                   4, f.hirota, "Im alpha = 0, beta = 0"});
    out.push_back({"M11",
                   "3 u_xxxx + 6 b1 u^2 conj(u)_xx + 14 b1 u conj(u) u_xx + 8 b1 conj(u) u_x^2 "
                   "+ 12 b1 u conj(u)_x u_x + 8 b1^2 u^3 conj(u)^2",
                   rat(3) * cu(4) + rat(6) * b1 * (U * U * cub(2))
                       + rat(14) * b1 * (U * Ub * cu(2)) + rat(8) * b1 * (Ub * cu(1) * cu(1))
                       + rat(12) * b1 * (U * cub(1) * cu(1))
                       + Rational(8 * b1 * b1) * (U * U * U * Ub * Ub),
                   4, f.sasa_satsuma, "alpha = 3 beta, both real"});
    return out;
}

struct DensityEntry {
    std::string id;    // T1..T8, H1..H3
    std::string name;  // role
    JetPoly body;
    std::optional<JetPoly> flux;  // displayed flux where the catalog has one
    bool admissible;
    std::string condition;
    std::string multiplier_id;
    Rational link_factor;  // euler components of body = link_factor * multiplier
};

struct ComplexDensityEntry {
    std::string id;
    std::string name;
    ComplexJetPoly body;
    ComplexJetPoly flux;
    bool admissible;
    std::string condition;
};

/// The two phase-covariant complex conservation laws: T = u with
/// X = beta u^2 conj(u) + u_xx (alpha = 2 beta), and T = u^2 with
/// X = 2 beta u^3 conj(u) - u_x^2 + 2 u u_xx (alpha = 3 beta).
inline std::vector<ComplexDensityEntry> complex_density_catalog(const Coefficients& co) {
    using namespace detail;
    CaseFlags f = classify(co);
    ComplexJetPoly U = cu(0), Ub = cub(0), Uxx = cu(2);
    std::vector<ComplexDensityEntry> out;
    out.push_back({"cov_mass", "phase-covariant mass", U, co.beta * (U * U * Ub) + Uxx,
                   f.covmass_ok, "alpha = 2 beta"});
    out.push_back({"cov_momentum", "phase-covariant momentum", U * U,
                   (CRat(rat(2)) * co.beta) * (U * U * U * Ub) - cu(1) * cu(1)
                       + CRat(rat(2)) * (U * Uxx),
                   f.covmom_ok, "alpha = 3 beta"});
    return out;
}

inline std::vector<DensityEntry> density_catalog(const Coefficients& co) {
    using namespace detail;
    const Rational &a1 = co.alpha.re, &b1 = co.beta.re;
    CaseFlags f = classify(co);
    CRat apb = co.alpha + co.beta;
    // momentum flux: the u^2 conj(u)^2 coefficient is (alpha + conj(beta))/2,
    // exactly real under the admissibility condition Im alpha = Im beta and
    // equal to the displayed (alpha+beta)/2 whenever both are real
    CRat apbbar = co.alpha + co.beta.conj();
    ComplexJetPoly U = cu(0), Ub = cub(0), Ux = cu(1), Ubx = cub(1), Uxx = cu(2), Ubxx = cub(2),
                   Uxxx = cu(3), Ubxxx = cub(3);
    ComplexJetPoly U2Ub2 = U * U * Ub * Ub;

    std::vector<DensityEntry> out;

    {  // T1: momentum
        ComplexJetPoly T = U * Ub;
        ComplexJetPoly X = Rational(1, 2) * (apbbar * U2Ub2) - Ux * Ubx + U * Ubxx + Ub * Uxx;
        out.push_back({"T1", "momentum", T.re, X.re, f.momentum_ok, "Im alpha = Im beta", "M3",
                       rat(2)});
    }
    // energy flux; the conj(u)^2 u_x^2 + u^2 conj(u)_x^2 coefficient is
    // -(alpha+4 beta)/2: with -(alpha+2 beta)/2 the pair fails
    // D_tT + D_xX = 0 by exactly beta (u^2 conj(u)_x^2 + conj(u)^2 u_x^2)
    ComplexJetPoly energyX = rat(3) * (Uxx * Ubxx - Ubx * Uxxx - Ux * Ubxxx)
                             + apb * (U * Ub * Ub * Uxx + U * U * Ub * Ubxx)
                             - (CRat(rat(5)) * co.alpha + CRat(rat(2)) * co.beta)
                                   * (U * Ub * Ux * Ubx)
                             - Rational(1, 2)
                                   * ((co.alpha + CRat(rat(4)) * co.beta)
                                      * (Ub * Ub * Ux * Ux + U * U * Ubx * Ubx))
                             + Rational(1, 3) * (apb * apb * (U * U * U * Ub * Ub * Ub));
    {  // T2: energy
        ComplexJetPoly T = rat(-3) * (Ux * Ubx) + Rational(1, 2) * (apb * U2Ub2);
        out.push_back({"T2", "energy", T.re, energyX.re, f.energy_ok, "Im alpha = Im beta = 0",
                       "M7", rat(2)});
    }
    {  // T3: Galilean energy
        ComplexJetPoly T = tpoly() * (rat(-3) * (Ux * Ubx) + Rational(1, 2) * (apb * U2Ub2))
                           - xpoly() * (U * Ub);
        ComplexJetPoly X = U * Ubx + Ub * Ux
                           + xpoly() * (Ux * Ubx - Ub * Uxx - U * Ubxx
                                        - Rational(1, 2) * (apbbar * U2Ub2))
                           + tpoly() * energyX;
        out.push_back({"T3", "Galilean energy", T.re, X.re, f.energy_ok, "Im alpha = Im beta = 0",
                       "M8", rat(2)});
    }
    for (const auto& c : complex_density_catalog(co)) {
        bool mass = c.id == "cov_mass";
        // real/imaginary components carry the Thm-8 normalization
        Rational s = mass ? rat(2) : rat(1);
        out.push_back({mass ? "T4" : "T6", c.name + " (real part)", s * c.body.re, s * c.flux.re,
                       c.admissible, c.condition, mass ? "M1" : "M5", rat(2)});
        out.push_back({mass ? "T5" : "T7", c.name + " (imag part)", s * c.body.im, s * c.flux.im,
                       c.admissible, c.condition, mass ? "M2" : "M4", rat(2)});
    }
    {  // T8: angular twist, i(u_x conj(u) - conj(u)_x u)
        ComplexJetPoly T = iu() * (Ux * Ub - Ubx * U);
        ComplexJetPoly X = co.alpha * (iu() * (Ub * Ub * U * Ux - Ub * U * U * Ubx))
                           + iu() * (Ub * Uxxx) - iu() * (U * Ubxxx)
                           + CRat(rat(2)) * (iu() * (Ux * Ubxx - Ubx * Uxx));
        out.push_back({"T8", "angular twist", T.re, X.re, f.twist_ok, "Im alpha = 0, beta = 0",
                       "M6", rat(4)});
    }
    {  // H1: first higher density; the nonlinear coefficient is alpha/4 so
       // that the variational link reproduces the multiplier i(u_xxx + a u conj(u) u_x)
        ComplexJetPoly T = Rational(1, 2) * (iu() * (Ubxx * Ux - Uxx * Ubx))
                           + Rational(1, 4)
                                 * (CRat(a1, rat(0))
                                    * (iu() * (U * Ub * Ub * Ux - U * U * Ub * Ubx)));
        out.push_back({"H1", "higher density (third-order multiplier)", T.re, std::nullopt,
                       f.hirota, "Im alpha = 0, beta = 0", "M9", rat(2)});
    }
    {  // H2
        ComplexJetPoly Um = U - Ub, Up = U + Ub;
        ComplexJetPoly T =
            rat(6) * (Uxx * Ubxx)
            - Rational(1, 4) * (CRat(a1, rat(0)) * (Up * Um * Um * (Uxx + Ubxx)))
            + Rational(1, 4)
                  * (CRat(a1, rat(0))
                     * ((CRat(rat(2)) * (U * Ub) - CRat(rat(3)) * (U * U)
                         - CRat(rat(3)) * (Ub * Ub))
                        * (Ux * Ux + Ubx * Ubx)))
            - Rational(1, 2)
                  * (CRat(a1, rat(0))
                     * ((U * U + CRat(rat(14)) * (U * Ub) + Ub * Ub) * (Ux * Ubx)))
            + Rational(1, 3) * (CRat(Rational(a1 * a1), rat(0)) * (U * U * U * Ub * Ub * Ub));
        out.push_back({"H2", "higher density (fourth-order multiplier)", T.re, std::nullopt,
                       f.hirota, "Im alpha = 0, beta = 0", "M10", rat(2)});
    }
    {  // H3; the u^3 conj(u)^3 coefficient is (8/3) b1^2: the Euler operator
       // sends g u^3 conj(u)^3 to 6g u^3 conj(u)^2 and the multiplier's
       // quintic term is 8 b1^2 u^3 conj(u)^2, so 6g = 2*8 b1^2
        ComplexJetPoly Um = U - Ub, Up = U + Ub;
        ComplexJetPoly T =
            rat(3) * (Uxx * Ubxx)
            - Rational(3, 4) * (CRat(b1, rat(0)) * (Up * Um * Um * (Uxx + Ubxx)))
            - Rational(1, 12)
                  * (CRat(b1, rat(0))
                     * ((CRat(rat(27)) * (U * U) - CRat(rat(18)) * (U * Ub)
                         + CRat(rat(27)) * (Ub * Ub))
                        * (Ux * Ux + Ubx * Ubx)))
            - Rational(1, 2)
                  * (CRat(b1, rat(0))
                     * ((CRat(rat(22)) * (U * Ub) + CRat(rat(3)) * (U * U)
                         + CRat(rat(3)) * (Ub * Ub))
                        * (Ux * Ubx)))
            + Rational(8, 3) * (CRat(Rational(b1 * b1), rat(0)) * (U * U * U * Ub * Ub * Ub));
        out.push_back({"H3", "higher density (Sasa-Satsuma multiplier)", T.re, std::nullopt,
                       f.sasa_satsuma, "alpha = 3 beta, both real", "M11", rat(2)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification records
// ---------------------------------------------------------------------------

struct VerificationRecord {
    std::string id;
    std::string kind;  // multiplier | density | higher
    bool admissible = false;
    bool checked = false;
    bool residual_is_zero = false;
    std::size_t residual_term_count = 0;
};

/// Runs determining + Helmholtz checks for every admissible multiplier.
inline std::vector<VerificationRecord> verify_multipliers(const Coefficients& co) {
    std::vector<VerificationRecord> out;
    for (const auto& m : multiplier_catalog(co)) {
        VerificationRecord r{m.id, "multiplier", m.admissible, false, false, 0};
        if (m.admissible) {
            r.checked = true;
            ComplexJetPoly det = determining_residual(m.body, co);
            auto helm = helmholtz_residuals(m.body, m.helmholtz_order);
            r.residual_term_count = det.re.term_count() + det.im.term_count();
            for (const auto& h : helm) r.residual_term_count += h.term_count();
            r.residual_is_zero = det.is_zero() && all_zero(helm);
        }
        out.push_back(r);
    }
    return out;
}

/// Conservation of the six displayed density/flux pairs (the two
/// phase-covariant ones checked as complex pairs).
inline std::vector<VerificationRecord> verify_densities(const Coefficients& co) {
    std::vector<VerificationRecord> out;
    auto check_real = [&](const DensityEntry& d) {
        VerificationRecord r{d.id, "density", d.admissible, false, false, 0};
        if (d.admissible && d.flux) {
            r.checked = true;
            JetPoly res = conservation_residual(d.body, *d.flux, co);
            r.residual_is_zero = res.is_zero();
            r.residual_term_count = res.term_count();
        }
        return r;
    };
    auto densities = density_catalog(co);
    for (const auto& d : densities) {
        if (d.id == "T1" || d.id == "T2" || d.id == "T3" || d.id == "T8") {
            VerificationRecord r = check_real(d);
            r.id = d.name;
            out.push_back(r);
        }
    }
    for (const auto& c : complex_density_catalog(co)) {
        VerificationRecord r{c.name, "density", c.admissible, false, false, 0};
        if (c.admissible) {
            r.checked = true;
            JetPoly res_re = conservation_residual(c.body.re, c.flux.re, co);
            JetPoly res_im = conservation_residual(c.body.im, c.flux.im, co);
            r.residual_is_zero = res_re.is_zero() && res_im.is_zero();
            r.residual_term_count = res_re.term_count() + res_im.term_count();
        }
        out.push_back(r);
    }
    return out;
}

/// Flux reconstruction round trip for the higher densities H1..H3.
inline std::vector<VerificationRecord> verify_higher(const Coefficients& co) {
    std::vector<VerificationRecord> out;
    for (const auto& d : density_catalog(co)) {
        if (d.id[0] != 'H') continue;
        VerificationRecord r{d.id, "higher", d.admissible, false, false, 0};
        if (d.admissible) {
            r.checked = true;
            try {
                JetPoly X = flux_from_density(d.body, co);
                JetPoly res = conservation_residual(d.body, X, co);
                r.residual_is_zero = res.is_zero();
                r.residual_term_count = res.term_count();
            } catch (const NotConserved&) {
                r.residual_is_zero = false;
            }
        }
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Conserved quantities
// ---------------------------------------------------------------------------

enum class QuantityId {
    Momentum,
    Energy,
    GalileanEnergy,
    CovariantMass,
    CovariantMomentum,
    Twist,
    H1,
    H2,
    H3
};

inline const char* quantity_name(QuantityId q) {
    switch (q) {
        case QuantityId::Momentum: return "momentum";
        case QuantityId::Energy: return "energy";
        case QuantityId::GalileanEnergy: return "galilean_energy";
        case QuantityId::CovariantMass: return "covariant_mass";
        case QuantityId::CovariantMomentum: return "covariant_momentum";
        case QuantityId::Twist: return "twist";
        case QuantityId::H1: return "h1";
        case QuantityId::H2: return "h2";
        case QuantityId::H3: return "h3";
    }
    return "?";
}

inline std::optional<QuantityId> quantity_from_name(const std::string& s) {
    for (QuantityId q : {QuantityId::Momentum, QuantityId::Energy, QuantityId::GalileanEnergy,
                         QuantityId::CovariantMass, QuantityId::CovariantMomentum,
                         QuantityId::Twist, QuantityId::H1, QuantityId::H2, QuantityId::H3})
        if (s == quantity_name(q)) return q;
    return std::nullopt;
}

inline bool quantity_admissible(QuantityId q, const Coefficients& co) {
    CaseFlags f = classify(co);
    switch (q) {
        case QuantityId::Momentum: return f.momentum_ok;
        case QuantityId::Energy:
        case QuantityId::GalileanEnergy: return f.energy_ok;
        case QuantityId::CovariantMass: return f.covmass_ok;
        case QuantityId::CovariantMomentum: return f.covmom_ok;
        case QuantityId::Twist: return f.twist_ok;
        case QuantityId::H1:
        case QuantityId::H2: return f.hirota;
        case QuantityId::H3: return f.sasa_satsuma;
    }
    return false;
}

namespace detail {

/// Density body and the factor turning its integral into the named
/// quantity (the energy and Galilean densities integrate to 2E and 2G).
struct QuantitySpec {
    JetPoly body;
    double scale = 1.0;
    bool complex_id = false;
    int power = 1;  // covariant quantities: integral of u^power
};

inline QuantitySpec quantity_spec(QuantityId q, const Coefficients& co) {
    QuantitySpec s;
    if (q == QuantityId::CovariantMass) {
        s.complex_id = true;
        s.power = 1;
        return s;
    }
    if (q == QuantityId::CovariantMomentum) {
        s.complex_id = true;
        s.power = 2;
        return s;
    }
    const char* id = nullptr;
    switch (q) {
        case QuantityId::Momentum: id = "T1"; break;
        case QuantityId::Energy: id = "T2"; s.scale = 0.5; break;
        case QuantityId::GalileanEnergy: id = "T3"; s.scale = 0.5; break;
        case QuantityId::Twist: id = "T8"; break;
        case QuantityId::H1: id = "H1"; break;
        case QuantityId::H2: id = "H2"; break;
        case QuantityId::H3: id = "H3"; break;
        default: break;
    }
    for (const auto& d : density_catalog(co))
        if (d.id == id) {
            s.body = d.body;
            return s;
        }
    throw std::logic_error("quantity density not found");
}

/// Whether the quantity's density decays for this solution, judged from
/// the asymptotic limits (and the linear-phase slope for the twist).
inline bool quantity_density_decays(QuantityId q, const SolutionSpec& spec,
                                    const Coefficients& co) {
    AsymptoticPair a = asymptotics(spec, co);
    double amp = std::max(std::abs(a.u_minus), std::abs(a.u_plus));
    if (a.modulus_only) amp = std::max(amp, 1.0);  // LPKink keeps |u| > 0
    bool zero_amp = amp < 1e-14;
    if (q == QuantityId::Twist) return zero_amp || !detail::is_linear_phase(spec.family);
    return zero_amp;
}

}  // namespace detail

/// Trapezoid quadrature of the quantity over a periodic grid state;
/// spatial derivatives of the samples are spectral.
inline std::complex<double> quantity_quadrature(QuantityId q, const GridState& state,
                                                const Coefficients& co) {
    detail::QuantitySpec qs = detail::quantity_spec(q, co);
    const Grid& g = state.grid;
    double h = g.h();
    std::complex<double> acc = 0.0;
    if (qs.complex_id) {
        for (int j = 0; j < g.N; ++j) {
            std::complex<double> v = state.samples[j];
            acc += (qs.power == 1) ? v : v * v;
        }
        return acc * h;
    }
    int order = qs.body.jet_order();
    std::vector<std::vector<std::complex<double>>> der(order + 1);
    der[0] = state.samples;
    for (int k = 1; k <= order; ++k) der[k] = spectral_derivative(state.samples, g.L, k);
    JetPoint pt = JetPoint::zeros(order);
    pt.t = state.t;
    double sum = 0.0;
    for (int j = 0; j < g.N; ++j) {
        pt.x = g.node(j);
        for (int k = 0; k <= order; ++k) {
            pt.u(0, k) = der[k][j].real();
            pt.u(1, k) = der[k][j].imag();
        }
        sum += qs.body.eval(pt);
    }
    return qs.scale * sum * h;
}

/// Windowed quadrature of the quantity for a closed-form solution using
/// analytic jets on [-L, L]; exponentially accurate for decaying densities.
inline std::complex<double> quantity_quadrature_analytic(QuantityId q, const SolutionSpec& spec,
                                                         const Coefficients& co, double t,
                                                         double L, int n = 4001) {
    if (!detail::quantity_density_decays(q, spec, co))
        throw NonFiniteDensity(std::string(quantity_name(q)) + " density does not decay for "
                               + family_name(spec.family));
    detail::QuantitySpec qs = detail::quantity_spec(q, co);
    if (n % 2 == 0) ++n;  // keep the crest on a node
    double h = 2.0 * L / (n - 1);
    double crest = spec.params.c * t + spec.params.xi0;
    auto node = [&](int j) { return crest - L + j * h; };
    std::complex<double> acc = 0.0;
    if (qs.complex_id) {
        for (int j = 0; j < n; ++j) {
            std::complex<double> v = evaluate(spec, co, t, node(j));
            v = (qs.power == 1) ? v : v * v;
            acc += (j == 0 || j == n - 1) ? 0.5 * v : v;
        }
        return acc * h;
    }
    int order = qs.body.jet_order();
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        JetPoint pt;
        try {
            pt = evaluate_jet(spec, co, t, node(j), order);
        } catch (const JetAtCusp&) {
            pt = evaluate_jet(spec, co, t, node(j), order, Side::Right);
        }
        sum += ((j == 0 || j == n - 1) ? 0.5 : 1.0) * qs.body.eval(pt);
    }
    double total = sum * h;
    if (detail::has_cusp(spec.family)) {
        // Euler-Maclaurin corrections for the derivative jump of the
        // integrand at the crest, from one-sided analytic jets.
        auto g_deriv = [&](Side side, int k) {
            JetPoly dk = total_x_derivative(qs.body, k);
            JetPoint pt = evaluate_jet(spec, co, t, crest, std::min(order + k, 4), side);
            return dk.eval(pt);
        };
        double jump1 = g_deriv(Side::Right, 1) - g_deriv(Side::Left, 1);
        total += h * h / 12.0 * jump1;
        if (order + 3 <= 4) {
            double jump3 = g_deriv(Side::Right, 3) - g_deriv(Side::Left, 3);
            total -= h * h * h * h / 720.0 * jump3;
        }
    }
    return qs.scale * total;
}

/// Closed-form conserved quantities as displayed for the sech soliton, the
/// linear-phase soliton, the kinks, and the peakon. Values are the
/// published ones; the twist rows are compared against the T8 quadrature
/// as ratios elsewhere.
inline std::complex<double> analytic_quantity(QuantityId q, const SolutionSpec& spec,
                                              const Coefficients& co) {
    require_valid(spec, co);
    const SolutionParams& p = spec.params;
    double a1 = to_double(co.alpha.re);
    double ab = to_double(co.alpha.re + co.beta.re);
    CaseFlags f = classify(co);
    auto not_tab = [&]() {
        return NotTabulated(std::string(quantity_name(q)) + " is not tabulated for "
                            + family_name(spec.family));
    };
    switch (spec.family) {
        case Family::Sech:
            switch (q) {
                case QuantityId::Momentum: return 12.0 * std::sqrt(p.c) / ab;
                case QuantityId::Energy: return 6.0 * std::pow(p.c, 1.5) / ab;
                case QuantityId::GalileanEnergy: return 0.0;
                case QuantityId::CovariantMass:
                    if (!f.covmass_ok) throw not_tab();
                    return 2.0 * M_PI * std::polar(1.0, p.phi) / std::sqrt(a1);
                case QuantityId::CovariantMomentum:
                    if (!f.covmom_ok) throw not_tab();
                    return 9.0 * std::sqrt(p.c) * std::polar(1.0, 2.0 * p.phi) / a1;
                case QuantityId::Twist: return 0.0;
                default: throw not_tab();
            }
        case Family::LPSoliton: {
            double kap = std::sqrt(p.c + 3.0 * p.k * p.k);
            switch (q) {
                case QuantityId::Momentum: return 12.0 * kap / a1;
                case QuantityId::Energy: return 6.0 * p.c * kap / a1;
                case QuantityId::GalileanEnergy: return 0.0;
                case QuantityId::Twist:
                    // as displayed; the sqrt argument is c^2+3k^2 there
                    return -12.0 * p.k * std::sqrt(p.c * p.c + 3.0 * p.k * p.k) / a1;
                default: throw not_tab();
            }
        }
        case Family::Solitary1:
        case Family::Solitary2:
        case Family::Solitary3:
        case Family::Solitary4:
        case Family::Kink1:
            if (q == QuantityId::Twist) return 0.0;
            throw not_tab();
        case Family::Kink2:
            if (q == QuantityId::Twist)
                return 2.0 * std::sqrt(3.0) * p.c * std::sinh(p.Theta)
                       / std::pow(std::cosh(p.Theta), 2) / a1;
            throw not_tab();
        case Family::Peakon:
            if (q == QuantityId::Momentum) {
                double sg = to_double(sigma(co).value), s2 = sg * sg;
                return std::sqrt((s2 - 3.0) / (p.c * s2));
            }
            throw not_tab();
        default: throw not_tab();
    }
}

/// Both readings of the linear-phase soliton twist: the displayed
/// sqrt(c^2+3k^2) and the sqrt(c+3k^2) every other quantity carries.
struct TwistCandidates {
    double displayed;
    double corrected;
};

inline TwistCandidates lpsoliton_twist_candidates(const SolutionSpec& spec,
                                                  const Coefficients& co) {
    const SolutionParams& p = spec.params;
    double a1 = to_double(co.alpha.re);
    return {-12.0 * p.k * std::sqrt(p.c * p.c + 3.0 * p.k * p.k) / a1,
            -12.0 * p.k * std::sqrt(p.c + 3.0 * p.k * p.k) / a1};
}

/// chi(t) = (1/P) int x |u|^2 dx over a grid state; the trajectory overload
/// returns the sampled curve.
inline double center_of_momentum(const GridState& state) {
    const Grid& g = state.grid;
    double h = g.h();
    double mom = 0.0, xmom = 0.0;
    for (int j = 0; j < g.N; ++j) {
        double w = std::norm(state.samples[j]);
        mom += w;
        xmom += g.node(j) * w;
    }
    if (std::abs(mom) * h < 1e-12) throw ZeroMomentum("momentum is zero; center undefined");
    return xmom / mom;
}

inline std::vector<std::pair<double, double>> center_of_momentum(
    const std::vector<GridState>& trajectory) {
    std::vector<std::pair<double, double>> out;
    out.reserve(trajectory.size());
    for (const auto& st : trajectory) out.emplace_back(st.t, center_of_momentum(st));
    return out;
}

}  // namespace cmkdv

#endif
